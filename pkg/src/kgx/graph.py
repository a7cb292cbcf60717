"""Knowledge graph over phrase nodes: construction, degree, and betweenness.

Degree counts directed edges (equivalently, the triples a phrase appears
in). Betweenness is computed on the undirected simple view, unnormalized,
each unordered pair counted once.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .extractor import Triple

__all__ = [
    "OracleTooLarge",
    "KnowledgeGraph",
    "CentralityReport",
    "build_graph",
    "degree_counts",
    "betweenness_centrality",
    "brute_force_betweenness",
    "centrality_report",
]

_ORACLE_NODE_LIMIT = 12


class OracleTooLarge(ValueError):
    """The brute-force betweenness oracle refuses graphs above 12 nodes."""


@dataclass(frozen=True)
class KnowledgeGraph:
    nodes: tuple[str, ...]                      # first-appearance order
    edges: tuple[tuple[str, str, str], ...]     # (head, relation, tail)


@dataclass
class CentralityReport:
    degree: dict[str, int]
    betweenness: dict[str, float]


def build_graph(triples: list[Triple]) -> KnowledgeGraph:
    """One directed edge per triple; nodes in first-appearance order."""
    nodes: list[str] = []
    seen: set[str] = set()
    edges = []
    for t in triples:
        for node in (t.head, t.tail):
            if node not in seen:
                seen.add(node)
                nodes.append(node)
        edges.append((t.head, t.relation, t.tail))
    return KnowledgeGraph(nodes=tuple(nodes), edges=tuple(edges))


def degree_counts(graph: KnowledgeGraph) -> dict[str, int]:
    """Incident directed edges per node (in-degree plus out-degree)."""
    degree = {node: 0 for node in graph.nodes}
    for head, _, tail in graph.edges:
        degree[head] += 1
        degree[tail] += 1
    return degree


def _undirected_adjacency(graph: KnowledgeGraph) -> dict[str, list[str]]:
    # simple view: directions and parallel edges collapse
    neighbors: dict[str, set[str]] = {node: set() for node in graph.nodes}
    for head, _, tail in graph.edges:
        if head != tail:
            neighbors[head].add(tail)
            neighbors[tail].add(head)
    return {node: sorted(peers) for node, peers in sorted(neighbors.items())}


def betweenness_centrality(graph: KnowledgeGraph) -> dict[str, float]:
    """Unnormalized betweenness via Brandes' accumulation.

    Runs shortest-path counting from every source on the undirected simple
    view; each unordered pair is counted once, so the standard both-ways
    accumulation is halved at the end.
    """
    adj = _undirected_adjacency(graph)
    nodes = list(adj)
    score = dict.fromkeys(nodes, 0.0)
    for source in nodes:
        # single-source shortest paths with path counts
        stack: list[str] = []
        preds: dict[str, list[str]] = {v: [] for v in nodes}
        sigma = dict.fromkeys(nodes, 0)
        sigma[source] = 1
        dist = dict.fromkeys(nodes, -1)
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        # dependency accumulation, farthest first
        delta = dict.fromkeys(nodes, 0.0)
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != source:
                score[w] += delta[w]
    return {v: score[v] / 2.0 for v in nodes}


def _all_shortest_paths(adj: dict[str, list[str]], dist: dict[str, int],
                        source: str, target: str) -> list[list[str]]:
    if target == source:
        return [[source]]
    paths = []
    for pred in adj[target]:
        if dist.get(pred) == dist[target] - 1:
            for path in _all_shortest_paths(adj, dist, source, pred):
                paths.append(path + [target])
    return paths


def brute_force_betweenness(graph: KnowledgeGraph) -> dict[str, float]:
    """Betweenness by explicit enumeration of every shortest path.

    Test oracle for betweenness_centrality; intentionally naive, hence the
    node-count cap.
    """
    if len(graph.nodes) > _ORACLE_NODE_LIMIT:
        raise OracleTooLarge(f"{len(graph.nodes)} nodes exceeds the oracle "
                             f"limit of {_ORACLE_NODE_LIMIT}")
    adj = _undirected_adjacency(graph)
    nodes = list(adj)
    score = dict.fromkeys(nodes, 0.0)
    for i, source in enumerate(nodes):
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        for target in nodes[i + 1:]:
            if target not in dist:
                continue
            paths = _all_shortest_paths(adj, dist, source, target)
            interior = Counter(v for path in paths for v in path[1:-1])
            for v, count in interior.items():
                score[v] += count / len(paths)
    return score


def centrality_report(graph: KnowledgeGraph) -> CentralityReport:
    return CentralityReport(degree=degree_counts(graph),
                            betweenness=betweenness_centrality(graph))
