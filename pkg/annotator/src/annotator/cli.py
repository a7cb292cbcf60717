"""Command line entry point: plain text in, annotation JSON out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .annotate import annotate_text, document_json, validate_document


def _fail(message: str) -> int:
    print(f"annotate: error: {message}", file=sys.stderr)
    return 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="annotate",
        description="Annotate plain text with tokens, part-of-speech tags,"
                    " entities, and coreference, as JSON.")
    parser.add_argument("--in", dest="in_path", required=True,
                        help="input text file (UTF-8)")
    parser.add_argument("--out", required=True,
                        help="output JSON file")
    parser.add_argument("--doc-id", default=None,
                        help="document id (default: input file stem)")
    args = parser.parse_args(argv)

    doc_id = args.doc_id or Path(args.in_path).stem
    try:
        with open(args.in_path, encoding="utf-8") as handle:
            text = handle.read()
    except (OSError, UnicodeDecodeError) as exc:
        return _fail(str(exc))

    doc = annotate_text(text, doc_id=doc_id)
    validate_document(doc)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(document_json(doc))
    except OSError as exc:
        return _fail(str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
