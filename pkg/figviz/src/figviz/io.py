"""Shared CSV loading, schema checks, and deterministic figure output."""

import argparse
import csv
import json
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")


class InputError(Exception):
    """Missing or malformed input file; message names the file."""


def load_csv(path, expected_header):
    path = Path(path)
    if not path.is_file():
        raise InputError(f"{path}: missing input file")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"{path}: empty file") from None
        if header[:len(expected_header)] != list(expected_header):
            raise InputError(
                f"{path}: header {','.join(header)!r} does not start with "
                f"the frozen schema {','.join(expected_header)!r}")
        rows = list(reader)
    if not rows:
        raise InputError(f"{path}: no data rows")
    return rows


def floats(rows, column):
    try:
        return [float(r[column]) for r in rows]
    except (ValueError, IndexError) as exc:
        raise InputError(f"malformed numeric column {column}: {exc}") from exc


def load_manifest(in_dir):
    """Optional manifest.json next to the CSVs; None when absent."""
    path = Path(in_dir) / "manifest.json"
    if not path.is_file():
        return None
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from exc


def build_parser(description):
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="run output directory containing the CSVs")
    parser.add_argument("--out", required=True, help="image file to write")
    return parser


def save(fig, out):
    fig.savefig(out, dpi=150, metadata={"Software": "figviz"})


def script(render):
    """Wrap a render(args) function into a CLI main() with exit codes."""

    def main(argv=None):
        try:
            code = render(argv)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = 1
        raise SystemExit(code or 0)

    return main
