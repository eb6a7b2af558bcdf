"""CSV/JSON report writers with deterministic, golden-file-stable output.

Floats are rendered with 17 significant digits, '.' decimal separator and
'\\n' line endings; metadata goes into '#'-prefixed comment lines so the
files stay trivially ingestible.
"""

import io
import json
import sys
from contextlib import contextmanager

from . import __version__


def format_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def meta_lines(meta):
    lines = [f"# qapprox {__version__}"]
    if meta:
        for key in sorted(meta):
            lines.append(f"# config: {key}={meta[key]}")
    return lines


def write_csv(stream, columns, rows, meta=None):
    for line in meta_lines(meta):
        stream.write(line + "\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(format_value(v) for v in row) + "\n")


def write_json(stream, columns, rows, meta=None):
    data = {col: [] for col in columns}
    for row in rows:
        for col, v in zip(columns, row):
            data[col].append(format_value(v) if isinstance(v, float) else v)
    doc = {
        "tool": f"qapprox {__version__}",
        "config": dict(sorted((meta or {}).items())),
        "columns": list(columns),
        "data": data,
    }
    json.dump(doc, stream, indent=2, sort_keys=False)
    stream.write("\n")


@contextmanager
def open_output(path):
    """Open an output path for writing; '-' means stdout."""
    if path == "-" or path is None:
        yield sys.stdout
    else:
        with io.open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh
