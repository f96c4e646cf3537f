"""CSV emission with self-describing provenance headers.

Every file starts with ``#``-prefixed lines that form a valid run-config
document (section headers plus key = value pairs), so the exact producing
configuration can be recovered from the output alone. Data rows carry 12
significant digits.
"""
from __future__ import annotations

import numpy as np

__all__ = ["emit_csv", "read_csv"]

_FMT = "{:.11e}"


def _render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ", ".join(_render_value(x) for x in v)
    return str(v)


def provenance_text(sections: dict) -> str:
    """Render ``{section: {key: value}}`` as a config document."""
    lines = []
    for section, entries in sections.items():
        lines.append(f"[{section}]")
        for key, value in entries.items():
            if value is None:
                continue
            lines.append(f"{key} = {_render_value(value)}")
        lines.append("")
    return "\n".join(lines)


def emit_csv(path, columns, provenance: dict | None = None) -> str:
    """Write named columns to ``path``.

    ``columns`` is a sequence of (name, array) pairs of equal length;
    ``provenance`` is a {section: {key: value}} mapping recorded as comment
    lines above the header.
    """
    columns = [(name, np.asarray(vals)) for name, vals in columns]
    if not columns:
        raise ValueError("no columns to write")
    n = len(columns[0][1])
    for name, vals in columns:
        if vals.ndim != 1 or len(vals) != n:
            raise ValueError(f"column {name!r} length {len(vals)} != {n}")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            if provenance:
                for line in provenance_text(provenance).splitlines():
                    fh.write(f"# {line}".rstrip() + "\n")
            fh.write(",".join(name for name, _ in columns) + "\n")
            data = [vals for _, vals in columns]
            for i in range(n):
                fh.write(",".join(_FMT.format(float(col[i])) for col in data) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return str(path)


def read_csv(path):
    """Read a file written by ``emit_csv``.

    Returns (config_text, {column: array}); ``config_text`` is the comment
    block with the ``#`` prefixes stripped, parseable as a run config.
    """
    comment_lines = []
    header = None
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                comment_lines.append(line[1:].lstrip(" "))
            elif header is None:
                header = line.split(",")
            elif line:
                rows.append([float(x) for x in line.split(",")])
    if header is None:
        raise ValueError(f"{path} has no header row")
    data = np.array(rows, dtype=float) if rows else np.empty((0, len(header)))
    return "\n".join(comment_lines), {
        name: data[:, j] for j, name in enumerate(header)
    }
