"""Canonical JSON and fixed-width text rendering for reports.

Canonical JSON is byte-stable: sorted keys, no insignificant whitespace, a
single trailing newline.  Only ints, strings, bools, None, lists and dicts
may appear in report payloads.
"""

import json


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def render_table(headers, rows) -> str:
    """Fixed-width table; deterministic for golden files."""
    columns = [list(map(str, col)) for col in zip(headers, *rows)] if rows else [
        [str(h)] for h in headers
    ]
    widths = [max(len(cell) for cell in col) for col in columns]
    lines = []

    def fmt(cells):
        return "  ".join(str(c).ljust(w) for c, w in zip(cells, widths)).rstrip()

    lines.append(fmt(headers))
    lines.append(fmt(["-" * w for w in widths]))
    for row in rows:
        lines.append(fmt(row))
    return "\n".join(lines) + "\n"


def render_text(payload, indent=0) -> str:
    """Generic deterministic text rendering of a JSON-like payload."""
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines) + "\n"
    if isinstance(payload, list):
        lines = []
        for value in payload:
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(value, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}- {value}")
        return ("\n".join(lines) + "\n") if lines else f"{pad}(empty)\n"
    return f"{pad}{payload}\n"
