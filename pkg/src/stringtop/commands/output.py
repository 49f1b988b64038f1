"""
Rendering of command documents as aligned tables, JSON or CSV.

Every document is a schemas.Document: rows are flat dicts, list values are
joined with spaces (tables) or semicolons (CSV). JSON carries the
top-level "schema" version field.
"""

import csv
import io
import logging
from pathlib import Path

from ..schemas import Document

logger = logging.getLogger(__name__)


def _cell(value, separator: str) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return separator.join(str(v) for v in value)
    return str(value)


def _columns(rows: list[dict]) -> list[str]:
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def render_table(document: Document) -> str:
    status = "PASS" if document.passed else "FAIL"
    lines = [f"{document.command} {document.manifold}: {status}"]
    columns = _columns(document.rows)
    if columns:
        cells = [[_cell(row.get(c), " ") for c in columns] for row in document.rows]
        widths = [
            max(len(c), *(len(line[i]) for line in cells)) for i, c in enumerate(columns)
        ]
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for line in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(line, widths)).rstrip())
    for key, value in document.details.items():
        if isinstance(value, (dict, list)):
            continue
        lines.append(f"{key}: {_cell(value, ' ')}")
    return "\n".join(lines) + "\n"


def render_csv(document: Document) -> str:
    buffer = io.StringIO()
    columns = _columns(document.rows)
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in document.rows:
        writer.writerow({c: _cell(row.get(c), ";") for c in columns})
    return buffer.getvalue()


def render_json(document: Document) -> str:
    return document.model_dump_json(by_alias=True, indent=2) + "\n"


RENDERERS = {"table": render_table, "json": render_json, "csv": render_csv}


def emit(document: Document, fmt: str, out: str | None, stream) -> None:
    text = RENDERERS[fmt](document)
    if out is None:
        stream.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {fmt} output of '{document.command}' to {out}")
