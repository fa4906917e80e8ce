"""Plain-text and JSON serialisation of hypergraphs.

Text format: lines starting with ``#`` are comments, the first data line is
``n m r`` (``r = 0`` for non-uniform) and each of the next ``m`` lines lists
the vertices of one edge.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import Hypergraph, validate


class FormatError(ValueError):
    """Malformed hypergraph file; ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message, line=0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def parse_text(text: str) -> Hypergraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.strip()
        if not body or body.startswith("#"):
            continue
        try:
            rows.append((lineno, [int(tok) for tok in body.split()]))
        except ValueError:
            raise FormatError(f"expected integers, got {body!r}", lineno) from None
    if not rows:
        raise FormatError("missing header line 'n m r'")
    lineno, header = rows[0]
    if len(header) != 3:
        raise FormatError("header must be 'n m r'", lineno)
    n, m, r = header
    if n < 1 or m < 0 or r < 0:
        raise FormatError("header values out of range", lineno)
    body = rows[1:]
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise FormatError(f"header declares {m} edges, found {len(body)}", last)
    for lineno, e in body:
        if r and len(e) != r:
            raise FormatError(f"edge has {len(e)} vertices, expected {r}", lineno)
        if len(set(e)) != len(e):
            raise FormatError("edge repeats a vertex", lineno)
        bad = [v for v in e if not 0 <= v < n]
        if bad:
            raise FormatError(f"vertex {bad[0]} outside 0..{n - 1}", lineno)
    return Hypergraph(n, tuple(tuple(e) for _, e in body), r)


def format_text(h: Hypergraph, header: dict | None = None) -> str:
    lines = []
    if header is not None:
        lines.append("# " + json.dumps(header, sort_keys=True))
    lines.append(f"{h.n} {h.m} {h.r}")
    lines += [" ".join(map(str, e)) for e in h.edges]
    return "\n".join(lines) + "\n"


def header_of(text: str) -> dict | None:
    """The JSON object embedded in the first ``#`` comment, if any."""
    for raw in text.splitlines():
        if raw.startswith("#"):
            try:
                return json.loads(raw[1:])
            except json.JSONDecodeError:
                return None
        if raw.strip():
            return None
    return None


def to_json(h: Hypergraph) -> dict:
    return {"n": h.n, "r": h.r, "edges": [list(e) for e in h.edges]}


def from_json(obj: dict) -> Hypergraph:
    try:
        h = Hypergraph(int(obj["n"]), tuple(tuple(e) for e in obj["edges"]), int(obj.get("r", 0)))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad hypergraph object: {exc}") from None
    problems = validate(h)
    if problems:
        raise FormatError("; ".join(problems))
    return h


def read(path) -> Hypergraph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, exc.lineno) from None
    return parse_text(text)


def write(path, h: Hypergraph, header: dict | None = None) -> None:
    Path(path).write_text(format_text(h, header))
