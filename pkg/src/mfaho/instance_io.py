"""Instance file formats: a line-oriented text format and a JSON mirror.

Text format: '#' starts a comment line; the first significant line is the
header "n m"; then m arc lines "u v" (0-indexed); then optionally one
"part v1 v2 ..." line per partite set.  JSON mirror:
{"n": ..., "arcs": [[u, v], ...], "parts": [[...], ...]?}.
Both round-trip losslessly through parse/serialize.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .digraph import Digraph, PartiteStructure, build_digraph
from .errors import InputError


class ParseError(InputError):
    """Malformed instance input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


@dataclass
class ParsedInstance:
    digraph: Digraph
    parts: PartiteStructure | None = None
    warnings: list[str] = field(default_factory=list)


def parse_instance(text: str, fmt: str = "auto") -> ParsedInstance:
    if fmt == "auto":
        stripped = text.lstrip()
        fmt = "json" if stripped.startswith("{") else "text"
    if fmt == "json":
        return _parse_json(text)
    if fmt == "text":
        return _parse_text(text)
    raise InputError(f"unknown format {fmt!r}")


def serialize_instance(
    d: Digraph, parts: PartiteStructure | None = None, fmt: str = "text"
) -> str:
    if fmt == "json":
        payload: dict = {"n": d.n, "arcs": [list(a) for a in sorted(d.arcs)]}
        if parts is not None:
            payload["parts"] = [sorted(p) for p in parts.parts]
        return json.dumps(payload) + "\n"
    if fmt == "text":
        lines = [f"{d.n} {d.m}"]
        lines += [f"{u} {v}" for u, v in sorted(d.arcs)]
        if parts is not None:
            lines += ["part " + " ".join(str(v) for v in sorted(p)) for p in parts.parts]
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown format {fmt!r}")


def _parse_text(text: str) -> ParsedInstance:
    header: tuple[int, int] | None = None
    arcs: list[tuple[int, int]] = []
    part_rows: list[list[int]] = []
    warnings: list[str] = []
    seen: set[tuple[int, int]] = set()
    declared_m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise ParseError("header must be 'n m'", lineno)
            try:
                n, declared_m = int(fields[0]), int(fields[1])
            except ValueError:
                raise ParseError("header must contain two integers", lineno) from None
            if n < 0 or declared_m < 0:
                raise ParseError("header counts must be nonnegative", lineno)
            header = (n, declared_m)
            continue
        if fields[0] == "part":
            try:
                part_rows.append([int(f) for f in fields[1:]])
            except ValueError:
                raise ParseError("part line must list integers", lineno) from None
            continue
        if len(part_rows):
            raise ParseError("arc lines cannot follow part lines", lineno)
        if len(fields) != 2:
            raise ParseError(f"expected an arc line 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError("arc endpoints must be integers", lineno) from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"arc ({u}, {v}) endpoint out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop ({u}, {v})", lineno)
        if (u, v) in seen:
            warnings.append(f"line {lineno}: duplicate arc ({u}, {v})")
        seen.add((u, v))
        arcs.append((u, v))
    if header is None:
        raise ParseError("empty instance: missing 'n m' header")
    n, declared_m = header
    if len(seen) != declared_m and len(arcs) != declared_m:
        warnings.append(
            f"header declares {declared_m} arcs, found {len(arcs)} ({len(seen)} distinct)"
        )
    d = build_digraph(n, arcs)
    parts = _build_parts(n, part_rows) if part_rows else None
    return ParsedInstance(d, parts, warnings)


def _parse_json(text: str) -> ParsedInstance:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(payload, dict) or "n" not in payload or "arcs" not in payload:
        raise ParseError("JSON instance needs 'n' and 'arcs' fields")
    n = payload["n"]
    if not isinstance(n, int):
        raise ParseError("'n' must be an integer")
    arcs = []
    for i, pair in enumerate(payload["arcs"]):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ParseError(f"arc #{i} is not a pair")
        u, v = pair
        if not (isinstance(u, int) and isinstance(v, int)):
            raise ParseError(f"arc #{i} endpoints must be integers")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"arc #{i} ({u}, {v}) endpoint out of range")
        if u == v:
            raise ParseError(f"arc #{i} is a self-loop ({u}, {v})")
        arcs.append((u, v))
    d = build_digraph(n, arcs)
    parts = None
    if payload.get("parts") is not None:
        parts = _build_parts(n, payload["parts"])
    return ParsedInstance(d, parts, [])


def _build_parts(n: int, rows) -> PartiteStructure:
    try:
        return PartiteStructure.from_parts(n, [set(r) for r in rows])
    except InputError as exc:
        raise ParseError(f"invalid partite sets: {exc}") from None
