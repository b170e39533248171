"""Instance ingestion and result serialization.

Two input formats: a JSON document with exact decimal (or p/q) coordinate
strings, and a plain line format `h <y> <x1> <x2>` / `v <x> <y1> <y2>` with
`#` comments.  All parsing is exact; serialization emits terminating decimals
where they exist and p/q strings otherwise, so round trips never lose a bit.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Sequence

from .geom import Point, Segment, Orient, Scalar, scalar_str
from .extremes import Role
from .solver import SolveResult, ReshapeResult


class ParseError(ValueError):
    pass


def _scalar(text, where: str) -> Fraction:
    if isinstance(text, (int,)):
        return Fraction(text)
    if isinstance(text, float):
        raise ParseError(f"{where}: floats are not exact; use strings")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"{where}: bad number {text!r}") from e


def _segment(orient: str, fixed, lo, hi, where: str) -> Segment:
    if orient not in ("h", "v"):
        raise ParseError(f"{where}: orient must be 'h' or 'v', got {orient!r}")
    f, a, b = _scalar(fixed, where), _scalar(lo, where), _scalar(hi, where)
    if not a < b:
        raise ParseError(f"{where}: need lo < hi, got {scalar_str(a)} >= {scalar_str(b)}")
    return Segment(Orient.H if orient == "h" else Orient.V, f, a, b)


def parse_instance(text: str) -> tuple[list[Segment], Optional[str]]:
    """Parse the JSON or line format; returns (segments, optional name)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno}: invalid JSON: {e.msg}") from e
        segs_doc = doc.get("segments")
        if not isinstance(segs_doc, list) or not segs_doc:
            raise ParseError("instance needs a non-empty 'segments' list")
        segs = []
        for i, sd in enumerate(segs_doc):
            where = f"segments[{i}]"
            try:
                segs.append(_segment(sd.get("orient"), sd.get("fixed"),
                                     sd.get("lo"), sd.get("hi"), where))
            except AttributeError:
                raise ParseError(f"{where}: segment must be an object")
        return segs, doc.get("name")
    segs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(f"line {lineno}: expected 'h|v fixed lo hi', got {raw!r}")
        segs.append(_segment(parts[0], parts[1], parts[2], parts[3],
                             f"line {lineno}"))
    if not segs:
        raise ParseError("no segments in input")
    return segs, None


def serialize_instance(segments: Sequence[Segment], name: Optional[str] = None) -> str:
    doc = {"segments": [
        {"orient": s.orient.value, "fixed": scalar_str(s.fixed),
         "lo": scalar_str(s.lo), "hi": scalar_str(s.hi)}
        for s in segments
    ]}
    if name is not None:
        doc["name"] = name
    return json.dumps(doc, indent=2, sort_keys=True)


def _point_doc(p: Point) -> list[str]:
    return [scalar_str(p.x), scalar_str(p.y)]


def result_to_doc(result: SolveResult) -> dict:
    """ResultDoc with exactly the fields of its status."""
    if result.status == "line":
        line = result.line
        if line.vertical:
            return {"status": "line", "line": {"x": scalar_str(line.x)}}
        return {"status": "line",
                "line": {"a": scalar_str(line.a), "b": scalar_str(line.b)}}
    if result.status == "rejected":
        return {"status": "rejected", "reason": result.rejection.reason.value}
    best = result.best
    chains_doc = {}
    if result.chains:
        for cid, ch in result.chains.items():
            chains_doc[cid.value] = [_point_doc(v) for v in ch.vertices]
    parts_doc = {}
    if result.partitions:
        for role, part in result.partitions.items():
            parts_doc[role.value] = [
                {"lo": _point_doc(part.host.point_at(iv.lo)),
                 "hi": _point_doc(part.host.point_at(iv.hi)),
                 "tangents": {cid.value: _point_doc(p)
                              for cid, p in sorted(iv.tangent.items(),
                                                   key=lambda kv: kv[0].value)}}
                for iv in part.intervals
            ]
    positions = {}
    for pl in best.assignment:
        for role in pl.roles:
            positions[role.value] = _point_doc(pl.point)
    return {
        "status": "polygon",
        "polygon": {
            "vertices": [_point_doc(v) for v in best.polygon.vertices],
            "area": scalar_str(best.area),
            "config": {"family": best.family.value, "code": best.code,
                       "canonical": best.canonical,
                       "bypassed": [r.value for r in best.bypassed]},
            "positions": positions,
        },
        "chains": chains_doc,
        "intervals": parts_doc,
    }


def reshape_to_doc(res: ReshapeResult) -> dict:
    doc = {"valid": res.valid, "violated": res.violated}
    if res.polygon is not None:
        doc["polygon"] = [_point_doc(v) for v in res.polygon.vertices]
        doc["area"] = scalar_str(res.area)
    return doc


def parse_positions(doc: dict) -> dict[Role, Point]:
    """Vertex positions per extreme-segment role, as sent by the viewer."""
    out: dict[Role, Point] = {}
    for key, val in doc.items():
        try:
            role = Role(key)
        except ValueError:
            raise ParseError(f"unknown extreme-segment role {key!r}")
        if not (isinstance(val, (list, tuple)) and len(val) == 2):
            raise ParseError(f"position of {key!r} must be [x, y]")
        out[role] = Point(_scalar(val[0], key), _scalar(val[1], key))
    return out
