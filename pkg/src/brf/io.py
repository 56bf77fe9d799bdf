"""Versioned JSON documents for instances and solutions.

Coordinates and weights are exact: integers are written as JSON numbers,
other rationals as ``"p/q"`` strings.  On input, JSON numbers with a
fraction part are read as exact decimals, and strings may be ``"p/q"`` or
decimal literals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DocumentError
from .geometry import Instance, normalize

VERSION = "brf/1"


# -- scalars ---------------------------------------------------------------


def encode_number(v) -> object:
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def decode_number(v, where: str) -> Fraction:
    if isinstance(v, bool):
        raise DocumentError(f"expected a number, got {v!r}", where)
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise DocumentError(f"expected a number or 'p/q' string, got {v!r}", where)


def _loads(text: str):
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, None, exc.lineno) from None


def _line_of(text: str, key: str) -> Optional[int]:
    """First line mentioning ``"key"``, for error messages."""
    needle = f'"{key}"'
    for no, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return no
    return None


def _require(obj, key, where, text):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"missing field '{key}'", where, _line_of(text, where or key))
    return obj[key]


def _check_version(obj, text):
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object", None, 1)
    ver = _require(obj, "version", "version", text)
    if ver != VERSION:
        raise DocumentError(f"unsupported version {ver!r}, expected {VERSION!r}", "version",
                            _line_of(text, "version"))


def _points(raw, where, text):
    if not isinstance(raw, list):
        raise DocumentError("expected a list of [x, y] pairs", where, _line_of(text, where))
    out = []
    for k, p in enumerate(raw):
        if not isinstance(p, list) or len(p) != 2:
            raise DocumentError(f"expected [x, y], got {p!r}", f"{where}[{k}]", _line_of(text, where))
        out.append(tuple(decode_number(c, f"{where}[{k}]") for c in p))
    return out


def _dump(obj) -> str:
    """Pretty JSON with every innermost list kept on one line."""
    def enc(v, indent):
        pad = " " * indent
        if isinstance(v, dict):
            if not v:
                return "{}"
            items = [f'{pad}  {json.dumps(k)}: {enc(x, indent + 2)}' for k, x in v.items()]
            return "{\n" + ",\n".join(items) + f"\n{pad}}}"
        if isinstance(v, list):
            if not v or not any(isinstance(x, (list, dict)) for x in v):
                return json.dumps(v)
            items = [f"{pad}  {enc(x, indent + 2)}" for x in v]
            return "[\n" + ",\n".join(items) + f"\n{pad}]"
        return json.dumps(v)
    return enc(obj, 0) + "\n"


# -- instances -------------------------------------------------------------


@dataclass
class InstanceDocument:
    a: list  # raw (x, y) Fractions
    b: list
    region: Optional[list] = None  # None for the full plane, else raw (x1, y1, x2, y2)
    weights: list = field(default_factory=list)  # (a_idx, b_idx, Fraction)
    meta: dict = field(default_factory=dict)

    def to_instance(self) -> Instance:
        return normalize(self.a, self.b, self.region)

    def weight_map(self) -> dict:
        return {(i, j): w for i, j, w in self.weights}

    def to_json(self) -> str:
        obj = {
            "version": VERSION,
            "A": [[encode_number(c) for c in p] for p in self.a],
            "B": [[encode_number(c) for c in p] for p in self.b],
            "region": "full" if self.region is None else [[encode_number(c) for c in r] for r in self.region],
        }
        if self.weights:
            obj["weights"] = [[i, j, encode_number(w)] for i, j, w in self.weights]
        if self.meta:
            obj["meta"] = self.meta
        return _dump(obj)

    @classmethod
    def from_instance(cls, inst: Instance, weights: Optional[dict] = None, meta=None):
        region = None if inst.z.is_full else [tuple(r) for r in inst.z.rects]
        ws = sorted((i, j, Fraction(w)) for (i, j), w in (weights or {}).items())
        return cls(list(inst.raw_a), list(inst.raw_b), region, ws, dict(meta or {}))

    @classmethod
    def from_json(cls, text: str) -> "InstanceDocument":
        obj = _loads(text)
        _check_version(obj, text)
        a = _points(_require(obj, "A", "A", text), "A", text)
        b = _points(_require(obj, "B", "B", text), "B", text)
        reg = obj.get("region", "full")
        region = None
        if reg != "full":
            if not isinstance(reg, list):
                raise DocumentError("region must be \"full\" or a list of [x1, y1, x2, y2]",
                                    "region", _line_of(text, "region"))
            region = []
            for k, r in enumerate(reg):
                if not isinstance(r, list) or len(r) != 4:
                    raise DocumentError(f"expected [x1, y1, x2, y2], got {r!r}", f"region[{k}]",
                                        _line_of(text, "region"))
                r = tuple(decode_number(c, f"region[{k}]") for c in r)
                if r[0] > r[2] or r[1] > r[3]:
                    raise DocumentError("region rectangle has inverted corners", f"region[{k}]",
                                        _line_of(text, "region"))
                region.append(r)
        weights = []
        seen = set()
        for k, t in enumerate(obj.get("weights", [])):
            where = f"weights[{k}]"
            line = _line_of(text, "weights")
            if not isinstance(t, list) or len(t) != 3:
                raise DocumentError(f"expected [aIndex, bIndex, weight], got {t!r}", where, line)
            i, j, w = t
            if not (isinstance(i, int) and isinstance(j, int)) or isinstance(i, bool) or isinstance(j, bool):
                raise DocumentError("indices must be integers", where, line)
            if not (0 <= i < len(a) and 0 <= j < len(b)):
                raise DocumentError(f"index pair ({i}, {j}) out of range", where, line)
            w = decode_number(w, where)
            if w < 0:
                raise DocumentError(f"negative weight {w}", where, line)
            if (i, j) in seen:
                raise DocumentError(f"duplicate weight for ({i}, {j})", where, line)
            seen.add((i, j))
            weights.append((i, j, w))
        meta = obj.get("meta", {})
        if not isinstance(meta, dict):
            raise DocumentError("meta must be an object", "meta", _line_of(text, "meta"))
        return cls(a, b, region, sorted(weights), meta)


# -- solutions -------------------------------------------------------------


@dataclass
class SolutionDocument:
    mis_size: int
    mhs_size: int
    independent: list  # (a_idx, b_idx)
    hitting: list  # raw (x, y) Fractions
    diagnostics: dict = field(default_factory=dict)
    timing: Optional[dict] = None

    @classmethod
    def from_solution(cls, inst: Instance, sol, timing=None) -> "SolutionDocument":
        st = sol.stats
        diag = {
            "minimal": len(sol.minimal),
            "cfi": st.size_k,
            "edges": st.edge_count,
            "bound": st.size_bound,
            "stabbing_lines": st.stabbing_lines,
            "flips": sol.flips,
        }
        return cls(
            mis_size=len(sol.independent),
            mhs_size=len(sol.hitting),
            independent=sorted((r.a_idx, r.b_idx) for r in sol.independent),
            hitting=sorted(inst.to_raw(p) for p in sol.hitting),
            diagnostics=diag,
            timing=timing,
        )

    def to_json(self) -> str:
        obj = {
            "version": VERSION,
            "misSize": self.mis_size,
            "mhsSize": self.mhs_size,
            "independent": [list(e) for e in self.independent],
            "hitting": [[encode_number(c) for c in p] for p in self.hitting],
            "diagnostics": self.diagnostics,
        }
        if self.timing is not None:
            obj["timing"] = self.timing
        return _dump(obj)

    @classmethod
    def from_json(cls, text: str) -> "SolutionDocument":
        obj = _loads(text)
        _check_version(obj, text)
        mis = _require(obj, "misSize", "misSize", text)
        mhs = _require(obj, "mhsSize", "mhsSize", text)
        for key, v in (("misSize", mis), ("mhsSize", mhs)):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise DocumentError("expected a nonnegative integer", key, _line_of(text, key))
        ind = []
        for k, e in enumerate(_require(obj, "independent", "independent", text)):
            if (not isinstance(e, list) or len(e) != 2
                    or not all(isinstance(v, int) and not isinstance(v, bool) for v in e)):
                raise DocumentError(f"expected [aIndex, bIndex], got {e!r}", f"independent[{k}]",
                                    _line_of(text, "independent"))
            ind.append(tuple(e))
        hit = _points(_require(obj, "hitting", "hitting", text), "hitting", text)
        diag = obj.get("diagnostics", {})
        if not isinstance(diag, dict):
            raise DocumentError("diagnostics must be an object", "diagnostics",
                                _line_of(text, "diagnostics"))
        # diagnostics are plain numbers; undo the exact-decimal parse of floats
        timing = obj.get("timing")
        if isinstance(timing, dict):
            timing = {k: float(v) if isinstance(v, Fraction) else v for k, v in timing.items()}
        return cls(mis, mhs, ind, hit, diag, timing)


def verify_document(inst: Instance, doc: SolutionDocument) -> list:
    """Re-check a solution document in raw coordinates; returns violation strings."""
    from .enumeration import minimal_rectangles

    out = []
    if doc.mis_size != len(doc.independent):
        out.append(f"misSize {doc.mis_size} but {len(doc.independent)} independent rectangles")
    if doc.mhs_size != len(doc.hitting):
        out.append(f"mhsSize {doc.mhs_size} but {len(doc.hitting)} hitting points")
    if len(doc.independent) != len(doc.hitting):
        out.append(f"|I*| = {len(doc.independent)} differs from |H*| = {len(doc.hitting)}")
    boxes = []
    for i, j in doc.independent:
        if not (0 <= i < len(inst.A) and 0 <= j < len(inst.B)) or inst.gamma(i, j) is None:
            out.append(f"({i}, {j}) is not a rectangle of the family")
            continue
        (x1, y1), (x2, y2) = inst.raw_a[i], inst.raw_b[j]
        boxes.append(((i, j), x1, y1, x2, y2))
    for k in range(len(boxes)):
        for m in range(k + 1, len(boxes)):
            e, ax1, ay1, ax2, ay2 = boxes[k]
            f, bx1, by1, bx2, by2 = boxes[m]
            if ax1 <= bx2 and bx1 <= ax2 and ay1 <= by2 and by1 <= ay2:
                out.append(f"independent rectangles {e} and {f} intersect")
    pts = list(doc.hitting)
    for r in minimal_rectangles(inst).rects:
        (x1, y1), (x2, y2) = inst.raw_a[r.a_idx], inst.raw_b[r.b_idx]
        if not any(x1 <= px <= x2 and y1 <= py <= y2 for px, py in pts):
            out.append(f"rectangle ({r.a_idx}, {r.b_idx}) is not hit")
    return out


def read_text(path: str) -> str:
    import sys

    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_instance(path: str) -> InstanceDocument:
    return InstanceDocument.from_json(read_text(path))


def load_rectangles(text: str) -> list:
    """A rectangle family: ``{"version": ..., "rectangles": [[x1, y1, x2, y2], ...]}``
    or a bare list of quadruples."""
    obj = _loads(text)
    if isinstance(obj, dict):
        _check_version(obj, text)
        obj = _require(obj, "rectangles", "rectangles", text)
    if not isinstance(obj, list):
        raise DocumentError("expected a list of rectangles", "rectangles", 1)
    out = []
    for k, r in enumerate(obj):
        if not isinstance(r, list) or len(r) != 4:
            raise DocumentError(f"expected [x1, y1, x2, y2], got {r!r}", f"rectangles[{k}]",
                                _line_of(text, "rectangles"))
        out.append(tuple(decode_number(c, f"rectangles[{k}]") for c in r))
    return out
