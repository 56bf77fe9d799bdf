"""Points, rectangles, regions and instance normalization.

All algorithmic code works on the *grid* form of an instance: the ``n`` points
of ``A ∪ B`` have pairwise distinct x- and y-coordinates drawn from ``1..n``.
:func:`normalize` produces that form from arbitrary rational input and keeps
the monotone maps needed to report results back in input coordinates.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .errors import InvalidInstance

Number = Union[int, Fraction, str, float]


class Point(NamedTuple):
    x: int
    y: int


def leq(p, q) -> bool:
    """Componentwise ``p <= q``."""
    return p[0] <= q[0] and p[1] <= q[1]


@dataclass(frozen=True, slots=True)
class Rect:
    """Closed rectangle ``[a.x, b.x] x [a.y, b.y]`` spanned by ``a ∈ A`` and ``b ∈ B``."""

    a: Point
    b: Point
    a_idx: int = -1
    b_idx: int = -1

    def __post_init__(self):
        if not (self.a.x <= self.b.x and self.a.y <= self.b.y):
            raise ValueError(f"corner {self.a} is not below-left of {self.b}")

    # Corner names follow A = bottom-left, B = top-right, C = top-left, D = bottom-right.
    @property
    def A(self) -> Point:
        return self.a

    @property
    def B(self) -> Point:
        return self.b

    @property
    def C(self) -> Point:
        return Point(self.a.x, self.b.y)

    @property
    def D(self) -> Point:
        return Point(self.b.x, self.a.y)

    def corners(self):
        return (self.a, self.b, self.C, self.D)

    @property
    def width(self):
        return self.b.x - self.a.x

    @property
    def height(self):
        return self.b.y - self.a.y

    def contains(self, p) -> bool:
        return self.a.x <= p[0] <= self.b.x and self.a.y <= p[1] <= self.b.y

    def contains_in_interior(self, p) -> bool:
        return self.a.x < p[0] < self.b.x and self.a.y < p[1] < self.b.y

    @property
    def key(self):
        return (self.a_idx, self.b_idx)

    def __repr__(self):
        return f"Rect([{self.a.x},{self.b.x}]x[{self.a.y},{self.b.y}])"


def intersects(r: Rect, s: Rect) -> bool:
    return r.a.x <= s.b.x and s.a.x <= r.b.x and r.a.y <= s.b.y and s.a.y <= r.b.y


def corner_free(r: Rect, s: Rect) -> bool:
    """True when ``r`` and ``s`` intersect and no corner of one is interior to the other."""
    if not intersects(r, s):
        return False
    for c in r.corners():
        if s.contains_in_interior(c):
            return False
    for c in s.corners():
        if r.contains_in_interior(c):
            return False
    return True


def corner_intersects(r: Rect, s: Rect) -> bool:
    return intersects(r, s) and not corner_free(r, s)


# -- regions ---------------------------------------------------------------

RawRect = tuple  # (x1, y1, x2, y2) with x1 <= x2, y1 <= y2


class Region:
    """Containment oracle for the region a rectangle must lie in.

    ``Region.full()`` is the whole plane.  Otherwise the region is a finite
    union of closed raw rectangles, compiled into a boolean mask over the
    joint compression of the instance coordinates and the region's own
    coordinates.  Each axis is refined into "lines" (even half-indices) and
    open gaps between consecutive values (odd half-indices) so that the
    containment test is exact, including degenerate rectangles.  Queries are
    O(1) via a 2-D prefix sum of uncovered cells.
    """

    def __init__(self, rects=None):
        self.rects: Optional[tuple] = None if rects is None else tuple(rects)
        self._fx = self._fy = None
        self._prefix = None

    @classmethod
    def full(cls) -> "Region":
        return cls(None)

    @property
    def is_full(self) -> bool:
        return self.rects is None

    def _compile(self, raw_x: Sequence[Fraction], raw_y: Sequence[Fraction]):
        """Bind grid coordinates ``1..n`` to raw values and build the mask."""
        if self.rects is None:
            return
        xs = sorted(set(raw_x).union(r[0] for r in self.rects).union(r[2] for r in self.rects))
        ys = sorted(set(raw_y).union(r[1] for r in self.rects).union(r[3] for r in self.rects))
        nx, ny = 2 * len(xs) - 1, 2 * len(ys) - 1
        diff = np.zeros((nx + 1, ny + 1), dtype=np.int32)
        for x1, y1, x2, y2 in self.rects:
            i1, i2 = 2 * bisect_left(xs, x1), 2 * bisect_left(xs, x2)
            j1, j2 = 2 * bisect_left(ys, y1), 2 * bisect_left(ys, y2)
            diff[i1, j1] += 1
            diff[i2 + 1, j1] -= 1
            diff[i1, j2 + 1] -= 1
            diff[i2 + 1, j2 + 1] += 1
        cover = diff.cumsum(0).cumsum(1)[:nx, :ny]
        blocked = (cover == 0).astype(np.int32)
        prefix = np.zeros((nx + 1, ny + 1), dtype=np.int32)
        prefix[1:, 1:] = blocked.cumsum(0).cumsum(1)
        self._prefix = prefix
        # index 0 unused so that grid coordinate g maps to _fx[g]
        self._fx = [0] + [2 * bisect_left(xs, v) for v in raw_x]
        self._fy = [0] + [2 * bisect_left(ys, v) for v in raw_y]

    def contains_rect(self, ax: int, ay: int, bx: int, by: int) -> bool:
        """Is the raw image of grid rectangle ``[ax,bx] x [ay,by]`` inside the region?"""
        if self._prefix is None:
            return True
        i1, i2 = self._fx[ax], self._fx[bx] + 1
        j1, j2 = self._fy[ay], self._fy[by] + 1
        p = self._prefix
        return int(p[i2, j2] - p[i1, j2] - p[i2, j1] + p[i1, j1]) == 0

    def contains_raw_rect(self, x1, y1, x2, y2) -> bool:
        """Naive raw-space containment, by splitting on every relevant coordinate."""
        if self.rects is None:
            return True
        xs = sorted({x1, x2, *(r[0] for r in self.rects), *(r[2] for r in self.rects)})
        ys = sorted({y1, y2, *(r[1] for r in self.rects), *(r[3] for r in self.rects)})
        xs = [v for v in xs if x1 <= v <= x2]
        ys = [v for v in ys if y1 <= v <= y2]
        # sample every line and every open gap by a representative value
        sx = xs + [(u + v) / 2 for u, v in zip(xs, xs[1:])]
        sy = ys + [(u + v) / 2 for u, v in zip(ys, ys[1:])]
        return all(
            any(r[0] <= px <= r[2] and r[1] <= py <= r[3] for r in self.rects)
            for px in sx for py in sy
        )

    def __eq__(self, other):
        return isinstance(other, Region) and self.rects == other.rects

    def __repr__(self):
        return "Region.full()" if self.rects is None else f"Region({len(self.rects)} rects)"


# -- instances -------------------------------------------------------------


def to_fraction(v: Number) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


@dataclass(frozen=True)
class Instance:
    """A normalized bicolored rectangular family ``R(A, B, Z)``."""

    A: tuple
    B: tuple
    z: Region
    raw_x: tuple  # raw_x[g - 1] is the raw x-value of grid column g
    raw_y: tuple
    raw_a: tuple = field(repr=False, default=())
    raw_b: tuple = field(repr=False, default=())

    @property
    def n(self) -> int:
        return len(self.A) + len(self.B)

    def gamma(self, a_idx: int, b_idx: int) -> Optional[Rect]:
        return gamma(self, a_idx, b_idx)

    def raw_coord(self, v, axis: int) -> Fraction:
        """Map a grid coordinate back to input space.

        Integral values map to the raw coordinate of that grid line; values
        strictly between grid lines ``g`` and ``g + 1`` map to the midpoint of
        the corresponding raw values.
        """
        table = self.raw_x if axis == 0 else self.raw_y
        v = Fraction(v)
        if v.denominator == 1:
            return table[int(v) - 1]
        g = int(v)  # floor for positive v
        if not 1 <= g < len(table):
            raise ValueError(f"grid value {v} outside the instance range")
        return (table[g - 1] + table[g]) / 2

    def to_raw(self, p) -> tuple:
        return (self.raw_coord(p[0], 0), self.raw_coord(p[1], 1))


def normalize(raw_a, raw_b, raw_z=None) -> Instance:
    """Compress raw points to the grid form.

    Ties on a raw coordinate are broken by color (A first), then by the other
    coordinate, then by input index.  Putting A first keeps ``a <= b`` and
    every interval overlap between an A-corner and a B-corner unchanged.
    ``raw_z`` is ``None``/``"full"`` or an iterable of ``(x1, y1, x2, y2)``.
    """
    pa = [tuple(to_fraction(c) for c in p) for p in raw_a]
    pb = [tuple(to_fraction(c) for c in p) for p in raw_b]
    for p in pa + pb:
        if len(p) != 2:
            raise InvalidInstance(f"point {p} is not two-dimensional")
    labeled = [(p, 0, i) for i, p in enumerate(pa)] + [(p, 1, i) for i, p in enumerate(pb)]
    seen = {}
    for p, color, i in labeled:
        if p in seen:
            c0, i0 = seen[p]
            raise InvalidInstance(
                f"duplicate point {tuple(map(str, p))}: {'AB'[c0]}[{i0}] and {'AB'[color]}[{i}]")
        seen[p] = (color, i)

    by_x = sorted(labeled, key=lambda t: (t[0][0], t[1], t[0][1], t[2]))
    by_y = sorted(labeled, key=lambda t: (t[0][1], t[1], t[0][0], t[2]))
    gx, gy = {}, {}
    for g, (_, color, i) in enumerate(by_x, 1):
        gx[color, i] = g
    for g, (_, color, i) in enumerate(by_y, 1):
        gy[color, i] = g
    A = tuple(Point(gx[0, i], gy[0, i]) for i in range(len(pa)))
    B = tuple(Point(gx[1, i], gy[1, i]) for i in range(len(pb)))
    raw_x = tuple(t[0][0] for t in by_x)
    raw_y = tuple(t[0][1] for t in by_y)

    if raw_z is None or raw_z == "full":
        z = Region.full()
    else:
        rects = []
        for r in raw_z:
            x1, y1, x2, y2 = (to_fraction(c) for c in r)
            if x1 > x2 or y1 > y2:
                raise InvalidInstance(f"region rectangle {r} has inverted corners")
            rects.append((x1, y1, x2, y2))
        z = Region(rects)
        z._compile(raw_x, raw_y)
    return Instance(A, B, z, raw_x, raw_y, tuple(pa), tuple(pb))


def gamma(inst: Instance, a_idx: int, b_idx: int) -> Optional[Rect]:
    """The rectangle spanned by ``A[a_idx]`` and ``B[b_idx]`` if it belongs to the family."""
    a, b = inst.A[a_idx], inst.B[b_idx]
    if a.x > b.x or a.y > b.y:
        return None
    if not inst.z.contains_rect(a.x, a.y, b.x, b.y):
        return None
    return Rect(a, b, a_idx, b_idx)


def all_rectangles(inst: Instance) -> list:
    """Every member of ``R(A, B, Z)``; quadratic, meant for oracles and small inputs."""
    out = []
    for i in range(len(inst.A)):
        for j in range(len(inst.B)):
            r = gamma(inst, i, j)
            if r is not None:
                out.append(r)
    return out
