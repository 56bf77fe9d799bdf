"""Minimal rectangles, the greedy corner-free family and its size diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NoWitness
from .geometry import Instance, Rect, corner_intersects
from .rangeindex import DynamicPointIndex


@dataclass
class MinimalFamily:
    """Inclusion-wise minimal rectangles, sorted in right-top order.

    Right-top order sorts by the top-left corner ``(a.x, b.y)``.
    """

    rects: list
    n: int
    position: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.position:
            self.position = {r.key: i for i, r in enumerate(self.rects)}

    def __len__(self):
        return len(self.rects)

    def __iter__(self):
        return iter(self.rects)

    def __getitem__(self, i):
        return self.rects[i]


@dataclass
class CfiFamily:
    """A maximal corner-free subfamily of a :class:`MinimalFamily`."""

    rects: list
    positions: list  # index of each member in the minimal family
    corners: Optional[DynamicPointIndex] = field(default=None, repr=False)

    def __len__(self):
        return len(self.rects)

    def __iter__(self):
        return iter(self.rects)

    def __getitem__(self, i):
        return self.rects[i]


def _columns(inst: Instance):
    """Per grid column: the y-value, color (0 = A, 1 = B) and index of its point."""
    n = inst.n
    ys = np.empty(n, dtype=np.int64)
    color = np.empty(n, dtype=np.int8)
    idx = np.empty(n, dtype=np.int64)
    for i, p in enumerate(inst.A):
        ys[p.x - 1], color[p.x - 1], idx[p.x - 1] = p.y, 0, i
    for j, p in enumerate(inst.B):
        ys[p.x - 1], color[p.x - 1], idx[p.x - 1] = p.y, 1, j
    return ys, color, idx


def minimal_rectangles(inst: Instance) -> MinimalFamily:
    """All inclusion-wise minimal members of ``R(A, B, Z)`` in right-top order.

    A member is minimal iff its interior holds no point of ``A ∪ B``.  For a
    fixed corner ``a`` the points ``p`` with an empty ``Γ(a, p)`` form the
    staircase of upper-right points whose y-value is a strict prefix minimum
    when scanning columns to the right of ``a``; the B-points on that
    staircase, read in reverse, are the minimal rectangles at ``a`` by
    increasing ``b.y``.
    """
    n = inst.n
    rects = []
    if not inst.A or not inst.B:
        return MinimalFamily(rects, n)
    ys, color, idx = _columns(inst)
    big = n + 1
    z = inst.z
    B = inst.B
    for a_idx, a in sorted(enumerate(inst.A), key=lambda t: t[1].x):
        tail = ys[a.x:]
        if not len(tail):
            continue
        vals = np.where(tail > a.y, tail, big)
        run = np.minimum.accumulate(vals)
        prev = np.empty_like(run)
        prev[0] = big
        prev[1:] = run[:-1]
        stair = np.nonzero((vals < prev) & (color[a.x:] == 1))[0]
        for k in stair[::-1]:
            b_idx = int(idx[a.x + k])
            b = B[b_idx]
            if z.is_full or z.contains_rect(a.x, a.y, b.x, b.y):
                rects.append(Rect(a, b, a_idx, b_idx))
    return MinimalFamily(rects, n)


def greedy_cfi(mf: MinimalFamily) -> CfiFamily:
    """Greedy maximal corner-free family over ``mf`` in right-top order.

    A rectangle is accepted when it is corner-free with every member accepted
    so far.  For minimal rectangles processed in right-top order this is the
    same as asking whether the bottom-right corner of some accepted member
    lies in its open interior, which is what the corner index answers.
    """
    corners = DynamicPointIndex(max(mf.n, 1))
    rects, positions = [], []
    for i, r in enumerate(mf.rects):
        q = (r.a.x + 1, r.a.y + 1, r.b.x - 1, r.b.y - 1)
        if corners.any_in(q) is None:
            rects.append(r)
            positions.append(i)
            corners.insert(r.D)
    return CfiFamily(rects, positions, corners)


def greedy_cfi_static(mf: MinimalFamily) -> CfiFamily:
    """Variant that tests against bottom-right corners of *all* minimal rectangles.

    Kept for comparison with :func:`greedy_cfi`; the solver does not use it.
    """
    corners = DynamicPointIndex(max(mf.n, 1), (r.D for r in mf.rects))
    rects, positions = [], []
    for i, r in enumerate(mf.rects):
        if corners.any_in((r.a.x + 1, r.a.y + 1, r.b.x - 1, r.b.y - 1)) is None:
            rects.append(r)
            positions.append(i)
    return CfiFamily(rects, positions, corners)


def witness(mf: MinimalFamily, cfi: CfiFamily, r: Rect) -> int:
    """Index in ``cfi`` of the latest earlier member that corner-intersects ``r``."""
    pos = mf.position.get(r.key)
    if pos is None:
        raise NoWitness(f"{r} is not a minimal rectangle")
    if pos in set(cfi.positions):
        raise NoWitness(f"{r} belongs to the corner-free family")
    for j in range(len(cfi.rects) - 1, -1, -1):
        if cfi.positions[j] < pos and corner_intersects(cfi.rects[j], r):
            return j
    raise NoWitness(f"no member corner-intersects {r}; family is not maximal")


# -- diagnostics -----------------------------------------------------------


@dataclass(frozen=True)
class CfiStats:
    size_k: int
    edge_count: int
    size_bound: int
    k_per_point: float
    stabbing_lines: int


def stabbing_lines(rects) -> int:
    """Fewest vertical lines meeting every rectangle (greedy interval piercing)."""
    count, last = 0, None
    for lo, hi in sorted(((r.a.x, r.b.x) for r in rects), key=lambda t: t[1]):
        if last is None or lo > last:
            count += 1
            last = hi
    return count


def size_bound(n: int, r: int) -> int:
    """``n (1 + floor(log2 r)) - r``; zero for an empty family."""
    if r <= 0:
        return 0
    return n * (1 + int(math.floor(math.log2(r)))) - r


def intersection_edge_count(rects) -> int:
    k = len(rects)
    if k < 2:
        return 0
    arr = np.array([(r.a.x, r.a.y, r.b.x, r.b.y) for r in rects], dtype=np.int64)
    ax, ay, bx, by = arr.T
    total = 0
    for i in range(k - 1):
        total += int(np.count_nonzero(
            (ax[i] <= bx[i + 1:]) & (ax[i + 1:] <= bx[i])
            & (ay[i] <= by[i + 1:]) & (ay[i + 1:] <= by[i])))
    return total


def cfi_stats(cfi: CfiFamily, inst: Instance, edge_count: Optional[int] = None) -> CfiStats:
    n = inst.n
    k = len(cfi)
    if edge_count is None:
        edge_count = intersection_edge_count(cfi.rects)
    r = stabbing_lines(cfi.rects)
    return CfiStats(k, edge_count, size_bound(n, r), k / n if n else 0.0, r)


def is_corner_free_family(rects) -> bool:
    return not any(
        corner_intersects(rects[i], rects[j])
        for i in range(len(rects)) for j in range(i + 1, len(rects))
    )


def interior_is_empty(inst: Instance, r: Rect) -> bool:
    return not any(r.contains_in_interior(p) for p in inst.A + inst.B)


__all__ = [
    "MinimalFamily", "CfiFamily", "CfiStats", "minimal_rectangles", "greedy_cfi",
    "greedy_cfi_static", "witness", "cfi_stats", "stabbing_lines", "size_bound",
    "intersection_edge_count", "is_corner_free_family", "interior_is_empty",
]
