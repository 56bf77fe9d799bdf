"""End-to-end maximum independent set / minimum hitting set solver.

``solve`` runs the full pipeline: minimal rectangles, greedy corner-free
family ``K``, Dilworth on ``K`` for an independent set and a hitting set of
``K`` of equal size, and finally the flipping procedure that moves hitting
points until they hit every rectangle while keeping their number fixed.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dilworth import antichain_and_chains, chains_to_hitting, comparability_edges
from .enumeration import (CfiFamily, CfiStats, MinimalFamily, cfi_stats, greedy_cfi,
                          minimal_rectangles, witness)
from .errors import EmptyRange, IllegalFlip, InvariantViolation, RestrictedRegionUnsupported
from .geometry import Instance, Point, gamma, intersects, leq
from .rangeindex import DynamicPointIndex

log = logging.getLogger(__name__)


@dataclass
class Solution:
    independent: list  # I*, rectangles
    hitting: list  # H*, grid points
    cfi: CfiFamily
    minimal: MinimalFamily = field(repr=False)
    stats: CfiStats
    flips: int = 0
    antichain: list = field(default_factory=list)  # positions of I* in cfi

    @property
    def size(self) -> int:
        return len(self.independent)


def flip(h: DynamicPointIndex, p, q):
    """Replace ``p`` and ``q`` in the multiset ``h`` by ``(p.x, q.y)`` and ``(q.x, p.y)``."""
    p, q = Point(*p), Point(*q)
    if not (p.x < q.x and p.y < q.y):
        raise IllegalFlip(f"{p} is not strictly below-left of {q}")
    if p not in h or q not in h:
        raise IllegalFlip(f"{p} or {q} is not in the point set")
    h.delete(p)
    h.delete(q)
    r, s = Point(p.x, q.y), Point(q.x, p.y)
    h.insert(r)
    h.insert(s)
    return r, s


class _Monitor:
    """Debug checks for the flipping procedure on small inputs."""

    def __init__(self, mf: MinimalFamily, cfi: CfiFamily):
        self.mf = mf
        in_k = set(cfi.positions)
        self.wit = {
            i: witness(mf, cfi, r) for i, r in enumerate(mf.rects) if i not in in_k
        }
        self.k_pos = list(cfi.positions)
        self.hit = None

    def hit_set(self, h):
        pts = list(h)
        return {i for i, r in enumerate(self.mf.rects) if any(r.contains(p) for p in pts)}

    def start(self, h):
        self.hit = self.hit_set(h)

    def after(self, j, h):
        now = self.hit_set(h)
        lost = self.hit - now
        if lost:
            raise InvariantViolation(
                f"iteration {j}: flip un-hit minimal rectangles {sorted(lost)}")
        missing = [p for p in self.k_pos if p not in now]
        missing += [i for i, w in self.wit.items() if w <= j and i not in now]
        if missing:
            raise InvariantViolation(
                f"iteration {j}: rectangles {sorted(missing)} should be hit by now")
        self.hit = now


def flip_procedure(cfi: CfiFamily, h0, n: Optional[int] = None, monitor: Optional[MinimalFamily] = None):
    """Move the points of ``h0`` until they hit every minimal rectangle.

    Returns ``(H*, flips)``.  With ``monitor`` set to the minimal family, each
    iteration re-checks that no previously hit rectangle is lost and that all
    rectangles witnessed so far are hit; meant for small inputs.
    """
    if n is None:
        n = max([r.b.x for r in cfi.rects] + [p[0] for p in h0] + [1])
    h = DynamicPointIndex(n, h0)
    if any(h.multiplicity(p) > 1 for p in h0):
        raise InvariantViolation("initial hitting set has repeated points")
    mon = _Monitor(monitor, cfi) if monitor is not None else None
    if mon:
        mon.start(h)
    flips = 0
    for j, kj in enumerate(cfi.rects):
        p = h.min_y_in(kj)
        q = h.max_x_in(kj)
        if p is None:
            raise EmptyRange(f"no hitting point inside {kj}")
        if p.x < q.x and p.y < q.y:
            r, s = flip(h, p, q)
            flips += 1
            if h.multiplicity(r) > 1 or h.multiplicity(s) > 1:
                raise InvariantViolation(f"flip of {p}, {q} produced a repeated point")
        if mon:
            mon.after(j, h)
    return list(h), flips


def solve(inst: Instance, debug: bool = False) -> Solution:
    mf = minimal_rectangles(inst)
    cfi = greedy_cfi(mf)
    hookup = comparability_edges(cfi)
    antichain, cover = antichain_and_chains(cfi, hookup)
    h0 = chains_to_hitting(cfi, cover)
    hitting, flips = flip_procedure(cfi, h0, n=max(inst.n, 1), monitor=mf if debug else None)
    stats = cfi_stats(cfi, inst, edge_count=len(hookup))
    log.debug("n=%d |R_min|=%d |K|=%d edges=%d flips=%d mis=%d",
              inst.n, len(mf), len(cfi), stats.edge_count, flips, len(antichain))
    return Solution(
        independent=[cfi.rects[i] for i in antichain],
        hitting=hitting,
        cfi=cfi,
        minimal=mf,
        stats=stats,
        flips=flips,
        antichain=antichain,
    )


# -- certificates ----------------------------------------------------------


@dataclass
class VerificationReport:
    violations: list = field(default_factory=list)
    checked_rectangles: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def unhit_rectangles(rects, points, chunk: int = 2048) -> list:
    """Indices of ``rects`` containing none of ``points`` (vectorized scan)."""
    if not rects:
        return []
    if not points:
        return list(range(len(rects)))
    pts = np.array([(p[0], p[1]) for p in points], dtype=np.int64)
    px, py = pts[:, 0], pts[:, 1]
    arr = np.array([(r.a.x, r.a.y, r.b.x, r.b.y) for r in rects], dtype=np.int64)
    out = []
    for lo in range(0, len(rects), chunk):
        blk = arr[lo:lo + chunk]
        inside = ((blk[:, 0, None] <= px) & (px <= blk[:, 2, None])
                  & (blk[:, 1, None] <= py) & (py <= blk[:, 3, None]))
        out.extend((lo + np.nonzero(~inside.any(axis=1))[0]).tolist())
    return out


def verify_solution(inst: Instance, sol: Solution) -> VerificationReport:
    """Re-check an independent set / hitting set pair from scratch."""
    rep = VerificationReport()
    ind = sol.independent
    for r in ind:
        if gamma(inst, r.a_idx, r.b_idx) != r:
            rep.violations.append(f"{r} is not a member of the family")
    if ind:
        arr = np.array([(r.a.x, r.a.y, r.b.x, r.b.y) for r in ind], dtype=np.int64)
        ax, ay, bx, by = arr.T
        for i in range(len(ind) - 1):
            hit = np.nonzero((ax[i] <= bx[i + 1:]) & (ax[i + 1:] <= bx[i])
                             & (ay[i] <= by[i + 1:]) & (ay[i + 1:] <= by[i]))[0]
            for j in hit[:5]:
                rep.violations.append(f"independent rectangles {ind[i]} and {ind[i + 1 + j]} intersect")
    mf = minimal_rectangles(inst)
    rep.checked_rectangles = len(mf)
    for i in unhit_rectangles(mf.rects, sol.hitting):
        rep.violations.append(f"minimal rectangle {mf.rects[i]} (A[{mf.rects[i].a_idx}], "
                              f"B[{mf.rects[i].b_idx}]) is not hit")
    if len(ind) != len(sol.hitting):
        rep.violations.append(f"|I*| = {len(ind)} but |H*| = {len(sol.hitting)}")
    return rep


# -- graph-side view -------------------------------------------------------


@dataclass
class Biclique:
    point: Point
    a_indices: list
    b_indices: list

    @property
    def edges(self):
        return [(i, j) for i in self.a_indices for j in self.b_indices]


@dataclass
class GraphSide:
    cross_free_matching: list  # (a_idx, b_idx) pairs
    biclique_cover: list  # Biclique per hitting point


def export_graph_side(inst: Instance, sol: Solution) -> GraphSide:
    """Cross-free matching and biclique cover of the bipartite graph ``(A ∪ B, R)``.

    Only valid when the region is the whole plane, where every comparable
    pair ``a <= b`` is an edge.
    """
    if not inst.z.is_full:
        raise RestrictedRegionUnsupported("graph correspondence needs an unrestricted family")
    matching = sorted((r.a_idx, r.b_idx) for r in sol.independent)
    cover = []
    for h in sol.hitting:
        cover.append(Biclique(
            Point(*h),
            [i for i, a in enumerate(inst.A) if leq(a, h)],
            [j for j, b in enumerate(inst.B) if leq(h, b)],
        ))
    return GraphSide(matching, cover)


def crossing(inst: Instance, e, f) -> bool:
    """Two graph edges cross exactly when their rectangles intersect."""
    return intersects(gamma(inst, *e), gamma(inst, *f))
