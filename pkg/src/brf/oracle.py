"""Exhaustive and exact reference computations.

Everything here is deliberately independent of the fast pipeline: minimal
rectangles are found by direct containment checks, independent sets and
hitting sets by exhaustive search over bitmasks, and the LP relaxation by an
exact rational simplex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvariantViolation, TooLarge
from .geometry import Instance, Point, all_rectangles, corner_free, intersects, leq
from .lp import Unbounded, maximize

MIS_CAP = 25
LP_CAP = 100
LP_GRID_CAP = 30


# -- reference constructions ----------------------------------------------


def brute_minimal_rectangles(inst: Instance) -> list:
    """Minimal members by pairwise containment, sorted by top-left corner."""
    rects = all_rectangles(inst)
    out = [r for r in rects
           if not any(s is not r and s.a.x >= r.a.x and s.b.x <= r.b.x
                      and s.a.y >= r.a.y and s.b.y <= r.b.y for s in rects)]
    return sorted(out, key=lambda r: (r.a.x, r.b.y))


def naive_greedy_cfi(rects) -> list:
    """Positions accepted by the pairwise corner-free greedy."""
    kept = []
    for i, r in enumerate(rects):
        if all(corner_free(rects[j], r) or not intersects(rects[j], r) for j in kept):
            kept.append(i)
    return kept


def augmenting_path_matching(n_left, adj) -> int:
    """Kuhn's simple augmenting-path matching size."""
    match_r = {}

    def try_augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_r or try_augment(match_r[v], seen):
                match_r[v] = u
                return True
        return False

    return sum(1 for u in range(n_left) if try_augment(u, set()))


def max_antichain_size(k, comparable) -> int:
    """Largest set of pairwise incomparable elements, by exhaustive search."""
    nbr = [0] * k
    for i, j in comparable:
        nbr[i] |= 1 << j
        nbr[j] |= 1 << i
    return _mis_bitmask(nbr, [1] * k)[0]


# -- independent sets ------------------------------------------------------


def _mis_bitmask(nbr, weights):
    """Maximum-weight independent set by branch and bound on bitmasks."""
    k = len(nbr)
    best = [Fraction(-1), 0]
    order_w = weights

    def total(mask):
        s = 0
        while mask:
            low = mask & -mask
            s += order_w[low.bit_length() - 1]
            mask ^= low
        return s

    def rec(cand, chosen, value):
        if value + total(cand) <= best[0]:
            return
        if not cand:
            best[0], best[1] = value, chosen
            return
        v = (cand & -cand).bit_length() - 1
        rest = cand & ~(1 << v)
        if not (nbr[v] & cand):
            rec(rest, chosen | (1 << v), value + weights[v])
            return
        rec(rest & ~nbr[v], chosen | (1 << v), value + weights[v])
        rec(rest, chosen, value)

    rec((1 << k) - 1, 0, 0)
    return best[0], [i for i in range(k) if best[1] >> i & 1]


def mis_of_rectangles(rects, weights=None):
    """Exact maximum (weight) independent set of an explicit rectangle list."""
    k = len(rects)
    w = [1] * k if weights is None else list(weights)
    nbr = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if intersects(rects[i], rects[j]):
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i
    value, idx = _mis_bitmask(nbr, w)
    return value, [rects[i] for i in idx]


def brute_mis(inst: Instance, weights: Optional[dict] = None, cap: int = MIS_CAP):
    """Exact ``(value, rectangles)``.

    Unweighted search runs over the minimal rectangles only; weighted search
    runs over every member with positive weight.
    """
    if weights is None:
        rects = brute_minimal_rectangles(inst)
        if len(rects) > cap:
            raise TooLarge(f"{len(rects)} minimal rectangles exceed the cap of {cap}")
        return mis_of_rectangles(rects)
    rects, w = [], []
    for (i, j), wt in sorted(weights.items()):
        if wt > 0:
            r = inst.gamma(i, j)
            if r is not None:
                rects.append(r)
                w.append(Fraction(wt))
    if len(rects) > cap:
        raise TooLarge(f"{len(rects)} weighted rectangles exceed the cap of {cap}")
    value, chosen = mis_of_rectangles(rects, w)
    return Fraction(value), chosen


# -- hitting sets ----------------------------------------------------------


def min_set_cover(sets: list, universe: int, lower: int = 0):
    """Smallest list of indices into ``sets`` (bitmasks) whose union is ``universe``.

    Iterative deepening from ``lower``; dominated sets are dropped first.
    """
    if universe == 0:
        return []
    uniq = sorted({s for s in sets if s}, key=lambda s: -bin(s).count("1"))
    keep = [s for i, s in enumerate(uniq) if not any(t != s and s & t == s for t in uniq[:i] + uniq[i + 1:])]
    if not keep:
        raise ValueError("universe cannot be covered")
    union = 0
    for s in keep:
        union |= s
    if union & universe != universe:
        raise ValueError("universe cannot be covered")
    elems = [e for e in range(universe.bit_length()) if universe >> e & 1]
    hitters = {e: [s for s in keep if s >> e & 1] for e in elems}

    def search(uncovered, depth, chosen):
        if not uncovered:
            return chosen
        if depth == 0:
            return None
        e = min((e for e in elems if uncovered >> e & 1), key=lambda e: len(hitters[e]))
        for s in hitters[e]:
            got = search(uncovered & ~s, depth - 1, chosen + [s])
            if got is not None:
                return got
        return None

    k = max(lower, 1)
    while True:
        got = search(universe, k, [])
        if got is not None:
            return [sets.index(s) for s in got]
        k += 1


def brute_mhs(inst: Instance, cap: int = MIS_CAP, target: Optional[int] = None):
    """Exact ``(value, points)`` for the minimum hitting set.

    Candidates are ``(a.x, a'.y)`` for ``a, a' ∈ A``: the bottom-left corner
    of any common intersection is the maximum of left edges and of bottom
    edges, which are A-coordinates.  It is enough to hit the minimal
    rectangles, since every member contains one.
    """
    rects = brute_minimal_rectangles(inst)
    if len(rects) > cap:
        raise TooLarge(f"{len(rects)} minimal rectangles exceed the cap of {cap}")
    if not rects:
        return 0, []
    cands, masks = [], []
    for a in inst.A:
        for a2 in inst.A:
            p = Point(a.x, a2.y)
            m = 0
            for i, r in enumerate(rects):
                if r.contains(p):
                    m |= 1 << i
            if m:
                cands.append(p)
                masks.append(m)
    if target is None:
        target = mis_of_rectangles(rects)[0]
    chosen = min_set_cover(masks, (1 << len(rects)) - 1, lower=target)
    return len(chosen), [cands[i] for i in chosen]


# -- biclique cover --------------------------------------------------------


def brute_biclique_cover(n_a: int, n_b: int, edges) -> int:
    """Minimum number of bicliques covering every edge of a bipartite graph.

    Enumerates maximal bicliques by closing every subset of A (needs
    ``n_a <= 16``) and solves the covering problem exactly.
    """
    edges = sorted(set(edges))
    if not edges:
        return 0
    if n_a > 16:
        raise TooLarge("too many left vertices for exhaustive biclique search")
    eid = {e: i for i, e in enumerate(edges)}
    nb_a = [0] * n_a
    nb_b = [0] * n_b
    for i, j in edges:
        nb_a[i] |= 1 << j
        nb_b[j] |= 1 << i
    bicl = set()
    for sub in range(1, 1 << n_a):
        ys = (1 << n_b) - 1
        for i in range(n_a):
            if sub >> i & 1:
                ys &= nb_a[i]
        if not ys:
            continue
        xs = (1 << n_a) - 1
        for j in range(n_b):
            if ys >> j & 1:
                xs &= nb_b[j]
        bicl.add((xs, ys))
    masks = []
    for xs, ys in bicl:
        m = 0
        for i in range(n_a):
            if xs >> i & 1:
                for j in range(n_b):
                    if ys >> j & 1:
                        m |= 1 << eid[i, j]
        masks.append(m)
    return len(min_set_cover(masks, (1 << len(edges)) - 1))


# -- LP relaxation ---------------------------------------------------------


@dataclass
class LpProblem:
    """``max Σ x_R`` subject to ``Σ_{R ∋ q} x_R <= 1`` per grid point ``q``, ``x >= 0``."""

    rects: list
    rows: list  # (q, [variable indices of rectangles containing q])

    @classmethod
    def build(cls, inst: Instance) -> "LpProblem":
        rects = all_rectangles(inst)
        rows = []
        for x in range(1, inst.n + 1):
            for y in range(1, inst.n + 1):
                cov = [i for i, r in enumerate(rects) if r.contains((x, y))]
                if cov:
                    rows.append((Point(x, y), cov))
        return cls(rects, rows)

    def is_feasible(self, x) -> bool:
        return all(v >= 0 for v in x) and all(sum(x[i] for i in cov) <= 1 for _, cov in self.rows)


@dataclass
class LpCheck:
    lp_value: Fraction
    mis: int
    matches_mis: bool
    x: list
    y: list


def _reduced_rows(rows):
    """Drop rows whose support is contained in another row's support."""
    sets = sorted({frozenset(c) for _, c in rows}, key=len, reverse=True)
    kept = []
    for s in sets:
        if not any(s <= t for t in kept):
            kept.append(s)
    return [sorted(s) for s in kept]


def lp_check(inst: Instance, cap: int = LP_CAP, grid_cap: int = LP_GRID_CAP,
             mis_cap: int = 200) -> LpCheck:
    """Solve the packing LP over the full family exactly and compare with MIS.

    Rows with dominated support are removed before solving (they are implied),
    and the optimum is certified against all rows by primal feasibility, dual
    feasibility and equal objective values.
    """
    if inst.n > grid_cap:
        raise TooLarge(f"grid {inst.n}x{inst.n} exceeds {grid_cap}x{grid_cap}")
    prob = LpProblem.build(inst)
    k = len(prob.rects)
    if k > cap:
        raise TooLarge(f"{k} rectangles exceed the cap of {cap}")
    if k == 0:
        return LpCheck(Fraction(0), 0, True, [], [])
    rows = _reduced_rows(prob.rows)
    try:
        res = maximize([1] * k, [{i: 1 for i in r} for r in rows], [1] * len(rows))
    except Unbounded as exc:  # cannot happen: every variable sits in some row
        raise InvariantViolation("packing LP reported unbounded") from exc

    # certificate over the original rows
    if not prob.is_feasible(res.x) or sum(res.x) != res.value:
        raise InvariantViolation("simplex returned an infeasible primal point")
    y_full = {}
    for r, yv in zip(rows, res.y):
        if yv < 0:
            raise InvariantViolation("negative dual value")
        y_full[tuple(r)] = yv
    for v in range(k):
        if sum(yv for r, yv in y_full.items() if v in r) < 1:
            raise InvariantViolation(f"dual constraint for variable {v} violated")
    if sum(y_full.values()) != res.value:
        raise InvariantViolation("primal and dual objectives differ")
    for r, yv in y_full.items():  # complementary slackness
        if yv and sum(res.x[i] for i in r) != 1:
            raise InvariantViolation("complementary slackness fails on a row")

    mis = brute_mis(inst, cap=mis_cap)[0]
    return LpCheck(res.value, mis, res.value == mis, res.x, res.y)


def bipartite_permutation_pairwise(inst: Instance) -> bool:
    pts = [inst.A, inst.B]
    return not any(leq(p, q) for ps in pts for p in ps for q in ps if p != q)


__all__ = [
    "brute_minimal_rectangles", "naive_greedy_cfi", "augmenting_path_matching",
    "max_antichain_size", "mis_of_rectangles", "brute_mis", "brute_mhs", "min_set_cover",
    "brute_biclique_cover", "LpProblem", "LpCheck", "lp_check", "bipartite_permutation_pairwise",
]
