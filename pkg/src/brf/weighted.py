"""Weighted independent sets: the quadratic DP for bipartite permutation
families and the reduction from general rectangle families.

In a bipartite permutation family (both A and B are antichains) an
independent set is a chain ``R_1 ↘ R_2 ↘ ...`` where each next rectangle lies
entirely below or entirely to the right of the previous one.  ``V(R)`` is the
heaviest chain starting at ``R``::

    V(R)    = w_R + max(Vdown(A(R)), Vright(B(R)))
    Vdown(a)  = max V(S) over S in S_i(a) ∪ S_ii(a)
    Vright(b) = max V(S) over S in S_iii(b) ∪ S_iv(b)

where the candidate sets hold, per corner, only the heaviest rectangle of
each kind (see ``_tables``).  Each set has O(n) members, so the whole
recursion costs O(n^2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DuplicateCorner, InvalidInstance, NotPermutation
from .geometry import Instance, Rect, leq, normalize, to_fraction

_ZERO = Fraction(0)


@dataclass
class WeightedInstance:
    inst: Instance
    weights: dict = field(default_factory=dict)  # (a_idx, b_idx) -> Fraction; absent = 0

    def __post_init__(self):
        clean = {}
        for key, w in self.weights.items():
            i, j = key
            if not (0 <= i < len(self.inst.A) and 0 <= j < len(self.inst.B)):
                raise InvalidInstance(f"weight key {key} out of range")
            if not leq(self.inst.A[i], self.inst.B[j]):
                raise InvalidInstance(f"weight key {key} is not a comparable pair")
            w = to_fraction(w)
            if w < 0:
                raise InvalidInstance(f"negative weight {w} for {key}")
            clean[int(i), int(j)] = w
        self.weights = clean

    def weight(self, a_idx, b_idx) -> Fraction:
        return self.weights.get((a_idx, b_idx), _ZERO)


def is_bipartite_permutation(inst: Instance) -> bool:
    """True iff no two points of the same color are comparable."""
    for pts in (inst.A, inst.B):
        ys = [p.y for p in sorted(pts)]
        if any(u < v for u, v in zip(ys, ys[1:])):
            return False
    return True


@dataclass
class DpState:
    """Values and successor pointers of the recursion, keyed by corner index."""

    value: dict  # (a_idx, b_idx) -> V(R)
    down: dict  # a_idx -> (Vdown(a), best successor key or None)
    right: dict  # b_idx -> (Vright(b), best successor key or None)


def _tables(winst: WeightedInstance):
    """Heaviest-rectangle tables, with the tie-breaks that keep choices canonical.

    ``S(a)``      heaviest with bottom-left ``a`` (ties: smallest width)
    ``T(b)``      heaviest with top-right ``b`` (ties: smallest height)
    ``S(a, a')``  heaviest with bottom-left ``a'`` lying below ``a`` (ties: smallest height)
    ``T(b, b')``  heaviest with top-right ``b'`` lying right of ``b`` (ties: smallest width)
    """
    A, B = winst.inst.A, winst.inst.B
    w = winst.weight
    nbrs_a = {i: [j for j in range(len(B)) if leq(A[i], B[j])] for i in range(len(A))}
    nbrs_b = {j: [i for i in range(len(A)) if leq(A[i], B[j])] for j in range(len(B))}

    S = {i: max(nb, key=lambda j: (w(i, j), -B[j].x)) for i, nb in nbrs_a.items() if nb}
    T = {j: max(nb, key=lambda i: (w(i, j), A[i].y)) for j, nb in nbrs_b.items() if nb}

    a_by_y = sorted(range(len(A)), key=lambda i: A[i].y)
    b_by_x = sorted(range(len(B)), key=lambda j: B[j].x)

    # S2[a][a'] = b_idx of the heaviest Γ(a', b) with b.y < a.y
    S2 = {i: {} for i in range(len(A))}
    for i2 in range(len(A)):
        cands = sorted(nbrs_a[i2], key=lambda j: B[j].y)
        best, k = None, 0
        for i in a_by_y:
            if A[i].y <= A[i2].y:
                continue
            while k < len(cands) and B[cands[k]].y < A[i].y:
                j = cands[k]
                if best is None or w(i2, j) > w(i2, best):
                    best = j
                k += 1
            if best is not None:
                S2[i][i2] = best

    # T2[b][b'] = a_idx of the heaviest Γ(a, b') with a.x > b.x
    T2 = {j: {} for j in range(len(B))}
    for j2 in range(len(B)):
        cands = sorted(nbrs_b[j2], key=lambda i: -A[i].x)
        best, k = None, 0
        for j in reversed(b_by_x):
            if B[j].x >= B[j2].x:
                continue
            while k < len(cands) and A[cands[k]].x > B[j].x:
                i = cands[k]
                if best is None or w(i, j2) > w(best, j2):
                    best = i
                k += 1
            if best is not None:
                T2[j][j2] = best
    return nbrs_a, S, T, S2, T2


def _solve_dp(winst: WeightedInstance) -> DpState:
    A, B = winst.inst.A, winst.inst.B
    w = winst.weight
    nbrs_a, S, T, S2, T2 = _tables(winst)
    value, down, right = {}, {}, {}

    def pick(cands):
        best_v, best_k = _ZERO, None
        for key in cands:
            v = value[key]
            if best_k is None or v > best_v:
                best_v, best_k = v, key
        return best_v, best_k

    def v_right(j):
        if j not in right:
            b = B[j]
            cands = [(i, S[i]) for i in S if A[i].x > b.x]
            cands += [(i, j2) for j2, i in T2[j].items()]
            right[j] = pick(cands)
        return right[j]

    # every successor of a rectangle has a strictly larger bottom-left x
    for i in sorted(range(len(A)), key=lambda i: -A[i].x):
        a = A[i]
        cands = [(T[j], j) for j in T if B[j].y < a.y]
        cands += [(i2, j) for i2, j in S2[i].items()]
        down[i] = pick(cands)
        for j in nbrs_a[i]:
            value[i, j] = w(i, j) + max(down[i][0], v_right(j)[0])
    for j in range(len(B)):
        v_right(j)
    return DpState(value, down, right)


def wmis_permutation(winst: WeightedInstance):
    """Maximum-weight independent set of a bipartite permutation family.

    Returns ``(value, chosen)`` with ``chosen`` sorted left to right.  Zero-weight
    rectangles are never reported.
    """
    inst = winst.inst
    if not inst.z.is_full:
        raise InvalidInstance("weighted DP needs an unrestricted family")
    if not is_bipartite_permutation(inst):
        raise NotPermutation("a color class contains two comparable points")
    st = _solve_dp(winst)
    if not st.value:
        return _ZERO, []
    start = max(st.value, key=lambda k: (st.value[k], -inst.A[k[0]].x, -inst.B[k[1]].y))
    best = st.value[start]
    chosen, key = [], start
    while key is not None:
        i, j = key
        if winst.weight(i, j) > 0:
            chosen.append(Rect(inst.A[i], inst.B[j], i, j))
        dv, dk = st.down[i]
        rv, rk = st.right[j]
        if max(dv, rv) <= 0:
            break
        key = dk if dv >= rv else rk
    if sum(winst.weight(r.a_idx, r.b_idx) for r in chosen) != best:
        raise AssertionError("backtracked chain does not reproduce the DP value")
    return best, chosen


def reduction_from_rectangles(family) -> WeightedInstance:
    """Weighted family whose heaviest independent set solves MIS of ``family``.

    Rectangle ``i`` given as ``(x1, y1, x2, y2)`` contributes its lower-left
    corner as ``A[i]`` and its upper-right corner as ``B[i]``; the pair
    ``(i, i)`` gets weight 1 and every other pair weight 0.
    """
    rects = [tuple(to_fraction(c) for c in r) for r in family]
    for r in rects:
        if len(r) != 4 or not (r[0] < r[2] and r[1] < r[3]):
            raise InvalidInstance(f"rectangle {r} must satisfy x1 < x2 and y1 < y2")
    xs = [r[0] for r in rects] + [r[2] for r in rects]
    ys = [r[1] for r in rects] + [r[3] for r in rects]
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise DuplicateCorner("rectangle corners must have pairwise distinct coordinates")
    inst = normalize([(r[0], r[1]) for r in rects], [(r[2], r[3]) for r in rects])
    return WeightedInstance(inst, {(i, i): Fraction(1) for i in range(len(rects))})
