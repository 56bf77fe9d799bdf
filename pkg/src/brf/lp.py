"""Exact rational simplex for ``max c·x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

Dense tableau over :class:`fractions.Fraction`, Bland's rule for pivoting.
Because ``b >= 0`` the slack basis is feasible and no phase one is needed.
Only meant for the small packing programs the oracle builds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_ZERO = Fraction(0)


@dataclass
class LpResult:
    value: Fraction
    x: list  # primal solution
    y: list  # dual solution (one entry per row)
    pivots: int


class Unbounded(ArithmeticError):
    pass


def maximize(c, rows, b, max_pivots: int = 100_000) -> LpResult:
    """Solve the packing-form LP exactly.

    ``rows`` is a list of dicts ``{var: coefficient}`` (sparse) or dense lists.
    """
    m, nv = len(rows), len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("right-hand side must be nonnegative")
    width = nv + m
    tab = []
    for i, row in enumerate(rows):
        t = [_ZERO] * (width + 1)
        items = row.items() if isinstance(row, dict) else enumerate(row)
        for j, v in items:
            if v:
                t[j] = Fraction(v)
        t[nv + i] = Fraction(1)
        t[width] = Fraction(b[i])
        tab.append(t)
    # reduced costs, stored as z_j - c_j; optimal when all >= 0
    obj = [-Fraction(v) for v in c] + [_ZERO] * m + [_ZERO]
    basis = [nv + i for i in range(m)]

    pivots = 0
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise Unbounded("objective is unbounded")
        prow = tab[leave]
        piv = prow[enter]
        if piv != 1:
            prow = tab[leave] = [v / piv for v in prow]
        nz = [j for j, v in enumerate(prow) if v]
        for i in range(m):
            if i == leave:
                continue
            f = tab[i][enter]
            if f:
                ti = tab[i]
                for j in nz:
                    ti[j] -= f * prow[j]
        f = obj[enter]
        for j in nz:
            obj[j] -= f * prow[j]
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("pivot limit exceeded")

    x = [_ZERO] * nv
    for i, var in enumerate(basis):
        if var < nv:
            x[var] = tab[i][width]
    y = obj[nv:nv + m]
    return LpResult(obj[width], x, y, pivots)
