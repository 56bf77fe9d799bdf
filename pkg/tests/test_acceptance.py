"""End-to-end acceptance criteria.

Each test records one PASS/FAIL line (printed in the terminal summary by
conftest.py) and then asserts.  All comparisons are exact unless a
tolerance constant below says otherwise.
"""
import statistics
import time
from fractions import Fraction

import pytest

from brf.enumeration import cfi_stats, greedy_cfi, minimal_rectangles
from brf.errors import InvariantViolation
from brf.generators import (FIVE_CYCLE, KINDS, GenSpec, five_cycle_instance, generate,
                            random_rectangle_family)
from brf.geometry import Point, Rect, all_rectangles
from brf.oracle import LpProblem, brute_mhs, brute_mis, lp_check, mis_of_rectangles
from brf.solver import solve, verify_solution
from brf.weighted import reduction_from_rectangles, wmis_permutation

pytestmark = pytest.mark.acceptance

# pinned thresholds
MINMAX_PER_KIND = 500
MINMAX_MAX_N = 24
ORACLE_CAP = 80  # permutation instances reach ~65 minimal rectangles at n = 24
CERT_SIZES = (100, 500, 1000, 2000)
CERT_TOTAL = 100
LP_INSTANCES = 100
LP_MAX_RECTS = 60
WMIS_INSTANCES = 300
WMIS_MAX_SIDE = 8
REDUCTION_INSTANCES = 100
CROSS_GRID = (10, 50, 100)
PERF_N = (250, 500, 1000)
PERF_LIMIT_S = 60.0
PERF_DOUBLING = 8.0


def _size_for(kind, n):
    """Generator size giving n points (cross-grid sizes count strips)."""
    return max(1, n // 4) if kind == "cross-grid" else n


@pytest.fixture(scope="module")
def minmax_run():
    """Criteria 1, 6 and 7 share one pass over the seeded small instances."""
    out = {"checked": 0, "mismatch": [], "monitor": [], "bound": [], "per_kind": {}}
    for kind in KINDS:
        t0 = time.perf_counter()
        for s in range(MINMAX_PER_KIND):
            n = 1 + s % MINMAX_MAX_N
            inst = generate(GenSpec(kind, _size_for(kind, n), s))
            assert inst.n <= MINMAX_MAX_N
            try:
                sol = solve(inst, debug=True)
            except InvariantViolation as exc:
                out["monitor"].append((kind, s, str(exc)))
                sol = solve(inst)
            mis = brute_mis(inst, cap=ORACLE_CAP)[0]
            mhs = brute_mhs(inst, cap=ORACLE_CAP, target=mis)[0]
            if not (sol.size == len(sol.hitting) == mis == mhs):
                out["mismatch"].append((kind, s, sol.size, len(sol.hitting), mis, mhs))
            if sol.stats.size_k > sol.stats.size_bound:
                out["bound"].append((kind, s))
            out["checked"] += 1
        out["per_kind"][kind] = time.perf_counter() - t0
    return out


def test_c1_min_max(minmax_run, record):
    r = minmax_run
    ok = not r["mismatch"] and r["checked"] == MINMAX_PER_KIND * len(KINDS)
    record(1, "min-max |I*| = |H*| = mis = mhs", ok,
           f"{r['checked']} instances ({MINMAX_PER_KIND}/kind, n <= {MINMAX_MAX_N}), "
           f"{len(r['mismatch'])} mismatches, {sum(r['per_kind'].values()):.1f}s")
    assert ok, r["mismatch"][:5]


def test_c2_certificates(record):
    bad, t0, count = [], time.perf_counter(), 0
    per_size = CERT_TOTAL // len(CERT_SIZES)
    for n in CERT_SIZES:
        for t in range(per_size):
            kind = KINDS[t % len(KINDS)]
            inst = generate(GenSpec(kind, _size_for(kind, n), 50_000 + n + t))
            rep = verify_solution(inst, solve(inst))
            count += 1
            if not rep.ok:
                bad.append((kind, n, t, rep.violations[:2]))
    ok = not bad and count >= CERT_TOTAL
    record(2, "certificate validity", ok,
           f"{count} instances, n in {CERT_SIZES}, {len(bad)} with violations, "
           f"{time.perf_counter() - t0:.1f}s")
    assert ok, bad[:3]


def test_c3_lp_integrality(record):
    inst = five_cycle_instance()
    prob = LpProblem.build(inst)
    idx = {(r.a_idx, r.b_idx): v for v, r in enumerate(prob.rects)}
    half = [Fraction(0)] * len(prob.rects)
    for key in FIVE_CYCLE:
        half[idx[key]] = Fraction(1, 2)
    cyc = lp_check(inst)
    five_ok = prob.is_feasible(half) and sum(half) == Fraction(5, 2) and cyc.matches_mis

    checked, bad, seed = 0, [], 0
    while checked < LP_INSTANCES and seed < 20 * LP_INSTANCES:
        kind = KINDS[seed % 5]
        cand = generate(GenSpec(kind, 4 + seed % 13, 70_000 + seed))
        seed += 1
        if not 0 < len(all_rectangles(cand)) <= LP_MAX_RECTS:
            continue
        res = lp_check(cand)
        checked += 1
        if not res.matches_mis:
            bad.append((kind, seed - 1, res.lp_value, res.mis))
    ok = five_ok and not bad and checked >= LP_INSTANCES
    record(3, "LP optimum integral and equal to mis", ok,
           f"{checked} instances with 1..{LP_MAX_RECTS} rectangles, {len(bad)} mismatches; "
           f"5-cycle: half point value 5/2 feasible, lp = {cyc.lp_value} = mis {cyc.mis}")
    assert ok, bad[:3]


def test_c4_weighted_dp(record):
    checked, bad, seed = 0, [], 0
    while checked < WMIS_INSTANCES:
        winst = generate(GenSpec("permutation", 2 + seed % 15, 90_000 + seed, weights=True))
        seed += 1
        if len(winst.inst.A) > WMIS_MAX_SIDE or len(winst.inst.B) > WMIS_MAX_SIDE:
            continue
        value, chosen = wmis_permutation(winst)
        oracle = brute_mis(winst.inst, winst.weights, cap=WMIS_MAX_SIDE ** 2)[0]
        checked += 1
        if value != oracle:
            bad.append((seed - 1, value, oracle))
    ok = not bad
    record(4, "weighted DP equals exhaustive oracle", ok,
           f"{checked} permutation instances (|A|,|B| <= {WMIS_MAX_SIDE}), {len(bad)} mismatches")
    assert ok, bad[:3]


def test_c5_reduction(record):
    bad = []
    for s in range(REDUCTION_INSTANCES):
        fam = random_rectangle_family(1 + s % 12, 110_000 + s)
        rects = [Rect(Point(*r[:2]), Point(*r[2:]), i, i) for i, r in enumerate(fam)]
        winst = reduction_from_rectangles(fam)
        lhs = mis_of_rectangles(rects)[0]
        rhs = brute_mis(winst.inst, winst.weights)[0]
        if lhs != rhs:
            bad.append((s, lhs, rhs))
    ok = not bad
    record(5, "reduction preserves MIS", ok,
           f"{REDUCTION_INSTANCES} families, {len(bad)} mismatches")
    assert ok, bad[:3]


def test_c6_bounds(minmax_run, record):
    grid = {}
    for k in CROSS_GRID:
        inst = generate(GenSpec("cross-grid", k, k))
        st = cfi_stats(greedy_cfi(minimal_rectangles(inst)), inst)
        grid[k] = (st.edge_count, st.size_k, st.size_bound)
    edges_ok = all(e == k * k for k, (e, _, _) in grid.items())
    bound_ok = not minmax_run["bound"] and all(s <= b for _, s, b in grid.values())
    ok = edges_ok and bound_ok
    record(6, "|K| within size bound; cross-grid edges = n'^2", ok,
           f"bound violations {len(minmax_run['bound'])} over {minmax_run['checked']} instances; "
           + ", ".join(f"n'={k}: E={e}" for k, (e, _, _) in grid.items()))
    assert ok


def test_c7_monotone_flips(minmax_run, record):
    ok = not minmax_run["monitor"]
    record(7, "flip monotonicity (debug monitor)", ok,
           f"{minmax_run['checked']} instances, {len(minmax_run['monitor'])} monitor failures")
    assert ok, minmax_run["monitor"][:3]


def _time_solve(n, seeds=(1, 2, 3), repeats=5):
    insts = [generate(GenSpec("random-unrestricted", n, s)) for s in seeds]
    best = []
    for inst in insts:
        runs = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            solve(inst)
            runs.append(time.perf_counter() - t0)
        best.append(min(runs))
    return statistics.mean(best)


def test_c8_performance(record):
    times = {n: _time_solve(n) for n in PERF_N}
    ratios = [times[b] / times[a] for a, b in zip(PERF_N, PERF_N[1:])]
    ok = times[PERF_N[-1]] <= PERF_LIMIT_S and all(r <= PERF_DOUBLING for r in ratios)
    record(8, "performance sanity", ok,
           ", ".join(f"n={n}: {t * 1000:.1f}ms" for n, t in times.items())
           + "; doubling ratios " + ", ".join(f"{r:.2f}x" for r in ratios)
           + f" (limits {PERF_LIMIT_S:.0f}s, {PERF_DOUBLING:.0f}x)")
    assert ok
