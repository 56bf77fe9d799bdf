import pytest

from brf.dilworth import antichain_and_chains, chains_to_hitting, comparability_edges
from brf.enumeration import greedy_cfi, minimal_rectangles
from brf.errors import EmptyRange, IllegalFlip, InvariantViolation, RestrictedRegionUnsupported
from brf.generators import KINDS, GenSpec, generate
from brf.geometry import Point, intersects, normalize
from brf.oracle import brute_biclique_cover, brute_mhs, brute_mis
from brf.rangeindex import DynamicPointIndex
from brf.solver import (Solution, crossing, export_graph_side, flip, flip_procedure, solve,
                        unhit_rectangles, verify_solution)


def test_flip_basic():
    h = DynamicPointIndex(3, [(1, 1), (3, 3)])
    flip(h, (1, 1), (3, 3))
    assert sorted(h) == [(1, 3), (3, 1)]


def test_flip_rejects_same_column():
    h = DynamicPointIndex(3, [(2, 1), (2, 3)])
    with pytest.raises(IllegalFlip):
        flip(h, (2, 1), (2, 3))
    with pytest.raises(IllegalFlip):
        flip(h, (1, 1), (3, 3))


def test_flip_never_loses_a_minimal_rectangle():
    # every legal flip of two points inside a common minimal rectangle
    for kind in KINDS[:-1]:
        for s in range(30):
            inst = generate(GenSpec(kind, 4 + s % 16, 300 + s))
            mf = minimal_rectangles(inst)
            pts = sorted(set(inst.A) | {Point(b.x, a.y) for a in inst.A for b in inst.B})[:12]
            for r in mf.rects[:6]:
                inside = [p for p in pts if r.contains(p)]
                for p in inside:
                    for q in inside:
                        if p.x < q.x and p.y < q.y:
                            h = DynamicPointIndex(inst.n, pts)
                            before = set(range(len(mf))) - set(unhit_rectangles(mf.rects, list(h)))
                            flip(h, p, q)
                            after = set(range(len(mf))) - set(unhit_rectangles(mf.rects, list(h)))
                            assert before <= after


def _pipeline(inst):
    mf = minimal_rectangles(inst)
    cfi = greedy_cfi(mf)
    anti, cover = antichain_and_chains(cfi, comparability_edges(cfi))
    return mf, cfi, chains_to_hitting(cfi, cover)


def test_flip_procedure_noop_without_leftovers(two_disjoint):
    mf, cfi, h0 = _pipeline(two_disjoint)
    assert len(cfi) == len(mf)
    h, flips = flip_procedure(cfi, h0, n=two_disjoint.n)
    assert sorted(h) == sorted(h0) and flips == 0


def test_flip_procedure_hits_everything():
    for kind in KINDS:
        for s in range(60):
            size = 1 + s % (6 if kind == "cross-grid" else 24)
            inst = generate(GenSpec(kind, size, 500 + s))
            mf, cfi, h0 = _pipeline(inst)
            h, _ = flip_procedure(cfi, h0, n=max(inst.n, 1), monitor=mf)
            assert len(h) == len(h0)
            assert unhit_rectangles(mf.rects, h) == []


def test_empty_range_when_start_set_misses(four_crossing):
    mf, cfi, h0 = _pipeline(four_crossing)
    # a point outside every rectangle cannot hit K_1
    with pytest.raises(EmptyRange):
        flip_procedure(cfi, [Point(4, 4)], n=4, monitor=mf)


def test_duplicate_initial_points_rejected(two_disjoint):
    mf, cfi, h0 = _pipeline(two_disjoint)
    with pytest.raises(InvariantViolation):
        flip_procedure(cfi, [h0[0], h0[0]], n=4)


@pytest.mark.parametrize("raw,size", [
    (([(1, 1)], [(2, 2)]), 1),
    (([(1, 3), (2, 1)], [(6, 4), (3, 6)]), 1),
    (([(1, 1), (5, 5)], [(2, 2), (6, 6)]), 2),
])
def test_solve_examples(raw, size):
    inst = normalize(*raw)
    sol = solve(inst, debug=True)
    assert sol.size == len(sol.hitting) == size
    assert verify_solution(inst, sol).ok


def test_solve_four_crossing_single_point(four_crossing):
    sol = solve(four_crossing)
    (p,) = sol.hitting
    assert all(r.contains(p) for r in sol.minimal)


def test_solve_empty():
    inst = normalize([(5, 5)], [(1, 1)])
    sol = solve(inst)
    assert sol.size == 0 and sol.hitting == [] and verify_solution(inst, sol).ok


def test_matches_oracles():
    for kind in KINDS:
        for s in range(40):
            size = 1 + s % (6 if kind == "cross-grid" else 20)
            inst = generate(GenSpec(kind, size, 900 + s))
            sol = solve(inst)
            mis = brute_mis(inst, cap=80)[0]
            assert sol.size == len(sol.hitting) == mis == brute_mhs(inst, cap=80)[0]


def test_tampered_solution_reported():
    inst = generate(GenSpec("random-unrestricted", 30, 4))
    sol = solve(inst)
    assert sol.size >= 2
    bad = Solution(sol.independent, sol.hitting[1:], sol.cfi, sol.minimal, sol.stats)
    rep = verify_solution(inst, bad)
    assert not rep.ok
    assert any("not hit" in v for v in rep.violations)
    assert any("|I*|" in v for v in rep.violations)
    overlapping = Solution(sol.independent + sol.independent[:1], sol.hitting, sol.cfi,
                           sol.minimal, sol.stats)
    assert any("intersect" in v for v in verify_solution(inst, overlapping).violations)


def test_fuzz_certificates():
    for s in range(500):
        kind = KINDS[s % len(KINDS)]
        size = 1 + s % (8 if kind == "cross-grid" else 60)
        inst = generate(GenSpec(kind, size, 10_000 + s))
        assert verify_solution(inst, solve(inst)).ok


def test_graph_side_single():
    inst = normalize([(1, 1)], [(2, 2)])
    side = export_graph_side(inst, solve(inst))
    assert side.cross_free_matching == [(0, 0)]
    assert [b.edges for b in side.biclique_cover] == [[(0, 0)]]


def test_graph_side_four_crossing(four_crossing):
    side = export_graph_side(four_crossing, solve(four_crossing))
    assert len(side.biclique_cover) == 1
    assert sorted(side.biclique_cover[0].edges) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_graph_side_restricted_rejected():
    inst = generate(GenSpec("restricted-z", 10, 1))
    with pytest.raises(RestrictedRegionUnsupported):
        export_graph_side(inst, solve(inst))


def test_biclique_cover_is_minimum():
    for kind in ("random-unrestricted", "permutation", "convex", "interval-bigraph"):
        for s in range(25):
            inst = generate(GenSpec(kind, 2 + s % 12, 40 + s))
            side = export_graph_side(inst, solve(inst))
            edges = {(i, j) for i, a in enumerate(inst.A) for j, b in enumerate(inst.B)
                     if a.x <= b.x and a.y <= b.y}
            covered = {e for b in side.biclique_cover for e in b.edges}
            assert covered == edges
            if len(inst.A) <= 12:
                assert len(side.biclique_cover) == brute_biclique_cover(
                    len(inst.A), len(inst.B), edges)
            m = side.cross_free_matching
            for x in range(len(m)):
                for y in range(x + 1, len(m)):
                    assert not crossing(inst, m[x], m[y])


def test_crossing_is_intersection(four_crossing):
    assert crossing(four_crossing, (0, 0), (1, 1)) == intersects(
        four_crossing.gamma(0, 0), four_crossing.gamma(1, 1))
