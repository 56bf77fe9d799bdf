"""Command-line interface: ``brf <command> ...``.

Exit codes: 0 ok, 1 certificate or oracle mismatch, 2 usage or parse
error, 3 unsupported input (restricted region, non-permutation family,
instance too large for an exact check).
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .errors import (BRFError, DocumentError, InvalidInstance, NotPermutation,
                     RestrictedRegionUnsupported, TooLarge)
from .generators import KINDS, GenSpec, generate
from .io import (VERSION, InstanceDocument, SolutionDocument, _dump, encode_number,
                 load_instance, load_rectangles, read_text, verify_document)

log = logging.getLogger("brf")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3


def _write(text: str, path=None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- commands --------------------------------------------------------------


def cmd_solve(args):
    from .oracle import brute_mhs, brute_mis
    from .solver import solve, verify_solution

    doc = load_instance(args.input)
    inst = doc.to_instance()
    t0 = time.perf_counter()
    sol = solve(inst, debug=args.debug)
    elapsed = time.perf_counter() - t0
    timing = {"solveSeconds": round(elapsed, 6)} if args.timing else None
    out = SolutionDocument.from_solution(inst, sol, timing)
    rep = verify_solution(inst, sol)
    code = EXIT_OK
    if not rep.ok:
        for v in rep.violations:
            print(f"violation: {v}", file=sys.stderr)
        code = EXIT_MISMATCH
    if args.verify_oracle:
        try:
            mis = brute_mis(inst, cap=args.oracle_cap)[0]
            mhs = brute_mhs(inst, cap=args.oracle_cap, target=mis)[0]
        except TooLarge as exc:
            print(f"oracle skipped: {exc}", file=sys.stderr)
        else:
            out.diagnostics["oracleMis"] = mis
            out.diagnostics["oracleMhs"] = mhs
            if not (mis == mhs == sol.size == len(sol.hitting)):
                print(f"oracle mismatch: solver {sol.size}/{len(sol.hitting)}, "
                      f"oracle mis {mis}, mhs {mhs}", file=sys.stderr)
                code = EXIT_MISMATCH
    _write(out.to_json(), args.out)
    if args.render:
        from .render import render_svg

        _write(render_svg(inst, sol), args.render)
    return code


def cmd_wmis(args):
    from .weighted import WeightedInstance, wmis_permutation

    doc = load_instance(args.input)
    winst = WeightedInstance(doc.to_instance(), doc.weight_map())
    value, chosen = wmis_permutation(winst)
    _write(_dump({
        "version": VERSION,
        "value": encode_number(value),
        "chosen": [[r.a_idx, r.b_idx] for r in chosen],
    }), args.out)
    return EXIT_OK


def cmd_gen(args):
    spec = GenSpec(args.kind, args.size, args.seed, args.weights)
    obj = generate(spec)
    if args.weights:
        doc = InstanceDocument.from_instance(obj.inst, obj.weights, meta={"generator": spec.to_dict()})
    else:
        doc = InstanceDocument.from_instance(obj, meta={"generator": spec.to_dict()})
    _write(doc.to_json(), args.out)
    return EXIT_OK


def parse_sizes(text: str) -> list:
    """``"a..b"``, ``"a..b:step"`` or ``"a,b,c"``."""
    try:
        if ".." in text:
            rng, _, step = text.partition(":")
            lo, hi = (int(v) for v in rng.split(".."))
            sizes = list(range(lo, hi + 1, int(step) if step else 1))
        else:
            sizes = [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size range {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError(f"bad size range {text!r}")
    return sizes


def trial_seed(seed: int, size: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, size, trial]).generate_state(1, np.uint64)[0])


STATS_FIELDS = ["kind", "size", "trial", "seed", "n", "minimal", "cfi", "edges",
                "bound", "stabbing_lines", "ratio"]


def stats_row(job) -> dict:
    from .enumeration import cfi_stats, greedy_cfi, minimal_rectangles, intersection_edge_count

    kind, size, trial, seed = job
    inst = generate(GenSpec(kind, size, seed))
    mf = minimal_rectangles(inst)
    cfi = greedy_cfi(mf)
    st = cfi_stats(cfi, inst, edge_count=intersection_edge_count(cfi.rects))
    n = inst.n
    return {
        "kind": kind, "size": size, "trial": trial, "seed": seed, "n": n,
        "minimal": len(mf), "cfi": st.size_k, "edges": st.edge_count,
        "bound": st.size_bound, "stabbing_lines": st.stabbing_lines,
        "ratio": round(st.size_k / n, 6) if n else 0.0,
    }


def cmd_stats(args):
    jobs = [(args.kind, s, t, trial_seed(args.seed, s, t))
            for s in args.sizes for t in range(args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(stats_row, jobs, chunksize=4))
    else:
        rows = [stats_row(j) for j in jobs]
    buf = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="", encoding="utf-8")
    try:
        w = csv.DictWriter(buf, fieldnames=STATS_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if buf is not sys.stdout:
            buf.close()
    over = [r for r in rows if r["cfi"] > r["bound"]]
    if args.plot:
        from .render import plot_stats

        plot_stats(rows, args.plot)
    if over:
        print(f"{len(over)} rows exceed the size bound", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_lp_check(args):
    from .oracle import lp_check

    inst = load_instance(args.input).to_instance()
    res = lp_check(inst, cap=args.cap)
    _write(_dump({
        "version": VERSION,
        "lpValue": encode_number(res.lp_value),
        "mis": res.mis,
        "matchesMis": res.matches_mis,
    }), args.out)
    return EXIT_OK if res.matches_mis else EXIT_MISMATCH


def cmd_reduce(args):
    from .weighted import reduction_from_rectangles

    fam = load_rectangles(read_text(args.input))
    winst = reduction_from_rectangles(fam)
    doc = InstanceDocument.from_instance(winst.inst, winst.weights, meta={"reducedFrom": len(fam)})
    _write(doc.to_json(), args.out)
    return EXIT_OK


def cmd_biclique_cover(args):
    from .solver import export_graph_side, solve

    inst = load_instance(args.input).to_instance()
    if not inst.z.is_full:
        raise RestrictedRegionUnsupported("biclique cover needs an unrestricted family")
    side = export_graph_side(inst, solve(inst))
    _write(_dump({
        "version": VERSION,
        "size": len(side.biclique_cover),
        "crossFreeMatching": [list(e) for e in side.cross_free_matching],
        "bicliques": [
            {"point": [encode_number(c) for c in inst.to_raw(b.point)],
             "aIndices": b.a_indices, "bIndices": b.b_indices}
            for b in side.biclique_cover
        ],
    }), args.out)
    return EXIT_OK


def cmd_verify(args):
    inst = load_instance(args.input).to_instance()
    doc = SolutionDocument.from_json(read_text(args.solution))
    violations = verify_document(inst, doc)
    for v in violations:
        print(f"violation: {v}")
    if violations:
        return EXIT_MISMATCH
    print(f"ok: {doc.mis_size} disjoint rectangles, {doc.mhs_size} points hit every rectangle")
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brf", description="Independent and hitting sets of "
                                "bicolored rectangular families.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="maximum independent set and minimum hitting set")
    s.add_argument("input", help="instance document, or - for stdin")
    s.add_argument("--out", help="write the solution document here instead of stdout")
    s.add_argument("--verify-oracle", action="store_true", help="cross-check with exhaustive search")
    s.add_argument("--oracle-cap", type=int, default=25, help="max minimal rectangles for the oracle")
    s.add_argument("--render", metavar="SVG", help="also draw the solution")
    s.add_argument("--timing", action="store_true", help="include wall-clock timing")
    s.add_argument("--debug", action="store_true", help="check flip monotonicity every iteration")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("wmis", help="weighted independent set of a bipartite permutation family")
    s.add_argument("input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_wmis)

    s = sub.add_parser("gen", help="generate a seeded instance")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--weights", action="store_true", help="attach random rational weights")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("stats", help="size and edge statistics of the corner-free family (CSV)")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--sizes", type=parse_sizes, required=True, help="a..b, a..b:step or a,b,c")
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--plot", metavar="FILE", help="write a figure (format from the extension)")
    s.add_argument("--out", help="CSV destination (default stdout)")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("lp-check", help="exact LP relaxation versus exhaustive MIS")
    s.add_argument("input")
    s.add_argument("--cap", type=int, default=100, help="max rectangles in the LP")
    s.add_argument("--out")
    s.set_defaults(func=cmd_lp_check)

    s = sub.add_parser("reduce", help="weighted family from a list of rectangles")
    s.add_argument("input", help="rectangle list document, or - for stdin")
    s.add_argument("--out")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("biclique-cover", help="biclique cover of the family's bipartite graph")
    s.add_argument("input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_biclique_cover)

    s = sub.add_parser("verify", help="re-check a solution document")
    s.add_argument("input")
    s.add_argument("solution")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidInstance, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotPermutation, RestrictedRegionUnsupported, TooLarge) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BRFError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
