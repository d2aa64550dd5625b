"""Command-line entry point: ``rosespec <command> ...``.

Graph-valued commands take graph6 strings as arguments, or read one per line
from stdin, and print one JSON report per input line.

Exit codes: 0 success, 1 an expected property failed, 2 budget exhausted,
64 usage or input error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time

from . import suites
from .graph import (GraphFormatError, RoseSpec, build_rose, parse_graph6,
                    write_graph6)
from .invariants import (LAPLACIAN, UniversalParams, degree_identity_checks,
                         report_from_traces, spectral_report, universal_char_poly)
from .report import Report, seconds
from .roots import real_roots
from .sachs import matchings_count, rose_matchings, sachs_char_poly
from .search import (DEFAULT_UNIVERSAL_PARAMS, DESK_MAX_N, PruneConfig, SearchTask,
                     default_jobs, enumerate_graphs, find_cospectral_mates,
                     verify_rose_determination, verify_rose_vs_rose)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64

log = logging.getLogger("rosespec")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rose_arg(text: str) -> RoseSpec:
    try:
        return RoseSpec(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad rose {text!r}: {exc}") from None


def _params_arg(text: str) -> UniversalParams:
    try:
        return UniversalParams.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _params_list(text: str) -> list[UniversalParams]:
    return [_params_arg(t) for t in text.split(",") if t.strip()]


def _places(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("places must be nonnegative")
    return v


def _graphs(args):
    items = args.graphs if args.graphs else [ln.strip() for ln in sys.stdin]
    for item in items:
        if not item or item.startswith("#"):
            continue
        try:
            yield item, parse_graph6(item)
        except GraphFormatError as exc:
            raise UsageError(f"{item!r}: {exc}") from None


def _emit(report: Report):
    print(report.to_json(), flush=True)


# commands -------------------------------------------------------------------

def cmd_build(args) -> int:
    print(write_graph6(build_rose(args.rose)))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    for text, g in _graphs(args):
        t0 = time.perf_counter()
        poly = universal_char_poly(g, args.matrix)
        outputs = {"n": g.n, "char_poly": poly}
        if args.roots is not None:
            outputs["roots"] = [{"value": v, "multiplicity": k}
                                for v, k in real_roots(poly, args.roots)]
        _emit(Report("spectrum", {"graph6": text, "matrix": str(args.matrix),
                                  "roots": args.roots}, outputs,
                     timing={"seconds": seconds(time.perf_counter() - t0)}))
    return EXIT_OK


def cmd_invariants(args) -> int:
    status = EXIT_OK
    for text, g in _graphs(args):
        t0 = time.perf_counter()
        rep = spectral_report(g)
        outputs = dict(rep.as_dict())
        traced = report_from_traces(g)
        outputs["trace_check"] = all(traced[k] == outputs[k] for k in traced)
        if args.k is not None:
            outputs["degree_identities"] = degree_identity_checks(g, args.k).as_dict()
        ok = outputs["trace_check"]
        status = status if ok else EXIT_FAIL
        _emit(Report("invariants", {"graph6": text, "k": args.k}, outputs,
                     "ok" if ok else "fail",
                     timing={"seconds": seconds(time.perf_counter() - t0)}))
    return status


def cmd_sachs(args) -> int:
    status = EXIT_OK
    for text, g in _graphs(args):
        t0 = time.perf_counter()
        sp = sachs_char_poly(g)
        direct = universal_char_poly(g, UniversalParams(0, 1))
        coeffs = {str(i): sp.coeffs[g.n - i] for i in range(1, g.n + 1)}
        ok = sp == direct
        status = status if ok else EXIT_FAIL
        _emit(Report("sachs", {"graph6": text},
                     {"n": g.n, "coefficients": coeffs, "char_poly": direct,
                      "agrees": ok}, "ok" if ok else "fail",
                     timing={"seconds": seconds(time.perf_counter() - t0)}))
    return status


def cmd_matchings(args) -> int:
    if args.j < 0:
        raise UsageError("j must be nonnegative")
    if args.rose is not None:
        if args.graphs:
            raise UsageError("give either --rose or graph6 input, not both")
        t0 = time.perf_counter()
        via = rose_matchings(args.rose, args.j)
        brute = matchings_count(build_rose(args.rose), args.j)
        ok = via == brute
        _emit(Report("matchings", {"rose": str(args.rose), "j": args.j},
                     {"count": via, "brute_force": brute, "agrees": ok},
                     "ok" if ok else "fail",
                     timing={"seconds": seconds(time.perf_counter() - t0)}))
        return EXIT_OK if ok else EXIT_FAIL
    for text, g in _graphs(args):
        t0 = time.perf_counter()
        _emit(Report("matchings", {"graph6": text, "j": args.j},
                     {"count": matchings_count(g, args.j)},
                     timing={"seconds": seconds(time.perf_counter() - t0)}))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    for g in enumerate_graphs(args.n, args.m, connected=not args.all):
        print(write_graph6(g))
    return EXIT_OK


def cmd_search(args) -> int:
    spec = args.rose
    if spec.k < 2:
        raise UsageError("search needs a rose with at least two cycles")
    task = SearchTask.for_rose(spec, args.params, cross_validate=args.cross_validate)
    if args.no_prune:
        task = SearchTask(task.n, task.m, task.params, task.target,
                          PruneConfig(cross_validate=False))
    deadline = None if args.budget is None else time.monotonic() + args.budget
    res = find_cospectral_mates(task, args.jobs, args.checkpoint_dir, deadline)
    d = res.to_dict(timing=False)
    _emit(Report("search", {"rose": str(spec), "params": str(args.params),
                            "jobs": args.jobs},
                 {k: d[k] for k in ("n", "m", "mates", "graphs_enumerated",
                                    "graphs_after_pruning", "pruning", "complete",
                                    "cross_validated")},
                 "ok" if res.complete else "incomplete",
                 timing={"seconds": seconds(res.elapsed)}))
    return EXIT_OK if res.complete else EXIT_BUDGET


def cmd_verify_paper(args) -> int:
    if args.nmax < 5:
        raise UsageError("--nmax must be at least 5")
    if args.nmax > DESK_MAX_N and not args.extended:
        raise UsageError(f"--nmax above {DESK_MAX_N} needs --extended")
    t0 = time.monotonic()
    deadline_budget = args.budget
    outputs = {}
    ok = True
    budget_hit = False

    for name in ("pair_r34", "pair_r35"):
        fx = suites.pair_fixture(name, args.jobs)
        outputs[name] = fx
        ok &= fx["passed"]

    determination = {}
    for p in args.params:
        left = None if deadline_budget is None else max(0.0, deadline_budget - (time.monotonic() - t0))
        rep = verify_rose_determination(args.nmax, p, args.jobs, left, args.checkpoint_dir)
        d = rep.to_dict(timing=False)
        d["elapsed"] = f"{rep.elapsed:.3f}"
        determination[str(p)] = d
        if not rep.complete:
            budget_hit = True
        elif rep.passed is False:
            ok = False
    outputs["determination"] = determination

    rvr = verify_rose_vs_rose(max(args.nmax, 12), DEFAULT_UNIVERSAL_PARAMS)
    outputs["rose_vs_rose"] = rvr.to_dict()
    ok &= rvr.passed

    sachs = suites.sachs_suite()
    outputs["sachs"] = sachs
    ok &= sachs["passed"]

    unions = suites.path_union_suite()
    outputs["path_unions"] = unions
    ok &= unions["passed"]
    outputs["matching_extension"] = suites.path_union_extension_check()

    status = "fail" if not ok else ("incomplete" if budget_hit else "ok")
    _emit(Report("verify-paper",
                 {"nmax": args.nmax, "params": [str(p) for p in args.params],
                  "jobs": args.jobs, "budget": None if args.budget is None else f"{args.budget:g}"},
                 outputs, status,
                 timing={"seconds": seconds(time.monotonic() - t0)}))
    if not ok:
        return EXIT_FAIL
    return EXIT_BUDGET if budget_hit else EXIT_OK


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rosespec", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("build", help="print the graph6 of a rose graph")
    s.add_argument("--rose", type=_rose_arg, required=True, help="cycle lengths, e.g. 3,4")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("spectrum", help="exact characteristic polynomial")
    s.add_argument("graphs", nargs="*", help="graph6 strings (default: stdin)")
    s.add_argument("--matrix", type=_params_arg, default=LAPLACIAN,
                   help="laplacian, adjacency, signless or alpha:beta")
    s.add_argument("--roots", type=_places, metavar="PLACES",
                   help="also show real roots truncated to PLACES decimals")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("invariants", help="Laplacian-determined invariants")
    s.add_argument("graphs", nargs="*")
    s.add_argument("--k", type=int, help="also evaluate the k-rose degree identities")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("sachs", help="adjacency coefficients from Sachs subgraphs")
    s.add_argument("graphs", nargs="*")
    s.set_defaults(func=cmd_sachs)

    s = sub.add_parser("matchings", help="number of j-matchings")
    s.add_argument("items", nargs="+", metavar="[GRAPH6 ...] J")
    s.add_argument("--rose", type=_rose_arg)
    s.set_defaults(func=cmd_matchings)

    s = sub.add_parser("enumerate", help="graph6 of every graph with n vertices, m edges")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.add_argument("--all", action="store_true", help="include disconnected graphs")
    s.set_defaults(func=cmd_enumerate)

    def search_opts(s):
        s.add_argument("--jobs", type=int, default=default_jobs(),
                       help="worker processes (default: $ROSESPEC_JOBS or 1)")
        s.add_argument("--budget", type=float, help="wall-clock cap in seconds")
        s.add_argument("--checkpoint-dir", help="store and resume partition results here")

    s = sub.add_parser("search", help="cospectral mates of a rose graph")
    s.add_argument("--rose", type=_rose_arg, required=True)
    s.add_argument("--params", type=_params_arg, default=LAPLACIAN)
    s.add_argument("--no-prune", action="store_true")
    s.add_argument("--cross-validate", action="store_true")
    search_opts(s)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify-paper", help="run every verification suite")
    s.add_argument("--nmax", type=int, default=DESK_MAX_N)
    s.add_argument("--params", type=_params_list, default=[LAPLACIAN],
                   help="comma-separated matrices for the determination search")
    s.add_argument("--extended", action="store_true", help=f"allow --nmax above {DESK_MAX_N}")
    search_opts(s)
    s.set_defaults(func=cmd_verify_paper, budget=3600.0)
    return p


def _split_matchings(args):
    *graphs, j = args.items
    try:
        args.j = int(j)
    except ValueError:
        raise UsageError(f"last argument must be j, got {j!r}") from None
    args.graphs = graphs


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s", stream=sys.stderr)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        if args.command == "matchings":
            _split_matchings(args)
        return args.func(args)
    except UsageError as exc:
        print(f"rosespec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
