"""Command line front end wiring every module together.

Subcommands
-----------
opt                 maximize the density objective for one star
approx              series approximation plus deltas against the solver
inducibility-table  table over every star with 6 <= k + l <= m-max
density             densities of a graph file; exact counting up to
                    --exact-cap vertices, Monte-Carlo beyond
mc                  Monte-Carlo density estimate of a graph file
construct           write a layered near-extremal graph file
search              exhaustive or hill-climbing search for dense graphs
verify              run the inequality suites; exit 2 on any violation
stats               bipartition statistics of a graph file
stability           structural-closeness diagnostic of a graph file

Conventions
-----------
Reports go to stdout as JSON (default) or CSV via --format; graph files
are written only through --out.  Every report carries the package
version and the seed it was run with, so identical invocations are
byte-identical.  Exact rational quantities appear twice: as a 50-digit
decimal string under the plain key and as a "p/q" string under the key
with an "_fraction" suffix.  In `stats` reports, S is a decimal string
when computed exactly and a JSON number when estimated.

CSV output starts with a `# oristar <version> seed=<seed>` comment
line, then a header row and data rows.  Fixed column orders:
inducibility-table: k,l,m,alpha,d,opt,inducibility,conjectural;
every other report: its JSON keys, one header row and one data row,
with non-scalar cells JSON-encoded.

Exit codes: 0 success, 1 usage or domain error, 2 verification failure.
The only environment override is ORISTAR_WORKERS, the default worker
count; per-run seeds come from --seed (default 0), never the clock.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .construct import ConstructionParams, build_construction, predict_s
from .density import density_report, monte_carlo_s
from .digraph import StarSpec, format_graph, parse_graph
from .errors import DomainError, OristarError
from .optimize import solve_opt, taylor_approx
from .search import exhaustive_max, local_search
from .verify import (
    SuiteReport,
    arithmetic_sweeps,
    degree_bound_suite,
    lemma_suite,
    partition_stats,
    stability_report,
)

DECIMAL_DIGITS = 50
EXACT_DENSITY_CAP = 400


def _default_workers() -> int:
    env = os.environ.get("ORISTAR_WORKERS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _decimal_str(fr: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    """Round-half-up decimal expansion of an exact rational."""
    sign = "-" if fr < 0 else ""
    fr = abs(fr)
    whole, rem = divmod(fr.numerator, fr.denominator)
    frac_digits, r2 = divmod(rem * 10**digits, fr.denominator)
    if 2 * r2 >= fr.denominator:
        frac_digits += 1
        if frac_digits == 10**digits:
            whole += 1
            frac_digits = 0
    return f"{sign}{whole}.{frac_digits:0{digits}d}"


def _put_rational(report: dict, key: str, value: Fraction | None) -> None:
    report[key] = None if value is None else _decimal_str(value)
    report[key + "_fraction"] = (
        None if value is None else f"{value.numerator}/{value.denominator}"
    )


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value)
    return str(value)


def _emit(report: dict, fmt: str, seed: int, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(report, indent=2))
        stream.write("\n")
        return
    stream.write(f"# oristar {__version__} seed={seed}\n")
    writer = csv.writer(stream, lineterminator="\n")
    rows = report.get("rows")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow([_cell(v) for v in row.values()])
    else:
        flat = {k: v for k, v in report.items() if k not in ("version", "seed")}
        writer.writerow(flat.keys())
        writer.writerow([_cell(v) for v in flat.values()])


def _base_report(args, command: str) -> dict:
    return {"version": __version__, "seed": args.seed, "command": command}


def _load_graph(path: str):
    return parse_graph(Path(path).read_text())


def _all_specs(m_lo: int, m_hi: int) -> list[StarSpec]:
    return [
        StarSpec(k, m - k)
        for m in range(m_lo, m_hi + 1)
        for k in range((m + 1) // 2, m)
    ]


def _cmd_opt(args) -> tuple[int, dict]:
    spec = StarSpec(args.k, args.l)
    r = solve_opt(spec, args.tol)
    report = _base_report(args, "opt")
    report.update(
        {
            "k": spec.k,
            "l": spec.l,
            "alpha": r.alpha_star,
            "d": r.d_star,
            "opt": r.opt_value,
            "inducibility": r.inducibility,
            "conjectural": r.conjectural,
            "tol": r.tol,
        }
    )
    return 0, report


def _cmd_approx(args) -> tuple[int, dict]:
    spec = StarSpec(args.k, args.l)
    t = taylor_approx(spec)
    r = solve_opt(spec, args.tol)
    report = _base_report(args, "approx")
    report.update(
        {
            "k": spec.k,
            "l": spec.l,
            "alpha_hat": t.alpha_hat,
            "d_hat": t.d_hat,
            "value_hat": t.value_hat,
            "alpha_star": r.alpha_star,
            "d_star": r.d_star,
            "opt": r.opt_value,
            "delta_alpha": t.alpha_hat - r.alpha_star,
            "delta_d": t.d_hat - r.d_star,
            "delta_value": t.value_hat - r.opt_value,
            "relative_value_error": abs(t.value_hat - r.opt_value) / r.opt_value,
        }
    )
    return 0, report


def _cmd_table(args) -> tuple[int, dict]:
    if args.m_max < 6:
        raise DomainError("m-max", args.m_max, "[6, inf)")
    rows = []
    for spec in _all_specs(6, args.m_max):
        r = solve_opt(spec, args.tol)
        rows.append(
            {
                "k": spec.k,
                "l": spec.l,
                "m": spec.m,
                "alpha": r.alpha_star,
                "d": r.d_star,
                "opt": r.opt_value,
                "inducibility": r.inducibility,
                "conjectural": r.conjectural,
            }
        )
    report = _base_report(args, "inducibility-table")
    report["m_max"] = args.m_max
    report["rows"] = rows
    return 0, report


def _cmd_density(args) -> tuple[int, dict]:
    spec = StarSpec(args.k, args.l)
    G = _load_graph(args.infile)
    report = _base_report(args, "density")
    report.update({"n": G.n, "k": spec.k, "l": spec.l})
    if G.n <= args.exact_cap:
        rep = density_report(G, spec, workers=args.workers)
        report["mode"] = "exact"
        report["count"] = rep.count
        _put_rational(report, "i_density", rep.i_density)
        _put_rational(report, "s_density", rep.s_density)
    else:
        est = monte_carlo_s(G, spec, args.samples, args.seed, workers=args.workers)
        report["mode"] = "monte-carlo"
        report["estimate"] = est.estimate
        report["std_error"] = est.std_error
        report["samples"] = est.samples
    return 0, report


def _cmd_mc(args) -> tuple[int, dict]:
    spec = StarSpec(args.k, args.l)
    G = _load_graph(args.infile)
    est = monte_carlo_s(G, spec, args.samples, args.seed, workers=args.workers)
    report = _base_report(args, "mc")
    report.update(
        {
            "n": G.n,
            "k": spec.k,
            "l": spec.l,
            "estimate": est.estimate,
            "std_error": est.std_error,
            "samples": est.samples,
        }
    )
    return 0, report


def _cmd_construct(args) -> tuple[int, dict]:
    spec = StarSpec(args.k, args.l)
    mode = "random" if args.random else "balanced"
    if spec.k == spec.l and args.d is not None:
        raise DomainError("d", args.d, "k > l (the k = l shape has no d)")
    if args.alpha is not None:
        if spec.k > spec.l and args.d is None:
            raise DomainError("d", None, "required alongside --alpha when k > l")
        params = ConstructionParams(
            spec=spec,
            n=args.n,
            alpha=args.alpha,
            d=args.d if args.d is not None else 0.0,
            mode=mode,
            seed=args.seed,
        )
    else:
        if args.d is not None:
            raise DomainError("d", args.d, "only meaningful together with --alpha")
        r = solve_opt(spec, args.tol)
        params = ConstructionParams(
            spec=spec,
            n=args.n,
            alpha=r.alpha_star,
            d=r.d_star if r.d_star is not None else 0.0,
            mode=mode,
            seed=args.seed,
        )
    G = build_construction(params)
    Path(args.out).write_text(format_graph(G))
    report = _base_report(args, "construct")
    report.update(
        {
            "k": spec.k,
            "l": spec.l,
            "n": args.n,
            "mode": mode,
            "alpha": params.alpha,
            "d": params.d if spec.k > spec.l else None,
            "sizes": list(params.sizes),
            "arcs": len(G.arcs),
            "predicted_s": predict_s(params),
            "out": args.out,
        }
    )
    return 0, report


def _cmd_search(args) -> tuple[int, dict]:
    spec = StarSpec(args.k, args.l)
    if args.exhaustive:
        res = exhaustive_max(
            args.n, spec, workers=args.workers, symmetry_skip=args.symmetry_skip
        )
    else:
        res = local_search(
            spec,
            args.n,
            seed=args.seed,
            max_moves=args.moves,
            restarts=args.restarts,
            workers=args.workers,
        )
    if args.out:
        Path(args.out).write_text(format_graph(res.witness))
    report = _base_report(args, "search")
    report.update({"k": spec.k, "l": spec.l, "n": args.n, "method": res.method})
    report["best_count"] = res.best_count
    _put_rational(report, "best_i", res.best_i)
    report["explored"] = res.explored
    report["restart_counts"] = (
        None if res.restart_counts is None else list(res.restart_counts)
    )
    report["witness_arcs"] = [list(a) for a in res.witness.sorted_arcs()]
    report["out"] = args.out
    return 0, report


def _cmd_verify(args) -> tuple[int, dict]:
    suites: list[SuiteReport] = []
    if args.suite in ("degree-bound", "all"):
        suites.append(degree_bound_suite(graphs=args.graphs, seed=args.seed))
    if args.suite in ("lemmas", "all"):
        suites.append(lemma_suite(seed=args.seed, samples=args.samples))
    if args.suite in ("arithmetic", "all"):
        sweep = arithmetic_sweeps(args.m_lo, args.m_hi)
        suites.append(SuiteReport("arithmetic", sweep.checks, sweep.failures))
    ok = all(s.ok for s in suites)
    report = _base_report(args, "verify")
    report["suite"] = args.suite
    report["ok"] = ok
    report["suites"] = [
        {"suite": s.suite, "checks": s.checks, "ok": s.ok, "failures": list(s.failures)}
        for s in suites
    ]
    return (0 if ok else 2), report


def _cmd_stats(args) -> tuple[int, dict]:
    spec = StarSpec(args.k, args.l)
    G = _load_graph(args.infile)
    st = partition_stats(
        G, spec, seed=args.seed, samples_per_vertex=args.samples_per_vertex
    )
    report = _base_report(args, "stats")
    report.update({"n": G.n, "k": spec.k, "l": spec.l})
    _put_rational(report, "alpha", st.alpha)
    _put_rational(report, "beta", st.beta)
    _put_rational(report, "gamma", st.gamma)
    _put_rational(report, "D", st.D)
    if st.s_is_exact:
        _put_rational(report, "S", st.S)
    else:
        report["S"] = st.S
        report["S_fraction"] = None
    _put_rational(report, "S1", st.S1)
    _put_rational(report, "S2", st.S2)
    _put_rational(report, "d", st.d)
    _put_rational(report, "d0", st.d0)
    report["s_is_exact"] = st.s_is_exact
    report["s_radius"] = st.s_radius
    return 0, report


def _cmd_stability(args) -> tuple[int, dict]:
    spec = StarSpec(args.k, args.l)
    G = _load_graph(args.infile)
    if args.eps <= 0.0:
        raise DomainError("eps", args.eps, "(0, inf)")
    sr = stability_report(G, spec, args.eps)
    X, y1, y2 = sr.partition
    report = _base_report(args, "stability")
    report.update(
        {
            "n": G.n,
            "k": spec.k,
            "l": spec.l,
            "epsilon": sr.epsilon,
            "partition_sizes": [len(X), len(y1), len(y2)],
            "condition_deltas": list(sr.condition_deltas),
            "violating_counts": list(sr.violating_counts),
        }
    )
    return 0, report


_DISPATCH = {
    "opt": _cmd_opt,
    "approx": _cmd_approx,
    "inducibility-table": _cmd_table,
    "density": _cmd_density,
    "mc": _cmd_mc,
    "construct": _cmd_construct,
    "search": _cmd_search,
    "verify": _cmd_verify,
    "stats": _cmd_stats,
    "stability": _cmd_stability,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1 (not argparse's 2) and show the flag docs."""

    def error(self, message):
        self.print_help(sys.stderr)
        sys.stderr.write(f"\nerror: {message}\n")
        raise SystemExit(1)


def _add_common(p, fmt_default="json"):
    p.add_argument("--seed", type=int, default=0, help="deterministic seed (default 0)")
    p.add_argument(
        "--format",
        choices=("json", "csv"),
        default=fmt_default,
        help=f"report format (default {fmt_default})",
    )


def _add_spec(p):
    p.add_argument("--k", type=int, required=True, help="center out-degree")
    p.add_argument("--l", type=int, required=True, help="center in-degree")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oristar", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"oristar {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("opt", help="maximize the density objective for one star")
    _add_spec(p)
    p.add_argument("--tol", type=float, default=1e-12)
    _add_common(p)

    p = sub.add_parser("approx", help="series approximation vs. the solver")
    _add_spec(p)
    p.add_argument("--tol", type=float, default=1e-12)
    _add_common(p)

    p = sub.add_parser("inducibility-table", help="table over all stars up to m-max")
    p.add_argument("--m-max", type=int, required=True, help="largest k + l (>= 6)")
    p.add_argument("--tol", type=float, default=1e-12)
    _add_common(p, fmt_default="csv")

    p = sub.add_parser("density", help="densities of a graph file")
    p.add_argument("--in", dest="infile", required=True, help="graph file to read")
    _add_spec(p)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument(
        "--exact-cap",
        type=int,
        default=EXACT_DENSITY_CAP,
        help="largest n counted exactly; beyond it Monte-Carlo is used",
    )
    p.add_argument("--samples", type=int, default=1_000_000)
    _add_common(p)

    p = sub.add_parser("mc", help="Monte-Carlo density estimate")
    p.add_argument("--in", dest="infile", required=True)
    _add_spec(p)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=_default_workers())
    _add_common(p)

    p = sub.add_parser("construct", help="write a layered near-extremal graph")
    _add_spec(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=None, help="override the solver")
    p.add_argument("--d", type=float, default=None, help="override the solver (k > l)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--balanced", action="store_true", help="deterministic quotas (default)")
    g.add_argument("--random", action="store_true", help="independent coin flips")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out", required=True, help="graph file to write")
    _add_common(p)

    p = sub.add_parser("search", help="search n-vertex graphs for many copies")
    _add_spec(p)
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--local", action="store_true")
    p.add_argument("--moves", type=int, default=1000, help="hill-climb move budget")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument(
        "--symmetry-skip",
        action="store_true",
        help="skip graphs with a lex-smaller transposition image",
    )
    p.add_argument("--out", default=None, help="write the witness graph here")
    _add_common(p)

    p = sub.add_parser("verify", help="inequality suites; exit 2 on violation")
    p.add_argument(
        "--suite",
        choices=("degree-bound", "lemmas", "arithmetic", "all"),
        required=True,
    )
    p.add_argument("--graphs", type=int, default=1000, help="degree-bound sample size")
    p.add_argument("--samples", type=int, default=100_000, help="lemma sample size")
    p.add_argument("--m-lo", type=int, default=6)
    p.add_argument("--m-hi", type=int, default=64)
    _add_common(p)

    p = sub.add_parser("stats", help="bipartition statistics of a graph file")
    p.add_argument("--in", dest="infile", required=True)
    _add_spec(p)
    p.add_argument("--samples-per-vertex", type=int, default=1 << 14)
    _add_common(p)

    p = sub.add_parser("stability", help="structural-closeness diagnostic")
    p.add_argument("--in", dest="infile", required=True)
    _add_spec(p)
    p.add_argument("--eps", type=float, required=True)
    _add_common(p)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = _DISPATCH[args.cmd](args)
    except OristarError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    _emit(report, args.format, args.seed, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
