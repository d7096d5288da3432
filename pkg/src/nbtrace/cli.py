"""Command-line front end.

Subcommands: graph, nbw, spectrum, trace, zeta, heat, walks, fourier.
Graphs come from --input FILE (edge-list format: header "n q", one
"u v" line per edge) or --generate FAMILY[:ARGS] such as cycle:5,
torus:4,2, petersen, random_regular:16,4 (with --seed).

Test functions use a mini-grammar NAME:KEY=VAL,... --
exp:z=0.5  oscexp:z=0.3  poly:n=4  cheb:Y3  logkernel:t=0.2.

Exit codes: 0 success, 1 input/usage error, 2 a residual exceeded --tol.
JSON reports carry {command, graph:{n,q}, results, residuals, runtime_ms};
all fields except runtime_ms are deterministic given inputs and seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .chebyshev import XINF_BASIS, Y_BASIS
from .coefficients import FunctionSpec
from .errors import NbtraceError, InvalidParameter
from .graphs import RegularGraph, adjacency_matrix, generate, read_edge_list
from .kernels import heat_operator
from .nbwalks import (
    circuit_counts,
    girth,
    nbw_matrices,
    prime_circuit_classes,
    walk_count,
)
from .spectral import (
    eigenvalues_symmetric,
    fourier_correction_order,
    fourier_laplace,
    heat_trace,
    spectral_measure,
    stieltjes_modified,
    stieltjes_series_check,
)
from .tracecalc import pretrace, trace_formula, trace_formula_prime
from .zeta import ramanujan_check, zeta_log_series, zeta_reciprocal, zeta_reciprocal_log_series
from .graphs import is_bipartite


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise _UsageError(message)


_FN_BUILTINS = ("exp", "oscexp", "poly", "cheb", "logkernel")


def _parse_complex(text: str) -> complex:
    cleaned = text.strip().replace("i", "j")
    try:
        value = complex(cleaned)
    except ValueError:
        raise InvalidParameter(f"cannot parse complex number {text!r}") from None
    return value.real if value.imag == 0 else value


def parse_function(spec: str) -> FunctionSpec:
    """Build a FunctionSpec from the NAME:KEY=VAL,... mini-grammar."""
    name, _, rest = spec.partition(":")
    kv = {}
    bare = None
    if rest:
        for part in rest.split(","):
            if "=" in part:
                k, _, v = part.partition("=")
                kv[k.strip()] = v.strip()
            else:
                bare = part.strip()
    if name == "exp":
        return FunctionSpec.exp(_parse_complex(kv.get("z", "0.5")))
    if name == "oscexp":
        return FunctionSpec.oscillatory(float(kv.get("z", "0.5")))
    if name == "poly":
        return FunctionSpec.monomial(int(kv.get("n", "2")))
    if name == "cheb":
        token = bare or kv.get("r", "Y2")
        family, index = token[0], token[1:]
        if family == "Y":
            basis = Y_BASIS
        elif family == "X":
            basis = XINF_BASIS
        else:
            raise InvalidParameter(f"cheb spec must look like Y3 or X4, got {token!r}")
        return FunctionSpec.chebyshev(basis, int(index))
    if name == "logkernel":
        return FunctionSpec.log_kernel(float(kv.get("t", "0.2")))
    raise InvalidParameter(f"unknown function {name!r}; builtins: {', '.join(_FN_BUILTINS)}")


def _parse_generate(spec: str, seed: int | None) -> RegularGraph:
    name, _, rest = spec.partition(":")
    args = [int(tok) for tok in rest.split(",") if tok] if rest else []
    return generate(name, *args, seed=seed)


def _load_graph(args) -> RegularGraph:
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            return read_edge_list(fh.read())
    if args.generate:
        return _parse_generate(args.generate, args.seed)
    raise _UsageError("one of --input or --generate is required")


def _emit(args, command, g, results, residuals, rows, t0) -> None:
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        if rows:
            writer.writerow(rows[0])
            writer.writerows(rows[1:])
        else:
            writer.writerow(sorted(results))
            writer.writerow([results[k] for k in sorted(results)])
        return
    report = {
        "command": command,
        "graph": {"n": g.n, "q": g.q},
        "results": results,
        "residuals": residuals,
        "runtime_ms": int((time.perf_counter() - t0) * 1000),
    }
    json.dump(report, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_graph(args, g, t0) -> int:
    results = {
        "n": g.n,
        "q": g.q,
        "degree": g.degree,
        "edges": g.num_edges,
        "girth": girth(g),
        "bipartite": is_bipartite(g),
    }
    _emit(args, "graph", g, results, {}, [], t0)
    return 0


def _cmd_nbw(args, g, t0) -> int:
    rmax = args.rmax or 8
    table = circuit_counts(g, rmax)
    lmax = min(args.lmax or min(rmax, 10), rmax)
    primes = prime_circuit_classes(g, lmax)
    rows = [("r", "f_r", "c_r")] + [(r, table.f[r], table.c[r]) for r in range(rmax + 1)]
    results = {
        "f": table.f,
        "c": table.c,
        "prime_classes": [{"length": p.length, "edges": list(p.edges)} for p in primes],
        "prime_lmax": lmax,
    }
    _emit(args, "nbw", g, results, {}, rows, t0)
    return 0


def _cmd_spectrum(args, g, t0) -> int:
    rmax = args.rmax or 8
    mu = spectral_measure(g)
    lam = eigenvalues_symmetric(adjacency_matrix(g).astype(float))
    report = stieltjes_series_check(g, rmax)
    tgrid = [round(0.05 * k, 2) for k in range(1, 5)]
    samples = [
        {"t": t, "value": _c2j(stieltjes_modified(mu, g.q, t / math.sqrt(g.q)))}
        for t in tgrid
    ]
    rows = [("x", "weight")] + [(x, w) for x, w in zip(mu.locations, mu.weights)]
    results = {
        "eigenvalues": [float(x) for x in lam],
        "atoms": [{"x": float(x), "w": float(w)} for x, w in zip(mu.locations, mu.weights)],
        "stieltjes_modified": samples,
        "series_check_rmax": rmax,
    }
    residuals = {"series_check": report.max_deviation}
    _emit(args, "spectrum", g, results, residuals, rows, t0)
    return 2 if report.max_deviation > args.tol else 0


def _c2j(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _cmd_trace(args, g, t0) -> int:
    h = parse_function(args.fn)
    comparison = trace_formula(g, h, tol=args.tol * 1e-2)
    residuals = {"trace": abs(comparison.residual)}
    results = {
        "fn": args.fn,
        "lhs": _c2j(comparison.lhs),
        "rhs": _c2j(comparison.rhs),
    }
    if args.prime:
        pr = trace_formula_prime(g, h, tol=args.tol * 1e-2, lmax=args.lmax or 10)
        results["prime"] = {
            "lhs": _c2j(pr.lhs),
            "rhs": _c2j(pr.rhs),
            "tail_bound": pr.tail_bound,
        }
        residuals["prime"] = max(abs(pr.residual) - pr.tail_bound, 0.0)
    if args.vertex is not None:
        pt = pretrace(g, args.vertex, h, tol=args.tol * 1e-2)
        results["pretrace"] = {"vertex": args.vertex, "lhs": _c2j(pt.lhs), "rhs": _c2j(pt.rhs)}
        residuals["pretrace"] = abs(pt.residual)
    rows = [("quantity", "value")] + [(k, v) for k, v in sorted(residuals.items())]
    _emit(args, "trace", g, results, residuals, rows, t0)
    return 2 if max(residuals.values()) > args.tol else 0


def _cmd_zeta(args, g, t0) -> int:
    rmax = args.rmax or 10
    series = zeta_log_series(g, rmax)
    det_side = zeta_reciprocal_log_series(g, rmax)
    mismatch = next((r for r in range(rmax + 1) if series[r] != det_side[r]), -1)
    tgrid = [round(0.05 * k, 2) for k in range(1, 7)]
    values = [{"t": t, "one_over_zeta": float(zeta_reciprocal(g, t))} for t in tgrid]
    verdict = ramanujan_check(g)
    rows = [("r", "c_r_over_r")] + [(r, str(series[r])) for r in range(rmax + 1)]
    results = {
        "log_series": [str(c) for c in series],
        "determinant_grid": values,
        "ramanujan": {
            "is_ramanujan": verdict.is_ramanujan,
            "witness": verdict.witness,
            "bound": verdict.bound,
        },
    }
    residuals = {"series_mismatch_at": float(mismatch)}
    _emit(args, "zeta", g, results, residuals, rows, t0)
    return 0 if mismatch == -1 else 2


def _cmd_heat(args, g, t0) -> int:
    times = [float(tok) for tok in (args.times or "0.25,1.0,3.0").split(",")]
    rows = [("t", "eigen", "series", "abs_diff")]
    worst = 0.0
    records = []
    for t in times:
        a = heat_trace(g, t, "eigen")
        b = heat_trace(g, t, "series")
        diff = abs(a - b)
        worst = max(worst, diff)
        rows.append((t, a, b, diff))
        records.append({"t": t, "eigen": a, "series": b})
    H = heat_operator(g, times[0])
    row_defect = float(np.abs(H.sum(axis=1) - 1.0).max())
    results = {"trace": records, "row_sum_defect": row_defect}
    residuals = {"trace_routes": worst, "stochasticity": row_defect}
    _emit(args, "heat", g, results, residuals, rows, t0)
    return 2 if max(residuals.values()) > args.tol else 0


def _cmd_walks(args, g, t0) -> int:
    a, b = args.source, args.target
    if not (0 <= a < g.n and 0 <= b < g.n):
        raise InvalidParameter("source/target out of range")
    nmax = args.nmax or 8
    mats = nbw_matrices(g, nmax, exact=True)
    rows = [("n", "walks", "nbw")]
    records = []
    for n in range(nmax + 1):
        w = walk_count(g, a, b, n)
        f = int(mats[n][a, b])
        rows.append((n, w, f))
        records.append({"n": n, "walks": w, "nbw": f})
    results = {"source": a, "target": b, "counts": records}
    _emit(args, "walks", g, results, {}, rows, t0)
    return 0


def _cmd_fourier(args, g, t0) -> int:
    pmax = args.pmax
    steps = args.steps
    rows = [("p", "eigen_re", "eigen_im", "series_re", "series_im", "abs_diff")]
    worst = 0.0
    records = []
    for k in range(steps + 1):
        p = pmax * k / steps
        a = fourier_laplace(g, p, "eigen")
        b = fourier_laplace(g, p, "bessel_series")
        diff = abs(a - b)
        worst = max(worst, diff)
        rows.append((p, a.real, a.imag, b.real, b.imag, diff))
        records.append({"p": p, "eigen": _c2j(a), "series": _c2j(b)})
    order = fourier_correction_order(g)
    results = {"transform": records, "correction_order": order, "girth": girth(g)}
    residuals = {"routes": worst}
    _emit(args, "fourier", g, results, residuals, rows, t0)
    return 2 if worst > args.tol else 0


def build_parser() -> _Parser:
    parser = _Parser(prog="nbtrace", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nbtrace {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", help="edge-list file")
        p.add_argument("--generate", help="graph family, e.g. cycle:5 or torus:4,2")
        p.add_argument("--seed", type=int, default=None, help="seed for random_regular")
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--rmax", type=int, default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("graph", help="n, q, girth, bipartiteness")
    common(p)
    p = sub.add_parser("nbw", help="closed-NBW and circuit counts, prime classes")
    common(p)
    p.add_argument("--lmax", type=int, default=None, help="prime-class horizon")
    p = sub.add_parser("spectrum", help="eigenvalue measure and Stieltjes data")
    common(p)
    p = sub.add_parser("trace", help="trace-formula verification for a test function")
    common(p)
    p.add_argument("--fn", default="exp:z=0.5")
    p.add_argument("--vertex", type=int, default=None, help="also run the pre-trace at this vertex")
    p.add_argument("--prime", action="store_true", help="also run the prime-circuit version")
    p.add_argument("--lmax", type=int, default=None)
    p = sub.add_parser("zeta", help="Ihara zeta series and determinant values")
    common(p)
    p = sub.add_parser("heat", help="heat trace time series")
    common(p)
    p.add_argument("--times", default=None, help="comma-separated t values")
    p = sub.add_parser("walks", help="walk-count table between two vertices")
    common(p)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--target", type=int, default=0)
    p.add_argument("--nmax", type=int, default=None)
    p = sub.add_parser("fourier", help="Fourier-Laplace transform, two routes")
    common(p)
    p.add_argument("--pmax", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=8)
    return parser


_DISPATCH = {
    "graph": _cmd_graph,
    "nbw": _cmd_nbw,
    "spectrum": _cmd_spectrum,
    "trace": _cmd_trace,
    "zeta": _cmd_zeta,
    "heat": _cmd_heat,
    "walks": _cmd_walks,
    "fourier": _cmd_fourier,
}


def main(argv=None) -> int:
    t0 = time.perf_counter()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        g = _load_graph(args)
        return _DISPATCH[args.command](args, g, t0)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except NbtraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
