"""Command line entry point: ``groverian {pmax,sweep,check,reduce,make-state}``.

Exit codes: 0 success, 1 input error or failed check, 2 solver did not converge.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import closed_form, oracle
from .checks import SUITES, run_suite
from .solver import SolverConfig, alternating_pmax, groverian_measure, parse_method, solve
from .states import (
    StateError,
    basis_state,
    bell_state,
    density_from_pure,
    ghz_state,
    load_state,
    partial_trace,
    random_state,
    state_to_json,
    w3_state,
    w4_state,
)

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGED = 0, 1, 2
SWEEP_HEADER = ["kappa", "p_closed", "p_alt", "p_grid", "regime", "groverian"]


def fmt(x: float) -> str:
    return f"{float(x) + 0.0:.15g}"


def fmt_complex(z: complex) -> str:
    return f"{fmt(z.real)}{'+' if z.imag + 0.0 >= 0 else '-'}{fmt(abs(z.imag))}i"


class InputError(Exception):
    pass


def _solver_config(args, method="auto") -> SolverConfig:
    try:
        return SolverConfig(tol=args.tol, max_iter=args.max_iter, starts=args.starts,
                            seed=args.seed, method=method)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _load(path):
    try:
        return load_state(path)
    except (OSError, StateError) as exc:
        raise InputError(str(exc)) from exc


def cmd_pmax(args, out) -> int:
    state = _load(args.state)
    if not state.is_normalized():
        raise InputError("state is not normalized")
    method = args.method
    if method == "closed":
        try:
            p, label = closed_form.closed_form_for_state(state)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        lines = [("method", "closed"), ("family", label), ("p_max", fmt(p)),
                 ("groverian", fmt(groverian_measure(p))), ("converged", "true")]
        print("\n".join(f"{k}: {v}" for k, v in lines), file=out)
        return EXIT_OK
    if method == "grid":
        try:
            p = oracle.grid_pmax(state)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        lines = [("method", "grid"), ("p_max", fmt(p)),
                 ("groverian", fmt(groverian_measure(p))), ("converged", "true")]
        print("\n".join(f"{k}: {v}" for k, v in lines), file=out)
        return EXIT_OK
    try:
        kind, k = parse_method(method)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if kind == "reduced" and not k < state.n:
        raise InputError(f"site {k + 1} out of range for {state.n} parties")
    report = solve(state, _solver_config(args, method))
    print(f"method: {report.method if kind == 'reduced' else 'direct'}", file=out)
    print(f"p_max: {fmt(report.p_max)}", file=out)
    print(f"groverian: {fmt(report.groverian)}", file=out)
    print(f"converged: {'true' if report.converged else 'false'}", file=out)
    print(f"iterations: {report.iterations_used}", file=out)
    for j, v in enumerate(report.best_assignment.locals, start=1):
        party = j if kind != "reduced" or j <= k else j + 1
        print(f"local[{party}]: " + " ".join(fmt_complex(z) for z in v), file=out)
    return EXIT_OK if report.converged else EXIT_NONCONVERGED


def sweep_kappas(kmin: float, kmax: float, steps: int, spacing: str) -> np.ndarray:
    if not (0 <= kmin < kmax) or steps < 2:
        raise InputError("need 0 <= kappa-min < kappa-max and steps >= 2")
    if spacing == "auto":
        spacing = "log" if kmin > 0 else "linear"
    if spacing == "log":
        if kmin == 0:
            raise InputError("log spacing needs kappa-min > 0")
        return np.geomspace(kmin, kmax, steps)
    return np.linspace(kmin, kmax, steps)


def sweep_rows(family: str, kappas, config: SolverConfig, with_grid: bool):
    make = {"w3": w3_state, "w4": w4_state}[family]
    for kappa in kappas:
        point = closed_form.family_pmax(family, kappa)
        state = make(kappa)
        p_alt = alternating_pmax(state, config).p_max
        p_grid = oracle.grid_pmax(state) if with_grid else None
        yield {
            "kappa": kappa,
            "p_closed": point.p_max,
            "p_alt": p_alt,
            "p_grid": p_grid,
            "regime": point.regime.value,
            "groverian": groverian_measure(point.p_max),
        }


def cmd_sweep(args, out) -> int:
    kappas = sweep_kappas(args.kappa_min, args.kappa_max, args.steps, args.spacing)
    config = _solver_config(args)
    handle = out if args.out in (None, "-") else open(args.out, "w", newline="")
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in sweep_rows(args.family, kappas, config, args.with_grid):
            writer.writerow([
                fmt(row["kappa"]), fmt(row["p_closed"]), fmt(row["p_alt"]),
                "" if row["p_grid"] is None else fmt(row["p_grid"]),
                row["regime"], fmt(row["groverian"]),
            ])
    finally:
        if handle is not out:
            handle.close()
    return EXIT_OK


def cmd_check(args, out) -> int:
    config = _solver_config(args)
    if args.samples is not None and args.samples < 1:
        raise InputError("samples must be >= 1")
    results = run_suite(args.suite, args.samples, args.seed, config)
    for r in results:
        print(r.line(), file=out)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return EXIT_OK if failed == 0 else EXIT_INPUT


def cmd_reduce(args, out) -> int:
    state = _load(args.state)
    k = args.trace_out
    if not 1 <= k <= state.n:
        raise InputError(f"--trace-out {k} out of range for {state.n} parties")
    try:
        red = partial_trace(density_from_pure(state), [k - 1])
    except StateError as exc:
        raise InputError(str(exc)) from exc
    print("dims: " + " ".join(str(d) for d in red.dims), file=out)
    for row in red.mat:
        print(" ".join(fmt_complex(z) for z in row), file=out)
    return EXIT_OK


def cmd_make_state(args, out) -> int:
    kind = args.kind
    if kind == "bell":
        state = bell_state()
    elif kind == "ghz":
        state = ghz_state(args.n)
    elif kind in ("w3", "w4"):
        if args.kappa < 0:
            raise InputError("kappa must be nonnegative")
        state = (w3_state if kind == "w3" else w4_state)(args.kappa)
    elif kind == "basis":
        if not args.bits or set(args.bits) - {"0", "1"}:
            raise InputError("--bits must be a string of 0/1, e.g. 010")
        state = basis_state([int(b) for b in args.bits])
    else:
        state = random_state((2,) * args.n, np.random.default_rng(args.seed))
    text = state_to_json(state)
    if args.out in (None, "-"):
        print(text, file=out)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors; 2 is reserved for non-convergence
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _solver_flags(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--starts", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=1000)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="groverian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmax", help="maximal product overlap of a state file")
    p.add_argument("state")
    p.add_argument("--method", default="direct", help="direct | reduced:k | closed | grid")
    _solver_flags(p)
    p.set_defaults(func=cmd_pmax)

    p = sub.add_parser("sweep", help="closed form vs numerics over a kappa range, as CSV")
    p.add_argument("--family", choices=["w3", "w4"], required=True)
    p.add_argument("--kappa-min", type=float, default=0.05)
    p.add_argument("--kappa-max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=60)
    p.add_argument("--spacing", choices=["auto", "log", "linear"], default="auto")
    p.add_argument("--with-grid", action="store_true")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    _solver_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", help="run sampled invariant batteries")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--samples", type=int, default=None)
    _solver_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="print the reduced density matrix")
    p.add_argument("state")
    p.add_argument("--trace-out", type=int, required=True, help="1-based party index")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("make-state", help="write a state file")
    p.add_argument("kind", choices=["bell", "ghz", "w3", "w4", "basis", "random"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--bits", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_make_state)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
