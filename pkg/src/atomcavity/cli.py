"""Command-line front end emitting deterministic CSV.

Subcommands: ``evolve`` (metrics vs time), ``entropy`` (closed-form linear
entropies vs time), ``sweep`` (concurrence on a g x t grid), ``optimize``
(best interaction time) and ``compare`` (closed forms vs the brute-force
integrator).  Identical invocations produce byte-identical output: fixed
12-significant-digit formatting, ``\\n`` line endings, rows in grid order.

Exit codes: 0 success, 2 argument error, 3 numerical-validation failure,
4 truncation/convergence failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .core import ConvergenceError, SystemParams, TruncationError, trace_distance
from .evolution import displaced_amplitudes, effective_density, envelope, fock_density
from .lindblad import (
    IntegratorConfig,
    adequate_n_max,
    default_config,
    integrate_trajectory,
    project_to_effective,
)
from .metrics import concurrence, sample_metrics
from .optimize import find_optimal_time

__all__ = ["RunSpec", "run_evolve", "run_entropy", "run_sweep", "run_optimize", "run_compare", "main"]

COMPARE_LIMIT = 1e-6  # a compare row beyond this trace distance fails the run

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICS = 4


@dataclass(frozen=True)
class RunSpec:
    """One CLI invocation after validation."""

    subcommand: str
    params: SystemParams
    t_start: float = 0.0
    t_end: float = 0.0
    n_points: int = 0
    g_start: float = 0.0
    g_end: float = 0.0
    g_points: int = 0
    t_max: float = 0.0
    resolution: float = 0.0
    n_max: int | None = None
    dt: float | None = None
    rtol: float | None = None
    output: str | None = None
    oracle: bool = False

    def __post_init__(self):
        if self.subcommand in ("evolve", "entropy", "sweep", "compare"):
            if self.n_points < 2:
                raise ValueError(f"--points must be >= 2, got {self.n_points}")
            if self.t_start < 0:
                raise ValueError(f"--t-start must be >= 0, got {self.t_start}")
            if not self.t_end > self.t_start:
                raise ValueError("--t-end must exceed --t-start")
        if self.subcommand == "sweep":
            if self.g_points < 1:
                raise ValueError(f"--g-points must be >= 1, got {self.g_points}")
            if self.g_start < 0 or self.g_end < self.g_start:
                raise ValueError("need 0 <= --g-start <= --g-end")
        if self.subcommand == "optimize":
            if not self.t_max > 0:
                raise ValueError(f"--t-max must be > 0, got {self.t_max}")
            if not self.resolution > 0:
                raise ValueError(f"--resolution must be > 0, got {self.resolution}")

    def time_grid(self):
        span = self.t_end - self.t_start
        return [self.t_start + span * i / (self.n_points - 1) for i in range(self.n_points)]

    def g_grid(self):
        if self.g_points == 1:
            return [self.g_start]
        span = self.g_end - self.g_start
        return [self.g_start + span * i / (self.g_points - 1) for i in range(self.g_points)]


def fmt(x: float) -> str:
    """Deterministic 12-significant-digit rendering, '-0' normalised."""
    if x == 0:
        return "0"
    return "%.12g" % x


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def run_evolve(spec: RunSpec) -> str:
    rows = []
    for t in spec.time_grid():
        m = sample_metrics(spec.params, t)
        rows.append((m.t, m.concurrence, m.negativity, m.s_total, m.s_atom, m.s_field))
    return _csv(["t", "concurrence", "negativity", "s_total", "s_atom", "s_field"], rows)


def run_entropy(spec: RunSpec) -> str:
    rows = []
    for t in spec.time_grid():
        env = envelope(spec.params, t)
        fp2 = abs(env.f_plus) ** 2
        lam2 = abs(env.lam) ** 2
        rows.append((t, 0.5 * (1 - fp2), 0.5 * (1 - fp2 * lam2), 0.5 * (1 - lam2)))
    return _csv(["t", "s_total", "s_atom", "s_field"], rows)


def run_sweep(spec: RunSpec) -> str:
    rows = []
    for g in spec.g_grid():
        params = SystemParams(g=g, k=spec.params.k, alpha=spec.params.alpha)
        for t in spec.time_grid():
            c = concurrence(effective_density(params, t).rho_eff)
            rows.append((g, t, c))
    return _csv(["g", "t", "concurrence"], rows)


def run_optimize(spec: RunSpec) -> str:
    opt = find_optimal_time(spec.params, spec.t_max, spec.resolution)
    p = spec.params
    alpha = f"{fmt(p.alpha.real)}{'+' if p.alpha.imag >= 0 else '-'}{fmt(abs(p.alpha.imag))}j"
    line = ",".join([fmt(p.g), fmt(p.k), alpha, fmt(opt.t_opt), fmt(opt.c_max)])
    return "g,k,alpha,t_opt,c_max\n" + line + "\n"


def run_compare(spec: RunSpec):
    """Analytic-vs-oracle table; second return value is False when any row
    exceeds the 1e-6 validation limit."""
    params = spec.params
    times = spec.time_grid()
    defaults = default_config(params, times[-1])
    cfg = IntegratorConfig(
        n_max=spec.n_max if spec.n_max is not None else defaults.n_max,
        dt=spec.dt if spec.dt is not None else defaults.dt,
        rtol=spec.rtol if spec.rtol is not None else defaults.rtol,
        t_final=times[-1],
    )
    states = integrate_trajectory(params, times, cfg)
    tol = max(1e-9, 10 * cfg.rtol)
    rows = []
    ok = True
    for t, oracle in zip(times, states):
        analytic = fock_density(params, t, cfg.n_max)
        dist = trace_distance(analytic, oracle)
        ap, am = displaced_amplitudes(params, t)
        c_analytic = concurrence(effective_density(params, t).rho_eff)
        eff_oracle, leakage = project_to_effective(oracle, ap, am, tol=tol)
        c_oracle = concurrence(eff_oracle)
        ok = ok and dist <= COMPARE_LIMIT
        rows.append((t, dist, c_analytic, c_oracle, leakage))
    header = ["t", "trace_distance", "concurrence_analytic", "concurrence_oracle", "leakage"]
    return _csv(header, rows), ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atomcavity",
        description=(
            "Entanglement and purity dynamics of a strongly driven two-level atom "
            "in a lossy cavity. All quantities are dimensionless; time is measured "
            "in the units set by the rates g and k."
        ),
        epilog=(
            "Cavity-loss convention: the dissipator is k(2 a rho a+ - a+a rho - "
            "rho a+a), so photon-number populations decay at rate 2k. Mind the "
            "factor of two when comparing with k/2-convention tools."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_physics(p, g_flag=True):
        if g_flag:
            p.add_argument("--g", type=float, required=True, help="atom-cavity coupling rate")
        p.add_argument("--k", type=float, required=True, help="cavity decay rate (photon decay 2k)")
        p.add_argument("--alpha-re", type=float, default=0.0, help="Re of the initial coherent amplitude")
        p.add_argument("--alpha-im", type=float, default=0.0, help="Im of the initial coherent amplitude")

    def add_tgrid(p):
        p.add_argument("--t-start", type=float, default=0.0, help="first time sample")
        p.add_argument("--t-end", type=float, required=True, help="last time sample")
        p.add_argument("--points", type=int, default=201, help="number of time samples (>= 2)")

    def add_output(p):
        p.add_argument("--output", metavar="PATH", default=None, help="CSV destination (default: stdout)")

    p = sub.add_parser("evolve", help="concurrence, negativity and linear entropies vs time")
    add_physics(p)
    add_tgrid(p)
    add_output(p)

    p = sub.add_parser("entropy", help="closed-form linear entropies vs time")
    add_physics(p)
    add_tgrid(p)
    add_output(p)

    p = sub.add_parser("sweep", help="concurrence on a g x t grid")
    add_physics(p, g_flag=False)
    p.add_argument("--g-start", type=float, required=True, help="first coupling value")
    p.add_argument("--g-end", type=float, required=True, help="last coupling value")
    p.add_argument("--g-points", type=int, default=41, help="number of coupling samples")
    add_tgrid(p)
    add_output(p)

    p = sub.add_parser("optimize", help="interaction time maximising the concurrence")
    add_physics(p)
    p.add_argument("--t-max", type=float, default=5.0, help="search window end")
    p.add_argument("--resolution", type=float, default=1e-3, help="bracket width at convergence")
    add_output(p)

    p = sub.add_parser("compare", help="validate closed forms against the brute-force integrator")
    add_physics(p)
    add_tgrid(p)
    p.add_argument("--n-max", type=int, default=None, help="Fock truncation (default: adequacy rule)")
    p.add_argument("--dt", type=float, default=None, help="base integrator step (default: 1e-3 per unit rate)")
    p.add_argument("--rtol", type=float, default=None, help="step-halving acceptance threshold (default 1e-9)")
    add_output(p)

    return parser


def _spec_from_args(args) -> RunSpec:
    params = SystemParams(
        g=getattr(args, "g", 1.0),
        k=args.k,
        alpha=complex(args.alpha_re, args.alpha_im),
    )
    return RunSpec(
        subcommand=args.subcommand,
        params=params,
        t_start=getattr(args, "t_start", 0.0),
        t_end=getattr(args, "t_end", 0.0),
        n_points=getattr(args, "points", 0),
        g_start=getattr(args, "g_start", 0.0),
        g_end=getattr(args, "g_end", 0.0),
        g_points=getattr(args, "g_points", 0),
        t_max=getattr(args, "t_max", 0.0),
        resolution=getattr(args, "resolution", 0.0),
        n_max=getattr(args, "n_max", None),
        dt=getattr(args, "dt", None),
        rtol=getattr(args, "rtol", None),
        output=args.output,
        oracle=args.subcommand == "compare",
    )


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _spec_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if spec.subcommand == "evolve":
            _emit(run_evolve(spec), spec.output)
        elif spec.subcommand == "entropy":
            _emit(run_entropy(spec), spec.output)
        elif spec.subcommand == "sweep":
            _emit(run_sweep(spec), spec.output)
        elif spec.subcommand == "optimize":
            _emit(run_optimize(spec), spec.output)
        elif spec.subcommand == "compare":
            text, ok = run_compare(spec)
            _emit(text, spec.output)
            if not ok:
                print(
                    f"validation failure: trace distance exceeded {COMPARE_LIMIT:g}",
                    file=sys.stderr,
                )
                return EXIT_VALIDATION
    except (TruncationError, ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
