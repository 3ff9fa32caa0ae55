"""Brute-force master-equation integrator on atom (x) truncated Fock space.

This is the ground truth used to validate every closed form: classic
fixed-step RK4 with global step-halving (a run is accepted once the dt and
dt/2 trajectories agree to ``rtol`` in trace distance at every checkpoint).
Dissipation convention: ``k (2 a rho a+ - a+a rho - rho a+a)``, i.e. the
photon-number decay rate is ``2 k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import BACKEND, apply_liouvillian as _apply_rhs, run_rk4 as _run_rk4
from .core import (
    DEFAULT_TOL,
    ConvergenceError,
    EffectiveDensity,
    FockDensity,
    InvalidStateError,
    SystemParams,
    TruncationError,
    coherent_fock_vector,
    trace_distance,
)
from .evolution import _phi2

__all__ = [
    "BACKEND",
    "IntegratorConfig",
    "adequate_n_max",
    "default_config",
    "liouvillian_apply",
    "integrate",
    "integrate_trajectory",
    "project_to_effective",
]

MAX_HALVINGS = 12
_HERM_LIMIT = 1e-10  # pre-symmetrisation defect beyond this aborts the run
_TRACE_LIMIT = 1e-9


@dataclass(frozen=True)
class IntegratorConfig:
    """Truncation, base step, acceptance threshold and end time."""

    n_max: int
    dt: float
    rtol: float = 1e-9
    t_final: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "n_max", int(self.n_max))
        if self.n_max < 10:
            raise ValueError(f"n_max must be >= 10, got {self.n_max}")
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not 0 < self.rtol <= 1e-3:
            raise ValueError(f"rtol must lie in (0, 1e-3], got {self.rtol}")
        if self.t_final < 0:
            raise ValueError(f"t_final must be >= 0, got {self.t_final}")


def _max_amplitude(params: SystemParams, t_final: float) -> float:
    # |alpha+-(t)| <= |alpha| e^{-kt} + g t phi2(kt), which is monotone in t
    x = params.k * t_final
    end = abs(params.alpha) * math.exp(-x) + params.g * t_final * _phi2(x)
    return max(abs(params.alpha), end)


def adequate_n_max(params: SystemParams, t_final: float) -> int:
    """Smallest truncation meeting the ``A^2 + 8A + 20`` adequacy rule."""
    a = _max_amplitude(params, t_final)
    return max(10, math.ceil(a * a + 8 * a + 20 - 1e-9))


def default_config(params: SystemParams, t_final: float) -> IntegratorConfig:
    """``dt = 1e-3`` per unit of the fastest rate, ``rtol = 1e-9``."""
    rate = max(params.g, params.k)
    dt = 1e-3 / rate if rate > 0 else 1e-3
    return IntegratorConfig(
        n_max=adequate_n_max(params, t_final), dt=dt, rtol=1e-9, t_final=t_final
    )


def liouvillian_apply(rho, params: SystemParams) -> np.ndarray:
    """One application of the master-equation generator.

    The result is Hermitian and traceless (within float noise) for any
    Hermitian input: the generator preserves the trace.
    """
    entries = np.ascontiguousarray(getattr(rho, "entries", rho), dtype=complex)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] % 2:
        raise ValueError(
            f"expected a square matrix of even dimension, got shape {entries.shape}"
        )
    return _apply_rhs(entries, params.g, params.k)


def _initial_state(params: SystemParams, n_max: int) -> np.ndarray:
    v = coherent_fock_vector(params.alpha, n_max)
    f = n_max + 1
    rho = np.zeros((2 * f, 2 * f), dtype=complex)
    rho[:f, :f] = np.outer(v, v.conj())  # atom starts excited (|0>)
    return rho


def _run_trajectory(params: SystemParams, n_max: int, dt: float, times, refine: int):
    """Fixed-step RK4 through every checkpoint; None when the run is unusable.

    ``refine`` doubles the per-segment step count per level, so successive
    halving levels always integrate genuinely finer grids.
    """
    rho = _initial_state(params, n_max)
    snapshots = []
    worst_herm = 0.0
    worst_trace = 0.0
    t_prev = 0.0
    for t in times:
        seg = t - t_prev
        if seg > 0:
            n_steps = max(1, math.ceil(seg / dt - 1e-12)) * 2**refine
            herm, trace = _run_rk4(rho, params.g, params.k, seg / n_steps, n_steps)
            worst_herm = max(worst_herm, herm)
            worst_trace = max(worst_trace, trace)
        t_prev = t
        snapshots.append(rho.copy())
    ok = (
        worst_herm <= _HERM_LIMIT
        and worst_trace <= _TRACE_LIMIT
        and all(np.isfinite(s).all() for s in snapshots)
    )
    return snapshots if ok else None


def integrate_trajectory(params: SystemParams, times, cfg: IntegratorConfig):
    """Integrate once, returning the state at each requested time.

    ``times`` must be non-decreasing and non-negative.  Step-halving runs
    the whole trajectory at ``dt`` and ``dt/2`` and accepts the finer one
    when they agree to ``cfg.rtol`` at every checkpoint.
    """
    times = [float(t) for t in times]
    if not times:
        raise ValueError("need at least one output time")
    if times[0] < 0 or any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("output times must be non-negative and non-decreasing")
    required = _max_amplitude(params, times[-1])
    if cfg.n_max + 1e-9 < required * required + 8 * required + 20:
        raise TruncationError(
            f"n_max={cfg.n_max} below the adequacy rule "
            f"({required * required + 8 * required + 20:.1f}) for amplitude {required:.2f}"
        )
    prev = _run_trajectory(params, cfg.n_max, cfg.dt, times, refine=0)
    for level in range(1, MAX_HALVINGS + 1):
        cur = _run_trajectory(params, cfg.n_max, cfg.dt, times, refine=level)
        if cur is not None and prev is not None:
            gap = max(trace_distance(a, b) for a, b in zip(prev, cur))
            if gap <= cfg.rtol:
                tol = max(DEFAULT_TOL, 10 * cfg.rtol)
                return [FockDensity(s, cfg.n_max, tol) for s in cur]
        prev = cur
    raise ConvergenceError(
        f"no convergence to rtol={cfg.rtol} within {MAX_HALVINGS} halvings of dt={cfg.dt}"
    )


def integrate(params: SystemParams, cfg: IntegratorConfig) -> FockDensity:
    """State at ``cfg.t_final`` (the single-checkpoint trajectory)."""
    return integrate_trajectory(params, [cfg.t_final], cfg)[-1]


def _orthonormal_pair(vp: np.ndarray, vm: np.ndarray):
    """Gram-Schmidt basis of span{|a+>, |a->} as truncated Fock vectors."""
    e1 = vp / np.linalg.norm(vp)
    um = vm / np.linalg.norm(vm)
    lam = complex(np.vdot(e1, um))
    if 1.0 - abs(lam) ** 2 < 1e-14:
        # degenerate span: any fixed unit vector orthogonal to e1 will do,
        # the state has no support on it
        for idx in (0, 1):
            cand = np.zeros_like(e1)
            cand[idx] = 1.0
            w = cand - np.vdot(e1, cand) * e1
            norm = float(np.linalg.norm(w))
            if norm > 0.5:
                return e1, w / norm
        raise InvalidStateError("could not build an orthonormal field pair")
    w = um - lam * e1
    return e1, w / np.linalg.norm(w)


def project_to_effective(rho, aplus, aminus, tol: float = DEFAULT_TOL):
    """Compress the field factor onto span{|a+>, |a->}.

    Returns ``(EffectiveDensity, leakage)`` where ``leakage`` is the trace
    weight outside the two-dimensional span.  Raises ``TruncationError``
    when leakage exceeds 1%, in which case effective-qubit metrics are
    meaningless.
    """
    entries = np.asarray(getattr(rho, "entries", rho), dtype=complex)
    f = entries.shape[0] // 2
    n_max = f - 1
    vp = coherent_fock_vector(aplus, n_max)
    vm = coherent_fock_vector(aminus, n_max)
    e1, e2 = _orthonormal_pair(vp, vm)
    basis = np.stack([e1, e2], axis=1)  # (F, 2)
    eff = np.empty((4, 4), dtype=complex)
    for a in range(2):
        for b in range(2):
            block = entries[a * f : (a + 1) * f, b * f : (b + 1) * f]
            eff[2 * a : 2 * a + 2, 2 * b : 2 * b + 2] = basis.conj().T @ block @ basis
    captured = float(np.trace(eff).real)
    leakage = 1.0 - captured
    if leakage > 0.01:
        raise TruncationError(
            f"state leaks {leakage:.3e} outside the coherent span; not representable"
        )
    return EffectiveDensity(eff / captured, tol), leakage
