"""Entanglement (concurrence, negativity) and mixedness (linear entropy).

Closed-form entropies are provided next to the generic matrix-path
implementations; the two routes agree to 1e-9 and the test suite holds
them to that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    EffectiveDensity,
    InvalidStateError,
    SystemParams,
    as_matrix,
    hermiticity_defect,
)
from .evolution import AnalyticState, effective_density, envelope

__all__ = [
    "MetricSample",
    "concurrence",
    "negativity",
    "linear_entropy",
    "total_entropy_closed",
    "atom_entropy_closed",
    "field_entropy_closed",
    "reduced_atom_density",
    "reduced_field_density",
    "sample_metrics",
]

# sigma_y (x) sigma_y, the two-qubit spin-flip matrix (real in this basis)
_SPIN_FLIP = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex
)

_EIG_CLAMP = 1e-9  # eigenvalues in [-1e-9, 0) are float noise; below is a bug


@dataclass(frozen=True)
class MetricSample:
    """All scalar metrics of one state, range-checked at construction."""

    t: float
    concurrence: float
    negativity: float
    s_total: float
    s_atom: float
    s_field: float

    def __post_init__(self):
        tol = 1e-9
        for name, val, hi in (
            ("concurrence", self.concurrence, 1.0),
            ("negativity", self.negativity, 1.0),
            ("s_total", self.s_total, 0.5),
            ("s_atom", self.s_atom, 0.5),
            ("s_field", self.s_field, 0.5),
        ):
            if not math.isfinite(val) or val < -tol or val > hi + tol:
                raise InvalidStateError(f"{name}={val} outside [0, {hi}]")
        c = self.concurrence
        lower = math.sqrt((1 - c) ** 2 + c * c) - (1 - c)
        if not (lower - tol <= self.negativity <= c + tol):
            raise InvalidStateError(
                f"negativity {self.negativity} violates the concurrence bound "
                f"[{lower}, {c}]"
            )


def _as_two_qubit(rho) -> np.ndarray:
    """Unwrap/validate a 4x4 state (EffectiveDensity instances pass through)."""
    if isinstance(rho, AnalyticState):
        rho = rho.rho_eff
    if isinstance(rho, EffectiveDensity):
        return rho.entries
    return EffectiveDensity(np.asarray(rho, dtype=complex)).entries


def _concurrence_rank2(env) -> float:
    """Concurrence straight from the rank-2 structure of the analytic state.

    The state is exactly ``rho = [U1 U2] G [U1 U2]+`` with the two branch
    vectors ``U1 = (|0> - |1>) |up>``, ``U2 = (|0> + |1>)(lam |up> + mu |dn>)``
    and Gram weights ``G = [[1, f+], [conj(f+), 1]] / 4``.  Factoring
    ``G = c c+`` gives ``rho = L L+`` with a 4x2 ``L``, whose two Wootters
    values are the singular values of the 2x2 ``L^T (sy (x) sy) L`` - the
    other two vanish identically.  This avoids the half-power noise (~1e-8)
    that square-rooting near-zero 4x4 eigenvalues would inject.
    """
    lam = env.lam
    mu2 = 1.0 - abs(lam) ** 2
    mu = math.sqrt(mu2) if mu2 >= 1e-14 else 0.0
    branches = np.array(
        [[1.0, lam], [0.0, mu], [-1.0, lam], [0.0, mu]], dtype=complex
    )
    fp = env.f_plus
    chol = 0.5 * np.array(
        [[1.0, 0.0], [fp.conjugate(), math.sqrt(max(0.0, 1.0 - abs(fp) ** 2))]],
        dtype=complex,
    )
    factor = branches @ chol
    m = factor.T @ _SPIN_FLIP @ factor
    s = np.linalg.svd(m, compute_uv=False)
    return min(1.0, max(0.0, float(s[0] - s[1])))


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit state.

    ``C = max(0, l1 - l2 - l3 - l4)`` with ``l_i`` the descending square
    roots of the eigenvalues of ``rho (sy (x) sy) rho* (sy (x) sy)``;
    conjugation is entry-wise in the stored basis.  ``AnalyticState``
    inputs use their exact rank-2 factorisation.  Plain matrices are
    factored as ``rho = L L+`` so the ``l_i`` become singular values of
    ``L^T (sy (x) sy) L``; eigendirections below ``1e-14`` (pure float
    noise for a unit-trace state, and exactly what the clamping window is
    for) are dropped rather than square-rooted into ~1e-8 artefacts.
    """
    if isinstance(rho, AnalyticState):
        return _concurrence_rank2(rho.env)
    m = _as_two_qubit(rho)
    w, v = np.linalg.eigh(m)
    if float(w.min()) < -_EIG_CLAMP:
        raise InvalidStateError(f"state eigenvalue {w.min():.3e} < -{_EIG_CLAMP:.0e}")
    keep = w > 1e-14
    factor = v[:, keep] * np.sqrt(w[keep])
    s = np.linalg.svd(factor.T @ _SPIN_FLIP @ factor, compute_uv=False)
    lams = np.zeros(4)
    lams[: s.size] = s
    return min(1.0, max(0.0, float(lams[0] - lams[1] - lams[2] - lams[3])))


def negativity(rho) -> float:
    """Negativity normalised so a Bell state gives 1.

    ``N = 2 sum |negative eigenvalues of the partial transpose|`` (the
    transpose is taken over the atom factor; for two qubits the choice of
    subsystem does not matter).
    """
    m = _as_two_qubit(rho)
    pt = m.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)
    ev = np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))
    if float(ev.min()) < -(0.5 + _EIG_CLAMP):
        raise InvalidStateError("partial-transpose spectrum out of range")
    return min(1.0, max(0.0, 2.0 * float(-ev[ev < 0].sum())))


def linear_entropy(rho) -> float:
    """``1 - Tr(rho^2)``; 0 for pure states, ``1 - 1/d`` for maximally mixed."""
    m = as_matrix(rho)
    defect = hermiticity_defect(m)
    if defect > DEFAULT_TOL:
        raise InvalidStateError(f"state not Hermitian (defect {defect:.3e})")
    purity = float(np.sum(np.abs(m) ** 2))  # Tr(rho^2) for Hermitian rho
    return 1.0 - purity


def total_entropy_closed(params: SystemParams, t: float) -> float:
    """Linear entropy of the full atom-field state, ``(1 - |f+|^2) / 2``."""
    env = envelope(params, t)
    return 0.5 * (1.0 - abs(env.f_plus) ** 2)


def atom_entropy_closed(params: SystemParams, t: float) -> float:
    """Linear entropy of the reduced atom, ``(1 - |f+ lam|^2) / 2``."""
    env = envelope(params, t)
    return 0.5 * (1.0 - abs(env.f_plus * env.lam) ** 2)


def field_entropy_closed(params: SystemParams, t: float) -> float:
    """Linear entropy of the reduced field, ``(1 - |lam|^2) / 2``."""
    env = envelope(params, t)
    return 0.5 * (1.0 - abs(env.lam) ** 2)


def reduced_atom_density(state: AnalyticState) -> np.ndarray:
    """Partial trace over the field qubit; returns a 2x2 matrix."""
    r = state.rho_eff.entries.reshape(2, 2, 2, 2)
    return np.einsum("afbf->ab", r)


def reduced_field_density(state: AnalyticState) -> np.ndarray:
    """Partial trace over the atom; returns a 2x2 matrix."""
    r = state.rho_eff.entries.reshape(2, 2, 2, 2)
    return np.einsum("afag->fg", r)


def sample_metrics(params: SystemParams, t: float) -> MetricSample:
    """Evaluate every metric at one instant (entropies via closed forms)."""
    state = effective_density(params, t)
    env = state.env
    return MetricSample(
        t=t,
        concurrence=concurrence(state),
        negativity=negativity(state),
        s_total=0.5 * (1.0 - abs(env.f_plus) ** 2),
        s_atom=0.5 * (1.0 - abs(env.f_plus * env.lam) ** 2),
        s_field=0.5 * (1.0 - abs(env.lam) ** 2),
    )
