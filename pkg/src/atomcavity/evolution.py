"""Closed-form evolution of the driven atom in a lossy cavity.

The state at time t is a rank-<=2 mixture supported on the two displaced
coherent states ``alpha+(t)`` and ``alpha-(t)``; writing the field in the
orthonormal pair built from them turns the atom-field system into an exact
two-qubit problem.  This module evaluates those closed forms and renders
the same state either as a 4x4 effective-qubit matrix or on a truncated
Fock space.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    CoherentLabel,
    EffectiveDensity,
    EvolutionEnvelope,
    FockDensity,
    InvalidStateError,
    SystemParams,
    coherent_fock_vector,
    coherent_overlap,
)

__all__ = [
    "AnalyticState",
    "displaced_amplitudes",
    "envelope",
    "effective_density",
    "cat_state_vector",
    "fock_density",
]

# Below k*t = SERIES_CUTOFF the 1/k and 1/k^2 expressions switch to Taylor
# series through (k t)^4; the first dropped term is below 1e-16 relative.
SERIES_CUTOFF = 1e-4


def _phi1(x: float) -> float:
    """(exp(-x) - 1 + x) / x^2, stable down to x = 0 (value 1/2)."""
    if x < SERIES_CUTOFF:
        return 0.5 - x / 6 + x * x / 24 - x**3 / 120 + x**4 / 720
    return (math.expm1(-x) + x) / (x * x)


def _phi2(x: float) -> float:
    """(1 - exp(-x)) / x, stable down to x = 0 (value 1)."""
    if x < SERIES_CUTOFF:
        return 1.0 - x / 2 + x * x / 6 - x**3 / 24 + x**4 / 120
    return -math.expm1(-x) / x


def _check_time(t: float) -> float:
    t = float(t)
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    return t


@dataclass(frozen=True)
class AnalyticState:
    """Closed-form state at one instant: inputs, envelope, 4x4 matrix."""

    params: SystemParams
    t: float
    env: EvolutionEnvelope
    rho_eff: EffectiveDensity


def displaced_amplitudes(params: SystemParams, t: float) -> tuple[CoherentLabel, CoherentLabel]:
    """The two coherent labels ``alpha +/- (t)``.

    ``alpha+-(t) = alpha e^{-kt} +- i (g/k)(1 - e^{-kt})``; for ``k t``
    below the series cutoff the ramp uses the expansion
    ``t (1 - kt/2 + (kt)^2/6 - ...)`` so the ``k -> 0`` limit
    ``alpha +- i g t`` is exact to machine precision.
    """
    t = _check_time(t)
    x = params.k * t
    decay = math.exp(-x)
    ramp = params.g * t * _phi2(x)
    return (
        CoherentLabel(params.alpha * decay + 1j * ramp),
        CoherentLabel(params.alpha * decay - 1j * ramp),
    )


def envelope(params: SystemParams, t: float) -> EvolutionEnvelope:
    """Evaluate all scalar envelope functions at time ``t``."""
    t = _check_time(t)
    g, k, alpha = params.g, params.k, params.alpha
    x = k * t
    f1 = -4 * g * g * t * t * _phi1(x)
    f2 = 1j * (g * t * _phi2(x))
    base = f1 + 2 * abs(f2) ** 2
    drive = f2 * (2 * alpha.real) * (2 - math.exp(-x))
    f_plus = cmath.exp(base + drive)
    f_minus = cmath.exp(base - drive)
    ap, am = displaced_amplitudes(params, t)
    lam = coherent_overlap(ap, am)
    return EvolutionEnvelope(
        alpha_plus=ap,
        alpha_minus=am,
        f1=f1,
        f2=f2,
        f_plus=f_plus,
        f_minus=f_minus,
        lam=lam,
    )


def _component_matrices(lam: complex):
    """2x2 images of the four dyads |a+-><a+-| in the orthonormal basis.

    The field pair is ``|up> = |a+>`` and ``|a-> = lam |up> + mu |dn>``
    with ``mu = sqrt(1 - |lam|^2)``.  When ``1 - |lam|^2 < 1e-14`` the
    basis is degenerate; ``mu`` is set to 0 and the (unpopulated) choice
    of ``|dn>`` is immaterial.
    """
    mu2 = 1.0 - abs(lam) ** 2
    mu = math.sqrt(mu2) if mu2 >= 1e-14 else 0.0
    pp = np.array([[1, 0], [0, 0]], dtype=complex)
    mm = np.array([[abs(lam) ** 2, lam * mu], [lam.conjugate() * mu, mu * mu]], dtype=complex)
    pm = np.array([[lam.conjugate(), mu], [0, 0]], dtype=complex)
    mp = np.array([[lam, 0], [mu, 0]], dtype=complex)
    return pp, mm, pm, mp


def _assemble_blocks(pp, mm, pm, mp, f_plus, f_minus, tol):
    """Atom-indexed 2x2 blocks of the density matrix from the four dyads."""
    b00 = 0.25 * (pp + mm + f_plus * pm + f_minus * mp)
    b11 = 0.25 * (pp + mm - f_plus * pm - f_minus * mp)
    b01 = -0.25 * (pp - mm - f_plus * pm + f_minus * mp)
    b10 = 0.25 * (mm - pp - f_plus * pm + f_minus * mp)
    defect = float(np.max(np.abs(b10 - b01.conj().T)))
    if defect > tol:
        raise InvalidStateError(f"block adjointness defect {defect:.3e}; transcription bug")
    dim = pp.shape[0]
    rho = np.empty((2 * dim, 2 * dim), dtype=complex)
    rho[:dim, :dim] = b00
    rho[:dim, dim:] = b01
    rho[dim:, :dim] = b01.conj().T
    rho[dim:, dim:] = b11
    return rho


def effective_density(params: SystemParams, t: float, tol: float = DEFAULT_TOL) -> AnalyticState:
    """Closed-form state at time ``t`` as a validated 4x4 density matrix.

    No normalisation is applied: unit trace, Hermiticity and positivity
    must come out of the formulas, and their violation beyond ``tol``
    raises ``InvalidStateError``.
    """
    env = envelope(params, t)
    pp, mm, pm, mp = _component_matrices(env.lam)
    rho = _assemble_blocks(pp, mm, pm, mp, env.f_plus, env.f_minus, tol)
    return AnalyticState(params=params, t=t, env=env, rho_eff=EffectiveDensity(rho, tol))


def cat_state_vector(g: float, t: float) -> np.ndarray:
    """Pure state reached with ``alpha = 0, k = 0``, in the effective basis.

    Returns the 4-vector over ``{|0,up>, |0,dn>, |1,up>, |1,dn>}`` with
    ``|up> = |i g t>``; the state is the balanced superposition of the two
    opposite-phase coherent branches correlated with the atom.
    """
    t = _check_time(t)
    lam = math.exp(-2 * g * g * t * t)  # <i g t | -i g t>, real here
    mu = math.sqrt(max(0.0, 1.0 - lam * lam))
    psi = np.array([(1 + lam) / 2, mu / 2, (lam - 1) / 2, mu / 2], dtype=complex)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1) > 1e-12:
        raise InvalidStateError(f"cat state norm defect {abs(norm - 1):.3e}")
    return psi


def fock_density(params: SystemParams, t: float, n_max: int, tol: float = DEFAULT_TOL) -> FockDensity:
    """The same analytic state rendered on atom (x) truncated Fock space.

    ``n_max`` must be adequate for both displaced amplitudes (the
    ``coherent_fock_vector`` rule); inadequate truncation raises
    ``TruncationError``.
    """
    env = envelope(params, t)
    vp = coherent_fock_vector(env.alpha_plus, n_max)
    vm = coherent_fock_vector(env.alpha_minus, n_max)
    pp = np.outer(vp, vp.conj())
    mm = np.outer(vm, vm.conj())
    pm = np.outer(vp, vm.conj())
    mp = np.outer(vm, vp.conj())
    rho = _assemble_blocks(pp, mm, pm, mp, env.f_plus, env.f_minus, tol)
    return FockDensity(rho, n_max, tol)
