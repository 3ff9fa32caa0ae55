"""Shared domain types, coherent-state arithmetic and dense-matrix utilities.

Conventions used throughout the package:

* atom basis ``|0>`` (excited), ``|1>`` (ground); the atom is always the
  first (slow) tensor factor,
* effective two-qubit basis ``{|0,up>, |0,dn>, |1,up>, |1,dn>}``,
* Fock-space basis ``|atom> (x) |n>`` with ``n = 0..n_max``.

All types are immutable after construction and all functions are pure, so
everything here is safe to share between threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "InvalidStateError",
    "TruncationError",
    "ConvergenceError",
    "SystemParams",
    "CoherentLabel",
    "EvolutionEnvelope",
    "EffectiveDensity",
    "FockDensity",
    "coherent_overlap",
    "coherent_fock_vector",
    "trace_distance",
]


class InvalidStateError(ValueError):
    """A matrix failed a Hermiticity / trace / positivity check."""


class TruncationError(ValueError):
    """A Fock-space truncation is demonstrably inadequate."""


class ConvergenceError(RuntimeError):
    """The step-halving integrator did not reach the requested accuracy."""


def _amplitude(label) -> complex:
    """Complex amplitude of a CoherentLabel (plain complex also accepted)."""
    if isinstance(label, CoherentLabel):
        return label.beta
    return complex(label)


def as_matrix(rho) -> np.ndarray:
    """Unwrap EffectiveDensity/FockDensity to the underlying ndarray."""
    entries = getattr(rho, "entries", rho)
    return np.asarray(entries, dtype=complex)


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SystemParams:
    """Physical inputs of one evolution problem.

    Parameters
    ----------
    g : float
        Atom-cavity coupling rate (already includes the factor 1/2 from
        the strong-driving reduction).  ``g = 0`` is allowed and yields
        pure cavity loss.
    k : float
        Cavity decay rate.  The dissipator convention is
        ``k (2 a rho a+ - a+a rho - rho a+a)``, so the photon-number decay
        rate is ``2 k``.
    alpha : complex
        Initial coherent amplitude of the cavity field.
    """

    g: float
    k: float
    alpha: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "g", float(self.g))
        object.__setattr__(self, "k", float(self.k))
        object.__setattr__(self, "alpha", complex(self.alpha))
        if not (math.isfinite(self.g) and self.g >= 0):
            raise ValueError(f"coupling g must be finite and >= 0, got {self.g}")
        if not (math.isfinite(self.k) and self.k >= 0):
            raise ValueError(f"decay rate k must be finite and >= 0, got {self.k}")
        if not cmath.isfinite(self.alpha):
            raise ValueError("initial amplitude alpha must be finite")


@dataclass(frozen=True)
class CoherentLabel:
    """Complex amplitude labelling a coherent state ``|beta>``."""

    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "beta", complex(self.beta))
        if not cmath.isfinite(self.beta):
            raise ValueError("coherent amplitude must be finite")


@dataclass(frozen=True)
class EvolutionEnvelope:
    """Scalar functions of time that fully determine the analytic state.

    ``alpha_plus/alpha_minus`` are the two displaced coherent labels, ``f1``
    (real, <= 0) and ``f2`` (purely imaginary) are the exponent building
    blocks, ``f_plus/f_minus = conj(f_plus)`` weight the coherences and
    ``lam`` is the overlap ``<alpha_plus|alpha_minus>``.
    """

    alpha_plus: CoherentLabel
    alpha_minus: CoherentLabel
    f1: float
    f2: complex
    f_plus: complex
    f_minus: complex
    lam: complex

    def __post_init__(self):
        if self.f1 > 1e-12:
            raise InvalidStateError(f"f1 must be <= 0, got {self.f1}")
        if abs(self.f2.real) > 1e-12 * max(1.0, abs(self.f2)):
            raise InvalidStateError("f2 must be purely imaginary")
        if abs(self.f_minus - self.f_plus.conjugate()) > 1e-12 * max(1.0, abs(self.f_plus)):
            raise InvalidStateError("f_minus must equal conj(f_plus)")
        if abs(self.lam) > 1 + 1e-12:
            raise InvalidStateError("|lam| must not exceed 1")
        # |f+|^2 = exp(2 f1 + 4 |f2|^2): the alpha-independent purity law
        target = math.exp(2 * self.f1 + 4 * abs(self.f2) ** 2)
        if abs(abs(self.f_plus) ** 2 - target) > 1e-12 * max(target, abs(self.f_plus) ** 2) + 1e-300:
            raise InvalidStateError("envelope modulus identity violated")


def _validate_density(entries: np.ndarray, tol: float, what: str) -> None:
    defect = hermiticity_defect(entries)
    if defect > tol:
        raise InvalidStateError(f"{what}: Hermiticity defect {defect:.3e} > tol {tol:.1e}")
    tr = complex(np.trace(entries))
    if abs(tr - 1) > tol:
        raise InvalidStateError(f"{what}: trace defect {abs(tr - 1):.3e} > tol {tol:.1e}")
    lo = float(np.linalg.eigvalsh(0.5 * (entries + entries.conj().T)).min())
    if lo < -tol:
        raise InvalidStateError(f"{what}: min eigenvalue {lo:.3e} < -tol {tol:.1e}")


@dataclass(frozen=True)
class EffectiveDensity:
    """Validated 4x4 density matrix of atom (x) effective field qubit."""

    entries: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {entries.shape}")
        _validate_density(entries, self.tol, "EffectiveDensity")
        object.__setattr__(self, "entries", _freeze(entries))


@dataclass(frozen=True)
class FockDensity:
    """Validated density matrix on atom (x) truncated Fock space.

    Besides the usual state checks, construction verifies that the top
    three Fock levels carry negligible population, witnessing that the
    truncation ``n_max`` was adequate.
    """

    entries: np.ndarray
    n_max: int
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "n_max", int(self.n_max))
        entries = np.asarray(self.entries, dtype=complex)
        dim = 2 * (self.n_max + 1)
        if entries.shape != (dim, dim):
            raise ValueError(
                f"expected shape {(dim, dim)} for n_max={self.n_max}, got {entries.shape}"
            )
        _validate_density(entries, self.tol, "FockDensity")
        pops = np.real(np.diag(entries))
        f = self.n_max + 1
        top = pops[f - 3 : f].sum() + pops[2 * f - 3 : 2 * f].sum()
        if top > 10 * self.tol:
            raise TruncationError(
                f"population {top:.3e} in the top three Fock levels exceeds "
                f"{10 * self.tol:.1e}; increase n_max"
            )
        object.__setattr__(self, "entries", _freeze(entries))

    def fock_populations(self) -> np.ndarray:
        """Photon-number distribution, traced over the atom."""
        pops = np.real(np.diag(self.entries))
        f = self.n_max + 1
        return pops[:f] + pops[f:]


def coherent_overlap(b1, b2) -> complex:
    """Overlap ``<b1|b2> = exp(-|b1|^2/2 - |b2|^2/2 + conj(b1) b2)``.

    Total on finite inputs; the exponent has non-positive real part
    ``-|b1 - b2|^2 / 2`` so the result never overflows and ``|result| <= 1``.
    """
    a = _amplitude(b1)
    b = _amplitude(b2)
    return cmath.exp(-abs(a) ** 2 / 2 - abs(b) ** 2 / 2 + a.conjugate() * b)


def coherent_fock_vector(b, n_max: int) -> np.ndarray:
    """Number-basis expansion of ``|b>`` truncated at ``n_max``.

    Component ``n`` is ``exp(-|b|^2/2) b^n / sqrt(n!)``, evaluated through
    accumulated log-factorials so large ``n`` cannot overflow.

    Raises
    ------
    TruncationError
        If ``n_max < |b|^2 + 6 |b| + 10`` and the truncated tail mass is
        not negligible at double precision (the vacuum, for instance, is
        exact at any ``n_max``).
    """
    beta = _amplitude(b)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    r = abs(beta)
    n = np.arange(n_max + 1)
    if r == 0:
        v = np.zeros(n_max + 1, dtype=complex)
        v[0] = 1.0
        return v
    half_log_fact = 0.5 * np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, n_max + 1)))))
    v = np.exp(-r * r / 2 + n * math.log(r) - half_log_fact) * np.exp(1j * n * cmath.phase(beta))
    tail = max(0.0, 1.0 - float(np.vdot(v, v).real))
    if n_max < r * r + 6 * r + 10 and tail > 1e-15:
        raise TruncationError(
            f"n_max={n_max} inadequate for |beta|={r:.3f}: "
            f"need n_max >= {r * r + 6 * r + 10:.1f} (truncated mass {tail:.2e})"
        )
    return v


def trace_distance(a, b, tol: float = DEFAULT_TOL) -> float:
    """Trace distance ``1/2 sum |eig(a - b)|`` between two density matrices.

    Both arguments must be Hermitian within ``tol`` and share dimensions.
    """
    ma = as_matrix(a)
    mb = as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    for name, m in (("first", ma), ("second", mb)):
        defect = hermiticity_defect(m)
        if defect > tol:
            raise InvalidStateError(f"{name} argument not Hermitian (defect {defect:.3e})")
    diff = ma - mb
    return 0.5 * float(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))).sum())
