"""Pure-numpy fallback for the hot integration kernel.

Same contract as the compiled ``_kernel`` extension: the Liouvillian is
applied through shifted array slices (the ladder operators are bidiagonal,
so no dense matrix products are needed), and ``run_rk4`` advances a state
in place with classic fixed-step RK4 plus per-step symmetrisation.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def _rhs(rho4, g, k, sq1, nsum, out4):
    """Master-equation right-hand side on the (2, F, 2, F) view."""
    out4[:] = 0.0
    flipped = rho4[::-1]  # atom flip from the left
    out4[:, 1:] += sq1[:, None, None] * flipped[:, :-1]
    out4[:, :-1] += sq1[:, None, None] * flipped[:, 1:]
    flipped = rho4[:, :, ::-1, :]  # atom flip from the right
    out4[:, :, :, 1:] -= flipped[:, :, :, :-1] * sq1
    out4[:, :, :, :-1] -= flipped[:, :, :, 1:] * sq1
    out4 *= -1j * g
    if k != 0.0:
        out4[:, :-1, :, :-1] += (2.0 * k) * (
            sq1[:, None, None] * rho4[:, 1:, :, 1:] * sq1
        )
        out4 -= (k * nsum)[None, :, None, :] * rho4


def _tables(n_fock):
    sq1 = np.sqrt(np.arange(1, n_fock, dtype=float))
    n = np.arange(n_fock, dtype=float)
    return sq1, n[:, None] + n[None, :]


def apply_liouvillian(rho: np.ndarray, g: float, k: float) -> np.ndarray:
    """Return ``-i [V, rho] + k (2 a rho a+ - a+a rho - rho a+a)``."""
    d = rho.shape[0]
    f = d // 2
    sq1, nsum = _tables(f)
    out = np.empty_like(rho)
    _rhs(rho.reshape(2, f, 2, f), g, k, sq1, nsum, out.reshape(2, f, 2, f))
    return out


def run_rk4(rho: np.ndarray, g: float, k: float, dt: float, n_steps: int):
    """Advance ``rho`` in place by ``n_steps`` RK4 steps of size ``dt``.

    Each step is followed by symmetrisation ``rho <- (rho + rho+) / 2``.
    Returns ``(max_herm_dev, max_trace_dev)``: the largest pre-symmetrisation
    Hermiticity defect and the largest post-step ``|Tr - 1|``.
    """
    d = rho.shape[0]
    f = d // 2
    sq1, nsum = _tables(f)
    rho4 = rho.reshape(2, f, 2, f)
    k1, k2, k3, k4 = (np.empty_like(rho) for _ in range(4))
    stage = np.empty_like(rho)
    max_herm = 0.0
    max_trace = 0.0
    for _ in range(n_steps):
        _rhs(rho4, g, k, sq1, nsum, k1.reshape(2, f, 2, f))
        np.multiply(k1, 0.5 * dt, out=stage)
        stage += rho
        _rhs(stage.reshape(2, f, 2, f), g, k, sq1, nsum, k2.reshape(2, f, 2, f))
        np.multiply(k2, 0.5 * dt, out=stage)
        stage += rho
        _rhs(stage.reshape(2, f, 2, f), g, k, sq1, nsum, k3.reshape(2, f, 2, f))
        np.multiply(k3, dt, out=stage)
        stage += rho
        _rhs(stage.reshape(2, f, 2, f), g, k, sq1, nsum, k4.reshape(2, f, 2, f))
        k2 += k3
        k1 += k4
        k1 += 2.0 * k2
        k1 *= dt / 6.0
        rho += k1
        np.conjugate(rho.T, out=stage)
        max_herm = max(max_herm, float(np.max(np.abs(rho - stage))))
        rho += stage
        rho *= 0.5
        max_trace = max(max_trace, abs(complex(np.trace(rho)) - 1.0))
    return max_herm, max_trace
