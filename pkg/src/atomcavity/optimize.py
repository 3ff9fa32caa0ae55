"""Search for the interaction time that maximises atom-field concurrence.

A coarse uniform scan locates the global peak region (the curve is
single-peaked in practice but this is not assumed), then golden-section
refinement shrinks the bracket to the requested resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import SystemParams
from .evolution import effective_density
from .metrics import concurrence

__all__ = ["Optimum", "PlateauError", "BoundaryMaximumError", "find_optimal_time"]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
COARSE_SAMPLES = 201


class PlateauError(ValueError):
    """With k = 0 the concurrence plateaus: report the plateau onset instead."""


class BoundaryMaximumError(ValueError):
    """The best sample sits at t_max; enlarge the search window."""


@dataclass(frozen=True)
class Optimum:
    """Refined maximum: location, value, final bracket, evaluation count."""

    t_opt: float
    c_max: float
    bracket: tuple[float, float]
    evaluations: int

    def __post_init__(self):
        lo, hi = self.bracket
        if not lo <= self.t_opt <= hi:
            raise ValueError(f"t_opt={self.t_opt} outside bracket ({lo}, {hi})")
        if not 0 <= self.c_max <= 1:
            raise ValueError(f"c_max={self.c_max} outside [0, 1]")


def find_optimal_time(params: SystemParams, t_max: float, resolution: float) -> Optimum:
    """Maximise ``concurrence(effective_density(params, t))`` over ``[0, t_max]``.

    Raises ``PlateauError`` for ``k = 0`` (no finite interior maximum is
    guaranteed) and ``BoundaryMaximumError`` when the coarse scan peaks at
    ``t_max``.  Ties between equal coarse samples resolve to the smaller t.
    """
    if params.k == 0:
        raise PlateauError(
            "k = 0 gives a concurrence plateau with no interior maximum; "
            "report the plateau onset instead of an optimal time"
        )
    if not t_max > 0:
        raise ValueError(f"t_max must be > 0, got {t_max}")
    if not resolution > 0:
        raise ValueError(f"resolution must be > 0, got {resolution}")

    evaluations = 0

    def f(t: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return concurrence(effective_density(params, t))

    step = t_max / (COARSE_SAMPLES - 1)
    coarse_t = [i * step for i in range(COARSE_SAMPLES)]
    coarse_c = [f(t) for t in coarse_t]
    best = max(range(COARSE_SAMPLES), key=lambda i: (coarse_c[i], -i))
    if best == COARSE_SAMPLES - 1:
        raise BoundaryMaximumError(
            f"concurrence still rising at t_max={t_max}; enlarge the window"
        )
    best_t, best_c = coarse_t[best], coarse_c[best]

    lo = coarse_t[best - 1] if best > 0 else coarse_t[0]
    hi = coarse_t[best + 1]
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > resolution:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        for t, c in ((x1, f1), (x2, f2)):
            if c > best_c:
                best_t, best_c = t, c
    best_t = min(max(best_t, lo), hi)
    return Optimum(t_opt=best_t, c_max=best_c, bracket=(lo, hi), evaluations=evaluations)
