"""Entanglement dynamics of a strongly driven two-level atom in a lossy cavity.

The closed-form solution of the dissipative dynamics (two displaced
coherent branches plus scalar envelopes) drives everything: effective
two-qubit states, concurrence/negativity, linear entropies, the optimal
entangling time, and a brute-force Lindblad integrator that independently
validates every formula.
"""

from ._backend import BACKEND
from .core import (
    DEFAULT_TOL,
    ConvergenceError,
    CoherentLabel,
    EffectiveDensity,
    EvolutionEnvelope,
    FockDensity,
    InvalidStateError,
    SystemParams,
    TruncationError,
    coherent_fock_vector,
    coherent_overlap,
    trace_distance,
)
from .evolution import (
    AnalyticState,
    cat_state_vector,
    displaced_amplitudes,
    effective_density,
    envelope,
    fock_density,
)
from .lindblad import (
    IntegratorConfig,
    adequate_n_max,
    default_config,
    integrate,
    integrate_trajectory,
    liouvillian_apply,
    project_to_effective,
)
from .metrics import (
    MetricSample,
    atom_entropy_closed,
    concurrence,
    field_entropy_closed,
    linear_entropy,
    negativity,
    reduced_atom_density,
    reduced_field_density,
    sample_metrics,
    total_entropy_closed,
)
from .optimize import BoundaryMaximumError, Optimum, PlateauError, find_optimal_time

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_TOL",
    "__version__",
    "AnalyticState",
    "BoundaryMaximumError",
    "CoherentLabel",
    "ConvergenceError",
    "EffectiveDensity",
    "EvolutionEnvelope",
    "FockDensity",
    "IntegratorConfig",
    "InvalidStateError",
    "MetricSample",
    "Optimum",
    "PlateauError",
    "SystemParams",
    "TruncationError",
    "adequate_n_max",
    "atom_entropy_closed",
    "cat_state_vector",
    "coherent_fock_vector",
    "coherent_overlap",
    "concurrence",
    "default_config",
    "displaced_amplitudes",
    "effective_density",
    "envelope",
    "field_entropy_closed",
    "find_optimal_time",
    "fock_density",
    "integrate",
    "integrate_trajectory",
    "linear_entropy",
    "liouvillian_apply",
    "negativity",
    "project_to_effective",
    "reduced_atom_density",
    "reduced_field_density",
    "sample_metrics",
    "total_entropy_closed",
    "trace_distance",
]
