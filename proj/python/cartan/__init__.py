"""Cartan barycenters (Karcher means) of positive definite matrices.

Matrices are numpy arrays; results come back as complex128. A measure is a
pair (atoms, weights) with weights summing to 1.
"""

from ._core import (
    BarycenterConvergenceError,
    CartanError,
    DimensionError,
    DomainError,
    EigenConvergenceError,
    NotPositiveDefinite,
    SchemaError,
    barycenter,
    compound,
    eigh,
    expm,
    geodesic,
    karcher_residual,
    lie_trotter_curve,
    lie_trotter_target,
    lipschitz_bound,
    load_measure,
    log_majorize,
    logm,
    norm,
    power_mean,
    powm,
    random_measure,
    save_measure,
    trace_metric,
    wasserstein,
)

__all__ = [name for name in dir() if not name.startswith("_")]
