"""Maximal success probability and Groverian measure of pure multi-qudit states."""

from .closed_form import (
    FamilyCurvePoint,
    Regime,
    RegimeError,
    cyclic_quadrilateral_circumdiameter_sq,
    triangle_circumdiameter_sq,
    w3_boundaries,
    w3_pmax,
    w4_boundaries,
    w4_pmax,
    wtype_general_pmax,
)
from .solver import (
    PmaxReport,
    SolverConfig,
    alternating_pmax,
    effective_local_matrix,
    groverian_measure,
    pmax_via_reduced,
    top_eigen_hermitian,
)
from .states import (
    CorrelationTensor,
    DensityOperator,
    ProductAssignment,
    PureState,
    StateError,
    correlation_tensor,
    density_from_pure,
    normalize,
    overlap_with_product,
    partial_trace,
)

__all__ = [name for name in dir() if not name.startswith("_")]
