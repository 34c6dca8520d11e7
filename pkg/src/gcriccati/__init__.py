"""Generalized complex algebras of orders 2 and 3, with closed-form solutions
and summation formulas for the Riccati and Riccati-Abel equations."""

from .abel import (
    BridgeState,
    RiccatiAbelProblem,
    bridge_refine,
    bridge_residual,
    bridge_start,
    bridge_track,
    continue_log_map,
    invert_log_map,
    log_map,
    pair_sum,
    phi_zero,
)
from .errors import (
    AtSingularity,
    DegenerateRoots,
    DomainError,
    GCRiccatiError,
    Indeterminate,
    NearPole,
    NoConvergence,
    PoleEncountered,
    SegmentNearRoot,
    StepUnderflow,
)
from .gc2 import (
    GVector2,
    Riccati2Solution,
    g2_add,
    g2_eval,
    riccati2_coth,
    riccati2_eval,
    riccati2_phi0,
    riccati2_sum,
    riccati2_tangent,
)
from .gc3 import (
    GVector3,
    PhasePoint,
    TangentPair,
    g3_add,
    g3_det,
    g3_det_expected,
    g3_eval,
    g3_partials,
    pair_from_phase,
    tangent_add,
)
from .polynomial import (
    CubicCoefficients,
    PairState,
    QuadraticCoefficients,
    RootSet3,
    abel_transform,
    multiply_pairs_reduced,
    partial_fraction_weights,
    reduce_monomial,
    solve_cubic,
    solve_quadratic,
)

__version__ = "0.1.0"
