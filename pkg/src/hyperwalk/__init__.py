"""Coinless two-dimensional quantum walks of a single photon over
polarization, path and OAM, and the negativity between any two of them."""

from .entanglement import (
    DensityMatrix,
    FactorBasis,
    hermitian_eigenvalues,
    negativity,
    negativity_curve,
    parameter_sweep,
    partial_transpose,
    reduced_density_matrix,
    state_negativity,
)
from .kernels import BACKEND
from .layout import OpticalLayout, component_counts, emit_layout
from .operators import (
    OrthoPair,
    SU2Params,
    WalkKind,
    WalkVariant,
    apply_coin,
    coin_matrix,
    evolve,
    jplate_matrix,
    jplate_tilde_matrix,
    pair_from_params,
    qplate_pair,
    shift_sigma,
    shift_sigma_modified,
    shift_x,
    shift_y,
    shift_y_modified,
    step,
)
from .recurrence import AmplitudeGrids, compare_with_operator, oracle_evolve, recurrence_step
from .state import (
    Coin,
    InitialStateParams,
    WalkState,
    make_initial_state,
    marginal_distribution,
    norm_squared,
    probability_distribution,
)

__version__ = "0.1.0"
