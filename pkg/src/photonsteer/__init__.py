"""photonsteer: feasibility analysis and simulation of split-single-photon steering experiments."""

from .bounds import (
    BoundValue,
    LhsEnsemble,
    equatorial_lhs_correlation,
    equatorial_ring_ensemble,
    equatorial_settings,
    finite_setting_bound,
    finite_setting_bound_enumerated,
    infinite_setting_bound,
    two_ring_ensemble,
    two_ring_lhs_value,
)
from .measurement import (
    PhotodetectionOutcome,
    conditioned_state_homodyne,
    homodyne_effect,
    homodyne_marginal,
    photodetect,
)
from .montecarlo import SimConfig, SimResult, run_experiment
from .states import (
    ExperimentParams,
    SplitPhotonState,
    apply_alice_loss,
    chsh_possible,
    chsh_threshold,
    concurrence,
    split_photon_state,
)
from .steering import (
    SteeringReport,
    evaluate_inequality,
    even_split_threshold,
    necessary_condition,
    nonlinear_rhs,
    quantum_correlation,
    sufficient_condition,
)

__version__ = "0.1.0"

__all__ = [
    "BoundValue",
    "ExperimentParams",
    "LhsEnsemble",
    "PhotodetectionOutcome",
    "SimConfig",
    "SimResult",
    "SplitPhotonState",
    "SteeringReport",
    "apply_alice_loss",
    "chsh_possible",
    "chsh_threshold",
    "concurrence",
    "conditioned_state_homodyne",
    "equatorial_lhs_correlation",
    "equatorial_ring_ensemble",
    "equatorial_settings",
    "evaluate_inequality",
    "even_split_threshold",
    "finite_setting_bound",
    "finite_setting_bound_enumerated",
    "homodyne_effect",
    "homodyne_marginal",
    "infinite_setting_bound",
    "necessary_condition",
    "nonlinear_rhs",
    "photodetect",
    "quantum_correlation",
    "run_experiment",
    "split_photon_state",
    "sufficient_condition",
    "two_ring_ensemble",
    "two_ring_lhs_value",
]
