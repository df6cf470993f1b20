"""Quantum correlation values, inequality assembly, and feasibility verdicts.

The test pits the best correlation quantum mechanics delivers through Alice's
sign-binned homodyne measurements against the best value a local-hidden-state
ensemble could fake given her photodetection statistics.  A positive margin
certifies steering; the sufficient and necessary parameter conditions bracket
where that can happen.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt
from typing import Callable

from .bounds import finite_setting_bound, infinite_setting_bound
from .measurement import PhotodetectionOutcome, photodetect
from .states import ExperimentParams, require_unit_interval, split_photon_state

VIOLATED = "violated"
NOT_VIOLATED = "not_violated"


def quantum_correlation(eta: float, eta_h: float, chi: float = 0.5) -> float:
    """Equatorial correlation achieved by Alice reporting -sign(r) at the matching phase.

    2 * sqrt(2/pi) * eta * sqrt(eta_h * chi * (1 - chi)); the even split
    reduces it to sqrt(2/pi) * eta * sqrt(eta_h).  The value is the same for
    every setting, so it also equals the finite-n average.
    """
    require_unit_interval("eta", eta)
    require_unit_interval("eta_h", eta_h)
    require_unit_interval("chi", chi)
    return 2.0 * sqrt(2.0 / pi) * eta * sqrt(eta_h * chi * (1.0 - chi))


def optimal_sign_strategy(kernel: Callable[[float], float]) -> Callable[[float], int]:
    """Dichotomic report maximizing the integral of a(r) * kernel(r).

    The pointwise maximizer is the sign of the kernel (ties to +1).  For the
    split-photon conditioned states the kernel is proportional to -r times a
    Gaussian, so the returned strategy is -sign(r).
    """

    def report(r: float) -> int:
        value = kernel(r)
        return 1 if value >= 0.0 else -1

    return report


def nonlinear_rhs(n: int | None, pd: PhotodetectionOutcome) -> float:
    """Hidden-state bound with the photodetection branch folded in.

    n = None selects the infinite-settings limit.  With a trivial click
    observable (p_plus = 1) this degrades gracefully to the single-branch
    bound, and with no z information at all to the plain equatorial bound.
    """
    bound = infinite_setting_bound() if n is None else finite_setting_bound(n).value
    bracket = pd.p_plus * sqrt(max(0.0, 1.0 - pd.z_plus**2))
    if not pd.degenerate:
        bracket += pd.p_minus * sqrt(max(0.0, 1.0 - pd.z_minus**2))
    return bound * bracket


def nonlinear_rhs_from_params(n: int | None, eta: float, chi: float, eta_p: float) -> float:
    """Same bound written directly in the experiment parameters.

    Algebraically identical to composing ``photodetect`` with ``nonlinear_rhs``;
    kept as an independent expression so the two can be checked against each
    other.
    """
    bound = infinite_setting_bound() if n is None else finite_setting_bound(n).value
    inner = 4.0 * eta * chi * (1.0 - eta * chi - eta * eta_p * (1.0 - chi))
    return bound * sqrt(max(0.0, inner))


@dataclass(frozen=True)
class ConditionResult:
    """One side of a feasibility condition: the bracketed product and its verdict.

    The comparison is strict (> 1) with no epsilon; marginal cases should be
    judged from ``lhs_value`` directly.
    """

    lhs_value: float
    satisfied: bool


def sufficient_condition(params: ExperimentParams) -> ConditionResult:
    """Parameters satisfying this can violate the inequality at n_settings phases."""
    f = finite_setting_bound(params.n_settings).value
    lhs = params.eta * (
        params.chi
        + (1.0 - params.chi) * (params.eta_p + (2.0 / pi) * params.eta_h / (f * f))
    )
    return ConditionResult(lhs_value=lhs, satisfied=lhs > 1.0)


def necessary_condition(params: ExperimentParams) -> ConditionResult:
    """Light-budget bound no steering demonstration can evade.

    If this fails, a distrusted Alice with perfect detectors could gather her
    whole share of the light (including the preparation losses) and run every
    measurement at once, so no inequality whatsoever could be violated.
    """
    lhs = params.eta * (
        params.chi + (1.0 - params.chi) * (params.eta_p + 2.0 * params.eta_h)
    )
    return ConditionResult(lhs_value=lhs, satisfied=lhs > 1.0)


def measurement_budget_exceeded(eta_h: float, eta_p: float) -> bool:
    """Weaker budget check ignoring the preparation loss: eta_p + 2*eta_h > 1."""
    require_unit_interval("eta_h", eta_h)
    require_unit_interval("eta_p", eta_p)
    return eta_p + 2.0 * eta_h > 1.0


def even_split_threshold(eta_h: float, eta_p: float) -> float:
    """Preparation efficiency needed at chi = 0.5 with unlimited phase settings."""
    require_unit_interval("eta_h", eta_h)
    require_unit_interval("eta_p", eta_p)
    return 4.0 / (2.0 + pi * eta_h + 2.0 * eta_p)


@dataclass(frozen=True)
class SteeringReport:
    """Full analytic evaluation of one parameter set.

    ``verdict`` follows the finite-setting margin strictly: violated iff
    margin > 0.  The infinite-settings figures ride along for comparison.
    """

    params: ExperimentParams
    lhs: float
    rhs_finite: float
    rhs_infinite: float
    margin: float
    margin_infinite: float
    verdict: str
    sufficient: ConditionResult
    necessary: ConditionResult
    budget_simple_exceeded: bool
    degenerate_chi: bool
    photodetection: PhotodetectionOutcome


def evaluate_inequality(params: ExperimentParams) -> SteeringReport:
    """Assemble both sides of the inequality and every feasibility condition."""
    state = split_photon_state(params.eta, params.chi)
    pd = photodetect(state, params.eta_p)
    lhs = quantum_correlation(params.eta, params.eta_h, params.chi)
    rhs_finite = nonlinear_rhs(params.n_settings, pd)
    rhs_infinite = nonlinear_rhs(None, pd)
    margin = lhs - rhs_finite
    return SteeringReport(
        params=params,
        lhs=lhs,
        rhs_finite=rhs_finite,
        rhs_infinite=rhs_infinite,
        margin=margin,
        margin_infinite=lhs - rhs_infinite,
        verdict=VIOLATED if margin > 0.0 else NOT_VIOLATED,
        sufficient=sufficient_condition(params),
        necessary=necessary_condition(params),
        budget_simple_exceeded=measurement_budget_exceeded(params.eta_h, params.eta_p),
        degenerate_chi=params.chi in (0.0, 1.0),
        photodetection=pd,
    )
