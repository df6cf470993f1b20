"""Alice's measurement models and Bob's conditioned states.

Two measurement routes exist side by side:

* homodyne detection with local-oscillator phase ``theta``, applied to the
  state *after* Alice-side loss (her inefficiency lives in the state), and
* photodetection, applied to the lossless state (its inefficiency ``eta_p``
  lives in the effect operator instead).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, nan, pi, sqrt

import numpy as np

from .errors import StateError
from .linalg import apply_effect_alice, pauli_theta
from .states import SplitPhotonState, require_unit_interval

#: Outcome window for homodyne quadrature integrals.  The leftover tail mass of
#: the r^2-weighted Gaussian beyond |r| = 8 is below 1e-13.
R_MAX = 8.0
PANEL_POINTS = 201


def gaussian_density(r: float) -> float:
    """Standard normal density, the vacuum homodyne outcome distribution."""
    return exp(-0.5 * r * r) / sqrt(2.0 * pi)


def quadrature_grid(panel_points: int = PANEL_POINTS, r_max: float = R_MAX) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights over [-r_max, r_max], split at r = 0.

    Split panels keep sign-binned integrands (which kink at the origin)
    exponentially convergent instead of degrading to algebraic accuracy.
    """
    x, w = np.polynomial.legendre.leggauss(panel_points)
    half = 0.5 * r_max
    left = (half * (x - 1.0), half * w)
    right = (half * (x + 1.0), half * w)
    return np.concatenate([left[0], right[0]]), np.concatenate([left[1], right[1]])


def homodyne_effect(theta: float, r: float) -> np.ndarray:
    """Effect operator for a phase-theta homodyne outcome r on a 0/1-photon mode.

    Positive for every r, and a complete POVM over r (integrates to the
    identity).
    """
    op = np.zeros((2, 2), dtype=complex)
    op[0, 0] = 1.0
    op[1, 1] = r * r
    op += r * pauli_theta(theta)
    return gaussian_density(r) * op


def conditioned_state_homodyne(
    state: SplitPhotonState, theta: float, r: float
) -> tuple[np.ndarray, float]:
    """Bob's unnormalized state given Alice's homodyne outcome (theta, r).

    Returns ``(rho_tilde, density)`` where the trace of ``rho_tilde`` is the
    probability density for Alice to obtain r.
    """
    if not state.loss_applied:
        raise StateError("homodyne conditioning expects the loss-applied state")
    rho_tilde = apply_effect_alice(state.matrix, homodyne_effect(theta, r))
    return rho_tilde, float(np.trace(rho_tilde).real)


def homodyne_marginal(state: SplitPhotonState, theta: float = 0.0) -> tuple[float, float]:
    """Mixture weights (w0, w1) of Alice's outcome density p(r).

    p(r) = w0 * G(r) + w1 * r^2 * G(r) with G the standard normal density;
    w1 is Alice's reduced one-photon population.  The marginal is independent
    of the local-oscillator phase, so ``theta`` is accepted only for interface
    symmetry with the conditioned-state routines.
    """
    del theta
    if not state.loss_applied:
        raise StateError("homodyne marginal expects the loss-applied state")
    w1 = state.alice_one_photon_population()
    return 1.0 - w1, w1


@dataclass(frozen=True)
class PhotodetectionOutcome:
    """Click statistics and Bob's conditional <sigma_z> for each branch.

    Bob's conditional states are mixtures of Fock states, so they are fully
    described by ``z_plus`` and ``z_minus``.  ``z_minus`` is nan (and
    ``degenerate`` is set) in the unreachable p_minus = 0 corner.
    """

    p_plus: float
    p_minus: float
    z_plus: float
    z_minus: float
    degenerate: bool = False


def photodetect(state: SplitPhotonState, eta_p: float) -> PhotodetectionOutcome:
    """Statistics of Alice's inefficient photodetection on the lossless state."""
    require_unit_interval("eta_p", eta_p)
    if state.loss_applied:
        raise StateError("photodetection acts on the pre-loss state")
    eta, chi = state.eta, state.chi
    p_plus = eta * eta_p * (1.0 - chi)
    p_minus = 1.0 - p_plus
    if p_minus <= 0.0:
        # Requires eta = eta_p = 1 and chi = 0; the minus branch carries no weight.
        return PhotodetectionOutcome(p_plus=1.0, p_minus=0.0, z_plus=-1.0, z_minus=nan, degenerate=True)
    z_minus = (2.0 * eta * chi - p_minus) / p_minus
    return PhotodetectionOutcome(p_plus=p_plus, p_minus=p_minus, z_plus=-1.0, z_minus=z_minus)
