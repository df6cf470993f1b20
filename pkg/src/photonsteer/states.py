"""The split-single-photon state family, Alice-side loss, and entanglement diagnostics.

A single photon prepared with efficiency ``eta`` and split on a beam splitter
of ratio ``chi`` leaves Alice and Bob sharing

    W = (1 - eta) |00><00| + eta |psi><psi|,
    |psi> = sqrt(chi) |0,1> - sqrt(1 - chi) |1,0|,

on the two mode-occupation qubits.  The relative minus sign is kept exactly;
every downstream sign choice (Alice reporting -sign(r), the direction of the
optimal homodyne binning) depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf, sqrt

import numpy as np

from .errors import DomainError, StateError

_KET_00, _KET_01, _KET_10, _KET_11 = 0, 1, 2, 3  # flat index 2*alice + bob


def require_unit_interval(name: str, value: float) -> float:
    if not (0.0 <= value <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {value}")
    return float(value)


@dataclass(frozen=True)
class ExperimentParams:
    """The full experimental parameter tuple.

    eta        photon preparation efficiency
    chi        beam-splitter ratio toward Bob's mode
    eta_h      Alice's homodyne detection efficiency
    eta_p      Alice's photodetection efficiency
    n_settings number of evenly spaced equatorial homodyne phases
    """

    eta: float
    chi: float
    eta_h: float = 1.0
    eta_p: float = 0.0
    n_settings: int = 8
    label: str = ""

    def __post_init__(self) -> None:
        require_unit_interval("eta", self.eta)
        require_unit_interval("chi", self.chi)
        require_unit_interval("eta_h", self.eta_h)
        require_unit_interval("eta_p", self.eta_p)
        if self.n_settings < 1:
            raise DomainError(f"n_settings must be >= 1, got {self.n_settings}")


@dataclass(frozen=True)
class SplitPhotonState:
    """A member of the split-photon family, optionally after Alice-side loss.

    The 4x4 matrix is Hermitian, positive, unit trace, and has no two-photon
    component (the |11> population is identically zero).
    """

    eta: float
    chi: float
    matrix: np.ndarray = field(repr=False)
    loss_applied: bool = False
    eta_h: float | None = None

    def bob_reduced(self) -> np.ndarray:
        from .linalg import partial_trace_alice

        return partial_trace_alice(self.matrix)

    def alice_one_photon_population(self) -> float:
        return float(self.matrix[_KET_10, _KET_10].real)


def split_photon_state(eta: float, chi: float) -> SplitPhotonState:
    """Construct the shared state for preparation efficiency eta and splitting chi."""
    require_unit_interval("eta", eta)
    require_unit_interval("chi", chi)
    psi = np.zeros(4, dtype=complex)
    psi[_KET_01] = sqrt(chi)
    psi[_KET_10] = -sqrt(1.0 - chi)
    w = eta * np.outer(psi, psi.conj())
    w[_KET_00, _KET_00] += 1.0 - eta
    return SplitPhotonState(eta=eta, chi=chi, matrix=w)


def apply_alice_loss(state: SplitPhotonState, eta_h: float) -> SplitPhotonState:
    """Absorb Alice's homodyne inefficiency into the state via the loss channel.

    The channel is the two-operator Kraus map (lose, keep) acting on Alice's
    mode only; it is trace preserving by construction.
    """
    require_unit_interval("eta_h", eta_h)
    if state.loss_applied:
        raise StateError("Alice-side loss was already applied to this state")
    m_lose = np.array([[0.0, sqrt(1.0 - eta_h)], [0.0, 0.0]], dtype=complex)
    m_keep = np.array([[1.0, 0.0], [0.0, sqrt(eta_h)]], dtype=complex)
    identity = np.eye(2, dtype=complex)
    w = np.zeros((4, 4), dtype=complex)
    for kraus in (m_lose, m_keep):
        k4 = np.kron(kraus, identity)
        w += k4 @ state.matrix @ k4.conj().T
    return SplitPhotonState(
        eta=state.eta, chi=state.chi, matrix=w, loss_applied=True, eta_h=eta_h
    )


def concurrence(state: SplitPhotonState) -> float:
    """Entanglement of the lossless shared state: 2 * eta * sqrt(chi * (1 - chi))."""
    if state.loss_applied:
        raise StateError("concurrence closed form applies to the pre-loss state")
    return 2.0 * state.eta * sqrt(state.chi * (1.0 - state.chi))


def chsh_threshold(chi: float) -> float:
    """Minimum preparation efficiency for a CHSH violation at splitting ratio chi.

    Returns +inf for chi in {0, 1}: a product state can never violate.  For
    strongly asymmetric splitting the returned value can exceed 1, meaning no
    physical eta suffices on the equatorial-correlation route.
    """
    require_unit_interval("chi", chi)
    if chi == 0.0 or chi == 1.0:
        return inf
    return 1.0 / (2.0 * sqrt(2.0 * chi * (1.0 - chi)))


def chsh_possible(eta: float, chi: float) -> bool:
    require_unit_interval("eta", eta)
    return eta > chsh_threshold(chi)
