"""Minimal complex-matrix kernel for the 2x2 and 4x4 operators used everywhere else.

Conventions, fixed once for the whole package:

* Mode-occupation qubit basis: index 0 is the vacuum ``|0>``, index 1 the
  one-photon state ``|1>``.
* ``sigma_z = |1><1| - |0><0|`` (a photon carries z = +1), and ``sigma_x``,
  ``sigma_y`` complete the right-handed Pauli algebra for that choice.
* Two-mode kets are ``|alice, bob>`` with flat index ``2*a + b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, sin, sqrt

import numpy as np

from .errors import InvalidOperatorError

HERMITICITY_TOL = 1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, 1.0j], [-1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def pauli_theta(theta: float) -> np.ndarray:
    """Equatorial Pauli operator cos(theta)*sigma_x + sin(theta)*sigma_y."""
    if not np.isfinite(theta):
        raise InvalidOperatorError(f"equatorial angle must be finite, got {theta}")
    return cos(theta) * SIGMA_X + sin(theta) * SIGMA_Y


def hermitize(m: np.ndarray) -> np.ndarray:
    """Symmetrize away the ~1e-13 asymmetry that quadrature accumulation leaves."""
    return 0.5 * (m + m.conj().T)


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def eig_bounds_hermitian2(m: np.ndarray, tol: float = HERMITICITY_TOL) -> tuple[float, float]:
    """(min, max) eigenvalue of a Hermitian 2x2 matrix, by the closed form.

    Raises InvalidOperatorError if the input is not Hermitian within ``tol``.
    """
    if m.shape != (2, 2):
        raise InvalidOperatorError(f"expected a 2x2 matrix, got shape {m.shape}")
    if hermiticity_defect(m) > tol:
        raise InvalidOperatorError("matrix is not Hermitian within tolerance")
    a = m[0, 0].real
    d = m[1, 1].real
    half_gap = 0.5 * (a - d)
    radius = sqrt(half_gap * half_gap + abs(m[0, 1]) ** 2)
    mid = 0.5 * (a + d)
    return mid - radius, mid + radius


def eig_max_hermitian2(m: np.ndarray, tol: float = HERMITICITY_TOL) -> float:
    """Larger eigenvalue of a Hermitian 2x2 matrix (closed form, no iteration)."""
    return eig_bounds_hermitian2(m, tol=tol)[1]


def partial_trace_alice(w: np.ndarray) -> np.ndarray:
    """Trace out the first (Alice) factor of a 4x4 two-mode operator."""
    if w.shape != (4, 4):
        raise InvalidOperatorError(f"expected a 4x4 matrix, got shape {w.shape}")
    return np.einsum("abad->bd", w.reshape(2, 2, 2, 2))


def apply_effect_alice(w: np.ndarray, effect: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Bob operator Tr_A[(F x 1) W] for a positive Alice-side effect F.

    The result is Bob's unnormalized conditional state; its trace is the
    probability (density) of the effect firing.
    """
    if w.shape != (4, 4):
        raise InvalidOperatorError(f"expected a 4x4 matrix, got shape {w.shape}")
    lo, _ = eig_bounds_hermitian2(effect, tol=tol)
    if lo < -tol:
        raise InvalidOperatorError(f"effect has negative eigenvalue {lo:.3e}")
    return np.einsum("ac,cbad->bd", effect, w.reshape(2, 2, 2, 2))


@dataclass(frozen=True)
class BlochVector:
    """Real (x, y, z) representation of a 2x2 Hermitian unit-trace operator."""

    x: float
    y: float
    z: float

    def norm(self) -> float:
        return sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def is_physical(self, tol: float = 1e-12) -> bool:
        return self.norm() <= 1.0 + tol

    def to_density(self) -> np.ndarray:
        return 0.5 * (IDENTITY_2 + self.x * SIGMA_X + self.y * SIGMA_Y + self.z * SIGMA_Z)

    @staticmethod
    def from_density(rho: np.ndarray) -> "BlochVector":
        return BlochVector(
            x=float(np.trace(rho @ SIGMA_X).real),
            y=float(np.trace(rho @ SIGMA_Y).real),
            z=float(np.trace(rho @ SIGMA_Z).real),
        )


def equatorial_expectation(bloch_x: float, bloch_y: float, theta: float) -> float:
    """<sigma_theta> for a state with equatorial Bloch components (x, y)."""
    return bloch_x * cos(theta) + bloch_y * sin(theta)
