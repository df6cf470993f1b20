"""Local-hidden-state bounds and the explicit ensembles that saturate them.

The key quantity is the best equatorial correlation any ensemble of fixed Bob
states can fake against n evenly spaced equatorial axes.  It is 1 for a single
axis, drops to 2/pi as n grows, and is achieved exactly by rings of pure
states partitioned into half-circles around each queried axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sin, sqrt

import numpy as np

from .errors import DomainError, ResourceLimitError
from .measurement import PhotodetectionOutcome

#: Sign-pattern enumeration cap: 2^20 patterns is the largest we allow.
BRUTEFORCE_MAX_SETTINGS = 20
_ENUM_CHUNK = 1 << 16


def infinite_setting_bound() -> float:
    """Best fakeable correlation against the full continuum of equatorial axes."""
    return 2.0 / pi


@dataclass(frozen=True)
class BoundValue:
    """A correlation bound for n equatorial settings (n = None marks the limit)."""

    n: int | None
    value: float


def equatorial_settings(n: int) -> np.ndarray:
    """n evenly spaced equatorial axes, as angles in (-pi/2, pi/2], ascending."""
    if n < 1:
        raise DomainError(f"setting count must be >= 1, got {n}")
    raw = np.arange(n) * (pi / n)
    raw[raw > pi / 2 + 1e-15] -= pi
    return np.sort(raw)


def finite_setting_bound(n: int) -> BoundValue:
    """Closed-form bound for n settings.

    Equals the enumerated optimum (see ``finite_setting_bound_enumerated``)
    and decreases monotonically to 2/pi.
    """
    if n < 1:
        raise DomainError(f"setting count must be >= 1, got {n}")
    parity_term = 0.0 if n % 2 == 0 else 1.0
    ramp = 2.0 * sum(sin((2 * k - 1) * pi / (2 * n)) for k in range(1, n // 2 + 1))
    return BoundValue(n=n, value=(parity_term + ramp) / n)


def finite_setting_bound_enumerated(n: int) -> float:
    """Bound for n settings by exhaustive enumeration of the 2^n sign patterns.

    For each pattern the extremal eigenvalue of the signed axis average is the
    length of the summed unit vectors in the equatorial plane.  Exponential in
    n, so capped; this routine is the independence check for the closed form.
    """
    if n < 1:
        raise DomainError(f"setting count must be >= 1, got {n}")
    if n > BRUTEFORCE_MAX_SETTINGS:
        raise ResourceLimitError(
            f"enumeration over 2^{n} sign patterns exceeds the cap of 2^{BRUTEFORCE_MAX_SETTINGS}"
        )
    thetas = np.arange(n) * (pi / n)
    ux, uy = np.cos(thetas), np.sin(thetas)
    total = 1 << n
    bit_positions = np.arange(n, dtype=np.uint32)
    best = 0.0
    for start in range(0, total, _ENUM_CHUNK):
        patterns = np.arange(start, min(start + _ENUM_CHUNK, total), dtype=np.uint32)
        signs = (((patterns[:, None] >> bit_positions) & 1) * 2.0) - 1.0
        lengths = np.hypot(signs @ ux, signs @ uy)
        best = max(best, float(lengths.max()))
    return best / n


@dataclass(frozen=True)
class Ring:
    """A ring of equally weighted pure states at fixed Bloch height z.

    ``z_report`` is the result Alice announces when the z axis is queried and
    the hidden state belongs to this ring.
    """

    z: float
    weight: float
    azimuths: np.ndarray
    z_report: int

    @property
    def radius(self) -> float:
        return sqrt(max(0.0, 1.0 - self.z * self.z))


def _ring_azimuths(n: int, m_states: int) -> np.ndarray:
    """State azimuths for an m-state ring built against n axes.

    Odd n: states sit on the axes (and anti-axes); even n: midway between
    adjacent axes.  For m = 2n these are the placements that make the ring
    optimal.
    """
    if m_states < 2 or m_states % 2 != 0:
        raise DomainError(f"ring size must be a positive even integer, got {m_states}")
    offset = 0.0 if n % 2 == 1 else pi / (2 * n)
    return offset + np.arange(m_states) * (2.0 * pi / m_states)


@dataclass(frozen=True)
class LhsEnsemble:
    """A weighted collection of rings with Alice's response rules.

    Equatorial response: report the sign of the hidden state's projection on
    the queried axis; an exactly orthogonal state (zero projection, possible
    only at special placements) is deterministically assigned +1, which cannot
    change any correlation because such a state contributes zero.
    """

    rings: tuple[Ring, ...]

    def total_weight(self) -> float:
        return sum(ring.weight for ring in self.rings)

    @staticmethod
    def equatorial_report(projection: float) -> int:
        return 1 if projection >= 0.0 else -1

    def equatorial_correlation(self, theta: float) -> float:
        """<A_theta * sigma_theta> under the half-circle partition rule."""
        value = 0.0
        for ring in self.rings:
            if ring.weight == 0.0:
                continue
            projections = ring.radius * np.cos(ring.azimuths - theta)
            reports = np.where(projections >= 0.0, 1.0, -1.0)
            value += ring.weight * float(np.mean(reports * projections))
        return value

    def mean_correlation(self, thetas: np.ndarray) -> float:
        return float(np.mean([self.equatorial_correlation(t) for t in thetas]))

    def z_statistics(self) -> tuple[float, float, float, float]:
        """(p_plus, z_plus, p_minus, z_minus) reproduced under the z response rule."""
        p = {1: 0.0, -1: 0.0}
        zw = {1: 0.0, -1: 0.0}
        for ring in self.rings:
            p[ring.z_report] += ring.weight
            zw[ring.z_report] += ring.weight * ring.z
        z_plus = zw[1] / p[1] if p[1] > 0.0 else 0.0
        z_minus = zw[-1] / p[-1] if p[-1] > 0.0 else 0.0
        return p[1], z_plus, p[-1], z_minus


def equatorial_ring_ensemble(n: int, m_states: int | None = None) -> LhsEnsemble:
    """Single equatorial ring (z = 0) targeting n axes; defaults to 2n states."""
    m = 2 * n if m_states is None else m_states
    ring = Ring(z=0.0, weight=1.0, azimuths=_ring_azimuths(n, m), z_report=1)
    return LhsEnsemble(rings=(ring,))


def two_ring_ensemble(n: int, pd: PhotodetectionOutcome) -> LhsEnsemble:
    """Two rings at heights z_plus / z_minus reproducing photodetection statistics."""
    azimuths = _ring_azimuths(n, 2 * n)
    z_minus = 0.0 if pd.degenerate else pd.z_minus
    return LhsEnsemble(
        rings=(
            Ring(z=pd.z_plus, weight=pd.p_plus, azimuths=azimuths, z_report=1),
            Ring(z=z_minus, weight=pd.p_minus, azimuths=azimuths, z_report=-1),
        )
    )


def equatorial_lhs_correlation(m_states: int | None, n: int) -> float:
    """Best fakeable mean correlation of an equatorial ring over the n axes.

    ``m_states = None`` selects the continuous ring, evaluated analytically as
    2/pi; a finite even count is simulated state by state.
    """
    if m_states is None:
        return infinite_setting_bound()
    ensemble = equatorial_ring_ensemble(n, m_states)
    return ensemble.mean_correlation(equatorial_settings(n))


def two_ring_lhs_value(n: int, pd: PhotodetectionOutcome) -> float:
    """Closed-form value the two-ring ensemble fakes for n equatorial axes."""
    bracket = pd.p_plus * sqrt(max(0.0, 1.0 - pd.z_plus**2))
    if not pd.degenerate:
        bracket += pd.p_minus * sqrt(max(0.0, 1.0 - pd.z_minus**2))
    return finite_setting_bound(n).value * bracket


def two_ring_lhs_simulated(n: int, pd: PhotodetectionOutcome) -> float:
    """Same quantity, evaluated by walking the explicit ensemble."""
    ensemble = two_ring_ensemble(n, pd)
    return ensemble.mean_correlation(equatorial_settings(n))
