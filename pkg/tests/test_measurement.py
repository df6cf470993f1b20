from math import exp, pi, sqrt

import numpy as np
import pytest

from photonsteer.errors import StateError
from photonsteer.linalg import SIGMA_X, partial_trace_alice, pauli_theta
from photonsteer.measurement import (
    PhotodetectionOutcome,
    conditioned_state_homodyne,
    gaussian_density,
    homodyne_effect,
    homodyne_marginal,
    photodetect,
    quadrature_grid,
)
from photonsteer.states import apply_alice_loss, split_photon_state

NODES, WEIGHTS = quadrature_grid()


def lossy_state(eta, chi, eta_h):
    return apply_alice_loss(split_photon_state(eta, chi), eta_h)


class TestHomodyneEffect:
    def test_zero_outcome(self):
        effect = homodyne_effect(0.3, 0.0)
        expected = np.diag([1.0 / sqrt(2 * pi), 0.0]).astype(complex)
        assert np.allclose(effect, expected, atol=1e-15)

    def test_unit_outcome_structure(self):
        effect = homodyne_effect(0.0, 1.0)
        scale = exp(-0.5) / sqrt(2 * pi)
        expected = scale * (np.diag([1.0, 1.0]).astype(complex) + SIGMA_X)
        assert np.allclose(effect, expected, atol=1e-15)
        eigenvalues = np.linalg.eigvalsh(effect)
        assert abs(eigenvalues[0]) < 1e-15  # rank one at the r^2 = 1 boundary

    @pytest.mark.parametrize("theta", np.linspace(-pi / 2, pi / 2, 7))
    def test_positive_for_all_outcomes(self, theta):
        for r in np.linspace(-6.0, 6.0, 61):
            assert np.linalg.eigvalsh(homodyne_effect(theta, r)).min() >= -1e-12

    @pytest.mark.parametrize("theta", [0.0, 0.7, -1.1])
    def test_povm_completeness(self, theta):
        total = sum(w * homodyne_effect(theta, r) for r, w in zip(NODES, WEIGHTS))
        assert np.max(np.abs(total - np.eye(2))) < 1e-8


class TestConditionedState:
    def test_vacuum_gives_gaussian_noise(self):
        state = lossy_state(0.0, 0.5, 0.9)
        for r in (-1.3, 0.0, 2.1):
            rho_tilde, density = conditioned_state_homodyne(state, 0.4, r)
            assert abs(density - gaussian_density(r)) < 1e-14
            assert np.allclose(rho_tilde, np.diag([gaussian_density(r), 0.0]), atol=1e-14)

    def test_density_normalizes(self):
        state = lossy_state(0.64, 0.5, 0.86)
        total = sum(w * conditioned_state_homodyne(state, 0.2, r)[1] for r, w in zip(NODES, WEIGHTS))
        assert abs(total - 1.0) < 1e-8

    def test_law_of_total_probability(self):
        state = lossy_state(0.7, 0.3, 0.8)
        integrated = sum(w * conditioned_state_homodyne(state, -0.5, r)[0] for r, w in zip(NODES, WEIGHTS))
        assert np.max(np.abs(integrated - partial_trace_alice(state.matrix))) < 1e-8

    @pytest.mark.parametrize("r", [0.5, 1.7])
    def test_rotational_covariance(self, r):
        # The matched-axis correlation kernel must not depend on the phase.
        state = lossy_state(0.64, 0.5, 0.86)
        values = []
        for theta in np.linspace(-pi / 2, pi / 2, 9):
            rho_tilde, _ = conditioned_state_homodyne(state, theta, r)
            values.append(np.trace(rho_tilde @ pauli_theta(theta)).real)
        assert np.max(np.abs(np.array(values) - values[0])) < 1e-10

    def test_sign_binned_kernel_integral(self):
        # Perfect even split: |integral of sign(r) * Tr[rho sigma_x] dr| = sqrt(2/pi).
        state = lossy_state(1.0, 0.5, 1.0)
        total = 0.0
        for r, w in zip(NODES, WEIGHTS):
            rho_tilde, _ = conditioned_state_homodyne(state, 0.0, r)
            total += w * np.sign(r) * np.trace(rho_tilde @ SIGMA_X).real
        assert abs(abs(total) - sqrt(2 / pi)) < 1e-8

    def test_requires_lossy_state(self):
        with pytest.raises(StateError):
            conditioned_state_homodyne(split_photon_state(0.5, 0.5), 0.0, 1.0)


class TestHomodyneMarginal:
    def test_vacuum(self):
        assert homodyne_marginal(lossy_state(0.0, 0.5, 0.9)) == (1.0, 0.0)

    def test_alice_always_holds_photon(self):
        w0, w1 = homodyne_marginal(lossy_state(1.0, 0.0, 1.0))
        assert abs(w0) < 1e-15
        assert abs(w1 - 1.0) < 1e-15

    def test_babichev_weight(self):
        _, w1 = homodyne_marginal(lossy_state(0.64, 0.5, 0.86))
        assert abs(w1 - 0.64 * 0.86 * 0.5) < 1e-14

    def test_matches_integrated_density(self):
        state = lossy_state(0.55, 0.4, 0.75)
        w0, w1 = homodyne_marginal(state)
        for r in (0.3, 1.9):
            density = conditioned_state_homodyne(state, 0.0, r)[1]
            expected = (w0 + w1 * r * r) * gaussian_density(r)
            assert abs(density - expected) < 1e-14


class TestPhotodetect:
    def test_click_probability(self):
        pd = photodetect(split_photon_state(0.64, 0.5), 0.3)
        assert abs(pd.p_plus - 0.096) < 1e-14
        assert pd.z_plus == -1.0
        assert abs(pd.z_minus - (2 * 0.64 * 0.5 - 0.904) / 0.904) < 1e-14

    def test_blind_detector(self):
        pd = photodetect(split_photon_state(0.7, 0.4), 0.0)
        assert pd.p_plus == 0.0
        assert abs(pd.z_minus - (2 * 0.7 * 0.4 - 1.0)) < 1e-14

    def test_consistency_with_unconditioned_moment(self):
        rng = np.random.default_rng(17)
        from photonsteer.linalg import SIGMA_Z

        for _ in range(50):
            eta, chi, eta_p = rng.uniform(size=3)
            state = split_photon_state(float(eta), float(chi))
            pd = photodetect(state, float(eta_p))
            total = pd.p_plus * pd.z_plus + pd.p_minus * pd.z_minus
            unconditioned = np.trace(partial_trace_alice(state.matrix) @ SIGMA_Z).real
            assert abs(total - unconditioned) < 1e-12
            assert abs(pd.p_plus + pd.p_minus - 1.0) < 1e-14
            assert abs(pd.z_plus) <= 1.0 and abs(pd.z_minus) <= 1.0 + 1e-14

    def test_degenerate_corner_flagged(self):
        pd = photodetect(split_photon_state(1.0, 0.0), 1.0)
        assert pd.degenerate
        assert pd.p_minus == 0.0

    def test_rejects_lossy_state(self):
        with pytest.raises(StateError):
            photodetect(lossy_state(0.5, 0.5, 0.9), 0.3)


def test_outcome_window_tail_is_negligible():
    # Mass of r^2 G(r) outside |r| <= 8, by direct wide integration.
    wide_nodes, wide_weights = quadrature_grid(r_max=12.0)
    outside = sum(
        w * r * r * gaussian_density(r) for r, w in zip(wide_nodes, wide_weights) if abs(r) > 8.0
    )
    assert outside < 1e-13
