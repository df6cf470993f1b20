from math import inf, sqrt

import numpy as np
import pytest

from oracles import horodecki_m, horodecki_threshold_bisection, wootters_concurrence
from photonsteer.errors import DomainError, StateError
from photonsteer.states import (
    ExperimentParams,
    apply_alice_loss,
    chsh_possible,
    chsh_threshold,
    concurrence,
    split_photon_state,
)


def eta_chi_grid(points: int = 100, seed: int = 31) -> list[tuple[float, float]]:
    rng = np.random.default_rng(seed)
    return [(float(e), float(c)) for e, c in rng.uniform(0.0, 1.0, size=(points, 2))]


class TestExperimentParams:
    def test_valid(self):
        p = ExperimentParams(eta=0.64, chi=0.5, eta_h=0.86, eta_p=0.3, n_settings=8)
        assert p.eta == 0.64

    @pytest.mark.parametrize("field,value", [("eta", -0.1), ("chi", 1.2), ("eta_h", 2.0), ("eta_p", -1.0)])
    def test_rejects_out_of_range(self, field, value):
        kwargs = dict(eta=0.5, chi=0.5, eta_h=1.0, eta_p=0.0, n_settings=4)
        kwargs[field] = value
        with pytest.raises(DomainError):
            ExperimentParams(**kwargs)

    def test_rejects_zero_settings(self):
        with pytest.raises(DomainError):
            ExperimentParams(eta=0.5, chi=0.5, n_settings=0)


class TestSplitPhotonState:
    def test_vacuum_limit(self):
        w = split_photon_state(0.0, 0.7).matrix
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = 1.0
        assert np.allclose(w, expected)

    def test_pure_maximally_entangled(self):
        w = split_photon_state(1.0, 0.5).matrix
        psi = np.zeros(4, dtype=complex)
        psi[1] = sqrt(0.5)
        psi[2] = -sqrt(0.5)
        assert np.allclose(w, np.outer(psi, psi.conj()), atol=1e-15)

    def test_babichev_entries(self):
        w = split_photon_state(0.64, 0.5).matrix
        assert abs(w[0, 0].real - 0.36) < 1e-12
        assert abs(w[1, 1].real - 0.32) < 1e-12
        assert abs(w[2, 2].real - 0.32) < 1e-12
        assert abs(w[1, 2].real - (-0.32)) < 1e-12

    def test_positive_unit_trace_no_two_photon(self):
        for eta, chi in eta_chi_grid():
            w = split_photon_state(eta, chi).matrix
            assert np.linalg.eigvalsh(w).min() >= -1e-12
            assert abs(np.trace(w).real - 1.0) < 1e-12
            assert w[3, 3] == 0.0

    def test_rejects_bad_parameters(self):
        with pytest.raises(DomainError):
            split_photon_state(1.5, 0.5)


class TestAliceLoss:
    def test_perfect_efficiency_is_identity(self):
        state = split_photon_state(0.64, 0.5)
        lossy = apply_alice_loss(state, 1.0)
        assert np.allclose(lossy.matrix, state.matrix, atol=1e-15)
        assert lossy.loss_applied

    def test_total_loss_empties_alice(self):
        lossy = apply_alice_loss(split_photon_state(0.8, 0.3), 0.0)
        assert abs(lossy.matrix[1, 2]) < 1e-15
        alice = np.einsum("abcb->ac", lossy.matrix.reshape(2, 2, 2, 2))
        assert np.allclose(alice, np.diag([1.0, 0.0]), atol=1e-14)

    def test_closed_form_entries(self):
        eta, chi, eta_h = 0.64, 0.5, 0.86
        lossy = apply_alice_loss(split_photon_state(eta, chi), eta_h)
        w = lossy.matrix
        assert abs(w[0, 0].real - ((1 - eta) + (1 - eta_h) * eta * (1 - chi))) < 1e-14
        assert abs(w[2, 2].real - eta * eta_h * (1 - chi)) < 1e-14
        assert abs(w[1, 1].real - eta * chi) < 1e-14
        coherence = -sqrt(eta_h) * eta * sqrt(chi * (1 - chi))
        assert abs(w[1, 2].real - coherence) < 1e-14
        assert abs(w[1, 2].real - (-0.2967557918558626)) < 1e-12

    def test_trace_preserving_on_grid(self):
        rng = np.random.default_rng(8)
        for eta, chi in eta_chi_grid(40):
            eta_h = float(rng.uniform())
            lossy = apply_alice_loss(split_photon_state(eta, chi), eta_h)
            assert abs(np.trace(lossy.matrix).real - 1.0) < 1e-12

    def test_double_application_rejected(self):
        lossy = apply_alice_loss(split_photon_state(0.5, 0.5), 0.9)
        with pytest.raises(StateError):
            apply_alice_loss(lossy, 0.9)


class TestConcurrence:
    def test_even_split_equals_eta(self):
        assert abs(concurrence(split_photon_state(0.64, 0.5)) - 0.64) < 1e-15

    def test_product_state_is_zero(self):
        assert concurrence(split_photon_state(0.9, 0.0)) == 0.0

    def test_asymmetric_value_against_oracle(self):
        state = split_photon_state(0.5, 0.92)
        value = concurrence(state)
        assert abs(value - 0.27129) < 5e-6
        assert abs(value - wootters_concurrence(state.matrix)) < 1e-10

    def test_matches_wootters_on_grid(self):
        for eta, chi in eta_chi_grid():
            state = split_photon_state(eta, chi)
            assert abs(concurrence(state) - wootters_concurrence(state.matrix)) < 1e-10

    def test_lossy_state_rejected(self):
        lossy = apply_alice_loss(split_photon_state(0.5, 0.5), 0.9)
        with pytest.raises(StateError):
            concurrence(lossy)


class TestChsh:
    def test_even_split_threshold(self):
        assert abs(chsh_threshold(0.5) - 1 / sqrt(2)) < 1e-15

    def test_observed_parameters_infeasible(self):
        assert not chsh_possible(0.64, 0.5)

    def test_strong_asymmetry_formula_value(self):
        assert abs(chsh_threshold(0.1) - 1.17851) < 5e-6

    def test_degenerate_chi(self):
        assert chsh_threshold(0.0) == inf
        assert chsh_threshold(1.0) == inf
        assert not chsh_possible(1.0, 0.0)

    @pytest.mark.parametrize("chi", np.linspace(0.25, 0.75, 11))
    def test_matches_horodecki_boundary_in_plane_dominated_band(self, chi):
        # Where the equatorial correlations carry the criterion, the closed
        # form is the exact M(rho) = 1 crossing.
        assert abs(chsh_threshold(float(chi)) - horodecki_threshold_bisection(float(chi))) < 1e-6

    def test_z_branch_dominates_outside_band(self):
        # At strong asymmetry the closed form (equatorial route only) exceeds
        # 1 while the full criterion still crosses below 1: the formula is not
        # the complete boundary there.  Documented limitation of the closed form.
        chi = 0.1
        assert chsh_threshold(chi) > 1.0
        full = horodecki_threshold_bisection(chi)
        assert full < 1.0
        assert abs(full - 1.0 / (1.0 + chi * (1 - chi))) < 1e-6
        assert horodecki_m(split_photon_state(1.0, chi).matrix) > 1.0
