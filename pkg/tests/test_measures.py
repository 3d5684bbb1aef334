import numpy as np
import pytest
from numpy.testing import assert_allclose

import qcoherence as qc

SQRT_007 = np.sqrt(0.07)  # 0.2645751311064591
DIAG_532 = np.diag([0.5, 0.3, 0.2])


def ginibre(dim, seed):
    return qc.random_state(dim, "ginibre_mixed", seed)


class TestPn:
    def test_pure_state(self):
        assert_allclose(qc.p_n(qc.random_state(4, "haar_pure", 1)), 1.0, atol=1e-12)

    def test_maximally_mixed(self):
        assert qc.p_n(qc.validate_density(np.eye(5) / 5)) == 0.0

    def test_hand_value(self):
        # (3*0.38 - 1)/2 = 0.07
        assert_allclose(qc.p_n(qc.validate_density(DIAG_532)), SQRT_007, atol=1e-15)

    def test_basis_independence(self):
        for i in range(4):
            dim = 2 + i
            rho = qc.random_state(dim, "ginibre_mixed", 140 + i)
            reference = qc.p_n(rho)
            for k in range(50):
                u = qc.haar_unitary(dim, 7000 + 50 * i + k)
                rotated = qc.validate_density(u @ rho.entries @ u.conj().T)
                assert abs(qc.p_n(rotated) - reference) < 1e-10


class TestP2DeterminantForm:
    def test_maximally_mixed(self):
        assert qc.p2_determinant_form(qc.validate_density(np.eye(2) / 2)) == 0.0

    def test_hand_value(self):
        # det = 0.25 - 0.0625
        rho = qc.validate_density([[0.5, 0.25], [0.25, 0.5]])
        assert_allclose(qc.p2_determinant_form(rho), 0.5, atol=1e-15)

    def test_pure_state(self):
        rho = qc.random_state(2, "haar_pure", 3)
        assert_allclose(qc.p2_determinant_form(rho), 1.0, atol=1e-7)

    def test_matches_trace_form(self):
        for i in range(25):
            rho = ginibre(2, 40 + i)
            assert abs(qc.p2_determinant_form(rho) - qc.p_n(rho)) < 1e-12

    def test_wrong_dimension(self):
        with pytest.raises(qc.WrongDimensionError):
            qc.p2_determinant_form(qc.validate_density(np.eye(3) / 3))


class TestFrobeniusDistance:
    def test_maximally_mixed(self):
        assert qc.frobenius_distance_measure(qc.validate_density(np.eye(3) / 3)) == 0.0

    def test_pure_state_dim4(self):
        rho = qc.random_state(4, "haar_pure", 8)
        assert_allclose(qc.frobenius_distance_measure(rho), 1.0, atol=1e-12)

    def test_hand_value(self):
        # sum (rho_ii - 1/3)^2 = 14/300; sqrt(3/2 * 14/300) = sqrt(0.07)
        rho = qc.validate_density(DIAG_532)
        assert_allclose(qc.frobenius_distance_measure(rho), SQRT_007, atol=1e-15)


class TestCenterOfMass:
    def test_simplex_centroid(self):
        spectrum = qc.spectral_decompose(qc.validate_density(np.eye(4) / 4))
        assert qc.center_of_mass_distance(spectrum) == 0.0

    def test_point_mass_at_vertex(self):
        spectrum = qc.spectral_decompose(qc.random_state(3, "haar_pure", 2))
        assert_allclose(qc.center_of_mass_distance(spectrum), 1.0, atol=1e-12)

    def test_hand_value(self):
        # (0.04 + 0.09 + 0.01)/2 = 0.07
        spectrum = qc.spectral_decompose(qc.validate_density(DIAG_532))
        assert_allclose(qc.center_of_mass_distance(spectrum), SQRT_007, atol=1e-15)


class TestMuN:
    def test_no_offdiagonal_correlation(self):
        assert qc.mu_n(qc.validate_density(np.diag([0.6, 0.4]))) == 0.0

    def test_unbalanced_pure_state_fully_coherent(self):
        eps = 0.1
        psi = np.array([eps, np.sqrt(1 - eps**2)])
        rho = qc.validate_density(np.outer(psi, psi))
        assert_allclose(qc.mu_n(rho), 1.0, atol=1e-12)

    def test_three_level_plus_state(self):
        # numerator = |0.5|^2, denominator = 0.5*0.5; both 0.25
        psi = np.array([1.0, 1.0, 0.0]) / np.sqrt(2)
        rho = qc.validate_density(np.outer(psi, psi))
        assert_allclose(qc.mu_n(rho), 1.0, atol=1e-12)

    def test_degenerate_diagonal_raises(self):
        rho = qc.validate_density(np.diag([1.0, 0.0, 0.0]))
        with pytest.raises(qc.DegenerateDiagonalError):
            qc.mu_n(rho)

    def test_purity_identity(self):
        # mu^2 == 1 - (1 - Tr rho^2)/(1 - sum rho_ii^2)
        for i in range(50):
            dim = 2 + i % 4
            rho = ginibre(dim, 300 + i)
            diag = rho.entries.diagonal().real
            expected = 1.0 - (1.0 - qc.purity(rho)) / (1.0 - float(diag @ diag))
            assert abs(qc.mu_n(rho) ** 2 - expected) < 1e-12

    def test_bounded_by_p_n_under_rotations(self):
        rho = ginibre(3, 77)
        ceiling = qc.p_n(rho)
        for k in range(50):
            u = qc.haar_unitary(3, 900 + k)
            rotated = qc.validate_density(u.conj().T @ rho.entries @ u)
            assert qc.mu_n(rotated) <= ceiling + 1e-9


class TestInterference2d:
    def test_no_rotation_reads_the_diagonal(self):
        rho = ginibre(2, 5)
        i1, i2 = qc.interference_2d(rho, 0.7, 0.0)
        assert_allclose([i1, i2], [rho.entries[0, 0].real, rho.entries[1, 1].real], atol=1e-15)

    def test_unpolarized_is_flat(self):
        rho = qc.validate_density(np.eye(2) / 2)
        for delta, theta in [(0.0, 0.3), (1.0, 2.0), (4.0, 0.9)]:
            assert_allclose(qc.interference_2d(rho, delta, theta), (0.5, 0.5), atol=1e-15)

    def test_aligned_phase_midpoint_rotation(self):
        # cross term 2*|rho12|*sin*cos*cos(0) = 0.25 at theta = pi/4
        rho = qc.validate_density([[0.5, 0.25], [0.25, 0.5]])
        i1, i2 = qc.interference_2d(rho, 0.0, np.pi / 4)
        assert_allclose([i1, i2], [0.75, 0.25], atol=1e-15)

    def test_probabilities_sum_to_one(self):
        rho = ginibre(2, 6)
        for delta in np.linspace(0, 2 * np.pi, 7):
            for theta in np.linspace(0, np.pi, 7):
                i1, i2 = qc.interference_2d(rho, delta, theta)
                assert abs(i1 + i2 - 1.0) < 1e-12

    def test_wrong_dimension(self):
        with pytest.raises(qc.WrongDimensionError):
            qc.interference_2d(ginibre(3, 0), 0.0, 0.0)

    def test_grid_maximised_fringe_matches_p_n(self):
        theta = np.linspace(0, np.pi, 200, endpoint=False)
        delta = np.linspace(0, 2 * np.pi, 200, endpoint=False)
        for i in range(10):
            rho = qc.random_state(2, ("ginibre_mixed", "haar_pure")[i % 2], 60 + i)
            values = np.array(
                [[qc.interference_2d(rho, d, t)[0] for d in delta[::10]] for t in theta[::10]]
            )
            # coarse pass locates the scale; fine pass via the vectorised form
            m = rho.entries
            tt, dd = np.meshgrid(theta, delta, indexing="ij")
            amp, beta = abs(m[0, 1]), np.angle(m[0, 1])
            i1 = (
                m[0, 0].real * np.cos(tt) ** 2
                + m[1, 1].real * np.sin(tt) ** 2
                + 2 * amp * np.sin(tt) * np.cos(tt) * np.cos(beta + dd)
            )
            assert abs(values.max() - i1.max()) < 1e-2
            fringe = (i1.max() - i1.min()) / (i1.max() + i1.min())
            assert abs(fringe - qc.p_n(rho)) < 1e-3


class TestVisibilityF:
    def test_point_mass(self):
        assert qc.visibility_f([1.0, 0.0, 0.0, 0.0]) == 1.0

    def test_uniform(self):
        assert qc.visibility_f([0.25, 0.25, 0.25, 0.25]) == 0.0

    def test_hand_value(self):
        assert_allclose(qc.visibility_f([0.5, 0.3, 0.2]), SQRT_007, atol=1e-15)

    def test_scale_invariance(self):
        probs = np.array([0.1, 0.4, 0.2, 0.3])
        for c in (0.5, 2.0, 117.0):
            assert abs(qc.visibility_f(c * probs) - qc.visibility_f(probs)) < 1e-14

    def test_two_outcome_reduction(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            a, b = rng.random(2) + 0.01
            assert abs(qc.visibility_f([a, b]) - abs(a - b) / (a + b)) < 1e-14

    def test_all_zero(self):
        with pytest.raises(qc.AllZeroError):
            qc.visibility_f([0.0, 0.0, 0.0])

    def test_too_short(self):
        with pytest.raises(qc.InvalidParameterError):
            qc.visibility_f([1.0])


class TestVisibility:
    def test_pure_state(self):
        assert_allclose(qc.visibility(qc.random_state(5, "haar_pure", 9)), 1.0, atol=1e-12)

    def test_maximally_mixed(self):
        assert qc.visibility(qc.validate_density(np.eye(6) / 6)) == 0.0

    def test_eigenvalue_route(self):
        assert_allclose(qc.visibility(qc.validate_density(DIAG_532)), SQRT_007, atol=1e-14)


class TestPurePartDecomposition:
    def test_hand_weights(self):
        d = qc.pure_part_decomposition(qc.validate_density(DIAG_532))
        assert_allclose(d.weights, [0.3, 0.1], atol=1e-15)
        assert_allclose(d.mixed_weight, 0.6, atol=1e-15)
        assert_allclose(d.weights.sum() + d.mixed_weight, 1.0, atol=1e-15)

    def test_maximally_mixed(self):
        d = qc.pure_part_decomposition(qc.validate_density(np.eye(4) / 4))
        assert_allclose(d.weights, np.zeros(3), atol=1e-15)
        assert_allclose(d.mixed_weight, 1.0, atol=1e-15)

    def test_pure_two_level(self):
        rho = qc.random_state(2, "haar_pure", 21)
        d = qc.pure_part_decomposition(rho)
        assert_allclose(d.weights, [1.0], atol=1e-12)
        assert abs(d.mixed_weight) < 1e-12

    def test_weights_sorted_and_reconstruction(self):
        for i in range(40):
            dim = 2 + i % 5
            rho = ginibre(dim, 800 + i)
            d = qc.pure_part_decomposition(rho)
            assert np.all(np.diff(d.weights) <= 1e-15)
            assert np.all(d.weights >= -1e-15)
            rebuilt = (d.pure_states * d.weights) @ d.pure_states.conj().T
            rebuilt += d.mixed_weight * np.eye(dim) / dim
            assert np.max(np.abs(rebuilt - rho.entries)) < 1e-10


class TestPurePartBoundCheck:
    def test_hand_gap(self):
        rho = qc.validate_density(DIAG_532)
        d = qc.pure_part_decomposition(rho)
        holds, gap = qc.pure_part_bound_check(d, qc.p_n(rho))
        assert holds
        assert_allclose(gap, 0.4 - SQRT_007, atol=1e-12)

    def test_pure_state_saturates(self):
        rho = qc.random_state(2, "haar_pure", 33)
        holds, gap = qc.pure_part_bound_check(qc.pure_part_decomposition(rho), qc.p_n(rho))
        assert holds
        assert abs(gap) < 1e-10

    def test_two_level_full_rank_saturates(self):
        for i in range(10):
            rho = ginibre(2, 600 + i)
            holds, gap = qc.pure_part_bound_check(
                qc.pure_part_decomposition(rho), qc.p_n(rho)
            )
            assert holds
            assert abs(gap) < 1e-10

    def test_single_pure_weight_saturates_any_dim(self):
        # spectrum (a, b, ..., b): only one nonzero weight, so the cross sum
        # vanishes and the bound is an equality
        for dim in (3, 4, 6):
            lam = np.full(dim, 0.3 / (dim - 1))
            lam[0] = 0.7
            rho = qc.validate_density(np.diag(lam))
            holds, gap = qc.pure_part_bound_check(
                qc.pure_part_decomposition(rho), qc.p_n(rho)
            )
            assert holds
            assert abs(gap) < 1e-12

    def test_rank_two_gap_is_positive_above_dim_two(self):
        # two nonzero weights leave a strictly positive cross sum: the gap
        # equals 1 - p (the bottom eigenvalue is 0, so the weights sum to 1)
        for dim in (3, 4, 6):
            rho = qc.random_state(dim, "rank_k", 70 + dim, rank=2)
            holds, gap = qc.pure_part_bound_check(
                qc.pure_part_decomposition(rho), qc.p_n(rho)
            )
            assert holds
            assert_allclose(gap, 1.0 - qc.p_n(rho), atol=1e-9)
            assert gap > 0.05

    def test_inconsistent_value_rejected(self):
        rho = qc.validate_density(DIAG_532)
        d = qc.pure_part_decomposition(rho)
        with pytest.raises(qc.InternalInvariantViolation):
            qc.pure_part_bound_check(d, 0.9)


class TestCoherenceReport:
    def test_maximally_mixed(self):
        rep = qc.coherence_report(qc.validate_density(np.eye(3) / 3))
        for value in (
            rep.p_n,
            rep.frobenius_distance,
            rep.center_of_mass,
            rep.bloch_norm,
            rep.visibility,
            rep.mu_in_given_basis,
        ):
            assert abs(value) < 1e-15
        assert_allclose(rep.purity, 1 / 3, atol=1e-15)

    def test_haar_pure(self):
        rep = qc.coherence_report(qc.random_state(5, "haar_pure", 12))
        for value in (
            rep.p_n,
            rep.frobenius_distance,
            rep.center_of_mass,
            rep.bloch_norm,
            rep.visibility,
        ):
            assert abs(value - 1.0) < 1e-9

    def test_hand_values(self):
        rep = qc.coherence_report(qc.validate_density(DIAG_532))
        assert_allclose(rep.p_n, SQRT_007, atol=1e-14)
        assert rep.mu_in_given_basis == 0.0
        assert_allclose(rep.pure_part_weight_sum, 0.4, atol=1e-14)
        assert qc.max_route_discrepancy(rep) < 1e-14

    def test_degenerate_diagonal_reports_zero(self):
        rep = qc.coherence_report(qc.validate_density(np.diag([1.0, 0.0, 0.0])))
        assert rep.mu_in_given_basis == 0.0
        assert abs(rep.p_n - 1.0) < 1e-12

    def test_route_agreement_random_sweep(self):
        for i in range(50):
            dim = 2 + i % 5
            rep = qc.coherence_report(ginibre(dim, 2000 + i))
            assert qc.max_route_discrepancy(rep) < 1e-9
            assert rep.mu_in_given_basis <= rep.p_n + 1e-9
            assert rep.p_n <= rep.pure_part_weight_sum + 1e-9
