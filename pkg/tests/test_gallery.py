"""Tests for the operator families backing the experiments."""

import numpy as np
import pytest

from fredlab import gallery, linalg, topology
from fredlab.errors import InvalidSpec
from fredlab.gallery import FugledeSpec, fuglede_expected, fuglede_operator
from fredlab.topology import ComponentLabel


class TestFlippedDiagonalFamily:
    def test_reference(self):
        a0 = fuglede_operator(FugledeSpec(0, 4))
        np.testing.assert_allclose(a0.matrix, np.diag([1.0, 2.0, 3.0, 4.0]))

    def test_first_flip(self):
        a1 = fuglede_operator(FugledeSpec(1, 4))
        np.testing.assert_allclose(a1.matrix, np.diag([-1.0, 2.0, 3.0, 4.0]))

    def test_third_flip(self):
        a3 = fuglede_operator(FugledeSpec(3, 8))
        np.testing.assert_allclose(
            a3.matrix, np.diag([1.0, 2.0, -3.0, 4.0, 5.0, 6.0, 7.0, 8.0])
        )

    def test_tail_classification(self):
        a0 = fuglede_operator(FugledeSpec(0, 4))
        assert topology.classify_component(a0) is ComponentLabel.F_PLUS

    def test_window_too_small(self):
        with pytest.raises(InvalidSpec):
            FugledeSpec(3, 5)

    def test_expected_closed_forms(self):
        branch, rho, alpha = fuglede_expected(1)
        assert branch == pytest.approx(1.0)
        assert rho == pytest.approx(1.4142135623730951)
        assert alpha == 1.0
        branch, rho, alpha = fuglede_expected(4)
        assert branch == pytest.approx(8.0 / 17.0)
        assert rho == pytest.approx(1.9402850002906638)

    def test_expected_limits(self):
        big = fuglede_expected(10_000)
        assert big.resolvent_branch < 1e-3
        assert abs(big.rho - 2.0) < 1e-7
        assert big.alpha_dist == 1.0

    @pytest.mark.parametrize("n", [1, 2, 4, 8, 16])
    def test_computed_metrics_match_closed_forms(self, n):
        a_n = fuglede_operator(FugledeSpec(n, 4 * n))
        a_0 = fuglede_operator(FugledeSpec(0, 4 * n))
        expected = fuglede_expected(n)
        p_n, m_n = topology.resolvents_at_i(a_n)
        p_0, m_0 = topology.resolvents_at_i(a_0)
        assert linalg.operator_norm(p_n - p_0) == pytest.approx(
            expected.resolvent_branch, abs=1e-8
        )
        assert linalg.operator_norm(m_n - m_0) == pytest.approx(
            expected.resolvent_branch, abs=1e-8
        )
        assert topology.riesz_metric(a_n, a_0) == pytest.approx(expected.rho, abs=1e-8)
        alpha = linalg.operator_norm(
            a_n.apply(topology.ALPHA_RAMP) - a_0.apply(topology.ALPHA_RAMP)
        )
        assert alpha == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("n", [1, 3])
    def test_truncation_independence(self, n):
        stats = []
        for factor in (2, 8):
            a_n = fuglede_operator(FugledeSpec(n, factor * n))
            a_0 = fuglede_operator(FugledeSpec(0, factor * n))
            p_n, _ = topology.resolvents_at_i(a_n)
            p_0, _ = topology.resolvents_at_i(a_0)
            stats.append(
                (
                    linalg.operator_norm(p_n - p_0),
                    topology.riesz_metric(a_n, a_0),
                    linalg.operator_norm(
                        a_n.apply(topology.ALPHA_RAMP) - a_0.apply(topology.ALPHA_RAMP)
                    ),
                )
            )
        np.testing.assert_allclose(stats[0], stats[1], atol=1e-12)


class TestPerturbationFamily:
    def test_zero_schedule(self):
        base = gallery.random_selfadjoint(5, seed=3)
        fam = gallery.perturbation_family(base, seed=4, schedule=[0.0])
        np.testing.assert_allclose(fam.deltas[0], 0.0)

    def test_identity_base_norm(self):
        # against the identity the damping factor is 1/2, so the bound 0.1
        # forces a perturbation of norm exactly 0.2
        base = topology.SelfAdjointOperator(np.eye(6))
        fam = gallery.perturbation_family(base, seed=5, schedule=[0.1])
        assert linalg.operator_norm(fam.deltas[0]) == pytest.approx(0.2, abs=1e-12)

    def test_bounds_hit_exactly(self):
        base = gallery.random_selfadjoint(8, seed=6, spectrum_range=(-4.0, 4.0))
        schedule = [0.5**k for k in range(1, 8)]
        fam = gallery.perturbation_family(base, seed=7, schedule=schedule)
        for s, c in zip(fam.deltas, fam.bound_targets):
            assert topology.relative_bound_surrogate(base, s) == pytest.approx(c, abs=1e-10)

    def test_rho_decreases_along_schedule(self):
        base = gallery.random_selfadjoint(10, seed=8, spectrum_range=(-3.0, 3.0))
        schedule = [0.5**k for k in range(1, 9)]
        fam = gallery.perturbation_family(base, seed=9, schedule=schedule)
        rhos = [topology.riesz_metric(fam.perturbed(k), base) for k in range(len(schedule))]
        assert all(a > b for a, b in zip(rhos, rhos[1:]))
        assert rhos[-1] < rhos[0] / 50.0

    def test_gap_and_ramp_track_rho(self):
        # the finer metric controls both the gap distance and the ramp
        # distance, unlike on the flipped-diagonal family
        base = gallery.random_selfadjoint(10, seed=8, spectrum_range=(-3.0, 3.0))
        fam = gallery.perturbation_family(base, seed=9, schedule=[0.5**k for k in range(1, 9)])
        for k in (3, 7):
            p = fam.perturbed(k)
            rho = topology.riesz_metric(p, base)
            gamma = topology.gap_metric(p, base)
            ramp = linalg.operator_norm(
                p.apply(topology.ALPHA_RAMP) - base.apply(topology.ALPHA_RAMP)
            )
            assert gamma <= 3.0 * rho
            assert ramp <= 2.0 * rho
        assert topology.riesz_metric(fam.perturbed(7), base) < 1e-2

    def test_increasing_schedule_rejected(self):
        base = gallery.random_selfadjoint(4, seed=10)
        with pytest.raises(InvalidSpec):
            gallery.perturbation_family(base, seed=11, schedule=[0.1, 0.2])


class TestRandomOperators:
    def test_scalar(self):
        a = gallery.random_selfadjoint(1, seed=12, spectrum_range=(2.0, 3.0))
        assert 2.0 <= a.matrix[0, 0] <= 3.0

    def test_degenerate_range(self):
        a = gallery.random_selfadjoint(6, seed=13, spectrum_range=(0.0, 0.0))
        np.testing.assert_allclose(a.matrix, 0.0, atol=1e-14)

    def test_spectrum_in_range(self):
        a = gallery.random_selfadjoint(20, seed=14, spectrum_range=(-2.0, 5.0))
        w = a.decomposition.eigenvalues
        assert np.all(w >= -2.0 - 1e-10) and np.all(w <= 5.0 + 1e-10)

    def test_deterministic(self):
        a = gallery.random_selfadjoint(7, seed=15)
        b = gallery.random_selfadjoint(7, seed=15)
        np.testing.assert_array_equal(a.matrix, b.matrix)

    def test_prescribed_spectrum(self):
        target = [0.0, 0.0, 1.0, 2.5]
        a = gallery.random_with_spectrum(target, seed=16)
        np.testing.assert_allclose(a.decomposition.eigenvalues, target, atol=1e-12)
