import math

import pytest
from hypothesis import given, settings, strategies as st

from hbtcount import (
    SimulationConfig,
    SourceLaw,
    TernaryLaw,
    sequence_gf,
    sequence_k,
    sequence_moments,
    sequence_r,
    simulate_series,
    trinomial_pmf,
)

LAW = TernaryLaw(0.3, 0.2, 0.5)


def laws():
    return st.tuples(
        st.floats(min_value=0.01, max_value=0.95),
        st.floats(min_value=0.01, max_value=0.95),
    ).filter(lambda pq: pq[0] + pq[1] <= 0.99).map(
        lambda pq: TernaryLaw(pq[0], pq[1], 1.0 - pq[0] - pq[1]))


class TestTernaryLaw:
    def test_renormalizes_small_deviation(self):
        law = TernaryLaw(0.3 + 2e-10, 0.2, 0.5)
        assert abs(law.p + law.q + law.r - 1.0) <= 1e-12

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            TernaryLaw(0.3, 0.2, 0.6)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            TernaryLaw(-0.1, 0.6, 0.5)

    def test_split_ratios(self):
        assert LAW.s == pytest.approx(0.5)
        assert LAW.t_transmit + LAW.t_reflect == pytest.approx(1.0)

    def test_split_undefined_when_never_fires(self):
        degenerate = TernaryLaw(0.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            degenerate.t_transmit


class TestTrinomialPmf:
    def test_single_act(self):
        assert trinomial_pmf(LAW, 1, 1, 0) == pytest.approx(0.3)

    def test_two_acts_one_each(self):
        assert trinomial_pmf(LAW, 2, 1, 1) == pytest.approx(0.12)

    def test_normalization(self):
        total = sum(trinomial_pmf(LAW, 5, m, k)
                    for m in range(6) for k in range(6 - m))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_rejects_overfull(self):
        with pytest.raises(ValueError):
            trinomial_pmf(LAW, 2, 2, 1)

    def test_rejects_negative_counts(self):
        with pytest.raises(ValueError):
            trinomial_pmf(LAW, 2, -1, 1)

    def test_large_n_no_overflow(self):
        value = trinomial_pmf(LAW, 10 ** 6, 300000, 200000)
        assert 0.0 <= value <= 1.0

    def test_degenerate_law_zero_q(self):
        law = TernaryLaw(0.4, 0.0, 0.6)
        assert trinomial_pmf(law, 3, 1, 1) == 0.0
        assert trinomial_pmf(law, 3, 1, 0) == pytest.approx(3 * 0.4 * 0.36)


class TestGeneratingFunction:
    def test_unity_at_one_one(self):
        for n in (0, 1, 7, 200):
            assert sequence_gf(LAW, n, 1.0, 1.0) == pytest.approx(1.0)

    def test_zero_arguments(self):
        assert sequence_gf(LAW, 3, 0.0, 0.0) == pytest.approx(0.125)

    def test_empty_sequence(self):
        assert sequence_gf(LAW, 0, 0.3, -0.7) == 1.0

    def test_rejects_outside_unit_disk(self):
        with pytest.raises(ValueError):
            sequence_gf(LAW, 2, 1.5, 0.0)

    def test_derivative_matches_mean(self):
        n = 17
        h = 1e-6
        deriv = (sequence_gf(LAW, n, 1.0, 1.0)
                 - sequence_gf(LAW, n, 1.0 - h, 1.0)) / h
        mean = sequence_moments(LAW, n).mean_xi
        assert deriv == pytest.approx(mean, rel=1e-4)


class TestSequenceMoments:
    def test_closed_forms(self):
        sm = sequence_moments(LAW, 10)
        assert sm.mean_xi == pytest.approx(3.0)
        assert sm.var_xi == pytest.approx(2.1)
        assert sm.cross == pytest.approx(5.4)

    def test_empty_sequence(self):
        sm = sequence_moments(LAW, 0)
        assert sm.mean_xi == sm.var_xi == sm.cross == 0.0

    def test_against_exhaustive_summation(self):
        n = 50
        mean = var = cross = 0.0
        for m in range(n + 1):
            for k in range(n + 1 - m):
                w = trinomial_pmf(LAW, n, m, k)
                mean += m * w
                var += m * m * w
                cross += m * k * w
        var -= mean * mean
        sm = sequence_moments(LAW, n)
        assert sm.mean_xi == pytest.approx(mean, rel=1e-10)
        assert sm.var_xi == pytest.approx(var, rel=1e-10)
        assert sm.cross == pytest.approx(cross, rel=1e-10)

    @given(law=laws(), n=st.integers(min_value=1, max_value=60))
    @settings(max_examples=25, deadline=None)
    def test_moments_match_pmf_summation(self, law, n):
        mean = cross = 0.0
        for m in range(n + 1):
            for k in range(n + 1 - m):
                w = trinomial_pmf(law, n, m, k)
                mean += m * w
                cross += m * k * w
        sm = sequence_moments(law, n)
        assert sm.mean_xi == pytest.approx(mean, rel=1e-10, abs=1e-12)
        assert sm.cross == pytest.approx(cross, rel=1e-10, abs=1e-12)


class TestSequenceK:
    @pytest.mark.parametrize("n,expected", [(1, 0.0), (2, 0.5), (100, 0.99)])
    def test_values(self, n, expected):
        assert sequence_k(n) == pytest.approx(expected)

    def test_undefined_for_empty_gate(self):
        with pytest.raises(ValueError):
            sequence_k(0)

    @given(n=st.integers(min_value=1, max_value=10 ** 9))
    @settings(max_examples=30)
    def test_always_below_one(self, n):
        assert sequence_k(n) < 1.0


class TestSequenceR:
    def test_binary_limit(self):
        assert sequence_r(TernaryLaw(0.5, 0.5, 0.0)) == pytest.approx(-1.0)

    def test_closed_form(self):
        assert sequence_r(TernaryLaw(0.25, 0.25, 0.5)) == pytest.approx(-1.0 / 3.0)

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            sequence_r(TernaryLaw(0.0, 0.4, 0.6))

    @given(law=laws())
    @settings(max_examples=50)
    def test_range(self, law):
        r = sequence_r(law)
        assert -1.0 <= r < 0.0

    def test_monte_carlo_agreement(self):
        # a fully occupied polarized fermion source pins n = 20 per gate
        law = TernaryLaw(0.3, 0.2, 0.5)
        cfg = SimulationConfig(
            law=law, source=SourceLaw("fermion-polarized", modes=20, nbar=1.0),
            gates=10 ** 6, seed=7)
        report = simulate_series(cfg)
        target = sequence_r(law)
        z = report.r_hat.z_score(target)
        assert abs(z) <= 3.0
