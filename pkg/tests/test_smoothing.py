"""Smoothed quantities: window scan vs brute force, witnesses, both code paths."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import entspread.smoothing as smoothing
from conftest import random_spectrum, spectra
from entspread.entropy import delta, delta_ab, renyi
from entspread.errors import DomainError, ResourceGuardError
from entspread.smoothing import (
    delta_ab_eps,
    delta_eps,
    delta_eps_bruteforce,
    evaluate_witness,
    s0_eps,
    sinf_eps,
)
from entspread.spectrum import (
    embezzler_spectrum,
    group,
    spectrum_from_probs,
    tensor,
    two_level_spectrum,
    uniform_spectrum,
)
from entspread.tensor_power import power_grouped_spectrum

INF = math.inf
QUARTET = spectrum_from_probs([0.5, 0.25, 0.125, 0.125])
EPS_GRID = (0.0, 0.05, 0.2, 0.5)


class TestKnownValues:
    def test_s0_needs_all_four(self):
        assert math.isclose(s0_eps(QUARTET, 0.1), 2.0, abs_tol=1e-12)

    def test_s0_uniform_partial(self):
        # six of eight equal eigenvalues reach mass 0.75
        assert math.isclose(s0_eps(uniform_spectrum(8), 0.25), math.log2(6), abs_tol=1e-12)

    def test_sinf_drops_top(self):
        assert math.isclose(sinf_eps(QUARTET, 0.6), 2.0, abs_tol=1e-12)

    def test_sinf_uniform_fixed(self):
        for eps in (0.0, 0.3, 0.9):
            assert math.isclose(sinf_eps(uniform_spectrum(16), eps), 4.0, abs_tol=1e-12)

    def test_delta_quartet(self):
        assert math.isclose(delta_eps(QUARTET, 0.2), math.log2(1.5), abs_tol=1e-12)

    def test_delta_flat_zero(self):
        assert math.isclose(delta_eps(uniform_spectrum(4), 0.0), 0.0, abs_tol=1e-12)

    def test_delta_embezzler4(self):
        assert math.isclose(delta_eps(embezzler_spectrum(4), 0.0), math.log2(1.92), abs_tol=1e-12)

    def test_bruteforce_negative_value(self):
        s = two_level_spectrum(0.9)
        assert math.isclose(delta_eps_bruteforce(s, 0.15), math.log2(0.9), abs_tol=1e-12)

    def test_ab_frozen_value(self):
        # exhaustive-search reference computed over all 2^4 subsets
        v = delta_ab_eps(QUARTET, 0.5, 2.0, 0.2, mode="exact")
        assert math.isclose(v, -0.3233697176584558, abs_tol=1e-12)

    def test_ab_flat_zero(self):
        assert math.isclose(delta_ab_eps(uniform_spectrum(4), 0.5, 2.0, 0.0, "exact"), 0.0, abs_tol=1e-12)


class TestEpsZeroReduction:
    @given(spectra())
    def test_matches_unsmoothed(self, s):
        assert math.isclose(s0_eps(s, 0.0), renyi(s, 0.0), abs_tol=1e-9)
        assert math.isclose(sinf_eps(s, 0.0), renyi(s, INF), abs_tol=1e-9)
        assert math.isclose(delta_eps(s, 0.0), delta(s), abs_tol=1e-9)

    def test_ab_matches_unsmoothed(self, rng):
        for _ in range(50):
            s = random_spectrum(rng, dmax=8)
            for a, b in ((0.0, INF), (0.5, 2.0), (0.25, 4.0)):
                assert math.isclose(
                    delta_ab_eps(s, a, b, 0.0, "exact"), delta_ab(s, a, b), abs_tol=1e-9
                )


class TestOracleEquivalence:
    def test_random_spectra(self, rng):
        for _ in range(250):
            s = random_spectrum(rng)
            for eps in EPS_GRID:
                assert abs(delta_eps(s, eps) - delta_eps_bruteforce(s, eps)) <= 1e-12

    def test_degenerate_values(self, rng):
        # repeated eigenvalues exercise grouping and partial-tail inclusion
        for _ in range(100):
            d = int(rng.integers(2, 7))
            base = rng.random(d) + 0.05
            reps = rng.integers(1, 4, size=d)
            probs = np.repeat(base, reps)
            s = spectrum_from_probs(probs / probs.sum(), normalize=True)
            for eps in EPS_GRID:
                assert abs(delta_eps(s, eps) - delta_eps_bruteforce(s, eps)) <= 1e-12

    def test_ab_extreme_orders_match_bruteforce(self, rng):
        for _ in range(50):
            s = random_spectrum(rng, dmax=8)
            for eps in (0.0, 0.2, 0.5):
                assert math.isclose(
                    delta_ab_eps(s, 0.0, INF, eps, "exact"),
                    delta_eps_bruteforce(s, eps),
                    abs_tol=1e-12,
                )


class TestInvariants:
    @given(spectra(), st.floats(min_value=0.0, max_value=0.95))
    def test_floor(self, s, eps):
        assert delta_eps(s, eps) >= math.log2(1.0 - eps) - 1e-9

    @given(spectra(), st.floats(min_value=0.0, max_value=0.45), st.floats(min_value=0.0, max_value=0.45))
    def test_monotone_in_eps(self, s, e1, e2):
        lo, hi = sorted((e1, e2))
        assert delta_eps(s, hi) <= delta_eps(s, lo) + 1e-9
        assert s0_eps(s, hi) <= s0_eps(s, lo) + 1e-9
        assert sinf_eps(s, hi) >= sinf_eps(s, lo) - 1e-9

    @given(spectra(), st.floats(min_value=0.0, max_value=0.9))
    def test_piecemeal(self, s, eps):
        assert delta_eps(s, eps) >= s0_eps(s, eps) - sinf_eps(s, eps) - 1e-9

    @given(spectra())
    def test_piecemeal_equality_at_zero(self, s):
        assert math.isclose(delta_eps(s, 0.0), s0_eps(s, 0.0) - sinf_eps(s, 0.0), abs_tol=1e-9)

    def test_window_mode_upper_bounds_exact(self, rng):
        for _ in range(50):
            s = random_spectrum(rng, dmax=8)
            for a, b in ((0.0, INF), (0.5, 2.0)):
                exact = delta_ab_eps(s, a, b, 0.2, "exact")
                window = delta_ab_eps(s, a, b, 0.2, "window")
                assert window >= exact - 1e-12


class TestWitnesses:
    def test_witness_consistency(self, rng):
        for _ in range(100):
            s = random_spectrum(rng)
            g = group(s)
            eps = float(rng.uniform(0.0, 0.6))
            for fn in (s0_eps, sinf_eps, delta_eps):
                value, w = fn(g, eps, return_witness=True)
                mass, count_log2, vmax = evaluate_witness(g, w)
                assert mass >= 1.0 - eps - 1e-9
                assert math.isclose(mass, w.mass, abs_tol=1e-9)
                assert math.isclose(count_log2, w.count_log2, abs_tol=1e-9)
                assert math.isclose(vmax, w.max_log2_value, abs_tol=1e-12)

    def test_witness_achieves_value(self, rng):
        for _ in range(100):
            s = random_spectrum(rng)
            eps = float(rng.uniform(0.0, 0.6))
            value, w = delta_eps(s, eps, return_witness=True)
            assert math.isclose(value, w.count_log2 + w.max_log2_value, abs_tol=1e-9)
            v0, w0 = s0_eps(s, eps, return_witness=True)
            assert math.isclose(v0, w0.count_log2, abs_tol=1e-9)
            assert w0.start_group == 0
            vi, wi = sinf_eps(s, eps, return_witness=True)
            assert math.isclose(vi, -wi.max_log2_value, abs_tol=1e-9)
            assert wi.end_group == group(s).num_groups - 1

    def test_witness_on_power_spectrum(self):
        g = power_grouped_spectrum(two_level_spectrum(0.1), 400)
        for eps in (0.0, 1e-6, 0.2):
            value, w = delta_eps(g, eps, return_witness=True)
            mass, count_log2, vmax = evaluate_witness(g, w)
            assert mass >= 1.0 - eps - 1e-9
            assert math.isclose(value, count_log2 + vmax, abs_tol=1e-9)

    def test_witness_range_check(self):
        g = group(QUARTET)
        _, w = delta_eps(g, 0.0, return_witness=True)
        bad = smoothing.SmoothWitness(
            start_group=0, copies_in_start=1, end_group=g.num_groups + 3,
            copies_in_end=1, mass=1.0, count_log2=0.0, max_log2_value=0.0,
        )
        with pytest.raises(DomainError):
            evaluate_witness(g, bad)


class TestLogDomainPath:
    def test_matches_exact_path(self, rng, monkeypatch):
        cases = []
        for _ in range(40):
            s = random_spectrum(rng)
            eps = float(rng.uniform(0.0, 0.6))
            cases.append((group(s), eps))
        expected = [
            (s0_eps(g, e), sinf_eps(g, e), delta_eps(g, e)) for g, e in cases
        ]
        monkeypatch.setattr(smoothing, "exact_counts", lambda g: None)
        for (g, e), (v0, vi, vd) in zip(cases, expected):
            assert math.isclose(s0_eps(g, e), v0, abs_tol=1e-9)
            assert math.isclose(sinf_eps(g, e), vi, abs_tol=1e-9)
            assert math.isclose(delta_eps(g, e), vd, abs_tol=1e-9)

    def test_huge_power_spectrum(self):
        # multiplicities far beyond 2^53 and eigenvalues far below float range
        g = power_grouped_spectrum(two_level_spectrum(0.1), 200000)
        v = delta_eps(g, 0.1)
        assert v >= s0_eps(g, 0.1) - sinf_eps(g, 0.1) - 1e-9
        assert delta_eps(g, 0.2) <= v + 1e-9
        # central-limit scale: 2*sigma*sqrt(n)*z(0.95) ~ 1399 bits
        assert 1300.0 < v < 1500.0


class TestThresholdTie:
    def test_minimum_atom_equal_to_slack(self):
        # (0.9, 0.1)^12: the smallest atom weighs 0.1^12 = 1e-12, exactly the
        # feasibility slack.  Dropping it leaves mass 1 - 1e-12, a dead tie
        # with the threshold, so differently rounded prefix sums (grouped
        # vs dense) may keep 4095 or 4096 atoms.  Both are valid minimizers
        # under the slack semantics; they differ by log2(4096/4095) bits.
        base = two_level_spectrum(0.9)
        g = power_grouped_spectrum(base, 12)
        dense = base
        for _ in range(11):
            dense = tensor(dense, base)
        a = s0_eps(g, 0.0)
        b = s0_eps(dense, 0.0)
        assert min(a, b) >= math.log2(4095.0) - 1e-12
        assert max(a, b) <= 12.0 + 1e-12
        assert abs(a - b) <= math.log2(4096.0 / 4095.0) + 1e-12


class TestValidation:
    @pytest.mark.parametrize("eps", [-0.01, 1.0, 1.5])
    def test_eps_range(self, eps):
        with pytest.raises(DomainError):
            delta_eps(QUARTET, eps)

    def test_bruteforce_guard(self):
        s = uniform_spectrum(21)
        with pytest.raises(ResourceGuardError):
            delta_eps_bruteforce(s, 0.1)

    def test_ab_order_constraints(self):
        for a, b in ((1.0, 2.0), (-0.1, 2.0), (0.5, 1.0), (0.5, 0.9)):
            with pytest.raises(DomainError):
                delta_ab_eps(QUARTET, a, b, 0.1, "exact")

    def test_ab_mode_validation(self):
        with pytest.raises(DomainError):
            delta_ab_eps(QUARTET, 0.5, 2.0, 0.1, mode="psychic")
        with pytest.raises(DomainError):
            delta_ab_eps(group(QUARTET), 0.5, 2.0, 0.1, mode="exact")
        with pytest.raises(ResourceGuardError):
            delta_ab_eps(uniform_spectrum(21), 0.5, 2.0, 0.1, mode="exact")

    def test_bruteforce_needs_dense(self):
        with pytest.raises(DomainError):
            delta_eps_bruteforce(group(QUARTET), 0.1)


class TestEmbezzlerFrozenValues:
    @pytest.mark.parametrize(
        "n,dlt,expected",
        [
            (4, 0.1, 0.941106310946),
            (1024, 0.1, 6.007224835782),
            (2, 0.05, 0.415037499279),
        ],
    )
    def test_frozen(self, n, dlt, expected):
        v = delta_eps(group(embezzler_spectrum(n)), dlt)
        assert math.isclose(v, expected, abs_tol=1e-9)

    def test_prefix_sum_oracle(self):
        # independent evaluation: scan all (start, count) windows directly
        n, dlt = 512, 0.2
        p = embezzler_spectrum(n).probs
        thr = 1.0 - dlt - 1e-12
        cum = np.concatenate(([0.0], np.cumsum(p)))
        best = math.inf
        for start in range(n):
            if cum[-1] - cum[start] < thr:
                break
            # smallest count reaching the threshold from this start
            target = thr + cum[start]
            stop = int(np.searchsorted(cum, target, side="left"))
            count = stop - start
            best = min(best, count * p[start])
        assert math.isclose(delta_eps(group(embezzler_spectrum(n)), dlt), math.log2(best), abs_tol=1e-12)
