"""Communication lower bounds: smoothing level, channel units, invariances."""

import math

import numpy as np
import pytest

from conftest import random_spectrum
from entspread.bounds import (
    BoundReport,
    alpha_beta_bound,
    deterministic_bound,
    smoothed_bound,
    smoothing_level,
)
from entspread.errors import DomainError
from entspread.smoothing import s0_eps
from entspread.spectrum import (
    embezzler_spectrum,
    spectrum_from_probs,
    tensor,
    two_level_spectrum,
    uniform_spectrum,
)
from entspread.tensor_power import power_grouped_spectrum

REPORT_KEYS = [
    "channel",
    "epsilon",
    "delta",
    "term_target",
    "term_source",
    "slack",
    "bound_bits",
    "raw_rhs",
    "epr_supplement_invariant",
]


class TestSmoothingLevel:
    def test_known_values(self):
        assert smoothing_level(0.0) == 0.0
        assert math.isclose(smoothing_level(1e-8), 0.11892071150027, abs_tol=1e-12)
        assert math.isclose(smoothing_level(0.01), 0.04 ** 0.125, abs_tol=1e-15)

    def test_monotone(self):
        grid = np.linspace(0.0, 0.2499, 50)
        vals = [smoothing_level(e) for e in grid]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1.0

    @pytest.mark.parametrize("eps", [0.25, 0.3, 1.0, -1e-9])
    def test_hard_limit(self, eps):
        with pytest.raises(DomainError):
            smoothing_level(eps)


class TestDeterministicBound:
    def test_flat_to_skewed(self):
        psi = spectrum_from_probs([0.5, 0.25, 0.25])
        got = deterministic_bound(uniform_spectrum(2), psi)
        assert math.isclose(got, 0.5 * (math.log2(3.0) - 1.0), abs_tol=1e-12)

    def test_identity_is_free(self, rng):
        s = random_spectrum(rng)
        assert deterministic_bound(s, s) == 0.0

    def test_flat_to_embezzler(self):
        got = deterministic_bound(uniform_spectrum(16), embezzler_spectrum(4))
        assert math.isclose(got, 0.4706, abs_tol=5e-5)

    def test_clamped_at_zero(self):
        assert deterministic_bound(embezzler_spectrum(4), uniform_spectrum(2)) == 0.0


class TestSmoothedBound:
    def test_channel_factor_exact(self, rng):
        for _ in range(30):
            phi = random_spectrum(rng, dmax=6)
            psi = random_spectrum(rng, dmax=10)
            eps = float(rng.uniform(0.0, 0.0009))
            q = smoothed_bound(phi, psi, eps, "qubit")
            c = smoothed_bound(phi, psi, eps, "classical")
            assert c.bound_bits == 2.0 * q.bound_bits
            assert c.raw_rhs == q.raw_rhs

    def test_eps_zero_reduction(self, rng):
        for _ in range(30):
            phi = random_spectrum(rng, dmax=6)
            psi = random_spectrum(rng, dmax=10)
            rep = smoothed_bound(phi, psi, 0.0, "qubit")
            assert rep.slack == 0.0
            assert math.isclose(rep.bound_bits, deterministic_bound(phi, psi), abs_tol=1e-9)
            cls = smoothed_bound(phi, psi, 0.0, "classical")
            assert math.isclose(cls.bound_bits, 2.0 * deterministic_bound(phi, psi), abs_tol=1e-9)

    def test_epr_supplement_invariance(self, rng):
        epr = uniform_spectrum(2)
        for _ in range(30):
            phi = random_spectrum(rng, dmax=6)
            psi = random_spectrum(rng, dmax=10)
            eps = float(rng.uniform(0.0, 0.0009))
            base = smoothed_bound(phi, psi, eps, "classical")
            supp = smoothed_bound(tensor(phi, epr), psi, eps, "classical")
            assert math.isclose(supp.bound_bits, base.bound_bits, abs_tol=1e-9)
            assert base.epr_supplement_invariant and supp.epr_supplement_invariant

    def test_self_transformation_costs_nothing(self, rng):
        for _ in range(20):
            s = random_spectrum(rng)
            rep = smoothed_bound(s, s, 1e-4, "classical")
            assert rep.bound_bits == 0.0
            assert rep.raw_rhs <= 0.0

    def test_vacuous_level_warns(self):
        with pytest.warns(UserWarning, match="smoothing level"):
            smoothed_bound(uniform_spectrum(2), two_level_spectrum(0.9), 0.01)

    def test_quiet_below_warn_level(self, recwarn):
        smoothed_bound(uniform_spectrum(2), two_level_spectrum(0.9), 1e-6)
        assert not [w for w in recwarn.list if "smoothing level" in str(w.message)]

    def test_never_exceeds_naive_protocol(self, rng):
        # condense-and-teleport needs about 2 s0 bits; the bound must respect it
        for _ in range(40):
            phi = random_spectrum(rng, dmax=6)
            psi = random_spectrum(rng, dmax=12)
            eps = float(rng.uniform(0.0, 0.0009))
            rep = smoothed_bound(phi, psi, eps, "classical")
            assert rep.bound_bits <= 2.0 * s0_eps(psi, 0.0) + 2.0 + 1e-9

    def test_grouped_target_accepted(self):
        g = power_grouped_spectrum(two_level_spectrum(0.1), 1000)
        rep = smoothed_bound(uniform_spectrum(2), g, 1e-6, "classical")
        assert rep.bound_bits > 0

    def test_report_dict_shape(self):
        rep = smoothed_bound(uniform_spectrum(2), embezzler_spectrum(8), 1e-6, "qubit")
        d = rep.to_dict()
        assert list(d.keys()) == REPORT_KEYS
        assert d["channel"] == "qubit"
        assert d["epsilon"] == 1e-6
        assert math.isclose(d["delta"], (4e-6) ** 0.125, abs_tol=1e-15)
        assert math.isclose(d["raw_rhs"], d["term_target"] - d["term_source"] + d["slack"], abs_tol=1e-12)

    def test_channel_validation(self):
        with pytest.raises(DomainError):
            smoothed_bound(uniform_spectrum(2), uniform_spectrum(4), 1e-6, "smoke-signal")


class TestAlphaBetaBound:
    def test_extreme_orders_use_sqrt_slack(self):
        phi = uniform_spectrum(2)
        psi = embezzler_spectrum(8)
        eps = 1e-6
        dlt = smoothing_level(eps)
        ab = alpha_beta_bound(phi, psi, eps, 0.0, math.inf)
        plain = smoothed_bound(phi, psi, eps, "qubit")
        assert math.isclose(ab.slack, 2.0 * math.log2(1.0 - math.sqrt(dlt)), abs_tol=1e-12)
        assert math.isclose(plain.slack, 2.0 * math.log2(1.0 - dlt), abs_tol=1e-12)
        # same spread terms, harsher slack: the generalized bound sits below
        assert math.isclose(ab.term_target, plain.term_target, abs_tol=1e-9)
        assert ab.slack < plain.slack
        assert ab.bound_bits <= plain.bound_bits + 1e-12

    def test_intermediate_orders(self):
        phi = uniform_spectrum(2)
        psi = embezzler_spectrum(8)
        eps = 1e-6
        dlt = smoothing_level(eps)
        ab = alpha_beta_bound(phi, psi, eps, 0.5, 2.0)
        coeff = 2.0 * 0.5 / 0.5 + 2.0 * 2.0 / 1.0
        assert math.isclose(ab.slack, coeff * math.log2(1.0 - math.sqrt(dlt)), abs_tol=1e-12)
        assert ab.channel == "qubit"
        assert ab.bound_bits == max(0.0, ab.raw_rhs) / 2.0

    def test_order_validation(self):
        with pytest.raises(DomainError):
            alpha_beta_bound(uniform_spectrum(2), uniform_spectrum(4), 1e-6, 1.0, 2.0)

    def test_warns_like_plain_bound(self):
        with pytest.warns(UserWarning, match="smoothing level"):
            alpha_beta_bound(uniform_spectrum(2), embezzler_spectrum(4), 0.01, 0.0, math.inf)
