"""Shared helpers: random spectrum generators and hypothesis strategies."""

import numpy as np
import pytest
from hypothesis import strategies as st

from entspread.spectrum import spectrum_from_probs


def random_spectrum(rng, d=None, dmin=1, dmax=12):
    """Random full-support spectrum, entries bounded away from zero."""
    if d is None:
        d = int(rng.integers(dmin, dmax + 1))
    x = rng.random(d) + 1e-3
    return spectrum_from_probs(x / x.sum(), normalize=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


def spectra(min_size=1, max_size=12):
    """Hypothesis strategy for spectra with entries bounded away from zero."""
    return st.lists(
        st.floats(min_value=1e-3, max_value=1.0, allow_nan=False),
        min_size=min_size,
        max_size=max_size,
    ).map(lambda xs: spectrum_from_probs(np.asarray(xs) / np.sum(xs), normalize=True))


def eps_levels():
    return st.floats(min_value=0.0, max_value=0.9, allow_nan=False)
