"""Renyi entropies of spectra, all in bits (base-2 logs throughout).

The order parameter is an ordinary float: 0, 1 and math.inf select the rank,
Shannon and min-entropy branches; any other finite alpha >= 0 uses the power
sum.  Orders closer to 1 than 1e-6 (but not exactly 1) are rejected instead
of silently losing precision in the 1/(1-alpha) prefactor.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .spectrum import GroupedSpectrum, Spectrum

ALPHA_ONE_WINDOW = 1e-6


def _validate_order(alpha: float) -> float:
    alpha = float(alpha)
    if math.isnan(alpha) or alpha < 0.0:
        raise DomainError(f"Renyi order must be >= 0, got {alpha!r}")
    if alpha != 1.0 and abs(alpha - 1.0) < ALPHA_ONE_WINDOW:
        raise DomainError(
            f"Renyi order {alpha!r} is too close to 1; use exactly 1 for the Shannon branch"
        )
    return alpha


def _log2_sum_exp2(x: np.ndarray) -> float:
    """log2 of sum of 2**x, max-shifted for stability."""
    m = float(np.max(x))
    return m + math.log2(float(np.sum(np.exp2(x - m))))


def renyi(s: Spectrum | GroupedSpectrum, alpha: float) -> float:
    """Renyi entropy S_alpha in bits.

    S_0 = log2 rank, S_1 = Shannon, S_inf = -log2(max), and otherwise
    S_alpha = log2(sum r^alpha) / (1 - alpha).  Grouped spectra are handled
    entirely in the log domain, so tensor powers with astronomically large
    multiplicities are fine.
    """
    alpha = _validate_order(alpha)
    if isinstance(s, Spectrum):
        p = s.probs
        if alpha == 0.0:
            return math.log2(p.size)
        if alpha == 1.0:
            return float(-np.sum(p * np.log2(p)))
        if math.isinf(alpha):
            return -math.log2(float(p[0]))
        return math.log2(float(np.sum(p**alpha))) / (1.0 - alpha)
    v, m, w = s.log2_values, s.log2_mults, s.masses
    if alpha == 0.0:
        return _log2_sum_exp2(m)
    if alpha == 1.0:
        # within a group every eigenvalue shares log2_value
        return float(-np.sum(w * v))
    if math.isinf(alpha):
        return -float(v[0])
    return _log2_sum_exp2(m + alpha * v) / (1.0 - alpha)


def shannon(probs) -> float:
    """Shannon entropy in bits of a plain probability vector (zeros allowed)."""
    p = np.asarray(probs, dtype=np.float64).ravel()
    if p.size == 0 or np.any(p < 0.0):
        raise DomainError("need a nonempty vector of nonnegative probabilities")
    if abs(float(np.sum(p)) - 1.0) > 1e-6:
        raise DomainError("probabilities must sum to 1")
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p)))


def kl_divergence(p, r) -> float:
    """D(p || r) in bits; requires support(p) within support(r)."""
    p = np.asarray(p, dtype=np.float64).ravel()
    r = np.asarray(r, dtype=np.float64).ravel()
    if p.size != r.size:
        raise DomainError("distributions must have the same length")
    if np.any(p < 0.0) or np.any(r < 0.0):
        raise DomainError("probabilities must be nonnegative")
    if abs(float(np.sum(p)) - 1.0) > 1e-6 or abs(float(np.sum(r)) - 1.0) > 1e-6:
        raise DomainError("distributions must sum to 1")
    mask = p > 0.0
    if np.any(r[mask] <= 0.0):
        raise DomainError("support of p must be contained in support of r")
    return float(np.sum(p[mask] * (np.log2(p[mask]) - np.log2(r[mask]))))


def delta(s: Spectrum | GroupedSpectrum) -> float:
    """Spread Delta = S_0 - S_inf, the log ratio of rank to 1/max."""
    return renyi(s, 0.0) - renyi(s, math.inf)


def delta_ab(s: Spectrum | GroupedSpectrum, alpha: float, beta: float) -> float:
    """Generalized spread S_alpha - S_beta for 0 <= alpha < beta <= inf."""
    alpha = _validate_order(alpha)
    beta = _validate_order(beta)
    if not alpha < beta:
        raise DomainError(f"need alpha < beta, got alpha={alpha!r} beta={beta!r}")
    return renyi(s, alpha) - renyi(s, beta)
