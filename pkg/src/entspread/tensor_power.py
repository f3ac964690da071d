"""Exact spectra of n-fold tensor powers via the method of types.

The Schmidt spectrum of psi^(x)n over a base spectrum r with d distinct
values is supported on type classes: a composition (k_1, ..., k_d) of n
contributes the eigenvalue prod r_j^{k_j} with multiplicity equal to the
multinomial coefficient (times intra-group multiplicities when base values
repeat).  Everything is carried in log2 so n in the tens of thousands stays
exact to float precision even though multiplicities dwarf 2^53.

Also provides the central-limit description of the power spectrum: log2 of a
random eigenvalue is a sum of n iid terms with mean -H(r) and standard
deviation sigma_bits, so smoothed rank and max exponents sit at
n H(r) +/- z sigma_bits sqrt(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.special import gammaln
from scipy.stats import norm

from .errors import DomainError, ResourceGuardError
from .spectrum import GroupedSpectrum, Spectrum, group

TYPE_GUARD = 10**8
LN2 = math.log(2.0)
# tiniest positive float keeps far-tail groups representable after exp2 underflow
MASS_FLOOR = 5e-324


@dataclass(frozen=True)
class TypeVector:
    """Composition (k_1, ..., k_d) of n: how many tensor factors take each value."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts:
            raise DomainError("type vector must have at least one slot")
        if any((not isinstance(c, int)) or c < 0 for c in self.counts):
            raise DomainError("type counts must be nonnegative integers")

    @property
    def n(self) -> int:
        return sum(self.counts)


def num_types(n: int, d: int) -> int:
    """Number of compositions of n into d nonnegative parts."""
    if n < 0 or d < 1:
        raise DomainError("need n >= 0 and d >= 1")
    return math.comb(n + d - 1, d - 1)


def _check_type_budget(n: int, d: int) -> None:
    total = num_types(n, d)
    if total > TYPE_GUARD:
        raise ResourceGuardError(
            f"{total} type classes for n={n}, d={d} exceed the enumeration guard ({TYPE_GUARD})"
        )


def enumerate_types(n: int, d: int) -> Iterator[TypeVector]:
    """All compositions of n into d parts, in descending lexicographic order."""
    _check_type_budget(n, d)

    def rec(remaining: int, slots: int):
        if slots == 1:
            yield (remaining,)
            return
        for head in range(remaining, -1, -1):
            for tail in rec(remaining - head, slots - 1):
                yield (head,) + tail

    for counts in rec(n, d):
        yield TypeVector(counts)


def type_log_weight(tv: TypeVector, base: Spectrum) -> float:
    """log2 of the eigenvalue prod r_j^{k_j} attached to the type."""
    if len(tv.counts) != base.rank:
        raise DomainError("type length must match the base rank")
    return float(np.dot(np.asarray(tv.counts, dtype=np.float64), np.log2(base.probs)))


def type_log_cardinality(tv: TypeVector) -> float:
    """log2 of the multinomial coefficient n! / prod k_j!."""
    counts = np.asarray(tv.counts, dtype=np.float64)
    return float((gammaln(counts.sum() + 1.0) - gammaln(counts + 1.0).sum()) / LN2)


def _merge_sorted_groups(w: np.ndarray, c: np.ndarray) -> GroupedSpectrum:
    """Combine (log2 value, log2 multiplicity) pairs into a grouped spectrum.

    Weights within 1e-12 relative of each other collapse into one group whose
    multiplicity is the log-domain sum; total mass is preserved to the same
    relative accuracy.
    """
    order = np.argsort(-w, kind="stable")
    w, c = w[order], c[order]
    tol = 1e-12 * np.maximum(1.0, np.abs(w))
    starts = np.empty(w.size, dtype=bool)
    starts[0] = True
    starts[1:] = (w[:-1] - w[1:]) > tol[1:]
    seg = np.flatnonzero(starts)
    ids = np.cumsum(starts) - 1
    cmax = np.maximum.reduceat(c, seg)
    csum = np.add.reduceat(np.exp2(c - cmax[ids]), seg)
    c_merged = cmax + np.log2(csum)
    w_rep = w[seg]
    masses = np.maximum(np.exp2(w_rep + c_merged), MASS_FLOOR)
    return GroupedSpectrum(w_rep, c_merged, masses)


def power_grouped_spectrum(base: Spectrum, n: int) -> GroupedSpectrum:
    """Exact grouped spectrum of the n-fold tensor power of base.

    The base is grouped first so repeated values feed their multiplicity into
    each type's count.  Two distinct base values give n+1 binomial groups and
    run vectorized (n = 1e5 is fast); more values enumerate type classes under
    the guard.
    """
    if n < 1:
        raise DomainError(f"power must be a positive integer, got {n!r}")
    gb = group(base)
    v, m = gb.log2_values, gb.log2_mults
    G = gb.num_groups
    if G == 1:
        return GroupedSpectrum(
            np.array([n * v[0]]), np.array([n * m[0]]), np.array([1.0])
        )
    if G == 2:
        k = np.arange(n + 1, dtype=np.float64)
        logc = (gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)) / LN2
        w = k * v[0] + (n - k) * v[1]
        c = logc + k * m[0] + (n - k) * m[1]
        return _merge_sorted_groups(w, c)
    _check_type_budget(n, G)
    if G == 3:
        # vectorize over the trailing two counts; the outer loop caps memory
        lg_top = gammaln(n + 1.0)
        ws_parts, cs_parts = [], []
        for k1 in range(n + 1):
            k2 = np.arange(n - k1 + 1, dtype=np.float64)
            k3 = (n - k1) - k2
            logc = (lg_top - gammaln(k1 + 1.0) - gammaln(k2 + 1.0) - gammaln(k3 + 1.0)) / LN2
            ws_parts.append(k1 * v[0] + k2 * v[1] + k3 * v[2])
            cs_parts.append(logc + k1 * m[0] + k2 * m[1] + k3 * m[2])
        return _merge_sorted_groups(np.concatenate(ws_parts), np.concatenate(cs_parts))
    ws, cs = [], []
    for tv in enumerate_types(n, G):
        counts = np.asarray(tv.counts, dtype=np.float64)
        ws.append(float(counts @ v))
        cs.append(type_log_cardinality(tv) + float(counts @ m))
    return _merge_sorted_groups(np.asarray(ws), np.asarray(cs))


@dataclass(frozen=True)
class CltParams:
    """Mean and standard deviation (bits) of -log2 r under r."""

    mean_bits: float
    sigma_bits: float


def clt_params(base: Spectrum) -> CltParams:
    """Per-copy statistics of the surprisal -log2 r_i drawn with probability r_i.

    A uniform base has zero surprisal variance and admits no normal
    approximation, so it is rejected (as is any base within float noise of
    uniform, sigma below 1e-12 bits).
    """
    p = base.probs
    x = -np.log2(p)
    mean = float(np.dot(p, x))
    var = float(np.dot(p, x * x)) - mean * mean
    if var <= 1e-24:
        raise DomainError("base spectrum is uniform (or numerically so); surprisal variance vanishes")
    return CltParams(mean_bits=mean, sigma_bits=math.sqrt(var))


def clt_delta_prediction(base: Spectrum, n: int, delta_level: float) -> float:
    """Normal-approximation spread estimate for base^(x)n at level delta.

    Returns sigma_bits * sqrt(n) * (z(1-delta) - z(delta)) with z the
    standard normal quantile: the normal approximation puts the smoothed
    rank exponent near n H + sigma sqrt(n) z(1-delta) and the smoothed max
    exponent near n H + sigma sqrt(n) z(delta), and this is their gap.  It
    estimates S_0,delta - S_inf,delta, a lower bound on the smoothed spread
    (the two coincide only at delta=0).  Positive for delta < 1/2.
    """
    if n < 1:
        raise DomainError(f"power must be a positive integer, got {n!r}")
    delta_level = float(delta_level)
    if not 0.0 < delta_level < 1.0:
        raise DomainError(f"delta level must lie in (0, 1), got {delta_level!r}")
    params = clt_params(base)
    zhi = float(norm.ppf(1.0 - delta_level))
    zlo = float(norm.ppf(delta_level))
    return params.sigma_bits * math.sqrt(n) * (zhi - zlo)


@dataclass(frozen=True)
class TypicalSetReport:
    """Chebyshev-typical types of base^(x)n at width parameter delta_param."""

    n: int
    delta_param: float
    mass_lower_bound: float
    exact_mass: float
    log_card_upper: float
    num_typical_types: int


def is_type_typical(tv: TypeVector, base: Spectrum, delta_param: float) -> bool:
    """Componentwise test |k_i/n - r_i| <= delta sqrt(r_i(1-r_i)/n)."""
    if len(tv.counts) != base.rank:
        raise DomainError("type length must match the base rank")
    if delta_param <= 0:
        raise DomainError("delta parameter must be positive")
    n = tv.n
    if n == 0:
        raise DomainError("empty type")
    r = base.probs
    emp = np.asarray(tv.counts, dtype=np.float64) / n
    bound = delta_param * np.sqrt(r * (1.0 - r) / n)
    return bool(np.all(np.abs(emp - r) <= bound + 1e-15))


def typical_set_report(
    base: Spectrum, n: int, delta_param: float, k_const: float = 1.0
) -> TypicalSetReport:
    """Mass and size accounting for the typical types of base^(x)n.

    mass_lower_bound = 1 - d/delta^2 is the Chebyshev guarantee (vacuous when
    negative); exact_mass sums the actual probability of the typical types
    and must dominate it.  log_card_upper = n H(r) + k_const d delta sqrt(n)
    bounds the log-cardinality of the union of typical type classes; k_const
    is the constant in that estimate (default 1 is adequate for the ranges
    exercised here).
    """
    if n < 1:
        raise DomainError(f"power must be a positive integer, got {n!r}")
    if delta_param <= 0:
        raise DomainError("delta parameter must be positive")
    r = base.probs
    d = base.rank
    x = -np.log2(r)
    entropy = float(np.dot(r, x))
    mass_lower = 1.0 - d / (delta_param * delta_param)
    log_card_upper = n * entropy + k_const * d * delta_param * math.sqrt(n)
    if d == 1:
        return TypicalSetReport(n, delta_param, mass_lower, 1.0, log_card_upper, 1)
    if d == 2:
        k = np.arange(n + 1, dtype=np.float64)
        emp = k / n
        bound = delta_param * math.sqrt(float(r[0] * r[1]) / n)
        typical = np.abs(emp - r[0]) <= bound + 1e-15
        logc = (gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)) / LN2
        w = k * np.log2(r[0]) + (n - k) * np.log2(r[1])
        mass = float(np.sum(np.exp2((w + logc)[typical])))
        return TypicalSetReport(n, delta_param, mass_lower, mass, log_card_upper, int(typical.sum()))
    mass = 0.0
    hits = 0
    for tv in enumerate_types(n, d):
        if is_type_typical(tv, base, delta_param):
            mass += 2.0 ** (type_log_weight(tv, base) + type_log_cardinality(tv))
            hits += 1
    return TypicalSetReport(n, delta_param, mass_lower, mass, log_card_upper, hits)
