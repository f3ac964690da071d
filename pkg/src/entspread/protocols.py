"""Resource accounting for concentration, dilution and embezzling experiments.

Concentration measures the type of psi^(x)n and banks floor(log2 |T_P|) EPR
pairs with zero communication.  Dilution naively teleports the smallest
1-eps-mass truncation of the target at two classical bits per ebit; the
smoothed spread bound says a sqrt(n) portion of that cost is unavoidable.
The embezzler family mu(n) ~ 1/(i log n) exhibits the log n analogue.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .bounds import BoundReport, smoothed_bound
from .errors import DomainError, ResourceGuardError
from .smoothing import delta_eps, s0_eps
from .spectrum import Spectrum, embezzler_spectrum, group, uniform_spectrum
from .tensor_power import TypeVector, power_grouped_spectrum, type_log_cardinality

CONCENTRATION_DIM_GUARD = 8
CONCENTRATION_N_GUARD = 10**6
YIELD_NOTE = "yield = floor(log2 |T_P|) per trial; block-remainder slack omitted"
# PRNG contract: PCG64 seeded from SeedSequence([seed, trial]); any execution
# order (including parallel) reproduces the same histogram
PRNG_NAME = "pcg64"


@dataclass(frozen=True)
class YieldStats:
    """Outcome of a concentration run: EPR yield statistics, zero communication."""

    n: int
    trials: int
    seed: int
    mean_yield_bits: float
    yield_rate: float
    comm_bits: float
    histogram: dict = field(hash=False)
    note: str = YIELD_NOTE


def _sample_type(p: np.ndarray, n: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Multinomial draw via sequential binomial conditionals (fixed algorithm)."""
    counts = []
    remaining = n
    rest = 1.0
    for j in range(p.size - 1):
        cond = min(1.0, max(0.0, p[j] / rest)) if rest > 0 else 1.0
        k = int(rng.binomial(remaining, cond)) if remaining > 0 else 0
        counts.append(k)
        remaining -= k
        rest -= p[j]
    counts.append(remaining)
    return tuple(counts)


def concentration_simulate(base: Spectrum, n: int, trials: int, seed: int = 0) -> YieldStats:
    """Simulate type measurement of base^(x)n and the banked EPR yield.

    Parameters
    ----------
    base : Spectrum
        Schmidt spectrum of the copied state; rank at most 8.
    n : int
        Number of copies, at most 10^6.
    trials : int
        Independent repetitions; trial t uses PCG64(SeedSequence([seed, t]))
        so any execution order reproduces the same histogram.
    seed : int
        Stream selector.

    Returns
    -------
    YieldStats
        Mean yield, rate (mean/n, at most log2 rank), comm_bits identically 0
        and the yield histogram.
    """
    if base.rank > CONCENTRATION_DIM_GUARD:
        raise ResourceGuardError(f"base rank {base.rank} exceeds guard ({CONCENTRATION_DIM_GUARD})")
    if n > CONCENTRATION_N_GUARD:
        raise ResourceGuardError(f"n={n} exceeds guard ({CONCENTRATION_N_GUARD})")
    if n < 1:
        raise DomainError("need at least one copy")
    if trials < 1:
        raise DomainError("need at least one trial")
    p = base.probs
    hist: Counter = Counter()
    total = 0
    for t in range(trials):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, t])))
        tv = TypeVector(_sample_type(p, n, rng))
        # gammaln noise shield: exact powers of two must not floor down
        y = int(math.floor(type_log_cardinality(tv) + 1e-9))
        hist[y] += 1
        total += y
    mean = total / trials
    return YieldStats(
        n=n,
        trials=trials,
        seed=seed,
        mean_yield_bits=mean,
        yield_rate=mean / n,
        comm_bits=0.0,
        histogram=dict(sorted(hist.items())),
    )


@dataclass(frozen=True)
class DilutionReport:
    """Naive teleportation cost of diluting EPR pairs into base^(x)n versus
    the communication lower bound at the same tolerance."""

    n: int
    epsilon: float
    naive_ebits: int
    naive_cbits: int
    lower_bound_cbits: float
    lower_bound_qubits: float
    gap_ratio: float


def dilution_accounting(base: Spectrum, n: int, epsilon: float) -> DilutionReport:
    """Account for diluting EPR pairs into n copies of base at tolerance epsilon.

    The naive protocol truncates the target to its smallest subset holding
    mass 1-eps (exact smoothed rank, no typicality constant) and teleports
    it: ceil(s0_eps) ebits, twice that in classical bits.  The lower bound
    applies the smoothed spread bound with an EPR source (zero spread).
    """
    g = power_grouped_spectrum(base, n)
    naive_ebits = math.ceil(s0_eps(g, epsilon))
    source = uniform_spectrum(2)
    cls = smoothed_bound(source, g, epsilon, channel="classical")
    qub = smoothed_bound(source, g, epsilon, channel="qubit")
    naive_cbits = 2 * naive_ebits
    return DilutionReport(
        n=n,
        epsilon=float(epsilon),
        naive_ebits=naive_ebits,
        naive_cbits=naive_cbits,
        lower_bound_cbits=cls.bound_bits,
        lower_bound_qubits=qub.bound_bits,
        gap_ratio=naive_cbits / max(cls.bound_bits, 1.0),
    )


@dataclass(frozen=True)
class EmbezzlerCheck:
    """Exact smoothed spread of the embezzler against its closed-form floor."""

    n: int
    delta: float
    delta_eps_exact: float
    paper_floor: float
    holds: bool


def embezzler_bound_check(n: int, delta: float) -> EmbezzlerCheck:
    """Verify delta_eps(mu(n)) >= (1-2 delta) log2 n - 4 - log2 log2(n+1).

    The spectrum 1/(i H_n) has all-distinct values, so the exact window scan
    over prefix sums applies directly.  Valid for n >= 2 and 0 < delta < 1/2.
    """
    if n < 2:
        raise DomainError(f"embezzler needs n >= 2, got {n!r}")
    delta = float(delta)
    if not 0.0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 1/2), got {delta!r}")
    value = delta_eps(group(embezzler_spectrum(n)), delta)
    floor = (1.0 - 2.0 * delta) * math.log2(n) - 4.0 - math.log2(math.log2(n + 1))
    return EmbezzlerCheck(n=n, delta=delta, delta_eps_exact=value, paper_floor=floor, holds=value >= floor)


@dataclass(frozen=True)
class EmbezzlerCreationBound:
    """Communication needed to approximately create mu(n) from EPR pairs."""

    n: int
    epsilon: float
    qubit: BoundReport
    classical: BoundReport


def embezzler_creation_bound(n: int, epsilon: float) -> EmbezzlerCreationBound:
    """Smoothed spread bound for preparing mu(n) from maximally entangled pairs.

    Both channel figures are reported; the classical one grows like
    (1 - o(1)) log2 n at fixed epsilon.
    """
    if n < 2:
        raise DomainError(f"embezzler needs n >= 2, got {n!r}")
    target = group(embezzler_spectrum(n))
    source = uniform_spectrum(2)
    return EmbezzlerCreationBound(
        n=n,
        epsilon=float(epsilon),
        qubit=smoothed_bound(source, target, epsilon, channel="qubit"),
        classical=smoothed_bound(source, target, epsilon, channel="classical"),
    )
