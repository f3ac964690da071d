"""Communication lower bounds for approximate entanglement transformations.

A protocol taking |phi> to within trace distance epsilon of |psi> by local
operations and C classical bits must satisfy

    2 C  >=  delta_eps'(psi) - delta_0(phi) + 2 log2(1 - delta')

at smoothing level delta' = (4 epsilon)^(1/8).  Qubit channels carry two
classical bits' worth here, so the qubit bound is half the classical one.
Supplementing the source with extra maximally entangled pairs leaves the
right-hand side unchanged (a flat pair adds zero spread and the unsmoothed
spread is exactly additive), which the reports record as a flag.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .entropy import delta, delta_ab
from .errors import DomainError
from .smoothing import delta_ab_eps, delta_eps
from .spectrum import GroupedSpectrum, Spectrum

CHANNELS = ("qubit", "classical")
# (4 eps)^{1/8} reaches 1 at eps = 1/4: no smoothing level exists beyond that
EPSILON_HARD_LIMIT = 0.25
# delta' >= 1/2 (eps >= 1/1024) makes the slack term dwarf typical spreads
DELTA_WARN_LEVEL = 0.5


@dataclass(frozen=True)
class BoundReport:
    """One evaluated lower bound, with the terms that built it.

    bound_bits is max(0, raw_rhs) for a classical channel and
    max(0, raw_rhs)/2 for qubits; raw_rhs = term_target - term_source + slack
    may be negative when smoothing eats the spread gap.
    """

    channel: str
    epsilon: float
    delta: float
    term_target: float
    term_source: float
    slack: float
    raw_rhs: float
    bound_bits: float
    epr_supplement_invariant: bool = True

    def to_dict(self) -> dict:
        return {
            "channel": self.channel,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "term_target": self.term_target,
            "term_source": self.term_source,
            "slack": self.slack,
            "bound_bits": self.bound_bits,
            "raw_rhs": self.raw_rhs,
            "epr_supplement_invariant": self.epr_supplement_invariant,
        }


def smoothing_level(epsilon: float) -> float:
    """Map the trace-distance tolerance to the smoothing level (4 eps)^(1/8)."""
    epsilon = float(epsilon)
    if not 0.0 <= epsilon < EPSILON_HARD_LIMIT:
        raise DomainError(
            f"epsilon must lie in [0, 1/4): (4*eps)^(1/8) reaches 1 at eps=1/4, got {epsilon!r}"
        )
    return (4.0 * epsilon) ** 0.125


def _check_channel(channel: str) -> str:
    if channel not in CHANNELS:
        raise DomainError(f"channel must be one of {CHANNELS}, got {channel!r}")
    return channel


def deterministic_bound(phi: Spectrum, psi: Spectrum | GroupedSpectrum) -> float:
    """Qubit lower bound max(0, (delta(psi) - delta(phi)) / 2) for exact transformation."""
    return max(0.0, 0.5 * (delta(psi) - delta(phi)))


def smoothed_bound(
    phi: Spectrum,
    psi: Spectrum | GroupedSpectrum,
    epsilon: float,
    channel: str = "qubit",
) -> BoundReport:
    """Lower bound on communication to reach within trace distance epsilon of psi.

    Parameters
    ----------
    phi : Spectrum
        Schmidt spectrum of the exactly held source state.
    psi : Spectrum or GroupedSpectrum
        Spectrum of the target state, grouped form welcome for tensor powers.
    epsilon : float
        Allowed trace distance to the target, in [0, 1/4).
    channel : {"qubit", "classical"}
        Units of the reported bound; a qubit counts as two classical bits.

    Returns
    -------
    BoundReport
        Terms, slack, raw right-hand side and the clamped bound.  A warning
        is emitted when the smoothing level reaches 1/2 (epsilon >= 1/1024),
        where the slack typically swamps the spread difference.
    """
    channel = _check_channel(channel)
    dlt = smoothing_level(epsilon)
    if dlt >= DELTA_WARN_LEVEL:
        warnings.warn(
            f"smoothing level {dlt:.4f} >= 0.5 (epsilon={epsilon:g}); bound is likely vacuous",
            stacklevel=2,
        )
    term_target = delta_eps(psi, dlt)
    term_source = delta(phi)
    slack = 2.0 * math.log2(1.0 - dlt)
    raw = term_target - term_source + slack
    bound = max(0.0, raw)
    if channel == "qubit":
        bound /= 2.0
    return BoundReport(
        channel=channel,
        epsilon=epsilon,
        delta=dlt,
        term_target=term_target,
        term_source=term_source,
        slack=slack,
        raw_rhs=raw,
        bound_bits=bound,
    )


def alpha_beta_bound(
    phi: Spectrum,
    psi: Spectrum,
    epsilon: float,
    alpha: float,
    beta: float,
) -> BoundReport:
    """Qubit lower bound from the generalized spread of orders (alpha, beta).

    Same structure as the plain smoothed bound with the spread replaced by
    delta_ab_eps (exact subset enumeration, so psi must have rank <= 20) and
    the slack by (2a/(1-a) + 2b/(b-1)) log2(1 - sqrt(delta)), with the beta
    coefficient read as 2 at beta=inf.  Note the orders-(0, inf) slack,
    2 log2(1-sqrt(delta)), is more punishing than the plain bound's
    2 log2(1-delta): the two bounds do not coincide at the extreme orders.
    """
    dlt = smoothing_level(epsilon)
    if dlt >= DELTA_WARN_LEVEL:
        warnings.warn(
            f"smoothing level {dlt:.4f} >= 0.5 (epsilon={epsilon:g}); bound is likely vacuous",
            stacklevel=2,
        )
    term_target = delta_ab_eps(psi, alpha, beta, dlt, mode="exact")
    term_source = delta_ab(phi, alpha, beta)
    beta_coeff = 2.0 if math.isinf(beta) else 2.0 * beta / (beta - 1.0)
    coeff = 2.0 * alpha / (1.0 - alpha) + beta_coeff
    slack = coeff * math.log2(1.0 - math.sqrt(dlt))
    raw = term_target - term_source + slack
    return BoundReport(
        channel="qubit",
        epsilon=epsilon,
        delta=dlt,
        term_target=term_target,
        term_source=term_source,
        slack=slack,
        raw_rhs=raw,
        bound_bits=max(0.0, raw) / 2.0,
    )
