"""Smoothed spread measures: optimize over eigenvalue subsets carrying mass >= 1-eps.

For a spectrum r and smoothing level eps, the three basic quantities are

    s0_eps    = log2 of the least number of eigenvalues holding mass >= 1-eps
    sinf_eps  = -log2 of the smallest achievable maximum over such a subset
    delta_eps = log2 of the least (subset size) * (subset max) over such subsets

All three are solved exactly by scanning windows of the sorted spectrum: for
any feasible subset J, let k be the group holding max(J); replacing J by the
greedy window that takes eigenvalues descending from group k (splitting only
the last group) can only shrink the size while keeping the same max, so the
optimum is a window and scanning every start group k finds it.

Mass comparisons use a fixed absolute slack of 1e-12 so that float summation
noise cannot flip feasibility of a subset whose true mass equals 1-eps.

Two code paths share the scan logic: an exact-count path when multiplicities
are small integers, and a log-domain path (log2 values, log2 multiplicities,
range sums via a sparse table of binary blocks) for tensor powers whose
multiplicities dwarf 2^53 and whose eigenvalues underflow floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceGuardError
from .spectrum import GroupedSpectrum, Spectrum, exact_counts, group

MASS_SLACK = 1e-12
BRUTE_FORCE_GUARD = 20
# log path switches: exact arithmetic needs values that exp2 cannot underflow
EXACT_VALUE_FLOOR = -500.0

NEG_INF = float("-inf")


@dataclass(frozen=True)
class SmoothWitness:
    """Window of eigenvalue groups achieving a smoothed quantity.

    The window runs from ``start_group`` to ``end_group`` inclusive, taking
    ``copies_in_start`` eigenvalues from the first group, every eigenvalue of
    the groups strictly between, and ``copies_in_end`` from the last.  When
    start and end coincide the two copy counts are equal.  Copy counts are
    exact for small spectra and float-precision integers for tensor powers.
    """

    start_group: int
    copies_in_start: int
    end_group: int
    copies_in_end: int
    mass: float
    count_log2: float
    max_log2_value: float


def _validate_eps(eps: float) -> float:
    eps = float(eps)
    if not 0.0 <= eps < 1.0:
        raise DomainError(f"smoothing level must lie in [0, 1), got {eps!r}")
    return eps


def _threshold(eps: float) -> float:
    return max((1.0 - eps) - MASS_SLACK, 1e-300)


def _as_grouped(s: Spectrum | GroupedSpectrum) -> GroupedSpectrum:
    return s if isinstance(s, GroupedSpectrum) else group(s)


def _int_from_log2(x: float) -> int:
    """Nearest integer to 2**x as an exact Python int (float precision)."""
    if x == NEG_INF:
        return 0
    if x <= 53.0:
        return max(1, round(2.0**x))
    shift = int(math.floor(x)) - 52
    return round(2.0 ** (x - shift)) << shift


def _prefix_masses(masses: np.ndarray) -> np.ndarray:
    """[0, m0, m0+m1, ...] accumulated in extended precision.

    Sequential float64 accumulation of millions of terms drifts by more than
    the 1e-12 feasibility slack; 80-bit accumulation keeps the drift below it.
    """
    pm = np.empty(masses.size + 1)
    pm[0] = 0.0
    pm[1:] = np.cumsum(masses.astype(np.longdouble)).astype(np.float64)
    return pm


class _LogRangeSums:
    """Sparse table answering log2(sum of 2**x over [a, b)) without subtraction."""

    def __init__(self, x: np.ndarray):
        self.levels = [np.asarray(x, dtype=np.float64)]
        size = 1
        while size * 2 <= x.size:
            prev = self.levels[-1]
            self.levels.append(np.logaddexp2(prev[:-size], prev[size:]))
            size *= 2

    def query_many(self, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
        """Vectorized range log-sums; empty (or inverted) ranges give -inf."""
        acc = np.full(starts.shape, NEG_INF)
        pos = starts.astype(np.int64).copy()
        lengths = np.maximum(ends.astype(np.int64) - pos, 0)
        bit = 0
        while (1 << bit) <= int(lengths.max(initial=0)):
            sel = ((lengths >> bit) & 1) == 1
            if np.any(sel):
                acc[sel] = np.logaddexp2(acc[sel], self.levels[bit][pos[sel]])
                pos[sel] += 1 << bit
            bit += 1
        return acc


def _scan_windows(g: GroupedSpectrum, eps: float):
    """Greedy window from every start group.

    Returns (feasible, b, kp_log2, mass_win, count_log2, counts_or_None).
    Window k spans groups k..b[k], full in between, kp copies of group b[k].
    Start 0 is always treated as feasible: the true total mass is 1, so only
    accumulated float error can make the full window appear short.
    """
    thr = _threshold(eps)
    G = g.num_groups
    v = g.log2_values
    pmb = _prefix_masses(g.masses)
    total = pmb[-1]
    ks = np.arange(G)
    feasible = (total - pmb[:G]) >= thr
    feasible[0] = True
    targets = thr + pmb[:G]
    targets[0] = min(targets[0], total)
    b = np.minimum(np.searchsorted(pmb[1:], targets, side="left"), G - 1)
    mass_full = pmb[b] - pmb[:G]
    deficit = np.maximum(targets - pmb[b], 1e-300)

    counts = exact_counts(g)
    if counts is not None and v[-1] > EXACT_VALUE_FLOOR:
        values = g.masses / counts
        vb = values[b]
        kp = np.ceil(deficit / vb)
        kp = np.where((kp - 1.0) * vb >= deficit, kp - 1.0, kp)
        kp = np.where(kp * vb < deficit, kp + 1.0, kp)
        kp = np.clip(kp, 1.0, counts[b])
        pcb = np.concatenate(([0.0], np.cumsum(counts)))
        count_total = (pcb[b] - pcb[:G]) + kp
        mass_win = mass_full + kp * vb
        return feasible, b, np.log2(kp), mass_win, np.log2(count_total), counts

    table = _LogRangeSums(g.log2_mults)
    full_log2 = table.query_many(ks, b)
    kp_log2 = np.log2(deficit) - v[b]
    small = (kp_log2 <= 53.0) & (v[b] > EXACT_VALUE_FLOOR)
    if np.any(small):
        vb = np.exp2(v[b][small])
        def_s = deficit[small]
        kp = np.ceil(def_s / vb)
        kp = np.where((kp - 1.0) * vb >= def_s, kp - 1.0, kp)
        kp = np.where(kp * vb < def_s, kp + 1.0, kp)
        kp_log2[small] = np.log2(np.maximum(kp, 1.0))
    kp_log2 = np.clip(kp_log2, 0.0, g.log2_mults[b])
    count_log2 = np.logaddexp2(full_log2, kp_log2)
    mass_win = mass_full + np.exp2(kp_log2 + v[b])
    return feasible, b, kp_log2, mass_win, count_log2, None


def _copies(counts: np.ndarray | None, g: GroupedSpectrum, i: int) -> int:
    if counts is not None:
        return int(counts[i])
    return _int_from_log2(float(g.log2_mults[i]))


def _window_witness(g, counts, start: int, end: int, kp_log2: float, mass: float, count_log2: float) -> SmoothWitness:
    cie = _int_from_log2(float(kp_log2)) if counts is None else int(round(2.0 ** float(kp_log2)))
    cis = cie if end == start else _copies(counts, g, start)
    return SmoothWitness(
        start_group=int(start),
        copies_in_start=cis,
        end_group=int(end),
        copies_in_end=cie,
        mass=float(mass),
        count_log2=float(count_log2),
        max_log2_value=float(g.log2_values[start]),
    )


def s0_eps(s: Spectrum | GroupedSpectrum, eps: float, return_witness: bool = False):
    """Smoothed rank exponent: log2 of the least subset size with mass >= 1-eps.

    Equals S_0 at eps=0.  The minimizer takes eigenvalues in descending order,
    splitting only the final group.
    """
    eps = _validate_eps(eps)
    g = _as_grouped(s)
    feasible, b, kp_log2, mass_win, count_log2, counts = _scan_windows(g, eps)
    value = float(count_log2[0])
    if not return_witness:
        return value
    w = _window_witness(g, counts, 0, int(b[0]), float(kp_log2[0]), float(mass_win[0]), value)
    return value, w


def sinf_eps(s: Spectrum | GroupedSpectrum, eps: float, return_witness: bool = False):
    """Smoothed max exponent: -log2 of the least achievable subset maximum.

    The minimizer keeps the smallest eigenvalues: take whole groups from the
    bottom until mass reaches 1-eps; the first group so included fixes the max.
    """
    eps = _validate_eps(eps)
    g = _as_grouped(s)
    thr = _threshold(eps)
    pmb = _prefix_masses(g.masses)
    total = pmb[-1]
    G = g.num_groups
    suffix = total - pmb[:G]
    idx = np.flatnonzero(suffix >= thr)
    start = int(idx[-1]) if idx.size else 0
    value = -float(g.log2_values[start])
    if not return_witness:
        return value
    counts = exact_counts(g)
    table = None if counts is not None else _LogRangeSums(g.log2_mults)
    if counts is not None:
        count_log2 = math.log2(float(np.sum(counts[start:])))
    else:
        count_log2 = float(table.query_many(np.array([start]), np.array([G]))[0])
    last = G - 1
    w = SmoothWitness(
        start_group=start,
        copies_in_start=_copies(counts, g, start),
        end_group=last,
        copies_in_end=_copies(counts, g, last),
        mass=float(suffix[start]),
        count_log2=count_log2,
        max_log2_value=float(g.log2_values[start]),
    )
    return value, w


def delta_eps(s: Spectrum | GroupedSpectrum, eps: float, return_witness: bool = False):
    """Smoothed spread: log2 of min (subset size)*(subset max), mass >= 1-eps.

    Exact over all subsets, found by the start-group window scan.  At eps=0
    this reduces to S_0 - S_inf; it can be negative (floor log2(1-eps)) once
    smoothing allows dropping tail mass.
    """
    eps = _validate_eps(eps)
    g = _as_grouped(s)
    feasible, b, kp_log2, mass_win, count_log2, counts = _scan_windows(g, eps)
    objective = np.where(feasible, count_log2 + g.log2_values, np.inf)
    best = int(np.argmin(objective))
    value = float(objective[best])
    if not return_witness:
        return value
    w = _window_witness(
        g, counts, best, int(b[best]), float(kp_log2[best]), float(mass_win[best]), float(count_log2[best])
    )
    return value, w


def evaluate_witness(g: GroupedSpectrum, w: SmoothWitness) -> tuple[float, float, float]:
    """Recompute (mass, count_log2, max_log2_value) of a witness window."""
    v = g.log2_values
    if not 0 <= w.start_group <= w.end_group < g.num_groups:
        raise DomainError("witness window indices out of range")
    cis_log2 = math.log2(w.copies_in_start) if w.copies_in_start else NEG_INF
    cie_log2 = math.log2(w.copies_in_end) if w.copies_in_end else NEG_INF
    if w.start_group == w.end_group:
        parts = [cie_log2 + v[w.end_group]]
        count_parts = [cie_log2]
    else:
        mid = slice(w.start_group + 1, w.end_group)
        parts = (
            [cis_log2 + v[w.start_group]]
            + list(g.log2_mults[mid] + v[mid])
            + [cie_log2 + v[w.end_group]]
        )
        count_parts = [cis_log2] + list(g.log2_mults[mid]) + [cie_log2]
    mass = float(np.sum(np.exp2(parts)))
    arr = np.asarray(count_parts)
    m = float(np.max(arr))
    count_log2 = m + math.log2(float(np.sum(np.exp2(arr - m))))
    return mass, count_log2, float(v[w.start_group])


def delta_eps_bruteforce(s: Spectrum, eps: float) -> float:
    """Reference implementation of delta_eps over all 2^d subsets (d <= 20)."""
    eps = _validate_eps(eps)
    if not isinstance(s, Spectrum):
        raise DomainError("brute force needs a dense spectrum")
    d = s.rank
    if d > BRUTE_FORCE_GUARD:
        raise ResourceGuardError(f"2^{d} subsets exceed the brute-force guard (d <= {BRUTE_FORCE_GUARD})")
    thr = _threshold(eps)
    p = s.probs
    bits, mass = _subset_table(p, d)
    feasible = mass >= thr
    count = bits.sum(axis=1, dtype=np.int64)
    first = np.argmax(bits, axis=1)  # largest included value
    objective = np.where(feasible, count * p[first], np.inf)
    return float(np.log2(np.min(objective)))


def _subset_table(p: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Membership matrix (uint8, one row per nonempty subset) and subset masses."""
    masks = np.arange(1, 1 << d, dtype=np.int64)
    bits = np.empty((masks.size, d), dtype=np.uint8)
    mass = np.zeros(masks.size)
    for j in range(d):
        bits[:, j] = (masks >> j) & 1
        mass += p[j] * bits[:, j]
    return bits, mass


def _validate_ab(alpha: float, beta: float) -> tuple[float, float]:
    alpha, beta = float(alpha), float(beta)
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"alpha must lie in [0, 1), got {alpha!r}")
    if not beta > 1.0:
        raise DomainError(f"beta must exceed 1, got {beta!r}")
    return alpha, beta


def _subset_power_sums(lv: np.ndarray, bits: np.ndarray, shift: np.ndarray) -> np.ndarray:
    """log2 of sum over each subset of 2**lv, shifted by the subset max."""
    out = np.empty(bits.shape[0])
    step = 1 << 16
    for lo in range(0, bits.shape[0], step):
        hi = min(lo + step, bits.shape[0])
        rel = np.exp2(lv[None, :] - shift[lo:hi, None])
        out[lo:hi] = np.log2(np.sum(rel * bits[lo:hi], axis=1))
    return out + shift


def delta_ab_eps(
    s: Spectrum | GroupedSpectrum,
    alpha: float,
    beta: float,
    eps: float,
    mode: str = "exact",
) -> float:
    """Smoothed generalized spread over subsets J with mass >= 1-eps.

    Minimizes  log2(sum_J r^alpha)/(1-alpha) - log2(sum_J r^beta)/(1-beta)
    with the beta term read as -log2(max_J r) at beta=inf.  At (alpha, beta)
    = (0, inf) this coincides with delta_eps.

    mode="exact" enumerates all subsets of a dense spectrum (rank <= 20) and
    is authoritative.  mode="window" scans contiguous whole-group windows of
    the sorted spectrum, which provably contains the optimum at (0, inf) but
    is only a heuristic upper bound for general orders; callers must treat
    the window value as an upper bound on the true minimum.
    """
    alpha, beta = _validate_ab(alpha, beta)
    eps = _validate_eps(eps)
    if mode == "exact":
        if not isinstance(s, Spectrum):
            raise DomainError("exact mode needs a dense spectrum")
        d = s.rank
        if d > BRUTE_FORCE_GUARD:
            raise ResourceGuardError(f"2^{d} subsets exceed the exact-mode guard (d <= {BRUTE_FORCE_GUARD})")
        thr = _threshold(eps)
        p = s.probs
        bits, mass = _subset_table(p, d)
        feasible = mass >= thr
        first = np.argmax(bits, axis=1)
        lp = np.log2(p)
        term_a = _subset_power_sums(alpha * lp, bits, alpha * lp[first]) / (1.0 - alpha)
        if math.isinf(beta):
            term_b = -lp[first]  # S_inf of the subset
        else:
            term_b = _subset_power_sums(beta * lp, bits, beta * lp[first]) / (1.0 - beta)
        objective = np.where(feasible, term_a - term_b, np.inf)
        return float(np.min(objective))
    if mode != "window":
        raise DomainError(f"mode must be 'exact' or 'window', got {mode!r}")

    g = _as_grouped(s)
    thr = _threshold(eps)
    G = g.num_groups
    v, m = g.log2_values, g.log2_mults
    pmb = _prefix_masses(g.masses)
    total = pmb[-1]
    feasible = (total - pmb[:G]) >= thr
    feasible[0] = True
    targets = np.minimum(thr + pmb[:G], total)
    ends = np.minimum(np.searchsorted(pmb[1:], targets, side="left"), G - 1) + 1
    starts = np.arange(G)
    tab_a = _LogRangeSums(m + alpha * v)
    term_a = tab_a.query_many(starts, ends) / (1.0 - alpha)
    if math.isinf(beta):
        term_b = -v
    else:
        tab_b = _LogRangeSums(m + beta * v)
        term_b = tab_b.query_many(starts, ends) / (1.0 - beta)
    objective = np.where(feasible, term_a - term_b, np.inf)
    return float(np.min(objective))
