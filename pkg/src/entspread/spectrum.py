"""Schmidt spectra as sorted probability vectors, plus a grouped log-domain form.

A `Spectrum` is the eigenvalue list of one reduced state of a bipartite pure
state: strictly positive reals, sorted descending, summing to 1.  Zero entries
are dropped at construction so that rank, min and max are always well defined.

A `GroupedSpectrum` stores (log2 value, log2 multiplicity, mass) triples and is
the only practical representation for tensor powers, where multiplicities are
far beyond 2^53 and values underflow any float.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, ResourceGuardError, SpecParseError

TENSOR_GUARD = 10**6
UNGROUP_GUARD = 10**6

# Sum tolerance accepted from callers before we renormalize.
INPUT_SUM_TOL = 1e-6
# Sum tolerance enforced on every constructed spectrum.
SUM_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Sorted positive probability vector (descending), sum 1."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        if p.ndim != 1 or p.size == 0:
            raise DomainError("spectrum must be a nonempty 1-d vector")
        if np.any(p <= 0.0):
            raise DomainError("spectrum entries must be strictly positive")
        if np.any(np.diff(p) > 0.0):
            raise DomainError("spectrum entries must be sorted descending")
        total = float(np.sum(p))
        if abs(total - 1.0) > SUM_TOL:
            raise DomainError(f"spectrum sum {total!r} not within {SUM_TOL} of 1")
        p = p.copy()
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    @property
    def rank(self) -> int:
        return int(self.probs.size)

    def __len__(self) -> int:
        return self.rank


@dataclass(frozen=True)
class GroupedSpectrum:
    """Spectrum with equal values merged, kept in log2 domain.

    ``log2_values`` is strictly decreasing; ``log2_mults`` are >= 0 and need
    not be exactly representable once multiplicities pass 2^53; ``masses`` are
    the per-group probability masses (value times multiplicity), which stay
    ordinary floats because each is at most 1.
    """

    log2_values: np.ndarray
    log2_mults: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.log2_values, dtype=np.float64)
        m = np.asarray(self.log2_mults, dtype=np.float64)
        w = np.asarray(self.masses, dtype=np.float64)
        if not (v.ndim == m.ndim == w.ndim == 1) or not (v.size == m.size == w.size):
            raise DomainError("grouped spectrum arrays must be 1-d and same length")
        if v.size == 0:
            raise DomainError("grouped spectrum must be nonempty")
        if np.any(np.diff(v) >= 0.0):
            raise DomainError("group values must be strictly decreasing")
        if np.any(m < 0.0):
            raise DomainError("log2 multiplicities must be >= 0")
        if np.any(w <= 0.0):
            raise DomainError("group masses must be positive")
        total = float(np.sum(w))
        if abs(total - 1.0) > INPUT_SUM_TOL:
            raise DomainError(f"grouped masses sum to {total!r}, not within {INPUT_SUM_TOL} of 1")
        for name, arr in (("log2_values", v), ("log2_mults", m), ("masses", w)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def num_groups(self) -> int:
        return int(self.log2_values.size)

    def __len__(self) -> int:
        return self.num_groups


def spectrum_from_probs(raw, normalize: bool = False) -> Spectrum:
    """Build a Spectrum from a raw probability list.

    Entries must be >= 0; zeros are dropped.  Unless ``normalize`` is set the
    input sum has to be within 1e-6 of 1 already.  The kept entries are always
    renormalized so the result sums to 1 exactly up to float error.
    """
    p = np.asarray(raw, dtype=np.float64).ravel()
    if p.size == 0:
        raise DomainError("empty probability vector")
    if np.any(~np.isfinite(p)):
        raise DomainError("probabilities must be finite")
    if np.any(p < 0.0):
        raise DomainError("probabilities must be nonnegative")
    total = float(np.sum(p))
    if total <= 0.0:
        raise DomainError("probability vector has no positive entries")
    if not normalize and abs(total - 1.0) > INPUT_SUM_TOL:
        raise DomainError(f"probabilities sum to {total!r}; pass normalize=True to rescale")
    p = p[p > 0.0] / total
    return Spectrum(np.sort(p)[::-1])


def uniform_spectrum(d: int) -> Spectrum:
    if d < 1:
        raise DomainError("dimension must be >= 1")
    return Spectrum(np.full(int(d), 1.0 / d))


def two_level_spectrum(p: float) -> Spectrum:
    """Spectrum (p, 1-p) of a two-level Schmidt pair, larger entry first."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError("two-level parameter must lie strictly inside (0, 1)")
    hi, lo = max(p, 1.0 - p), min(p, 1.0 - p)
    return Spectrum(np.array([hi, lo]))


def embezzler_spectrum(n: int) -> Spectrum:
    """Spectrum proportional to (1, 1/2, ..., 1/n): entries 1/(i*H_n)."""
    n = int(n)
    if n < 1:
        raise DomainError("embezzler size must be >= 1")
    inv = 1.0 / np.arange(1, n + 1, dtype=np.float64)
    h_n = math.fsum(inv)
    return Spectrum(inv / h_n)


def tensor(a: Spectrum, b: Spectrum) -> Spectrum:
    """Dense spectrum of the tensor product, sorted descending."""
    if a.rank * b.rank > TENSOR_GUARD:
        raise ResourceGuardError(
            f"dense tensor product of size {a.rank}*{b.rank} exceeds guard {TENSOR_GUARD}"
        )
    prod = np.outer(a.probs, b.probs).ravel()
    return Spectrum(np.sort(prod)[::-1])


def group(s: Spectrum, value_tol: float = 1e-12) -> GroupedSpectrum:
    """Merge adjacent equal values (relative tolerance) into groups.

    Masses are preserved exactly: each group's mass is the float sum of its
    member probabilities.  ``value_tol=0`` merges only bitwise-equal values.
    """
    if value_tol < 0.0:
        raise DomainError("value_tol must be >= 0")
    p = s.probs
    # new group wherever the drop from the previous value exceeds tolerance
    starts = np.empty(p.size, dtype=bool)
    starts[0] = True
    if p.size > 1:
        starts[1:] = (p[:-1] - p[1:]) > value_tol * p[:-1]
    idx = np.flatnonzero(starts)
    masses = np.add.reduceat(p, idx)
    counts = np.diff(np.append(idx, p.size))
    return GroupedSpectrum(
        log2_values=np.log2(p[idx]),
        log2_mults=np.log2(counts.astype(np.float64)),
        masses=masses,
    )


def exact_counts(g: GroupedSpectrum) -> np.ndarray | None:
    """Integer multiplicities as a float array, or None when not exact.

    Safe only while every multiplicity and the total stay far below 2^53;
    we gate at 2^40 so that round-tripping through log2 cannot misround.
    """
    if np.any(g.log2_mults > 40.0):
        return None
    counts = np.rint(np.exp2(g.log2_mults))
    if float(np.sum(counts)) > 2.0**40:
        return None
    return counts


def ungroup(g: GroupedSpectrum) -> Spectrum:
    """Expand groups back to a dense spectrum (small multiplicities only)."""
    counts = exact_counts(g)
    if counts is None:
        raise ResourceGuardError("multiplicities too large to expand exactly")
    total = int(np.sum(counts))
    if total > UNGROUP_GUARD:
        raise ResourceGuardError(f"dense expansion of {total} entries exceeds guard {UNGROUP_GUARD}")
    values = g.masses / counts
    return Spectrum(np.repeat(values, counts.astype(np.int64)))


def trace_distance_diag(a: Spectrum, b: Spectrum) -> float:
    """l1 distance between two spectra, zero-padding the shorter one."""
    n = max(a.rank, b.rank)
    pa = np.zeros(n)
    pb = np.zeros(n)
    pa[: a.rank] = a.probs
    pb[: b.rank] = b.probs
    return float(np.sum(np.abs(pa - pb)))


# ---------------------------------------------------------------------------
# State specs: a small grammar for naming states on the command line.
#
#   uniform:<d>       maximally entangled rank d
#   twolevel:<p>      (p, 1-p)
#   embezzler:<n>     1/(i*H_n), i = 1..n
#   list:<p1>,<p2>,.. explicit probabilities
#   file:<path>       JSON array of probabilities
#   power:<inner>^<n> n-fold tensor power of a non-power spec (grouped result)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Uniform:
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise SpecParseError(f"uniform dimension must be >= 1, got {self.d}")


@dataclass(frozen=True)
class TwoLevel:
    p: float

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise SpecParseError(f"twolevel parameter must lie strictly inside (0, 1), got {self.p}")


@dataclass(frozen=True)
class Embezzler:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise SpecParseError(f"embezzler size must be >= 1, got {self.n}")


@dataclass(frozen=True)
class Explicit:
    probs: tuple[float, ...]

    def __post_init__(self):
        if not self.probs:
            raise SpecParseError("explicit spec needs at least one probability")


@dataclass(frozen=True)
class Power:
    base: "StateSpec"
    n: int

    def __post_init__(self):
        if isinstance(self.base, Power):
            raise SpecParseError("nested power specs are not supported")
        if self.n < 1:
            raise SpecParseError(f"power exponent must be >= 1, got {self.n}")


StateSpec = Uniform | TwoLevel | Embezzler | Explicit | Power


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpecParseError(f"bad integer {text!r} in {what}") from None


def _parse_float(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise SpecParseError(f"bad number {text!r} in {what}") from None


def parse_state_spec(text: str) -> StateSpec:
    """Parse a state-spec string; raises SpecParseError on bad syntax."""
    text = text.strip()
    if not text:
        raise SpecParseError("empty state spec")
    if text.startswith("power:"):
        body = text[len("power:"):]
        inner_text, sep, n_text = body.rpartition("^")
        if not sep:
            raise SpecParseError("power spec must look like power:<inner>^<n>")
        inner = parse_state_spec(inner_text)
        return Power(inner, _parse_int(n_text, "power exponent"))
    kind, sep, arg = text.partition(":")
    if not sep:
        raise SpecParseError(f"state spec {text!r} has no ':'")
    if kind == "uniform":
        return Uniform(_parse_int(arg, "uniform dimension"))
    if kind == "twolevel":
        return TwoLevel(_parse_float(arg, "twolevel parameter"))
    if kind == "embezzler":
        return Embezzler(_parse_int(arg, "embezzler size"))
    if kind == "list":
        parts = [x for x in arg.split(",") if x.strip()]
        if not parts:
            raise SpecParseError("list spec needs at least one probability")
        return Explicit(tuple(_parse_float(x, "list entry") for x in parts))
    if kind == "file":
        path = Path(arg)
        try:
            payload = json.loads(path.read_text())
        except OSError as exc:
            raise SpecParseError(f"cannot read {arg!r}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"bad JSON in {arg!r}: {exc}") from None
        if not isinstance(payload, list) or not all(isinstance(x, (int, float)) for x in payload):
            raise SpecParseError(f"{arg!r} must contain a JSON array of numbers")
        return Explicit(tuple(float(x) for x in payload))
    raise SpecParseError(f"unknown state spec kind {kind!r}")


def realize(spec: StateSpec) -> Spectrum | GroupedSpectrum:
    """Instantiate a spec; Power specs come back grouped, all others dense."""
    match spec:
        case Uniform(d):
            return uniform_spectrum(d)
        case TwoLevel(p):
            return two_level_spectrum(p)
        case Embezzler(n):
            return embezzler_spectrum(n)
        case Explicit(probs):
            return spectrum_from_probs(probs)
        case Power(base, n):
            from .tensor_power import power_grouped_spectrum

            inner = realize(base)
            assert isinstance(inner, Spectrum)
            return power_grouped_spectrum(inner, n)
    raise DomainError(f"unknown state spec {spec!r}")
