"""Majorization order on Schmidt spectra and what it says about LOCC reachability.

lam is majorized by mu when every prefix sum of the descending vector lam is
at most the corresponding prefix sum of mu.  A pure bipartite state with
spectrum lam converts exactly (no communication charged here, only
feasibility) into one with spectrum mu under local operations and classical
communication iff lam is majorized by mu.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .spectrum import Spectrum

PREFIX_TOL = 1e-12


def majorized_by(lam: Spectrum, mu: Spectrum, tol: float = PREFIX_TOL) -> bool:
    """True when every prefix sum of lam is <= the matching prefix sum of mu.

    The shorter spectrum is zero-padded.  Comparisons allow a slack of
    ``tol`` so that float noise in spectra summing to 1 cannot flip a
    mathematically tight prefix.
    """
    if tol < 0:
        raise DomainError("tolerance must be nonnegative")
    d = max(lam.rank, mu.rank)
    a = np.zeros(d)
    b = np.zeros(d)
    a[: lam.rank] = lam.probs
    b[: mu.rank] = mu.probs
    return bool(np.all(np.cumsum(a) <= np.cumsum(b) + tol))


def locc_feasible(source: Spectrum, target: Spectrum, tol: float = PREFIX_TOL) -> bool:
    """Deterministic LOCC convertibility of |source> into |target>."""
    return majorized_by(source, target, tol=tol)


def zero_comm_max_entangled(rank_from: int, rank_to: int) -> bool:
    """Whether a maximally entangled state of rank_from yields one of rank_to
    with no communication at all: possible iff rank_to divides rank_from
    (discard subsystems of the right dimension)."""
    if rank_from < 1 or rank_to < 1:
        raise DomainError("ranks must be positive integers")
    return rank_from % rank_to == 0
