"""Majorization order on probability spectra and its lattice operations.

A probability spectrum ("ProbVector") is a read-only 1-D float array with
non-negative entries sorted in non-increasing order and summing to one.
Vectors of different length are compared after padding with trailing zeros.
"""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptySet, NotADistribution

#: tolerance for the validity of a canonical vector
EPS_TOL = 1e-12
#: tolerance applied to prefix-sum comparisons
PREFIX_TOL = 1e-12
#: slack accepted on raw input before canonicalization
INPUT_TOL = 1e-9


class MajOrder(enum.Enum):
    MAJORIZED_BY = "MAJORIZED_BY"
    MAJORIZES = "MAJORIZES"
    EQUAL = "EQUAL"
    INCOMPARABLE = "INCOMPARABLE"

    @property
    def is_below(self) -> bool:
        """True for ``MAJORIZED_BY`` or ``EQUAL``."""
        return self in (MajOrder.MAJORIZED_BY, MajOrder.EQUAL)

    @property
    def is_above(self) -> bool:
        return self in (MajOrder.MAJORIZES, MajOrder.EQUAL)


def _freeze(v: np.ndarray) -> np.ndarray:
    v.setflags(write=False)
    return v


def canonicalize(raw: Iterable[float], tol: float = INPUT_TOL) -> np.ndarray:
    """Return ``raw`` as a canonical probability spectrum.

    Entries are sorted in descending order, small negatives (down to ``-tol``)
    are clipped to zero and the result is rescaled to an exact unit sum.

    Raises
    ------
    NotADistribution
        If an entry is below ``-tol`` or the sum is off by more than ``tol``.
    """
    v = np.array(list(raw) if not isinstance(raw, np.ndarray) else raw, dtype=float).ravel()
    if v.size == 0:
        raise NotADistribution("empty probability vector")
    if not np.all(np.isfinite(v)):
        raise NotADistribution("non-finite entry in probability vector")
    if v.min() < -tol:
        raise NotADistribution(f"negative entry {v.min():.3g}")
    total = v.sum()
    if abs(total - 1.0) > tol:
        raise NotADistribution(f"entries sum to {total!r}, not 1")
    v = np.clip(v, 0.0, None)
    v = -np.sort(-v)
    v /= v.sum()
    return _freeze(v)


def pad(v: Sequence[float], d: int) -> np.ndarray:
    """Zero-pad ``v`` to length ``d``."""
    v = np.asarray(v, dtype=float)
    if v.size >= d:
        return v.copy()
    return np.concatenate([v, np.zeros(d - v.size)])


def prefix_sums(v: Sequence[float], d: int | None = None) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return np.cumsum(pad(v, d if d is not None else v.size))


def trim(v: Sequence[float], tol: float = 0.0) -> np.ndarray:
    """Drop trailing entries not exceeding ``tol`` (keeps at least one)."""
    v = np.asarray(v, dtype=float)
    nz = np.flatnonzero(v > tol)
    n = int(nz[-1]) + 1 if nz.size else 1
    return v[:n]


def compare(a: Sequence[float], b: Sequence[float], tol: float = PREFIX_TOL) -> MajOrder:
    """Decide the majorization relation between two spectra.

    ``MAJORIZED_BY`` means every prefix sum of ``a`` is at most the matching
    prefix sum of ``b`` (so ``a`` is the more disordered one).
    """
    a = canonicalize(a)
    b = canonicalize(b)
    d = max(a.size, b.size)
    pa, pb = prefix_sums(a, d), prefix_sums(b, d)
    below = bool(np.all(pa <= pb + tol))
    above = bool(np.all(pb <= pa + tol))
    if below and above:
        return MajOrder.EQUAL
    if below:
        return MajOrder.MAJORIZED_BY
    if above:
        return MajOrder.MAJORIZES
    return MajOrder.INCOMPARABLE


def majorized_by(a: Sequence[float], b: Sequence[float], tol: float = PREFIX_TOL) -> bool:
    """Shorthand for ``a ≺ b`` (equality included)."""
    return compare(a, b, tol).is_below


def _stack_prefixes(vectors) -> np.ndarray:
    vs = [canonicalize(v) for v in vectors]
    if not vs:
        raise EmptySet("lattice operation on an empty set")
    d = max(v.size for v in vs)
    return np.vstack([prefix_sums(v, d) for v in vs])


def _from_prefix(mu: np.ndarray) -> np.ndarray:
    mu = np.minimum(mu, 1.0)
    mu[-1] = 1.0
    return canonicalize(np.diff(np.concatenate([[0.0], mu])))


def infimum(vectors: Iterable[Sequence[float]]) -> np.ndarray:
    """Greatest lower bound of a set of spectra under majorization.

    The prefix sums of the result are the pointwise minimum of the prefix sums
    of the inputs; a minimum of concave sequences is concave, so the successive
    differences are already sorted.
    """
    prefixes = _stack_prefixes(list(vectors))
    return _from_prefix(prefixes.min(axis=0))


def upper_hull(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Upper convex hull of points with strictly increasing ``x`` (monotone chain)."""
    hx: list[float] = []
    hy: list[float] = []
    for xi, yi in zip(x, y):
        while len(hx) >= 2:
            # drop the middle point unless it lies strictly above the chord
            cross = (hx[-1] - hx[-2]) * (yi - hy[-2]) - (hy[-1] - hy[-2]) * (xi - hx[-2])
            if cross >= 0:
                hx.pop()
                hy.pop()
            else:
                break
        hx.append(float(xi))
        hy.append(float(yi))
    return np.array(hx), np.array(hy)


def least_concave_majorant(values: Sequence[float]) -> np.ndarray:
    """Smallest concave sequence over ``0..n`` dominating ``(0, values...)``.

    Returns the majorant evaluated at ``1..n``.
    """
    y = np.concatenate([[0.0], np.asarray(values, dtype=float)])
    x = np.arange(y.size, dtype=float)
    hx, hy = upper_hull(x, y)
    return np.interp(x, hx, hy)[1:]


def supremum(vectors: Iterable[Sequence[float]]) -> np.ndarray:
    """Least upper bound of a set of spectra under majorization.

    The pointwise maximum of the prefix sums need not be concave; its least
    concave majorant is, and is the smallest admissible prefix-sum sequence
    above every input.
    """
    prefixes = _stack_prefixes(list(vectors))
    return _from_prefix(least_concave_majorant(prefixes.max(axis=0)))


def shannon_entropy(v: Sequence[float]) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    p = np.asarray(v, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p))) + 0.0
