"""Brute-force lattice bounds on a rational grid, in exact integer arithmetic.

A grid point is a non-increasing tuple of non-negative integers summing to
the denominator ``q``, i.e. the distribution ``v / q``. Bounds are found by
scanning the whole grid; nothing here relies on prefix-sum formulas for the
meet or join.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def sorted_grid(q: int, d: int) -> np.ndarray:
    """All non-increasing integer vectors of length ``d`` summing to ``q``."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, cap: int):
        if len(prefix) == d:
            if remaining == 0:
                out.append(prefix)
            return
        slots = d - len(prefix)
        for x in range(min(cap, remaining), -1, -1):
            if x * slots < remaining:
                break
            rec(prefix + (x,), remaining - x, x)

    rec((), q, q)
    grid = np.array(out, dtype=np.int64)
    grid.setflags(write=False)
    return grid


def _cum(v: np.ndarray) -> np.ndarray:
    return np.cumsum(v, axis=-1)


def _pick(candidates: np.ndarray, cand_cum: np.ndarray, cum: np.ndarray, want_max: bool) -> np.ndarray | None:
    """Candidate whose prefix sums dominate (or are dominated by) every row of ``cum``."""
    for c, pc in zip(candidates, cand_cum):
        ok = np.all(cum <= pc) if want_max else np.all(cum >= pc)
        if ok:
            return c
    return None


def greatest_lower_bound(vectors: np.ndarray, grid: np.ndarray) -> np.ndarray | None:
    """Grid point majorized by every input that majorizes every other such point."""
    pv = _cum(np.asarray(vectors))
    pg = _cum(grid)
    lower = np.all(pg[:, None, :] <= pv[None, :, :], axis=(1, 2))
    # the answer must have the pointwise-largest prefix sums among the lower bounds
    cand = grid[lower]
    cc = pg[lower]
    top = cc.max(axis=0)
    hit = np.all(cc == top, axis=1)
    return _pick(cand[hit], cc[hit], cc, want_max=True) if hit.any() else None


def least_upper_bound(vectors: np.ndarray, grid: np.ndarray) -> np.ndarray | None:
    pv = _cum(np.asarray(vectors))
    pg = _cum(grid)
    upper = np.all(pg[:, None, :] >= pv[None, :, :], axis=(1, 2))
    cand = grid[upper]
    cc = pg[upper]
    bottom = cc.min(axis=0)
    hit = np.all(cc == bottom, axis=1)
    return _pick(cand[hit], cc[hit], cc, want_max=False) if hit.any() else None
