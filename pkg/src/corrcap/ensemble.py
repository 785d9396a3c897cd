"""Realize a density matrix as an ensemble with prescribed weights.

For weights ``t`` majorized by the spectrum ``lam`` of ``rho`` there is a
real orthogonal ``U`` with ``diag(U diag(lam) U^T) = t``. It is built here
from at most ``d - 1`` plane rotations, and the ensemble vectors follow from
its rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotMajorized
from .majorization import canonicalize, compare, pad
from .qstate import DensityMatrix, spectral

DIAG_TOL = 1e-10
#: weights at or below this are rounding residue and get no vector
ZERO_WEIGHT = 1e-15
#: coordinates closer than this to their target count as matched
_MATCH_TOL = 1e-15


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Weighted unit vectors; only strictly positive weights are kept."""

    weights: np.ndarray
    vectors: np.ndarray  # one vector per row

    def density(self) -> np.ndarray:
        v = self.vectors
        return (v.T * self.weights) @ v.conj()

    def __len__(self):
        return self.weights.size


@dataclass(frozen=True, eq=False)
class SchurHorn:
    unitary: np.ndarray
    rotations: int


def schur_horn(lam, target) -> SchurHorn:
    """Orthogonal ``U`` with ``diag(U diag(lam) U^T) == target``.

    Both vectors are canonicalized and zero-padded to a common length ``d``.
    Each step takes the last index ``j`` whose diagonal value still exceeds
    its target and the first later index ``k`` that falls short, then rotates
    in the ``(j, k)`` plane to move the smaller of the two gaps to zero. The
    two entries stay inside their current range, the diagonal stays sorted,
    and at least one more index is matched per step.

    Raises
    ------
    NotMajorized
        If ``target`` is not majorized by ``lam``.
    """
    lam = canonicalize(lam)
    target = canonicalize(target)
    if not compare(target, lam).is_below:
        raise NotMajorized(f"{target} is not majorized by {lam}")
    d = max(lam.size, target.size)
    x = pad(lam, d)
    y = pad(target, d)
    u = np.eye(d)
    a = np.diag(x)
    steps = 0
    for _ in range(d - 1):
        diff = a.diagonal() - y
        over = np.flatnonzero(diff > _MATCH_TOL)
        if over.size == 0:
            break
        j = int(over[-1])
        under = np.flatnonzero(diff[j + 1:] < -_MATCH_TOL)
        if under.size == 0:
            break
        k = j + 1 + int(under[0])
        xj, xk = a[j, j], a[k, k]
        delta = min(xj - y[j], y[k] - xk)
        # new a[j, j] = c^2 xj + s^2 xk = xj - delta
        c2 = min(max((xj - delta - xk) / (xj - xk), 0.0), 1.0)
        c, s = np.sqrt(c2), np.sqrt(1.0 - c2)
        g = np.eye(d)
        g[j, j] = c
        g[j, k] = s
        g[k, j] = -s
        g[k, k] = c
        a = g @ a @ g.T
        u = g @ u
        steps += 1
    got = np.einsum("ij,j,ij->i", u, x, u)
    if np.max(np.abs(got - y)) > DIAG_TOL:
        raise NotMajorized(f"rotation chain left residual {np.max(np.abs(got - y)):.3g}")
    return SchurHorn(u, steps)


def schur_horn_unitary(lam, target) -> np.ndarray:
    return schur_horn(lam, target).unitary


def realize_ensemble(rho: DensityMatrix, target) -> Ensemble:
    """Ensemble for ``rho`` whose weights are ``target`` (zeros dropped).

    Vector ``alpha`` is ``target_alpha^{-1/2} sum_i U[alpha, i] lam_i^{1/2} e_i``
    in the eigenbasis ``e_i`` of ``rho``. Weights below ``ZERO_WEIGHT`` are
    dropped.
    """
    dec = spectral(rho)
    target = canonicalize(target)
    u = schur_horn_unitary(dec.eigenvalues, target)
    d = u.shape[0]
    n = rho.dim
    lam = pad(dec.eigenvalues, d)
    t = pad(target, d)
    keep = np.flatnonzero(t > ZERO_WEIGHT)
    # only the first n columns of U meet eigenvectors; the padded ones carry zero weight
    coeff = u[np.ix_(keep, np.arange(n))] * np.sqrt(lam[:n])
    vectors = coeff @ dec.eigenvectors.T
    # exact arithmetic gives norm sqrt(t); dividing by the computed norm keeps
    # tiny weights from amplifying rounding in the diagonal
    vectors /= np.linalg.norm(vectors, axis=1)[:, None]
    w = t[keep].copy()
    w.setflags(write=False)
    return Ensemble(w, vectors)
