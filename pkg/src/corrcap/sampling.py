"""Reproducible random states for the property suites.

Randomness comes from :class:`SeededStream`, a (master seed, path) pair that
maps to ``numpy.random.SeedSequence(master_seed, spawn_key=path)`` feeding a
PCG64 generator. A stream is a plain value: the same pair always yields the
same draws, whatever the thread or the order in which trials run. Trial ``i``
of a suite uses ``stream.child(i)``.

Every generator also accepts a ready ``numpy.random.Generator`` when the
caller wants to draw several objects from one sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import BadRank, TooLarge
from .majorization import canonicalize
from .qstate import DensityMatrix, PureState, partial_trace

MAX_DIM = 2 ** 20


@dataclass(frozen=True)
class SeededStream:
    master_seed: int
    path: tuple[int, ...] = ()

    def child(self, *index: int) -> "SeededStream":
        return SeededStream(self.master_seed, self.path + tuple(int(i) for i in index))

    def rng(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=self.path)
        return np.random.Generator(np.random.PCG64(seq))


Stream = Union[SeededStream, np.random.Generator]


def _rng(stream: Stream) -> np.random.Generator:
    if isinstance(stream, np.random.Generator):
        return stream
    return stream.rng()


def _gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_pure(dims: Sequence[int], stream: Stream) -> PureState:
    dims = tuple(dims)
    d = int(np.prod(dims))
    if d > MAX_DIM:
        raise TooLarge(f"total dimension {d} exceeds {MAX_DIM}")
    return PureState.normalized(_gaussian(_rng(stream), d), dims)


def haar_unitary(d: int, stream: Stream) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix with phase correction."""
    q, r = np.linalg.qr(_gaussian(_rng(stream), (d, d)))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_density(dim: int, rank: int, stream: Stream, dims: Sequence[int] | None = None) -> DensityMatrix:
    """Induced-measure state: trace out a ``rank``-dimensional ancilla of a Haar pure state."""
    if not 1 <= rank <= dim:
        raise BadRank(f"rank {rank} not in [1, {dim}]")
    psi = haar_pure((dim, rank), stream)
    rho = partial_trace(psi.density(), [0])
    return DensityMatrix(rho.matrix, tuple(dims) if dims is not None else (dim,))


def dirichlet_weights(n: int, rng: np.random.Generator) -> np.ndarray:
    w = rng.standard_exponential(n)
    return w / w.sum()


def random_separable(dims: Sequence[int], terms: int, stream: Stream) -> DensityMatrix:
    """Mixture of ``terms`` Haar-random product pure states with flat Dirichlet weights."""
    if terms < 1:
        raise ValueError("terms must be positive")
    rng = _rng(stream)
    dims = tuple(dims)
    w = dirichlet_weights(terms, rng)
    d = int(np.prod(dims))
    m = np.zeros((d, d), dtype=complex)
    for wk in w:
        v = np.ones(1, dtype=complex)
        for da in dims:
            u = _gaussian(rng, da)
            v = np.kron(v, u / np.linalg.norm(u))
        m += wk * np.outer(v, v.conj())
    return DensityMatrix(m, dims)


def random_classical_joint(marginal_spectra, stream: Stream, iterations: int | None = None) -> np.ndarray:
    """Random joint pmf with the given classical marginals.

    Starts from the product distribution and applies rectangle moves: pick two
    parties, two index values for each and a fixed setting of the others, then
    add ``delta`` on one diagonal of the 2x2 rectangle and subtract it on the
    other. Every move leaves all marginals unchanged.
    """
    rng = _rng(stream)
    margs = [np.asarray(canonicalize(m), dtype=float) for m in marginal_spectra]
    p = margs[0]
    for m in margs[1:]:
        p = np.multiply.outer(p, m)
    p = np.array(p, dtype=float)
    n = p.ndim
    if iterations is None:
        iterations = 50 * p.size
    if n < 2:
        return p
    shape = p.shape
    for _ in range(iterations):
        a, b = rng.choice(n, size=2, replace=False)
        if shape[a] < 2 or shape[b] < 2:
            continue
        i, i2 = rng.choice(shape[a], size=2, replace=False)
        j, j2 = rng.choice(shape[b], size=2, replace=False)
        idx = [int(rng.integers(s)) for s in shape]

        def cell(x, y):
            c = list(idx)
            c[a], c[b] = x, y
            return tuple(c)

        plus = (cell(i, j), cell(i2, j2))
        minus = (cell(i, j2), cell(i2, j))
        lo = -min(p[plus[0]], p[plus[1]])
        hi = min(p[minus[0]], p[minus[1]])
        delta = rng.uniform(lo, hi)
        for c in plus:
            p[c] = max(p[c] + delta, 0.0)
        for c in minus:
            p[c] = max(p[c] - delta, 0.0)
    return p
