"""Dense density-matrix toolkit.

Subsystems are ordered row-major: the leftmost factor varies slowest, as in
``numpy.kron``. Subsystem indices are zero-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSubsystemIndex,
    DimensionMismatch,
    EigensolverFailure,
    NotHermitian,
    NotPositive,
    NotUnitTrace,
    ProjectorsNotResolution,
    WrongDims,
)
from .majorization import canonicalize, shannon_entropy

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
#: eigenvalues down to this are rounded to zero; below it the matrix is rejected
NEG_EIG_TOL = 1e-9
#: degeneracy threshold, relative to the largest eigenvalue
DEG_TOL = 1e-9
#: eigenvalue threshold used for supports
SUPPORT_TOL = 1e-9
NORM_TOL = 1e-12


def _dims(dims: Iterable[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise WrongDims(f"bad subsystem dimensions {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A density matrix together with its subsystem dimensions.

    Construct through :func:`validate` when the input is untrusted; the
    constructor only checks shapes.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        dims = _dims(self.dims)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise WrongDims(f"matrix of shape {m.shape} is not square")
        if int(np.prod(dims)) != m.shape[0]:
            raise WrongDims(f"dims {dims} do not multiply to side {m.shape[0]}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def nparties(self) -> int:
        return len(self.dims)

    def spectrum(self) -> np.ndarray:
        return spectral(self).eigenvalues

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class PureState:
    vector: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        v = np.array(self.vector, dtype=complex).ravel()
        dims = _dims(self.dims)
        if int(np.prod(dims)) != v.size:
            raise WrongDims(f"dims {dims} do not multiply to length {v.size}")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector has norm {norm!r}")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def normalized(cls, vector, dims) -> "PureState":
        v = np.asarray(vector, dtype=complex).ravel()
        return cls(v / np.linalg.norm(v), dims)

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.vector, self.vector.conj()), self.dims)

    def marginal(self, party: int) -> DensityMatrix:
        """Reduced state of one party, computed without forming the full projector."""
        _check_index(party, len(self.dims))
        t = np.moveaxis(self.vector.reshape(self.dims), party, 0).reshape(self.dims[party], -1)
        return DensityMatrix(t @ t.conj().T, (self.dims[party],))

    def marginals(self) -> list[DensityMatrix]:
        return [self.marginal(a) for a in range(len(self.dims))]

    def __repr__(self):
        return f"PureState(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class SpectralDecomp:
    """Descending eigen-decomposition with degeneracy clusters.

    ``blocks`` holds one index array per cluster of (numerically) equal
    eigenvalues, in descending order of eigenvalue.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    blocks: tuple[np.ndarray, ...] = field(default=())

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def projectors(self) -> list[np.ndarray]:
        """Spectral projectors onto each distinct-eigenvalue cluster."""
        out = []
        for idx in self.blocks:
            v = self.eigenvectors[:, idx]
            out.append(v @ v.conj().T)
        return out


def _check_index(i: int, n: int) -> None:
    if not isinstance(i, (int, np.integer)) or not 0 <= i < n:
        raise BadSubsystemIndex(f"subsystem index {i!r} out of range for {n} parties")


def validate(matrix, dims: Sequence[int] | None = None) -> DensityMatrix:
    """Check that ``matrix`` is a density matrix and wrap it.

    Raises ``NotHermitian``, ``NotUnitTrace`` or ``NotPositive``.
    """
    m = np.asarray(matrix, dtype=complex)
    if dims is None:
        dims = (m.shape[0],)
    rho = DensityMatrix(m, tuple(dims))
    m = rho.matrix
    if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
        raise NotHermitian("matrix is not Hermitian")
    tr = np.trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotUnitTrace(f"trace is {tr.real:.12g}")
    lo = np.linalg.eigvalsh((m + m.conj().T) / 2)[0]
    if lo < -NEG_EIG_TOL:
        raise NotPositive(f"eigenvalue {lo:.3g} is negative")
    return rho


def _eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        w, v = np.linalg.eigh((m + m.conj().T) / 2)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    return w[::-1], v[:, ::-1]


def degeneracy_blocks(values: np.ndarray, tol: float = DEG_TOL) -> tuple[np.ndarray, ...]:
    """Group a descending sequence into runs of equal values (relative ``tol``)."""
    values = np.asarray(values)
    if values.size == 0:
        return ()
    scale = max(abs(values[0]), 1e-300)
    cuts = np.flatnonzero(np.abs(np.diff(values)) >= tol * scale) + 1
    return tuple(np.split(np.arange(values.size), cuts))


def spectral(rho: DensityMatrix) -> SpectralDecomp:
    w, v = _eigh(rho.matrix)
    w = np.where(w < 0, 0.0, w)
    lam = canonicalize(w)
    return SpectralDecomp(lam, v, degeneracy_blocks(lam))


def spectrum(rho: DensityMatrix) -> np.ndarray:
    """Eigenvalues of ``rho`` as a canonical probability vector."""
    return spectral(rho).eigenvalues


def tensor(states: Sequence[DensityMatrix]) -> DensityMatrix:
    states = list(states)
    m = reduce(np.kron, [s.matrix for s in states])
    dims = sum((s.dims for s in states), ())
    return DensityMatrix(m, dims)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the subsystems in ``keep`` (returned in ascending order)."""
    n = rho.nparties
    keep = sorted(set(keep))
    if not keep:
        raise BadSubsystemIndex("keep must name at least one subsystem")
    for k in keep:
        _check_index(k, n)
    drop = [i for i in range(n) if i not in keep]
    t = rho.matrix.reshape(rho.dims + rho.dims)
    perm = keep + drop + [n + i for i in keep] + [n + i for i in drop]
    t = t.transpose(perm)
    dk = int(np.prod([rho.dims[i] for i in keep]))
    dd = int(np.prod([rho.dims[i] for i in drop])) if drop else 1
    t = t.reshape(dk, dd, dk, dd)
    return DensityMatrix(np.einsum("ijkj->ik", t), tuple(rho.dims[i] for i in keep))


def marginals(rho: DensityMatrix) -> list[DensityMatrix]:
    return [partial_trace(rho, [a]) for a in range(rho.nparties)]


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy in bits."""
    return shannon_entropy(spectrum(rho))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Quantum relative entropy ``S(rho || sigma)`` in bits.

    Returns ``inf`` when the support of ``rho`` is not inside that of ``sigma``.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    p, u = _eigh(rho.matrix)
    q, v = _eigh(sigma.matrix)
    p = np.where(p > SUPPORT_TOL, p, 0.0)
    overlap = np.abs(u.conj().T @ v) ** 2  # overlap[i, j] = |<u_i|v_j>|^2
    in_supp = q > SUPPORT_TOL
    leak = p @ overlap[:, ~in_supp].sum(axis=1)
    if leak > SUPPORT_TOL:
        return float("inf")
    logq = np.zeros_like(q)
    logq[in_supp] = np.log2(q[in_supp])
    nz = p > 0
    s_rho = float(np.sum(p[nz] * np.log2(p[nz])))
    cross = float(p @ overlap @ logq)
    return max(s_rho - cross, 0.0)


def embed(op: np.ndarray, party: int, dims: Sequence[int]) -> np.ndarray:
    """``I ⊗ ... ⊗ op ⊗ ... ⊗ I`` with ``op`` on ``party``."""
    dims = tuple(dims)
    _check_index(party, len(dims))
    before = int(np.prod(dims[:party]))
    after = int(np.prod(dims[party + 1:]))
    return np.kron(np.kron(np.eye(before), op), np.eye(after))


def pinch(rho: DensityMatrix, projectors: Sequence[np.ndarray], party: int) -> DensityMatrix:
    """Apply ``rho -> sum_k P_k rho P_k`` with projectors acting on one party."""
    _check_index(party, rho.nparties)
    d = rho.dims[party]
    projectors = [np.asarray(p, dtype=complex) for p in projectors]
    if any(p.shape != (d, d) for p in projectors):
        raise ProjectorsNotResolution(f"projectors must be {d}x{d}")
    if np.max(np.abs(sum(projectors) - np.eye(d))) > 1e-9:
        raise ProjectorsNotResolution("projectors do not sum to the identity")
    for p in projectors:
        if np.max(np.abs(p @ p - p)) > 1e-9 or np.max(np.abs(p - p.conj().T)) > 1e-9:
            raise ProjectorsNotResolution("operator is not an orthogonal projector")
    out = np.zeros_like(rho.matrix)
    for p in projectors:
        big = embed(p, party, rho.dims)
        out += big @ rho.matrix @ big
    return DensityMatrix(out, rho.dims)


def pinch_marginal_bases(rho: DensityMatrix) -> DensityMatrix:
    """Pinch every party by the spectral projectors of its own marginal."""
    out = rho
    for a, m in enumerate(marginals(rho)):
        out = pinch(out, spectral(m).projectors(), a)
    return out


def partial_transpose(rho: DensityMatrix) -> np.ndarray:
    """Transpose on the second qubit of a two-qubit state."""
    if rho.dims != (2, 2):
        raise WrongDims(f"partial transpose needs dims (2, 2), got {rho.dims}")
    t = rho.matrix.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1)
    return t.reshape(4, 4)


def is_ppt(rho: DensityMatrix, tol: float = 1e-10) -> bool:
    return bool(np.linalg.eigvalsh(partial_transpose(rho))[0] >= -tol)


def ket(*indices: int, dims: Sequence[int] | None = None) -> np.ndarray:
    """Computational basis vector ``|i j k ...>``."""
    dims = tuple(dims) if dims is not None else (2,) * len(indices)
    v = np.zeros(int(np.prod(dims)), dtype=complex)
    v[np.ravel_multi_index(indices, dims)] = 1.0
    return v


def bell_state() -> PureState:
    return PureState.normalized(ket(0, 0) + ket(1, 1), (2, 2))


def diag_state(probs: Sequence[float], dims: Sequence[int] | None = None) -> DensityMatrix:
    probs = np.asarray(probs, dtype=float)
    return DensityMatrix(np.diag(probs).astype(complex), tuple(dims) if dims else (probs.size,))


def permute_subsystems(rho: DensityMatrix, perm: Sequence[int]) -> DensityMatrix:
    """Reorder subsystems: subsystem ``i`` of the result is subsystem ``perm[i]`` of ``rho``."""
    perm = [int(p) for p in perm]
    n = rho.nparties
    if sorted(perm) != list(range(n)):
        raise BadSubsystemIndex(f"{perm} is not a permutation of {n} subsystems")
    t = rho.matrix.reshape(rho.dims + rho.dims).transpose(perm + [n + p for p in perm])
    dims = tuple(rho.dims[p] for p in perm)
    return DensityMatrix(t.reshape(rho.dim, rho.dim), dims)
