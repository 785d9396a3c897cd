"""Least-disordered separable composites and correlation information.

``build_optimal_separable`` takes a set of local states, finds the infimum
``Lambda`` of their spectra and realizes every local state as an ensemble
with the common weights ``Lambda``. Pairing the ensemble members index by
index gives a separable state whose spectrum is exactly ``Lambda`` and whose
product-vector ensemble is orthogonal. Nothing of this is assumed: the
guarantees are checked by the test suite and reported by ``analyze``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .ensemble import Ensemble, realize_ensemble
from .errors import BadPartition, DimensionMismatch
from .majorization import infimum, shannon_entropy
from .qstate import (
    DensityMatrix,
    is_ppt,
    marginals,
    partial_trace,
    permute_subsystems,
    pinch_marginal_bases,
    relative_entropy,
    spectral,
    spectrum,
    tensor,
    von_neumann_entropy,
)

PINCH_TOL = 1e-8
COMMUTATOR_TOL = 1e-8


@dataclass
class CompositeReport:
    spectrum: np.ndarray
    marginal_spectra: list
    correlation_bits: float
    is_classical: bool
    two_qubit_ppt: Optional[bool] = None
    gram_offdiag_max: Optional[float] = None
    extras: dict = field(default_factory=dict)


def build_optimal_separable(
    marginal_states: Sequence[DensityMatrix],
) -> tuple[DensityMatrix, Ensemble]:
    """Least disordered separable state with the given marginals.

    Returns the state and its ensemble of product vectors (weights equal to
    the infimum of the marginal spectra, zero weights dropped).
    """
    marginal_states = list(marginal_states)
    if len(marginal_states) < 2:
        raise ValueError("need at least two marginals")
    lam = infimum([spectrum(m) for m in marginal_states])
    local = [realize_ensemble(m, lam) for m in marginal_states]
    weights = local[0].weights
    for e in local[1:]:
        if e.weights.size != weights.size:
            raise RuntimeError("local ensembles disagree on the support of the infimum")
    vectors = np.array([
        reduce(np.kron, [e.vectors[alpha] for e in local]) for alpha in range(weights.size)
    ])
    ens = Ensemble(weights, vectors)
    dims = sum((m.dims for m in marginal_states), ())
    return DensityMatrix(ens.density(), dims), ens


def gram_matrix(ens: Ensemble) -> np.ndarray:
    """``G[a, b] = sqrt(w_a) <phi_a|phi_b> sqrt(w_b)``; isospectral with the ensemble's state."""
    r = np.sqrt(ens.weights)
    return (r[:, None] * (ens.vectors.conj() @ ens.vectors.T)) * r[None, :]


def offdiag_max(g: np.ndarray) -> float:
    if g.shape[0] < 2:
        return 0.0
    return float(np.max(np.abs(g - np.diag(np.diag(g)))))


def correlation_information(rho: DensityMatrix) -> float:
    """Sum of marginal entropies minus the global entropy, in bits."""
    return sum(von_neumann_entropy(m) for m in marginals(rho)) - von_neumann_entropy(rho)


def _check_partition(partition, n) -> list[list[int]]:
    blocks = [sorted(set(int(i) for i in b)) for b in partition]
    flat = sorted(i for b in blocks for i in b)
    if any(not b for b in blocks) or flat != list(range(n)):
        raise BadPartition(f"{partition} is not a partition of {n} subsystems")
    return blocks


def partition_correlation(rho: DensityMatrix, partition) -> tuple[list[float], float]:
    """Split ``C(rho)`` over a grouping of subsystems.

    Returns the correlation information of each reduced block and the
    residual relative entropy between ``rho`` and the product of the blocks;
    the block terms plus the residual add up to ``C(rho)``.
    """
    blocks = _check_partition(partition, rho.nparties)
    reduced = [partial_trace(rho, b) for b in blocks]
    terms = [correlation_information(r) if r.nparties > 1 else 0.0 for r in reduced]
    order = [i for b in blocks for i in b]
    product = permute_subsystems(tensor(reduced), np.argsort(order))
    return terms, relative_entropy(rho, product)


def max_separable_correlation(spectra) -> float:
    spectra = list(spectra)
    return sum(shannon_entropy(s) for s in spectra) - shannon_entropy(infimum(spectra))


def _conditional_family(rho: DensityMatrix, party: int) -> np.ndarray:
    """All operators ``<n| rho |m>`` on ``party`` for basis states of the rest."""
    d = rho.dims[party]
    t = rho.matrix.reshape(rho.dims + rho.dims)
    n = rho.nparties
    perm = [party] + [i for i in range(n) if i != party]
    t = t.transpose(perm + [n + i for i in perm]).reshape(d, -1, d, rho.dim // d)
    return t.transpose(1, 3, 0, 2).reshape(-1, d, d)


def _commuting(ops: np.ndarray, tol: float) -> bool:
    if ops.shape[0] < 2 or ops.shape[1] < 2:
        return True
    m = ops.shape[1]
    # weighted principal components span the same family with noise kept at its own scale
    _, s, vh = np.linalg.svd(ops.reshape(ops.shape[0], -1), full_matrices=False)
    comps = (s[:, None] * vh)[s > 1e-14].reshape(-1, m, m)
    for p, q in combinations(range(comps.shape[0]), 2):
        c = comps[p] @ comps[q] - comps[q] @ comps[p]
        if np.linalg.norm(c) > tol:
            return False
    return True


def is_classically_correlated(rho: DensityMatrix) -> bool:
    """Whether ``rho`` is diagonal in some product of marginal eigenbases.

    Marginal eigenbases are unique up to rotations inside degenerate
    eigenspaces. Inside those, a suitable basis exists iff the operators
    ``<n|rho|m>`` (taken over the other parties) restricted to the eigenspace
    commute with one another.
    """
    pinched = pinch_marginal_bases(rho)
    if np.linalg.norm(pinched.matrix - rho.matrix) > PINCH_TOL:
        return False
    for a, m in enumerate(marginals(rho)):
        dec = spectral(m)
        for idx in dec.blocks:
            if idx.size < 2:
                continue
            v = dec.eigenvectors[:, idx]
            family = v.conj().T @ _conditional_family(rho, a) @ v
            if not _commuting(family, COMMUTATOR_TOL):
                return False
    return True


def analyze(rho: DensityMatrix, ensemble: Ensemble | None = None) -> CompositeReport:
    if rho.nparties < 2:
        raise DimensionMismatch("a composite needs at least two subsystems")
    report = CompositeReport(
        spectrum=spectrum(rho),
        marginal_spectra=[spectrum(m) for m in marginals(rho)],
        correlation_bits=correlation_information(rho),
        is_classical=is_classically_correlated(rho),
    )
    if rho.dims == (2, 2):
        report.two_qubit_ppt = is_ppt(rho)
    if ensemble is not None:
        report.gram_offdiag_max = offdiag_max(gram_matrix(ensemble))
    return report
