"""Closed-form optimal composites of two qubits.

For marginal spectra ``(p_a, 1 - p_a)`` and ``(p_b, 1 - p_b)`` with
``p_a >= p_b`` the least disordered classically correlated, separable and
entangled composites have spectra

    classical:  (p_b, max(p_a - p_b, 1 - p_a), min(p_a - p_b, 1 - p_a), 0)
    separable:  (p_b, 1 - p_b, 0, 0)
    entangled:  (1 + p_b - p_a, p_a - p_b, 0, 0)

and are majorization-ordered in that sequence. States are returned in the
caller's labelling; when ``p_b > p_a`` the construction runs with the labels
swapped and the two qubits are exchanged afterwards.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .composite import correlation_information
from .errors import TooLarge
from .majorization import canonicalize
from .qstate import DensityMatrix, PureState, ket, marginals, permute_subsystems, spectral

P_TOL = 1e-12
FIG1_STEPS = 201


@dataclass(frozen=True)
class QubitPair:
    """Larger eigenvalues of the two marginals, each in ``[1/2, 1]``."""

    p_a: float
    p_b: float

    def __post_init__(self):
        for name in ("p_a", "p_b"):
            p = float(getattr(self, name))
            if not 0.5 - P_TOL <= p <= 1.0 + P_TOL:
                raise ValueError(f"{name}={p} outside [0.5, 1]")
            object.__setattr__(self, name, min(max(p, 0.5), 1.0))

    @property
    def swapped(self) -> bool:
        return self.p_b > self.p_a

    def canonical(self) -> tuple[float, float]:
        """``(larger, smaller)`` of the two parameters."""
        return (self.p_b, self.p_a) if self.swapped else (self.p_a, self.p_b)

    @classmethod
    def from_state(cls, rho: DensityMatrix) -> "QubitPair":
        pa, pb = (spectral(m).eigenvalues[0] for m in marginals(rho))
        return cls(pa, pb)


def _relabel(matrix: np.ndarray, pair: QubitPair) -> DensityMatrix:
    rho = DensityMatrix(matrix, (2, 2))
    return permute_subsystems(rho, [1, 0]) if pair.swapped else rho


def theta(pair: QubitPair) -> float:
    """Angle of the tilted local vector in the separable optimum."""
    pa, pb = pair.canonical()
    den = pb * (1 - pb)
    c2 = 1.0 if den == 0 else min(pa * (1 - pa) / den, 1.0)
    return math.acos(math.sqrt(c2))


def sigma_separable(pair: QubitPair) -> DensityMatrix:
    """``p_b |theta 0><theta 0| + (1 - p_b) |11><11|``."""
    _, pb = pair.canonical()
    t = theta(pair)
    v = (math.cos(t) * ket(0, 0) + math.sin(t) * ket(1, 0))
    m = pb * np.outer(v, v.conj()) + (1 - pb) * np.outer(ket(1, 1), ket(1, 1))
    return _relabel(m, pair)


def sigma_entangled(pair: QubitPair) -> DensityMatrix:
    pa, pb = pair.canonical()
    off = math.sqrt(pb * (1 - pa))
    m = np.array([
        [pb, 0, 0, off],
        [0, pa - pb, 0, 0],
        [0, 0, 0, 0],
        [off, 0, 0, 1 - pa],
    ], dtype=complex)
    return _relabel(m, pair)


def sigma_classical(pair: QubitPair) -> DensityMatrix:
    """The entangled optimum with its coherence removed."""
    pa, pb = pair.canonical()
    return _relabel(np.diag([pb, pa - pb, 0.0, 1 - pa]).astype(complex), pair)


def lambda_separable(pair: QubitPair) -> np.ndarray:
    _, pb = pair.canonical()
    return canonicalize([pb, 1 - pb, 0, 0])


def lambda_entangled(pair: QubitPair) -> np.ndarray:
    pa, pb = pair.canonical()
    return canonicalize([1 + pb - pa, pa - pb, 0, 0])


def lambda_classical(pair: QubitPair) -> np.ndarray:
    pa, pb = pair.canonical()
    return canonicalize([pb, max(pa - pb, 1 - pa), min(pa - pb, 1 - pa), 0])


def hierarchy(pair: QubitPair) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Optimal spectra ``(classical, separable, entangled)``, least to most ordered."""
    return lambda_classical(pair), lambda_separable(pair), lambda_entangled(pair)


def fig1_row(p_a: float, p_b: float) -> tuple[float, float, float, float]:
    pair = QubitPair(p_a, p_b)
    return (
        p_b,
        correlation_information(sigma_classical(pair)),
        correlation_information(sigma_separable(pair)),
        correlation_information(sigma_entangled(pair)),
    )


def fig1_curve(p_a: float = 0.65, steps: int = FIG1_STEPS, parallel: bool = False) -> np.ndarray:
    """Maximal correlation information versus ``p_b`` on a uniform grid over [1/2, 1].

    Columns: ``p_b, C_classical, C_separable, C_entangled`` (bits).
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    QubitPair(p_a, 0.5)  # range check on p_a
    grid = np.linspace(0.5, 1.0, steps)
    if parallel:
        with ThreadPoolExecutor() as pool:
            rows = list(pool.map(lambda pb: fig1_row(p_a, pb), grid))
    else:
        rows = [fig1_row(p_a, pb) for pb in grid]
    return np.array(rows)


def feline_state(n: int, spectrum) -> tuple[PureState, DensityMatrix]:
    """``sum_k sqrt(lam_k) |k k ... k>`` on ``n`` qudits and its dephased version."""
    lam = canonicalize(spectrum)
    d = lam.size
    if n < 2:
        raise ValueError("feline states need at least two parties")
    if n * math.log2(max(d, 1)) > 20:
        raise TooLarge(f"{n} qudits of dimension {d} exceed 2^20 amplitudes")
    dims = (d,) * n
    vec = np.zeros(d ** n, dtype=complex)
    for k in range(d):
        vec[np.ravel_multi_index((k,) * n, dims)] = math.sqrt(lam[k])
    psi = PureState.normalized(vec, dims)
    dephased = DensityMatrix(np.diag(np.abs(vec) ** 2).astype(complex), dims)
    return psi, dephased


def to_marginals(sigma: DensityMatrix, rho_a: DensityMatrix, rho_b: DensityMatrix) -> DensityMatrix:
    """Rotate ``sigma`` locally so that its marginals become ``rho_a`` and ``rho_b``.

    Requires matching marginal spectra; each party's eigenbasis is mapped onto
    the eigenbasis of the requested marginal.
    """
    us = []
    for own, want in zip(marginals(sigma), (rho_a, rho_b)):
        us.append(spectral(want).eigenvectors @ spectral(own).eigenvectors.conj().T)
    u = np.kron(us[0], us[1])
    return DensityMatrix(u @ sigma.matrix @ u.conj().T, (2, 2))
