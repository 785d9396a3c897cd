"""Entanglement monotones for pure multipartite states under local measurements.

``entropy_sum_minus_max`` is the sum of the marginal entropies less the
largest one. For all-qubit states it coincides with ``separable_capacity``,
the sum of marginal entropies less the entropy of the infimum of the
marginal spectra. Monotonicity is probed with single-round, two-outcome
local generalized measurements.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BadEffect, NotQubits
from .majorization import infimum, shannon_entropy
from .qstate import PureState, spectrum
from .sampling import SeededStream, haar_pure, haar_unitary

EQ_TOL = 1e-10
EFFECT_TOL = 1e-10
#: outcomes less likely than this are dropped
MIN_PROB = 1e-12


@dataclass
class MeasuredEnsemble:
    outcomes: list  # (probability, PureState)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.outcomes])

    def average(self, fn) -> float:
        return float(sum(p * fn(s) for p, s in self.outcomes))


def marginal_entropies(psi: PureState) -> np.ndarray:
    return np.array([shannon_entropy(spectrum(m)) for m in psi.marginals()])


def entropy_sum_minus_max(psi: PureState) -> float:
    """Sum of marginal entropies less the largest, in bits.

    Also evaluated as the smallest sum over all-but-one marginal; the two
    forms must agree.
    """
    if len(psi.dims) < 2:
        raise ValueError("need at least two subsystems")
    s = marginal_entropies(psi)
    f = float(s.sum() - s.max())
    alt = min(float(s.sum() - s[b]) for b in range(s.size))
    if abs(f - alt) > EQ_TOL:
        raise ArithmeticError(f"inconsistent evaluations {f} and {alt}")
    return f


def marginal_capacity(psi: PureState) -> float:
    """Sum of marginal entropies less the entropy of the infimum of the marginal spectra."""
    spectra = [spectrum(m) for m in psi.marginals()]
    return sum(shannon_entropy(s) for s in spectra) - shannon_entropy(infimum(spectra))


def separable_capacity(psi: PureState) -> float:
    """Maximal separable correlation supported by the marginals of an all-qubit state."""
    if any(d != 2 for d in psi.dims):
        raise NotQubits(f"subsystem dimensions {psi.dims} are not all 2")
    c = marginal_capacity(psi)
    f = entropy_sum_minus_max(psi)
    if abs(c - f) > EQ_TOL:
        raise ArithmeticError(f"capacity {c} differs from entropy monotone {f}")
    return c


def _apply_local(psi: PureState, op: np.ndarray, party: int) -> np.ndarray:
    t = psi.vector.reshape(psi.dims)
    t = np.tensordot(op, t, axes=([1], [party]))
    return np.moveaxis(t, 0, party).ravel()


def _psd_sqrt(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def local_measure(psi: PureState, party: int, effect: np.ndarray, u0: np.ndarray, u1: np.ndarray) -> MeasuredEnsemble:
    """Two-outcome measurement with Kraus operators ``U0 sqrt(E)`` and ``U1 sqrt(I - E)``."""
    d = psi.dims[party]
    effect = np.asarray(effect, dtype=complex)
    if effect.shape != (d, d):
        raise BadEffect(f"effect must be {d}x{d}")
    w, v = np.linalg.eigh((effect + effect.conj().T) / 2)
    if w[0] < -EFFECT_TOL or w[-1] > 1 + EFFECT_TOL:
        raise BadEffect(f"effect eigenvalues {w} outside [0, 1]")
    kraus = [u0 @ _psd_sqrt(w, v), u1 @ _psd_sqrt(1 - w, v)]
    completeness = sum(k.conj().T @ k for k in kraus)
    if np.max(np.abs(completeness - np.eye(d))) > 1e-9:
        raise BadEffect("Kraus operators are not complete")
    outcomes = []
    for k in kraus:
        phi = _apply_local(psi, k, party)
        p = float(np.vdot(phi, phi).real)
        if p >= MIN_PROB:
            outcomes.append((p, PureState.normalized(phi, psi.dims)))
    total = sum(p for p, _ in outcomes)
    outcomes = [(p / total, s) for p, s in outcomes]
    return MeasuredEnsemble(outcomes)


def random_effect(d: int, rng: np.random.Generator) -> np.ndarray:
    """``V diag(u) V^dagger`` with ``u`` uniform on [0, 1] and Haar ``V``."""
    v = haar_unitary(d, rng)
    return (v * rng.uniform(0.0, 1.0, d)) @ v.conj().T


@dataclass
class Trial:
    party: int
    before: float
    after: float
    entropy_excess: float  # max over parties of average marginal entropy increase
    capacity_before: float | None = None
    capacity_after: float | None = None

    @property
    def margin(self) -> float:
        return self.before - self.after


@dataclass
class TrialReport:
    trials: int
    max_violation: float
    mean_margin: float
    violations: list = field(default_factory=list)
    max_entropy_excess: float = 0.0
    capacity_max_violation: float | None = None


def measure_trial(psi: PureState, stream: SeededStream, monotone=entropy_sum_minus_max,
                  capacity=None) -> Trial:
    rng = stream.rng()
    party = int(rng.integers(len(psi.dims)))
    d = psi.dims[party]
    effect = random_effect(d, rng)
    u0, u1 = haar_unitary(d, rng), haar_unitary(d, rng)
    ens = local_measure(psi, party, effect, u0, u1)
    before_s = marginal_entropies(psi)
    after_s = sum(p * marginal_entropies(s) for p, s in ens.outcomes)
    trial = Trial(party, monotone(psi), ens.average(monotone), float(np.max(after_s - before_s)))
    if capacity is not None:
        trial.capacity_before = capacity(psi)
        trial.capacity_after = ens.average(capacity)
    return trial


def summarize(trials: Sequence[Trial], tol: float = EQ_TOL) -> TrialReport:
    excess = [t.after - t.before for t in trials]
    report = TrialReport(
        trials=len(trials),
        max_violation=max(0.0, max(excess, default=0.0)),
        mean_margin=float(np.mean([t.margin for t in trials])) if trials else 0.0,
        violations=[{"trial": i, "excess": e} for i, e in enumerate(excess) if e > tol],
        max_entropy_excess=max(0.0, max((t.entropy_excess for t in trials), default=0.0)),
    )
    caps = [t.capacity_after - t.capacity_before for t in trials if t.capacity_before is not None]
    if caps:
        report.capacity_max_violation = max(0.0, max(caps))
    return report


def _run(fn, n: int, parallel: bool) -> list:
    if parallel:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(fn, range(n)))
    return [fn(i) for i in range(n)]


def monotonicity_trial(psi: PureState, trials: int, seed: int = 0, parallel: bool = False) -> TrialReport:
    """Random local measurements on a fixed state.

    Each trial draws a party, an effect and two unitaries from its own
    stream ``(seed, i)``. For all-qubit inputs the separable capacity is
    tracked as well.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    stream = SeededStream(seed)
    cap = separable_capacity if all(d == 2 for d in psi.dims) else None
    results = _run(lambda i: measure_trial(psi, stream.child(i), capacity=cap), trials, parallel)
    return summarize(results)


def conjecture_probe(dims: Sequence[int], trials: int, seed: int = 0, parallel: bool = False) -> TrialReport:
    """Look for decreases of the marginal capacity beyond qubits.

    Exploratory only: random pure states on ``dims`` are measured once and
    any increase of the average capacity is reported as a violation.
    """
    stream = SeededStream(seed)

    def one(i):
        s = stream.child(i)
        psi = haar_pure(dims, s.child(0))
        return measure_trial(psi, s.child(1), monotone=marginal_capacity)

    return summarize(_run(one, trials, parallel))
