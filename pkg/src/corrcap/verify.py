"""Randomized and exhaustive property suites.

Each suite returns a :class:`SuiteResult`; ``failures`` counts trials that
break the property at the suite's tolerance and ``max_violation`` is the
largest raw excess observed (0 when every trial holds with room to spare).
Trial ``i`` draws from ``SeededStream(seed).child(i)`` so results do not
depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import locc, oracle, twoqubit
from .composite import build_optimal_separable, gram_matrix, is_classically_correlated, offdiag_max
from .ensemble import realize_ensemble, schur_horn
from .majorization import canonicalize, infimum, pad, prefix_sums, supremum
from .qstate import DensityMatrix, bell_state, ket, marginals, spectrum
from .sampling import SeededStream, haar_pure, random_classical_joint, random_density, random_separable


@dataclass
class SuiteResult:
    suite: str
    trials: int
    failures: int
    max_violation: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _run(fn, n, parallel):
    if parallel:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(fn, range(n)))
    return [fn(i) for i in range(n)]


def prefix_excess(a, b) -> float:
    """Largest amount by which a prefix sum of ``a`` exceeds that of ``b``."""
    d = max(len(a), len(b))
    return float(np.max(prefix_sums(a, d) - prefix_sums(b, d)))


# -- lattice --------------------------------------------------------------

def lattice_oracle(denominator: int = 12, dim: int = 4, max_set: int = 3,
                   oracle_denominator: int = 72) -> SuiteResult:
    """Exhaustive check of infimum/supremum against grid brute force.

    Inputs are every set of at most ``max_set`` points of the
    ``denominator`` grid. Joins of such sets can have prefix sums at
    fractions of ``1/denominator`` (chords over 2 or 3 steps), so the search
    grid uses ``oracle_denominator``, a multiple of ``6 * denominator``.
    """
    base = oracle.sorted_grid(denominator, dim)
    search = oracle.sorted_grid(oracle_denominator, dim)
    scale = oracle_denominator // denominator
    failures = 0
    worst = 0.0
    bad = []
    n = 0
    for k in range(1, max_set + 1):
        for combo in combinations(range(base.shape[0]), k):
            n += 1
            ints = base[list(combo)] * scale
            probs = [v / oracle_denominator for v in ints]
            for name, op, brute in (("inf", infimum, oracle.greatest_lower_bound),
                                    ("sup", supremum, oracle.least_upper_bound)):
                want = brute(ints, search)
                got = pad(op(probs), dim) * oracle_denominator
                err = np.inf if want is None else float(np.max(np.abs(got - want)))
                worst = max(worst, err)
                if err > 1e-9:
                    failures += 1
                    if len(bad) < 10:
                        bad.append({"op": name, "set": [list(map(int, v)) for v in base[list(combo)]]})
    return SuiteResult("lattice-oracle", n, failures, worst, {"grid_points": int(base.shape[0]), "examples": bad})


# -- composites -----------------------------------------------------------

def _random_marginal_set(stream: SeededStream):
    rng = stream.rng()
    n = int(rng.choice([2, 3]))
    out = []
    for a in range(n):
        d = int(rng.choice([2, 3]))
        rank = int(rng.integers(1, d + 1))
        out.append(random_density(d, rank, stream.child(a)))
    return out


def theorem1(trials: int = 500, seed: int = 0, parallel: bool = False) -> SuiteResult:
    """Optimal separable composite: spectrum, marginals and orthogonality."""
    stream = SeededStream(seed)

    def one(i):
        margs = _random_marginal_set(stream.child(i))
        sigma, ens = build_optimal_separable(margs)
        lam = infimum([spectrum(m) for m in margs])
        spec_err = float(np.max(np.abs(pad(spectrum(sigma), sigma.dim) - pad(lam, sigma.dim))))
        marg_err = max(float(np.linalg.norm(got.matrix - want.matrix))
                       for got, want in zip(marginals(sigma), margs))
        gram_err = offdiag_max(gram_matrix(ens))
        ok = spec_err <= 1e-8 and marg_err <= 1e-9 and gram_err < 1e-8
        return ok, spec_err, marg_err, gram_err

    res = _run(one, trials, parallel)
    fails = sum(not r[0] for r in res)
    return SuiteResult("theorem1", trials, fails, max(max(r[1:]) for r in res), {
        "max_spectrum_error": max(r[1] for r in res),
        "max_marginal_error": max(r[2] for r in res),
        "max_gram_offdiag": max(r[3] for r in res),
    })


NK_DIMS = ((2, 2), (2, 3), (3, 3))


def nielsen_kempe(trials: int = 1000, seed: int = 0, parallel: bool = False) -> SuiteResult:
    """Separable spectra are majorized by the infimum of the marginal spectra."""
    stream = SeededStream(seed)

    def one(i):
        s = stream.child(i)
        rng = s.rng()
        dims = NK_DIMS[int(rng.integers(len(NK_DIMS)))]
        terms = int(rng.integers(1, 9))
        rho = random_separable(dims, terms, s.child(0))
        lam = infimum([spectrum(m) for m in marginals(rho)])
        return prefix_excess(spectrum(rho), lam)

    ex = _run(one, trials, parallel)
    return SuiteResult("nielsen-kempe", trials, sum(e > 1e-12 for e in ex), max(0.0, max(ex)))


def ensemble_suite(trials: int = 1000, seed: int = 0, parallel: bool = False) -> SuiteResult:
    """Rotation chain and ensemble reconstruction for targets below the spectrum."""
    stream = SeededStream(seed)

    def one(i):
        s = stream.child(i)
        rng = s.rng()
        d = int(rng.integers(2, 6))
        rho = random_density(d, int(rng.integers(1, d + 1)), s.child(0))
        lam = spectrum(rho)
        others = [canonicalize(rng.dirichlet(np.ones(int(rng.integers(1, 7))))) for _ in range(int(rng.integers(1, 4)))]
        target = infimum([lam] + others)
        sh = schur_horn(lam, target)
        u2 = np.abs(sh.unitary) ** 2
        ds_err = float(max(np.max(np.abs(u2.sum(0) - 1)), np.max(np.abs(u2.sum(1) - 1))))
        ens = realize_ensemble(rho, target)
        rec_err = float(np.linalg.norm(ens.density() - rho.matrix))
        norm_err = float(np.max(np.abs(np.linalg.norm(ens.vectors, axis=1) - 1)))
        steps_ok = sh.rotations <= sh.unitary.shape[0] - 1
        ok = ds_err <= 1e-12 and rec_err <= 1e-9 and norm_err <= 1e-10 and steps_ok
        return ok, ds_err, rec_err, norm_err

    res = _run(one, trials, parallel)
    return SuiteResult("ensemble", trials, sum(not r[0] for r in res), max(max(r[1:]) for r in res), {
        "max_doubly_stochastic_error": max(r[1] for r in res),
        "max_reconstruction_error": max(r[2] for r in res),
    })


# -- two qubits -----------------------------------------------------------

def hierarchy(trials: int = 1000, seed: int = 0, parallel: bool = False) -> SuiteResult:
    """Ordering of the optimal spectra and optimality against random composites.

    Per trial: the three optimal spectra for a random pair are chained; a
    random two-qubit state lies below the entangled optimum of its own
    marginals; a random classical joint lies below the classical optimum.
    """
    stream = SeededStream(seed)

    def one(i):
        s = stream.child(i)
        rng = s.rng()
        pair = twoqubit.QubitPair(rng.uniform(0.5, 1.0), rng.uniform(0.5, 1.0))
        lc, ls, le = twoqubit.hierarchy(pair)
        e1 = max(prefix_excess(lc, ls), prefix_excess(ls, le))
        rho = random_density(4, int(rng.integers(1, 5)), s.child(0), dims=(2, 2))
        e2 = prefix_excess(spectrum(rho), twoqubit.lambda_entangled(twoqubit.QubitPair.from_state(rho)))
        joint = random_classical_joint([[pair.p_a, 1 - pair.p_a], [pair.p_b, 1 - pair.p_b]], s.child(1))
        e3 = prefix_excess(canonicalize(joint.ravel()), lc)
        return e1, e2, e3

    res = np.array(_run(one, trials, parallel))
    fails = int(np.sum(np.any(res > 1e-12, axis=1)))
    return SuiteResult("hierarchy", trials, fails, max(0.0, float(res.max())), {
        "chain": max(0.0, float(res[:, 0].max())),
        "random_states": max(0.0, float(res[:, 1].max())),
        "classical_joints": max(0.0, float(res[:, 2].max())),
    })


CLASSIFIER_CASES = ((0.65, 0.5), (0.9, 0.6), (0.8, 0.55), (0.7, 0.65), (0.6, 0.95))


def classifier_suite() -> SuiteResult:
    """Known-answer classification of the optimal two-qubit composites."""
    cases = []
    for pa, pb in CLASSIFIER_CASES:
        pair = twoqubit.QubitPair(pa, pb)
        cases.append((f"classical{pa},{pb}", twoqubit.sigma_classical(pair), True))
        cases.append((f"separable{pa},{pb}", twoqubit.sigma_separable(pair), False))
        cases.append((f"entangled{pa},{pb}", twoqubit.sigma_entangled(pair), False))
    flat = DensityMatrix(0.5 * (np.outer(ket(0, 0), ket(0, 0)) + np.outer(ket(1, 1), ket(1, 1))), (2, 2))
    cases.append(("dephased bell", flat, True))
    cases.append(("bell", bell_state().density(), False))
    wrong = [name for name, rho, want in cases if is_classically_correlated(rho) != want]
    return SuiteResult("classifier", len(cases), len(wrong), float(len(wrong)), {"misclassified": wrong})


# -- LOCC -----------------------------------------------------------------

def _locc_trial(stream: SeededStream) -> locc.Trial:
    rng = stream.rng()
    n = int(rng.choice([3, 4]))
    psi = haar_pure((2,) * n, stream.child(0))
    return locc.measure_trial(psi, stream.child(1), capacity=locc.separable_capacity)


def locc_suite(trials: int = 1000, seed: int = 0, parallel: bool = False) -> SuiteResult:
    """Monotone decrease on average under a random local measurement."""
    stream = SeededStream(seed)
    res = _run(lambda i: _locc_trial(stream.child(i)), trials, parallel)
    rep = locc.summarize(res)
    fails = sum((t.after - t.before) > 1e-10 or t.entropy_excess > 1e-10 for t in res)
    return SuiteResult("locc", trials, fails, max(rep.max_violation, rep.max_entropy_excess), {
        "mean_margin": rep.mean_margin,
        "max_entropy_excess": rep.max_entropy_excess,
    })


def corollary3(trials: int = 1000, seed: int = 0, parallel: bool = False) -> SuiteResult:
    """Separable capacity of qubit marginals: equals the entropy monotone and decreases on average."""
    stream = SeededStream(seed)

    def one(i):
        try:
            t = _locc_trial(stream.child(i))
        except ArithmeticError:
            return np.inf
        return t.capacity_after - t.capacity_before

    ex = _run(one, trials, parallel)
    return SuiteResult("corollary3", trials, sum(e > 1e-10 for e in ex), max(0.0, max(ex)))


SUITES = {
    "theorem1": theorem1,
    "nielsen-kempe": nielsen_kempe,
    "hierarchy": hierarchy,
    "locc": locc_suite,
    "corollary3": corollary3,
    "lattice-oracle": lambda trials=0, seed=0, parallel=False: lattice_oracle(),
    "ensemble": ensemble_suite,
    "classifier": lambda trials=0, seed=0, parallel=False: classifier_suite(),
}


def run_suite(name: str, trials: int = 1000, seed: int = 0, parallel: bool = False) -> SuiteResult:
    return SUITES[name](trials=trials, seed=seed, parallel=parallel)
