import math

import numpy as np
import pytest

from corrcap.composite import (
    analyze,
    build_optimal_separable,
    correlation_information,
    gram_matrix,
    is_classically_correlated,
    max_separable_correlation,
    offdiag_max,
    partition_correlation,
)
from corrcap.ensemble import Ensemble, realize_ensemble
from corrcap.errors import BadPartition
from corrcap.majorization import compare, infimum
from corrcap.qstate import (
    DensityMatrix,
    PureState,
    bell_state,
    diag_state,
    ket,
    marginals,
    pinch_marginal_bases,
    spectrum,
    tensor,
)
from corrcap.sampling import SeededStream, haar_unitary, random_density, random_separable
from corrcap.twoqubit import QubitPair, feline_state, sigma_classical, sigma_entangled, sigma_separable


def H(*p):
    return -sum(x * math.log2(x) for x in p if x > 0)


def test_build_example_mixed_and_uniform():
    sigma, ens = build_optimal_separable([diag_state([0.65, 0.35]), diag_state([0.5, 0.5])])
    np.testing.assert_allclose(spectrum(sigma), [0.5, 0.5, 0, 0], atol=1e-12)
    c = correlation_information(sigma)
    assert c == pytest.approx(H(0.65, 0.35) + 1 - 1, abs=1e-9)
    assert c == pytest.approx(0.934068, abs=1e-6)
    assert offdiag_max(gram_matrix(ens)) < 1e-8


def test_build_example_identical_pure():
    zero = diag_state([1, 0])
    sigma, _ = build_optimal_separable([zero, zero])
    np.testing.assert_allclose(sigma.matrix, np.outer(ket(0, 0), ket(0, 0)), atol=1e-15)
    assert correlation_information(sigma) == pytest.approx(0.0, abs=1e-12)


def test_build_example_three_qubits():
    sigma, _ = build_optimal_separable([diag_state([0.65, 0.35])] * 3)
    np.testing.assert_allclose(spectrum(sigma), [0.65, 0.35] + [0] * 6, atol=1e-12)
    assert correlation_information(sigma) == pytest.approx(2 * H(0.65, 0.35), abs=1e-9)
    assert correlation_information(sigma) == pytest.approx(1.868136, abs=1e-6)


def test_build_reproduces_marginals_and_orthogonality():
    stream = SeededStream(31)
    for i in range(100):
        s = stream.child(i)
        margs = [random_density(d, r, s.child(k)) for k, (d, r) in enumerate([(2, 2), (3, 2), (3, 3)][: 2 + i % 2])]
        sigma, ens = build_optimal_separable(margs)
        for got, want in zip(marginals(sigma), margs):
            assert np.linalg.norm(got.matrix - want.matrix) < 1e-9
        lam = infimum([spectrum(m) for m in margs])
        n = sigma.dim
        np.testing.assert_allclose(np.pad(spectrum(sigma), (0, 0))[: lam.size], lam[:n], atol=1e-8)
        assert offdiag_max(gram_matrix(ens)) < 1e-8
        assert correlation_information(sigma) == pytest.approx(
            max_separable_correlation([spectrum(m) for m in margs]), abs=1e-8
        )


def test_gram_of_orthogonal_ensemble_is_diagonal():
    ens = Ensemble(np.array([0.6, 0.4]), np.eye(2, dtype=complex))
    np.testing.assert_allclose(gram_matrix(ens), np.diag([0.6, 0.4]))


def test_gram_is_isospectral_with_state():
    rho = random_density(3, 3, SeededStream(5))
    ens = realize_ensemble(rho, (0.25, 0.25, 0.25, 0.25))
    g = gram_matrix(ens)
    assert offdiag_max(g) > 1e-3  # genuinely non-orthogonal
    eig_g = np.sort(np.linalg.eigvalsh(g))[::-1]
    eig_rho = np.sort(np.linalg.eigvalsh(rho.matrix))[::-1]
    np.testing.assert_allclose(eig_g[:3], eig_rho, atol=1e-8)
    np.testing.assert_allclose(eig_g[3:], 0, atol=1e-8)
    np.testing.assert_allclose(np.diag(g).real, ens.weights, atol=1e-12)


def test_correlation_information_examples():
    prod = tensor([diag_state([0.7, 0.3]), diag_state([0.6, 0.4])])
    assert correlation_information(prod) == pytest.approx(0.0, abs=1e-12)
    assert correlation_information(bell_state().density()) == pytest.approx(2.0, abs=1e-12)
    want = H(0.65, 0.35) + 1 - H(0.85, 0.15)
    got = correlation_information(sigma_entangled(QubitPair(0.65, 0.5)))
    assert got == pytest.approx(want, abs=1e-12)
    assert got == pytest.approx(1.324229, abs=1e-5)


def test_partition_trivial_and_single_block():
    rho = random_density(8, 3, SeededStream(12), dims=(2, 2, 2))
    c = correlation_information(rho)
    terms, residual = partition_correlation(rho, [[0], [1], [2]])
    assert terms == [0.0, 0.0, 0.0]
    assert residual == pytest.approx(c, abs=1e-9)
    terms, residual = partition_correlation(rho, [[0, 1, 2]])
    assert residual == pytest.approx(0.0, abs=1e-9)
    assert terms[0] == pytest.approx(c, abs=1e-12)


@pytest.mark.parametrize("partition", [[[0, 1], [2]], [[0, 2], [1]], [[1], [2, 0]]])
def test_additivity(partition):
    psi, _ = feline_state(3, (0.65, 0.35))
    for rho in (psi.density(), random_density(12, 4, SeededStream(3), dims=(2, 3, 2))):
        terms, residual = partition_correlation(rho, partition)
        assert sum(terms) + residual == pytest.approx(correlation_information(rho), abs=1e-8)


def test_bad_partition():
    with pytest.raises(BadPartition):
        partition_correlation(bell_state().density(), [[0]])
    with pytest.raises(BadPartition):
        partition_correlation(bell_state().density(), [[0, 1], [1]])


def test_max_separable_correlation_examples():
    assert max_separable_correlation([(0.65, 0.35), (0.5, 0.5)]) == pytest.approx(0.934068, abs=1e-6)
    for n in (2, 3, 5):
        assert max_separable_correlation([(0.6, 0.3, 0.1)] * n) == pytest.approx((n - 1) * H(0.6, 0.3, 0.1))
    assert max_separable_correlation([(1.0,), (0.6, 0.3, 0.1)]) == pytest.approx(0.0, abs=1e-12)


def test_separable_spectra_below_marginal_meet():
    stream = SeededStream(77)
    for i in range(300):
        dims = [(2, 2), (2, 3), (3, 3)][i % 3]
        rho = random_separable(dims, 1 + i % 8, stream.child(i))
        lam = infimum([spectrum(m) for m in marginals(rho)])
        assert compare(spectrum(rho), lam).is_below


# -- classifier ---------------------------------------------------------------

def test_classifier_on_optimal_composites():
    for pa, pb in [(0.65, 0.5), (0.9, 0.6), (0.55, 0.8)]:
        pair = QubitPair(pa, pb)
        assert is_classically_correlated(sigma_classical(pair))
        assert not is_classically_correlated(sigma_separable(pair))
        assert not is_classically_correlated(sigma_entangled(pair))


def test_classifier_degenerate_marginals():
    flat = DensityMatrix(0.5 * (np.outer(ket(0, 0), ket(0, 0)) + np.outer(ket(1, 1), ket(1, 1))), (2, 2))
    assert is_classically_correlated(flat)
    assert is_classically_correlated(DensityMatrix(np.eye(4) / 4, (2, 2)))
    assert not is_classically_correlated(bell_state().density())


def test_classifier_sees_through_local_rotations():
    stream = SeededStream(41)
    for i in range(20):
        u = np.kron(haar_unitary(2, stream.child(i, 0)), haar_unitary(3, stream.child(i, 1)))
        # degenerate marginals: both parties have a doubly degenerate eigenvalue
        p = np.zeros(6)
        p[[0, 4]] = 0.5
        rho = DensityMatrix(u @ np.diag(p) @ u.conj().T, (2, 3))
        assert is_classically_correlated(rho)


def test_classifier_separable_but_not_classical_with_flat_marginals():
    plus = np.array([1, 1]) / math.sqrt(2)
    minus = np.array([1, -1]) / math.sqrt(2)
    vecs = [ket(0, 0), ket(1, 1), np.kron(plus, minus), np.kron(minus, plus)]
    rho = DensityMatrix(sum(np.outer(v, v) for v in vecs) / 4, (2, 2))
    for m in marginals(rho):
        np.testing.assert_allclose(m.matrix, np.eye(2) / 2, atol=1e-15)
    assert np.linalg.norm(pinch_marginal_bases(rho).matrix - rho.matrix) < 1e-12
    assert not is_classically_correlated(rho)


@pytest.mark.parametrize("p", [0.05, 0.3, 0.9])
def test_classifier_isotropic_states(p):
    rho = DensityMatrix(p * bell_state().density().matrix + (1 - p) * np.eye(4) / 4, (2, 2))
    assert not is_classically_correlated(rho)


def test_classical_implies_invariant_under_pinching():
    stream = SeededStream(17)
    for i in range(100):
        rho = random_density(4, 1 + i % 4, stream.child(i), dims=(2, 2))
        for state in (rho, pinch_marginal_bases(rho)):
            if is_classically_correlated(state):
                assert np.linalg.norm(pinch_marginal_bases(state).matrix - state.matrix) < 1e-8


def test_analyze_report():
    r = analyze(bell_state().density())
    assert r.correlation_bits == pytest.approx(2.0)
    assert r.is_classical is False
    assert r.two_qubit_ppt is False
    sigma, ens = build_optimal_separable([diag_state([0.65, 0.35]), diag_state([0.5, 0.5])])
    r = analyze(sigma, ens)
    assert r.gram_offdiag_max < 1e-8
    assert r.two_qubit_ppt is True
    psi = PureState.normalized(np.ones(8), (2, 2, 2))
    assert analyze(psi.density()).two_qubit_ppt is None
