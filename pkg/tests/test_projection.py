import numpy as np
import pytest

from dfteig import (
    ModulatedDeltaTrain,
    TrainSum,
    densify,
    densify_sum,
    dft_pow,
    eigenvalue_of,
    eta_pair,
    is_symbolically_zero,
    naive_dft,
    project,
    support_bound,
    verify_eigenvector,
)


def oracle_projection(k, dense):
    """Independent projector: average reference-transform powers directly."""
    return sum(0.25 * 1j ** (j * k) * dft_pow(dense, j) for j in range(4))


def test_eigenvalues():
    assert eigenvalue_of(0) == 1
    assert eigenvalue_of(1) == -1j
    assert eigenvalue_of(2) == -1
    assert eigenvalue_of(3) == 1j
    with pytest.raises(ValueError):
        eigenvalue_of(4)


def test_project_fixed_point_class_zero():
    # g2(0,0) in dimension 4 is a fixed point of the transform, so the
    # class-0 projector acts as the identity on it
    g = ModulatedDeltaTrain(n=4, d1=2)
    out = densify_sum(project(0, g))
    assert np.allclose(out, densify(g), atol=1e-12)


def test_project_annihilates_other_class():
    g = ModulatedDeltaTrain(n=4, d1=2)
    out = densify_sum(project(2, g))
    assert np.linalg.norm(out) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 9, 12, 16, 20])
def test_projections_sum_to_identity(n):
    eta = eta_pair(n)
    for a in range(eta.eta1):
        for b in range(eta.eta2):
            g = ModulatedDeltaTrain(n=n, d1=eta.eta1, a=a, b=b)
            total = sum(densify_sum(project(k, g)) for k in range(4))
            assert np.allclose(total, densify(g), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8, 9, 12, 16])
def test_project_matches_oracle(n):
    eta = eta_pair(n)
    for k in range(4):
        for a in range(eta.eta1):
            for b in range(eta.eta2):
                g = ModulatedDeltaTrain(n=n, d1=eta.eta1, a=a, b=b)
                got = densify_sum(project(k, g))
                want = oracle_projection(k, densify(g))
                assert np.allclose(got, want, atol=1e-9), (n, k, a, b)


@pytest.mark.parametrize("n", [2, 4, 6, 9, 12, 16, 25, 32, 48, 64])
def test_projector_idempotent_and_disjoint(n):
    # P_k P_k' = delta_{kk'} P_k, exercised through densified vectors
    eta = eta_pair(n)
    rng = np.random.default_rng(n)
    for _ in range(3):
        a = rng.integers(eta.eta1)
        b = rng.integers(eta.eta2)
        g = ModulatedDeltaTrain(n=n, d1=eta.eta1, a=int(a), b=int(b))
        for k in range(4):
            pk = densify_sum(project(k, g))
            for kp in range(4):
                double = oracle_projection(kp, pk)
                expected = pk if kp == k else np.zeros(n)
                assert np.allclose(double, expected, atol=1e-9)


@pytest.mark.parametrize("n", list(range(1, 49)) + [64])
def test_projections_are_eigenvectors_or_zero(n):
    eta = eta_pair(n)
    for k in range(4):
        for a in range(eta.eta1):
            for b in range(eta.eta2):
                g = ModulatedDeltaTrain(n=n, d1=eta.eta1, a=a, b=b)
                dense = densify_sum(project(k, g))
                if np.linalg.norm(dense) <= 1e-9:
                    continue
                assert verify_eigenvector(dense, k) <= 1e-9


def test_densify_sum_empty_and_single():
    assert np.array_equal(densify_sum(TrainSum(n=3, terms=())), np.zeros(3))
    g = ModulatedDeltaTrain(n=4, d1=2)
    s = TrainSum(n=4, terms=((1 + 0j, g),))
    assert np.allclose(densify_sum(s), densify(g), atol=1e-15)


def test_train_sum_validation():
    g = ModulatedDeltaTrain(n=4, d1=2)
    with pytest.raises(ValueError):
        TrainSum(n=4, terms=((1 + 0j, g),) * 5)
    with pytest.raises(ValueError):
        TrainSum(n=6, terms=((1 + 0j, g),))


def test_support_bound_values():
    # projected stride-eta1 trains: bound is exactly 2*(eta1+eta2)
    s16 = project(1, ModulatedDeltaTrain(n=16, d1=4, a=1, b=2))
    assert support_bound(s16) == 16
    s12 = project(0, ModulatedDeltaTrain(n=12, d1=3, a=0, b=0))
    assert support_bound(s12) == 14
    spike = TrainSum(n=5, terms=((1 + 0j, ModulatedDeltaTrain(n=5, d1=5, a=2)),))
    assert support_bound(spike) == 1


@pytest.mark.parametrize("n", range(2, 25))
def test_support_bound_dominates_true_support(n):
    eta = eta_pair(n)
    for k in range(4):
        for a in range(eta.eta1):
            for b in range(eta.eta2):
                s = project(k, ModulatedDeltaTrain(n=n, d1=eta.eta1, a=a, b=b))
                dense = densify_sum(s)
                true_support = int(np.count_nonzero(np.abs(dense) > 1e-9))
                assert true_support <= support_bound(s)


def test_symbolic_zero_precheck():
    # dimension-2 class-1 projections cancel label by label
    g = ModulatedDeltaTrain(n=2, d1=1, a=0, b=1)
    assert is_symbolically_zero(project(1, g))
    assert np.linalg.norm(densify_sum(project(1, g))) <= 1e-12
    assert not is_symbolically_zero(project(0, g))


def test_verify_eigenvector_fixed_point():
    v = np.array([1, 0, 1, 0], dtype=complex) / np.sqrt(2)
    assert verify_eigenvector(v, 0) <= 1e-12


def test_verify_eigenvector_class_two():
    # frozen from the reference transform: D(1,-1,-1,-1) = -(1,-1,-1,-1)
    v = np.array([1, -1, -1, -1], dtype=complex) / 2
    assert np.allclose(naive_dft(v), -v, atol=1e-12)
    assert verify_eigenvector(v, 2) <= 1e-12


def test_verify_eigenvector_wrong_class_residual():
    # adjacent eigenvalue classes of a unitary map sit sqrt(2) apart
    v = np.array([1, 0, 1, 0], dtype=complex) / np.sqrt(2)
    assert abs(verify_eigenvector(v, 1) - np.sqrt(2)) <= 1e-9
    assert abs(verify_eigenvector(v, 2) - 2) <= 1e-9


def test_verify_eigenvector_rejects_zero():
    with pytest.raises(ValueError):
        verify_eigenvector(np.zeros(4), 0)
