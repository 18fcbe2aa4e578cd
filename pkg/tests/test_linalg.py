import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holsim import linalg


def taylor_expm(a: np.ndarray, terms: int = 50) -> np.ndarray:
    """Independent oracle: scaled-and-squared truncated Taylor series."""
    norm = np.linalg.norm(a, ord=np.inf)
    squarings = max(0, int(np.ceil(np.log2(max(norm, 1e-16)))) + 1)
    b = a/(2**squarings)
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ b/k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def random_hermitian(rng, dim, scale=1.0):
    m = rng.normal(size=(dim, dim)) + 1j*rng.normal(size=(dim, dim))
    h = 0.5*(m + m.conj().T)
    return scale*h/np.linalg.norm(h, 2)


def test_exp_of_zero_is_identity():
    assert np.array_equal(linalg.matrix_exp(np.zeros((3, 3))), np.eye(3))


def test_exp_of_x_block_closed_form():
    # basis (b, a, d): exp(-i pi/2 X) on the (b, a) doublet, identity on d
    x = np.zeros((3, 3), dtype=complex)
    x[0, 1] = x[1, 0] = 1.0
    expected = np.diag([0.0, 0.0, 1.0]).astype(complex)
    expected[0, 1] = expected[1, 0] = -1.0j
    assert np.abs(linalg.matrix_exp(-1j*(np.pi/2)*x) - expected).max() < 1e-14


def test_exp_of_diagonal_pauli_z():
    out = linalg.matrix_exp(-1j*np.pi/2*np.diag([1.0, -1.0]))
    assert np.abs(out - np.diag([-1.0j, 1.0j])).max() < 1e-14


def test_exp_rejects_nonfinite():
    bad = np.array([[0.0, np.inf], [0.0, 0.0]])
    with pytest.raises(ValueError, match="non-finite"):
        linalg.matrix_exp(bad)


def test_exp_rejects_nonsquare():
    with pytest.raises(ValueError, match="square"):
        linalg.matrix_exp(np.zeros((2, 3)))


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 8, 16, 64]))
@settings(max_examples=25)
def test_exp_of_anti_hermitian_is_unitary(seed, dim):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, dim, scale=rng.uniform(0.1, 10.0))
    u = linalg.matrix_exp(-1j*h)
    assert np.linalg.norm(u.conj().T @ u - np.eye(dim)) < 1e-12


@given(st.integers(0, 2**32 - 1))
def test_exp_additive_on_commuting_diagonals(seed):
    rng = np.random.default_rng(seed)
    a = np.diag(rng.normal(scale=1.0, size=4) + 1j*rng.normal(scale=1.0, size=4))
    b = np.diag(rng.normal(scale=1.0, size=4) + 1j*rng.normal(scale=1.0, size=4))
    lhs = linalg.matrix_exp(a + b)
    rhs = linalg.matrix_exp(a) @ linalg.matrix_exp(b)
    assert np.abs(lhs - rhs).max() < 1e-11


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5, 8]))
@settings(max_examples=25)
def test_exp_matches_taylor_oracle(seed, dim):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j*rng.normal(size=(dim, dim))
    a = a*(rng.uniform(0.1, 5.0)/np.linalg.norm(a, 2))
    assert np.abs(linalg.matrix_exp(a) - taylor_expm(a)).max() < 1e-10


def test_kron_identities():
    assert np.array_equal(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_bit_flip_on_first_factor():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    op = linalg.kron(sx, np.eye(2))
    ket00 = linalg.basis_state(4, 0)
    assert np.abs(op @ ket00 - linalg.basis_state(4, 2)).max() == 0  # |00> -> |10>


@given(st.integers(0, 2**32 - 1))
def test_kron_dagger_distributes(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(2, 2)) + 1j*rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j*rng.normal(size=(2, 2))
    lhs = linalg.dagger(linalg.kron(a, b))
    rhs = linalg.kron(linalg.dagger(a), linalg.dagger(b))
    assert np.abs(lhs - rhs).max() < 1e-14


@given(st.integers(0, 2**32 - 1))
def test_kron_mixed_product(seed):
    rng = np.random.default_rng(seed)
    mats = [rng.normal(size=(2, 2)) + 1j*rng.normal(size=(2, 2)) for _ in range(4)]
    a, b, c, d = mats
    lhs = linalg.kron(a, b) @ linalg.kron(c, d)
    rhs = linalg.kron(a @ c, b @ d)
    assert np.abs(lhs - rhs).max() < 1e-12


def test_hermitian_eigenvalues_examples():
    assert np.allclose(linalg.hermitian_eigenvalues(np.diag([1.0, 2.0, 3.0])), [1, 2, 3])
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(linalg.hermitian_eigenvalues(sx), [-1, 1])
    plus = np.array([1.0, 1.0])/np.sqrt(2)
    assert np.allclose(linalg.hermitian_eigenvalues(np.outer(plus, plus)), [0, 1], atol=1e-14)


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        linalg.hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_state_normalization_check():
    with pytest.raises(ValueError, match="normalized"):
        linalg.as_state([1.0, 1.0], normalized=True)
    v = linalg.as_state([1.0, 1.0], normalized=False)
    assert v.dtype == complex
