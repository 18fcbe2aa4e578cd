"""Dense complex linear algebra kernels shared by every simulator module.

All system dimensions in this package are small (3 to 64), so robustness
and determinism win over asymptotic speed: everything is dense, and the
matrix exponential delegates to scipy's scaling-and-squaring Pade code.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

Array = np.ndarray


def as_operator(m, name: str = "operator") -> Array:
    """Coerce to a square complex matrix, rejecting non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"{name} must be a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains non-finite entries")
    return a


def as_state(v, name: str = "state", normalized: bool = True, tol: float = 1e-10) -> Array:
    """Coerce to a complex vector; when `normalized`, require unit 2-norm."""
    a = np.asarray(v, dtype=complex).ravel()
    if a.size < 1:
        raise ValueError(f"{name} must be a nonempty vector")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains non-finite entries")
    if normalized and abs(np.linalg.norm(a) - 1.0) > tol:
        raise ValueError(f"{name} is not normalized: |norm - 1| = {abs(np.linalg.norm(a) - 1.0):.3e}")
    return a


def dagger(a: Array) -> Array:
    return np.conj(a).T


def matrix_exp(a) -> Array:
    """Matrix exponential e^A for a square complex matrix.

    For anti-Hermitian A the result is unitary to better than 1e-12 over the
    dimensions used here (verified against a Taylor-series oracle in tests).
    """
    m = as_operator(a, "matrix_exp argument")
    return scipy.linalg.expm(m)


def kron(a, b) -> Array:
    """Tensor product of two operators."""
    return np.kron(as_operator(a, "kron left factor"), as_operator(b, "kron right factor"))


def kron_all(*mats) -> Array:
    """Tensor product of an ordered sequence of operators (first factor leftmost)."""
    out = as_operator(mats[0])
    for m in mats[1:]:
        out = np.kron(out, as_operator(m))
    return out


def hermitian_eigenvalues(a, tol: float = 1e-9) -> Array:
    """Real eigenvalues of a Hermitian matrix, ascending."""
    m = as_operator(a, "hermitian_eigenvalues argument")
    dev = np.linalg.norm(m - dagger(m))
    if dev >= tol:
        raise ValueError(f"matrix is not Hermitian: ||A - A^dag|| = {dev:.3e}")
    return np.linalg.eigvalsh(m)


def is_unitary(u, tol: float = 1e-10) -> bool:
    m = as_operator(u)
    return np.linalg.norm(dagger(m) @ m - np.eye(m.shape[0])) < tol


def is_hermitian(a, tol: float = 1e-9) -> bool:
    m = as_operator(a)
    return np.linalg.norm(m - dagger(m)) < tol


def basis_state(dim: int, index: int) -> Array:
    """Computational basis ket |index> in a `dim`-dimensional space."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dim {dim}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(v) -> Array:
    """Rank-one projector |v><v|."""
    a = np.asarray(v, dtype=complex).ravel()
    return np.outer(a, a.conj())
