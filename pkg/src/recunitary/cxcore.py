"""Small complex linear-algebra kernel.

Vectors and matrices are plain ``numpy`` arrays of dtype ``complex128``.
The helpers here validate shapes and give the rest of the package a single
place to get products, adjoints and distance measures from.
"""

from __future__ import annotations

import numpy as np

from .errors import NonFiniteError, ShapeError

DTYPE = np.complex128


def as_vector(values) -> np.ndarray:
    """Return ``values`` as a 1-D complex array with at least one entry."""
    vec = np.asarray(values, dtype=DTYPE)
    if vec.ndim != 1 or vec.size == 0:
        raise ShapeError(f"expected a non-empty vector, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise NonFiniteError("vector has non-finite entries")
    return vec


def as_matrix(values) -> np.ndarray:
    """Return ``values`` as a 2-D complex array with positive dimensions."""
    mat = np.asarray(values, dtype=DTYPE)
    if mat.ndim != 2 or 0 in mat.shape:
        raise ShapeError(f"expected a non-empty matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise NonFiniteError("matrix has non-finite entries")
    return mat


def as_square(values) -> np.ndarray:
    mat = as_matrix(values)
    if mat.shape[0] != mat.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {mat.shape}")
    return mat


def matmul(a, b) -> np.ndarray:
    """Complex matrix product ``a @ b``.

    Raises:
        ShapeError: if ``a`` has a different number of columns than ``b`` has rows.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(
            f"cannot multiply shapes {a.shape} and {b.shape}: "
            f"{a.shape[1]} columns vs {b.shape[0]} rows"
        )
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def phase_matrix(angles) -> np.ndarray:
    """Diagonal unitary with entries ``exp(1j * angles[k])``."""
    angles = np.asarray(angles, dtype=float)
    return np.diag(np.exp(1j * angles))


def unitarity_deviation(a) -> float:
    """Largest elementwise modulus of ``a^dagger a - I``."""
    a = as_square(a)
    gram = a.conj().T @ a
    return float(np.max(np.abs(gram - np.eye(a.shape[0]))))


def frobenius_distance(a, b) -> float:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def outer_product(a, b) -> np.ndarray:
    """Return the matrix ``|a><b|`` with entries ``a_i * conj(b_j)``."""
    return np.outer(as_vector(a), as_vector(b).conj())


def norm(a) -> float:
    return float(np.linalg.norm(as_vector(a)))


def wrap_angle(x):
    """Map angles into ``[-pi, pi)``."""
    wrapped = np.mod(np.asarray(x, dtype=float) + np.pi, 2 * np.pi) - np.pi
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


def arg(z) -> float:
    """Principal argument in ``[-pi, pi)``; ``arg(0)`` is 0."""
    if z == 0:
        return 0.0
    return wrap_angle(np.angle(z))
