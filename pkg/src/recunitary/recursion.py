"""Forward construction of unitary matrices from recursion levels.

Level ``j`` (``1 <= j <= n-1``) carries an angle ``theta`` and a unit vector
with ``j`` complex components. It grows a ``j x j`` unitary block to size
``j + 1``. Every construction below builds the same ``V`` from the same
levels in a different arrangement:

* :func:`mixed_form`: one block expression using both the A and B vectors.
* :func:`step_a` / :func:`step_b`: one factor times the embedded smaller block.
* :func:`compose_a` / :func:`compose_b`: the full products of embedded factors.

:func:`compose_full` wraps ``V`` between two diagonal phase matrices to give
a general element of U(n).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import cxcore
from .errors import NormError, NotUnitaryError, ParameterError, ShapeError

NORM_TOL = 1e-12
UNITARY_TOL = 1e-10


class FactorKind(enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class FactorSpec:
    """Angle and unit vector for one recursion level."""

    level: int
    theta: float
    vector: np.ndarray = field(repr=False)
    kind: FactorKind = FactorKind.A

    def __post_init__(self):
        vec = cxcore.as_vector(self.vector)
        if vec.size != self.level:
            raise ParameterError(
                f"level {self.level} needs a vector of length {self.level}, "
                f"got {vec.size}"
            )
        if not np.isfinite(self.theta):
            raise ParameterError(f"level {self.level}: theta is not finite")
        _check_unit(vec)
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)
        object.__setattr__(self, "theta", float(self.theta))


def _check_unit(vec: np.ndarray, tol: float = NORM_TOL) -> None:
    nrm = np.linalg.norm(vec)
    if abs(nrm - 1.0) > tol:
        raise NormError(f"vector norm {nrm!r} differs from 1 by more than {tol:g}")


def _check_unitary(v: np.ndarray, tol: float = UNITARY_TOL) -> None:
    dev = cxcore.unitarity_deviation(v)
    if dev > tol:
        raise NotUnitaryError(dev, tol)


def rotation(theta: float) -> np.ndarray:
    """The real 2x2 rotation ``[[c, s], [-s, c]]``."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]], dtype=cxcore.DTYPE)


def b_from_a(v, a) -> np.ndarray:
    """Paired B vector ``-V^dagger A`` for the block ``v``."""
    v = cxcore.as_square(v)
    a = cxcore.as_vector(a)
    if v.shape[0] != a.size:
        raise ShapeError(f"block of size {v.shape[0]} vs vector of length {a.size}")
    _check_unit(a)
    return -(v.conj().T @ a)


def a_from_b(v, b) -> np.ndarray:
    """Paired A vector ``-V B`` for the block ``v``."""
    v = cxcore.as_square(v)
    b = cxcore.as_vector(b)
    if v.shape[0] != b.size:
        raise ShapeError(f"block of size {v.shape[0]} vs vector of length {b.size}")
    _check_unit(b)
    return -(v @ b)


def _direct_sum_one(v: np.ndarray) -> np.ndarray:
    m = v.shape[0]
    out = np.eye(m + 1, dtype=cxcore.DTYPE)
    out[:m, :m] = v
    return out


def mixed_form(v_prev, theta: float, a) -> np.ndarray:
    """Grow ``v_prev`` by one dimension using the single block expression.

    The result is ``[[V + (1-c)|A><B|, s|A>], [s<B|, c]]`` with
    ``B = -V^dagger A`` computed internally.
    """
    v_prev = cxcore.as_square(v_prev)
    a = cxcore.as_vector(a)
    if v_prev.shape[0] != a.size:
        raise ShapeError(f"block of size {v_prev.shape[0]} vs vector of length {a.size}")
    _check_unitary(v_prev)
    b = b_from_a(v_prev, a)
    c, s = np.cos(theta), np.sin(theta)
    m = a.size
    out = np.empty((m + 1, m + 1), dtype=cxcore.DTYPE)
    out[:m, :m] = v_prev + (1.0 - c) * np.outer(a, b.conj())
    out[:m, m] = s * a
    out[m, :m] = s * b.conj()
    out[m, m] = c
    return out


def a_factor_block(theta: float, a) -> np.ndarray:
    """``[[I - (1-c)|A><A|, s|A>], [-s<A|, c]]`` of size ``len(a) + 1``."""
    a = cxcore.as_vector(a)
    _check_unit(a)
    c, s = np.cos(theta), np.sin(theta)
    m = a.size
    out = np.empty((m + 1, m + 1), dtype=cxcore.DTYPE)
    out[:m, :m] = np.eye(m) - (1.0 - c) * np.outer(a, a.conj())
    out[:m, m] = s * a
    out[m, :m] = -s * a.conj()
    out[m, m] = c
    return out


def b_factor_block(theta: float, b) -> np.ndarray:
    """``[[I - (1-c)|B><B|, -s|B>], [s<B|, c]]`` of size ``len(b) + 1``."""
    b = cxcore.as_vector(b)
    _check_unit(b)
    c, s = np.cos(theta), np.sin(theta)
    m = b.size
    out = np.empty((m + 1, m + 1), dtype=cxcore.DTYPE)
    out[:m, :m] = np.eye(m) - (1.0 - c) * np.outer(b, b.conj())
    out[:m, m] = -s * b
    out[m, :m] = s * b.conj()
    out[m, m] = c
    return out


def embed_factor(block, n: int) -> np.ndarray:
    """Place ``block`` in the top-left corner of ``I_n``."""
    block = cxcore.as_square(block)
    k = block.shape[0]
    if k > n:
        raise ShapeError(f"block of size {k} does not fit in dimension {n}")
    out = np.eye(n, dtype=cxcore.DTYPE)
    out[:k, :k] = block
    return out


def step_a(v_prev, theta: float, a) -> np.ndarray:
    """``A-factor @ diag(v_prev, 1)``."""
    v_prev = cxcore.as_square(v_prev)
    a = cxcore.as_vector(a)
    if v_prev.shape[0] != a.size:
        raise ShapeError(f"block of size {v_prev.shape[0]} vs vector of length {a.size}")
    _check_unitary(v_prev)
    return cxcore.matmul(a_factor_block(theta, a), _direct_sum_one(v_prev))


def step_b(v_prev, theta: float, b) -> np.ndarray:
    """``diag(v_prev, 1) @ B-factor``."""
    v_prev = cxcore.as_square(v_prev)
    b = cxcore.as_vector(b)
    if v_prev.shape[0] != b.size:
        raise ShapeError(f"block of size {v_prev.shape[0]} vs vector of length {b.size}")
    _check_unitary(v_prev)
    return cxcore.matmul(_direct_sum_one(v_prev), b_factor_block(theta, b))


def _validate_levels(levels: Sequence[FactorSpec], n: int, kind: FactorKind) -> None:
    if n < 1:
        raise ParameterError(f"dimension must be at least 1, got {n}")
    if len(levels) != n - 1:
        raise ParameterError(f"dimension {n} needs {n - 1} levels, got {len(levels)}")
    for j, spec in enumerate(levels, start=1):
        if spec.level != j:
            raise ParameterError(f"levels out of order: position {j} holds level {spec.level}")
        if spec.kind is not kind:
            raise ParameterError(f"level {j} is {spec.kind.value}-form, expected {kind.value}-form")


def compose_a(levels: Sequence[FactorSpec], n: int) -> np.ndarray:
    """Product ``A_{n,n-1} ... A_{n,1}`` of embedded A-factors.

    ``levels[j-1]`` is the level-``j`` spec. Products are accumulated left to
    right in the written order.
    """
    _validate_levels(levels, n, FactorKind.A)
    out = np.eye(n, dtype=cxcore.DTYPE)
    for spec in reversed(levels):
        out = out @ embed_factor(a_factor_block(spec.theta, spec.vector), n)
    return out


def compose_b(levels: Sequence[FactorSpec], n: int) -> np.ndarray:
    """Product ``B_{n,1} ... B_{n,n-1}`` of embedded B-factors.

    Each B vector must be paired with the partial product below it, see
    :func:`paired_b_levels`.
    """
    _validate_levels(levels, n, FactorKind.B)
    out = np.eye(n, dtype=cxcore.DTYPE)
    for spec in levels:
        out = out @ embed_factor(b_factor_block(spec.theta, spec.vector), n)
    return out


def paired_b_levels(levels: Sequence[FactorSpec]) -> list[FactorSpec]:
    """Convert A-form levels into B-form levels producing the same matrix."""
    out = []
    v = np.ones((1, 1), dtype=cxcore.DTYPE)
    for spec in levels:
        if spec.kind is not FactorKind.A:
            raise ParameterError(f"level {spec.level} is not A-form")
        b = b_from_a(v, spec.vector)
        # renormalise to absorb rounding in the partial product
        b = b / np.linalg.norm(b)
        out.append(FactorSpec(spec.level, spec.theta, b, FactorKind.B))
        v = step_a(v, spec.theta, spec.vector)
    return out


def factor_conjugation(j: int, n: int, vj, theta: float, a) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of ``A_{n,j} = diag(V_j, I) B_{n,j} diag(V_j^dagger, I)``.

    Returns ``(lhs, rhs)``, with the B vector on the right paired to ``a``
    through ``vj``.
    """
    vj = cxcore.as_square(vj)
    a = cxcore.as_vector(a)
    if vj.shape[0] != j or a.size != j:
        raise ShapeError(f"level {j} needs a {j}x{j} block and a length-{j} vector")
    if not 1 <= j < n:
        raise ShapeError(f"level {j} is out of range for dimension {n}")
    _check_unitary(vj)
    lhs = embed_factor(a_factor_block(theta, a), n)
    b = b_from_a(vj, a)
    frame = embed_factor(vj, n)
    rhs = frame @ embed_factor(b_factor_block(theta, b), n) @ frame.conj().T
    return lhs, rhs


def compose_full(alpha, beta, levels: Sequence[FactorSpec]) -> np.ndarray:
    """``Phi(alpha) @ compose_a(levels) @ Phi(beta)``."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    n = alpha.size
    if alpha.ndim != 1 or n == 0:
        raise ParameterError("alpha must be a non-empty vector")
    if beta.shape != alpha.shape:
        raise ParameterError(f"alpha has {n} entries but beta has {beta.size}")
    v = compose_a(levels, n)
    return np.exp(1j * alpha)[:, None] * v * np.exp(1j * beta)[None, :]
