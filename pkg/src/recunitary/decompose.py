"""Recover recursion parameters from a unitary matrix.

The inverse runs in two stages. :func:`decompose_raw` peels the matrix one
dimension at a time from the bottom-right corner. Each peel reads ``theta``
and the level vector off the last column, which in the A-form product equals
``(sin(theta) A, cos(theta))`` up to a phase. The result is

    X = A_{n,n-1}(a_{n-1}) ... A_{n,1}(a_1) Phi(psi)

with general complex level vectors. :func:`canonicalize` then moves the
overall phase of every level vector out to the left and right diagonal
phase matrices, giving a :class:`~recunitary.gauge.ParameterSet` in the
canonical gauge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cxcore
from .errors import NotUnitaryError, ShapeError
from .gauge import (
    LevelParams,
    ParameterSet,
    canonicalize_vector,
    vector_to_spherical,
)
from .recursion import FactorKind, FactorSpec, a_factor_block, compose_a, embed_factor

INPUT_TOL = 1e-8
DEGENERACY_THRESHOLD = 1e-12


@dataclass(frozen=True)
class RawLevel:
    j: int
    theta: float
    vector: np.ndarray


@dataclass(frozen=True)
class RawDecomposition:
    """Peel output before gauge fixing.

    ``levels[j-1]`` is level ``j``; ``psi`` holds the residual diagonal phases.
    """

    n: int
    levels: tuple[RawLevel, ...]
    psi: np.ndarray

    def factor_specs(self) -> list[FactorSpec]:
        return [FactorSpec(lev.j, lev.theta, lev.vector, FactorKind.A) for lev in self.levels]

    def reconstruct(self) -> np.ndarray:
        return compose_a(self.factor_specs(), self.n) * np.exp(1j * self.psi)[None, :]


def _check_input(x, tolerance: float) -> np.ndarray:
    x = cxcore.as_square(x)
    dev = cxcore.unitarity_deviation(x)
    if dev > tolerance:
        raise NotUnitaryError(dev, tolerance)
    return x


def peel_last(x, tolerance: float = INPUT_TOL):
    """Split off the last row and column of a unitary matrix.

    Returns ``(theta, a, psi, reduced)`` such that
    ``adjoint(A-factor(theta, a)) @ x == diag(reduced, exp(i psi))``.
    """
    x = _check_input(x, tolerance)
    n = x.shape[0]
    if n < 2:
        raise ShapeError("cannot peel a 1x1 matrix")
    return _peel(x)


def _peel(x: np.ndarray):
    n = x.shape[0]
    corner = x[n - 1, n - 1]
    tail = x[: n - 1, n - 1]
    c = min(abs(corner), 1.0)
    psi = cxcore.arg(corner) if abs(corner) >= DEGENERACY_THRESHOLD else 0.0
    s_tail = np.linalg.norm(tail)
    # sqrt(1 - c^2) loses accuracy near c = 1; the tail norm does not
    s = min(s_tail, 1.0)
    if s < DEGENERACY_THRESHOLD:
        theta = 0.0
        a = np.zeros(n - 1, dtype=cxcore.DTYPE)
        a[0] = 1.0
    else:
        theta = float(np.arctan2(s, c))
        a = tail * np.exp(-1j * psi) / s_tail
    factor = embed_factor(a_factor_block(theta, a), n)
    rotated = factor.conj().T @ x
    return theta, a, psi, rotated[: n - 1, : n - 1]


def decompose_raw(x, tolerance: float = INPUT_TOL) -> RawDecomposition:
    """Peel ``x`` down to a 1x1 phase, recording every level."""
    x = _check_input(x, tolerance)
    n = x.shape[0]
    levels = []
    psi = np.zeros(n)
    current = x
    for size in range(n, 1, -1):
        theta, a, psi[size - 1], current = _peel(current)
        levels.append(RawLevel(size - 1, theta, a))
    psi[0] = cxcore.arg(current[0, 0])
    return RawDecomposition(n, tuple(reversed(levels)), psi)


def canonicalize(raw: RawDecomposition) -> ParameterSet:
    """Gauge-fix a raw decomposition.

    Levels are processed from ``j = 1`` upward. The overall phase ``eta`` of
    level ``j``'s vector is removed through

        A-factor(e^{i eta} a) = D A-factor(a) D^dagger,  D = e^{-i eta} at slot j+1.

    ``D^dagger`` is diagonal and merges into ``Phi(psi)`` on the right. ``D``
    moves leftward past every higher factor through
    ``F(b) D = D F(D^dagger b)``, which multiplies component ``j+1`` of that
    factor's vector by ``e^{i eta}``, and ends up in ``Phi(alpha)``.
    """
    n = raw.n
    vectors = [np.array(lev.vector, dtype=cxcore.DTYPE) for lev in raw.levels]
    alpha = np.zeros(n)
    beta = np.array(raw.psi, dtype=float)
    levels = []
    for j in range(1, n):
        lev = raw.levels[j - 1]
        vec, eta = canonicalize_vector(vectors[j - 1])
        alpha[j] -= eta
        beta[j] += eta
        for higher in vectors[j:]:
            higher[j] *= np.exp(1j * eta)
        levels.append(LevelParams(j, lev.theta, vector_to_spherical(vec)))
    alpha += beta[0]
    beta -= beta[0]
    return ParameterSet(
        tuple(cxcore.wrap_angle(alpha)), tuple(cxcore.wrap_angle(beta)), tuple(levels)
    )


def decompose(x, tolerance: float = INPUT_TOL) -> ParameterSet:
    """Canonical parameters of the unitary matrix ``x``.

    Raises:
        NotUnitaryError: if ``x`` deviates from unitarity by more than
            ``tolerance``.
    """
    return canonicalize(decompose_raw(x, tolerance))
