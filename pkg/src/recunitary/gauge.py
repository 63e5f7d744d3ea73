"""Real coordinates for the recursion levels and the canonical gauge.

A level-``j`` unit vector is written in generalised spherical coordinates:
``j - 1`` polar angles ``gammas`` and ``j - 1`` phases ``deltas``. Component
``k`` (1-based) is ``sin(g_1)...sin(g_{k-1}) cos(g_k) exp(i d_{k-1})`` with
the last component taking no cosine and the first taking no phase. For
``j = 2`` this is ``(cos g, sin g e^{i d})``.

The canonical gauge used throughout the package:

* ``theta`` in ``[0, pi/2]``;
* the first non-negligible component of each level vector real and positive,
  which puts ``gammas`` in ``[0, pi/2]`` and ``deltas`` in ``[-pi, pi)``;
* ``beta[0] == 0``, fixing the constant shift between ``alpha`` and ``beta``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import cxcore
from .errors import NormError, ParameterError
from .recursion import FactorKind, FactorSpec, compose_full

PHASE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class SphericalCoords:
    gammas: tuple[float, ...] = ()
    deltas: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
        if len(self.gammas) != len(self.deltas):
            raise ParameterError(
                f"{len(self.gammas)} gammas but {len(self.deltas)} deltas"
            )

    @property
    def size(self) -> int:
        """Length of the vector these coordinates describe."""
        return len(self.gammas) + 1


@dataclass(frozen=True)
class LevelParams:
    """Angle and vector coordinates of recursion level ``j``."""

    j: int
    theta: float
    coords: SphericalCoords = field(default_factory=SphericalCoords)

    def __post_init__(self):
        if self.j < 1:
            raise ParameterError(f"level index must be >= 1, got {self.j}")
        if self.coords.size != self.j:
            raise ParameterError(
                f"level {self.j} needs {self.j - 1} gammas and deltas, "
                f"got {len(self.coords.gammas)}"
            )
        object.__setattr__(self, "theta", float(self.theta))


@dataclass(frozen=True)
class ParameterSet:
    """Phases ``alpha``, ``beta`` and the levels ``j = 1 .. n-1``."""

    alpha: tuple[float, ...]
    beta: tuple[float, ...]
    levels: tuple[LevelParams, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(x) for x in self.alpha))
        object.__setattr__(self, "beta", tuple(float(x) for x in self.beta))
        object.__setattr__(self, "levels", tuple(self.levels))
        n = len(self.alpha)
        if n < 1:
            raise ParameterError("alpha must have at least one entry")
        if len(self.beta) != n:
            raise ParameterError(f"alpha has {n} entries but beta has {len(self.beta)}")
        if len(self.levels) != n - 1:
            raise ParameterError(f"dimension {n} needs {n - 1} levels, got {len(self.levels)}")
        for pos, lev in enumerate(self.levels, start=1):
            if lev.j != pos:
                raise ParameterError(f"position {pos} holds level {lev.j}")
        values = [*self.alpha, *self.beta]
        for lev in self.levels:
            values += [lev.theta, *lev.coords.gammas, *lev.coords.deltas]
        if not np.all(np.isfinite(values)):
            raise ParameterError("parameter set has non-finite values")

    @property
    def n(self) -> int:
        return len(self.alpha)

    def to_vector(self) -> np.ndarray:
        """Flatten to ``alpha, beta, (theta, gammas, deltas) per level``."""
        out = [*self.alpha, *self.beta]
        for lev in self.levels:
            out += [lev.theta, *lev.coords.gammas, *lev.coords.deltas]
        return np.array(out, dtype=float)

    @classmethod
    def from_vector(cls, n: int, values) -> "ParameterSet":
        values = np.asarray(values, dtype=float)
        if values.size != n * n + 1:
            raise ParameterError(f"dimension {n} needs {n * n + 1} values, got {values.size}")
        alpha, beta = values[:n], values[n:2 * n]
        pos = 2 * n
        levels = []
        for j in range(1, n):
            theta = values[pos]
            gammas = values[pos + 1:pos + j]
            deltas = values[pos + j:pos + 2 * j - 1]
            pos += 2 * j - 1
            levels.append(LevelParams(j, theta, SphericalCoords(gammas, deltas)))
        return cls(alpha, beta, levels)

    @classmethod
    def zeros(cls, n: int) -> "ParameterSet":
        return cls.from_vector(n, np.zeros(n * n + 1))

    def is_canonical(self, tol: float = 1e-12) -> bool:
        """Whether every coordinate lies in the canonical domain."""
        half_pi = np.pi / 2
        if abs(self.beta[0]) > tol:
            return False
        phases = [*self.alpha, *self.beta]
        for lev in self.levels:
            if not -tol <= lev.theta <= half_pi + tol:
                return False
            if any(not -tol <= g <= half_pi + tol for g in lev.coords.gammas):
                return False
            phases += lev.coords.deltas
        return all(-np.pi - tol <= p < np.pi + tol for p in phases)


def spherical_to_vector(coords: SphericalCoords, j: int) -> np.ndarray:
    """Unit vector of length ``j`` described by ``coords``."""
    if coords.size != j:
        raise ParameterError(
            f"length-{j} vector needs {j - 1} gammas and deltas, got {len(coords.gammas)}"
        )
    gammas = np.asarray(coords.gammas, dtype=float)
    # moduli: running sine product times the next cosine, last one takes no cosine
    sines = np.concatenate(([1.0], np.cumprod(np.sin(gammas))))
    cosines = np.concatenate((np.cos(gammas), [1.0]))
    phases = np.concatenate(([0.0], np.asarray(coords.deltas, dtype=float)))
    return sines * cosines * np.exp(1j * phases)


def vector_to_spherical(a, tol: float = 1e-10) -> SphericalCoords:
    """Canonical coordinates of a canonical unit vector.

    Angles and phases left undetermined by a vanishing tail are set to 0.

    Raises:
        NormError: if ``a`` is not unit norm, or its first component is not
            real and non-negative, within ``tol``.
    """
    a = cxcore.as_vector(a)
    if abs(np.linalg.norm(a) - 1.0) > tol:
        raise NormError(f"vector norm {np.linalg.norm(a)!r} is not 1")
    if abs(a[0].imag) > tol or a[0].real < -tol:
        raise NormError(f"first component {a[0]!r} is not real and non-negative")
    j = a.size
    mods = np.abs(a)
    # tails[k] = norm of components k..j-1, summed from the end for accuracy
    tails = np.sqrt(np.cumsum((mods ** 2)[::-1])[::-1])
    gammas = np.zeros(j - 1)
    deltas = np.zeros(j - 1)
    for k in range(j - 1):
        if tails[k] < PHASE_THRESHOLD:
            break
        gammas[k] = np.arctan2(tails[k + 1], mods[k])
        if mods[k + 1] >= PHASE_THRESHOLD:
            deltas[k] = cxcore.arg(a[k + 1])
    return SphericalCoords(tuple(gammas), tuple(deltas))


def canonicalize_vector(a, tol: float = 1e-10) -> tuple[np.ndarray, float]:
    """Strip the overall phase of a unit vector.

    Returns ``(exp(-i eta) a, eta)`` where ``eta`` is the argument of the
    first component with modulus above :data:`PHASE_THRESHOLD`.
    """
    a = cxcore.as_vector(a)
    nrm = np.linalg.norm(a)
    if abs(nrm - 1.0) > tol:
        raise NormError(f"vector norm {nrm!r} is not 1")
    big = np.flatnonzero(np.abs(a) > PHASE_THRESHOLD)
    if big.size == 0:
        raise NormError("vector has no component above the phase threshold")
    eta = cxcore.arg(a[big[0]])
    out = a * np.exp(-1j * eta)
    # the pivot is real positive by construction; drop rounding residue
    out[big[0]] = abs(a[big[0]])
    return out, eta


class Scope(enum.Enum):
    V = "V"
    X = "X"


def parameter_count(n: int, scope: Scope | str = Scope.X) -> int:
    """Real parameters of the core matrix ``V`` or the full matrix ``X``."""
    if n < 1:
        raise ParameterError(f"dimension must be at least 1, got {n}")
    scope = Scope(scope)
    return (n - 1) ** 2 if scope is Scope.V else n * n


def levels_to_factor_specs(p: ParameterSet) -> list[FactorSpec]:
    return [
        FactorSpec(lev.j, lev.theta, spherical_to_vector(lev.coords, lev.j), FactorKind.A)
        for lev in p.levels
    ]


def compose_parameters(p: ParameterSet) -> np.ndarray:
    """Full unitary described by ``p``."""
    return compose_full(p.alpha, p.beta, levels_to_factor_specs(p))
