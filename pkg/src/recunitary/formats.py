"""JSON documents for matrices and parameter sets.

``MatrixFile``::

    {"n": 2, "re": [[...], [...]], "im": [[...], [...]]}

``ParameterFile``::

    {"n": 3, "alpha": [a1, a2, a3], "beta": [0.0, b2, b3],
     "levels": [{"theta": t2, "gammas": [], "deltas": []},
                {"theta": t3, "gammas": [g], "deltas": [d]}]}

Level ``j`` (1-based position in ``levels``) holds ``j - 1`` gammas and
``j - 1`` deltas. Angles are in radians. Floats are written with ``repr``
precision so a write/read cycle is exact.

The raw decomposition form (``"raw": true``) replaces ``alpha``/``beta``
with the residual phases ``psi`` and stores each level vector as split
``re``/``im`` lists.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path

import numpy as np

from .decompose import RawDecomposition
from .errors import NonFiniteError, UnitaryError
from .gauge import LevelParams, ParameterSet, SphericalCoords

logger = logging.getLogger(__name__)


class FormatError(UnitaryError):
    """A document does not match its schema. The message names the field."""

    def __init__(self, field: str, problem: str):
        self.field = field
        super().__init__(f"{field}: {problem}")


def load_json(path) -> object:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("<document>", f"invalid JSON ({exc})") from None


def dump_json(path, doc) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _object(doc, field: str) -> dict:
    if not isinstance(doc, dict):
        raise FormatError(field, "expected a JSON object")
    return doc


def _get(doc: dict, key: str, field: str):
    if key not in doc:
        raise FormatError(f"{field}{key}", "missing")
    return doc[key]


def _real(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(field, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteError(f"{field}: non-finite value {value!r}")
    return value


def _reals(value, length: int, field: str) -> list[float]:
    if not isinstance(value, list):
        raise FormatError(field, "expected an array")
    if len(value) != length:
        raise FormatError(field, f"expected {length} entries, got {len(value)}")
    return [_real(v, f"{field}[{k}]") for k, v in enumerate(value)]


def _dimension(doc: dict, field: str = "") -> int:
    n = _get(doc, "n", field)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise FormatError(f"{field}n", f"expected a positive integer, got {n!r}")
    return n


def matrix_to_dict(x) -> dict:
    x = np.asarray(x, dtype=complex)
    return {"n": x.shape[0], "re": x.real.tolist(), "im": x.imag.tolist()}


def matrix_from_dict(doc) -> np.ndarray:
    doc = _object(doc, "<document>")
    n = _dimension(doc)
    parts = []
    for key in ("re", "im"):
        rows = _get(doc, key, "")
        if not isinstance(rows, list) or len(rows) != n:
            raise FormatError(key, f"expected {n} rows")
        parts.append([_reals(row, n, f"{key}[{i}]") for i, row in enumerate(rows)])
    return np.array(parts[0]) + 1j * np.array(parts[1])


def params_to_dict(p: ParameterSet) -> dict:
    return {
        "n": p.n,
        "alpha": list(p.alpha),
        "beta": list(p.beta),
        "levels": [
            {
                "theta": lev.theta,
                "gammas": list(lev.coords.gammas),
                "deltas": list(lev.coords.deltas),
            }
            for lev in p.levels
        ],
    }


def params_from_dict(doc) -> ParameterSet:
    """Parse a ``ParameterFile``; a non-zero ``beta[0]`` is shifted into ``alpha``."""
    doc = _object(doc, "<document>")
    n = _dimension(doc)
    alpha = _reals(_get(doc, "alpha", ""), n, "alpha")
    beta = _reals(_get(doc, "beta", ""), n, "beta")
    raw_levels = _get(doc, "levels", "")
    if not isinstance(raw_levels, list) or len(raw_levels) != n - 1:
        raise FormatError("levels", f"expected {n - 1} entries")
    levels = []
    for j, lev in enumerate(raw_levels, start=1):
        field = f"levels[{j - 1}]."
        lev = _object(lev, field[:-1])
        theta = _real(_get(lev, "theta", field), field + "theta")
        gammas = _reals(_get(lev, "gammas", field), j - 1, field + "gammas")
        deltas = _reals(_get(lev, "deltas", field), j - 1, field + "deltas")
        levels.append(LevelParams(j, theta, SphericalCoords(gammas, deltas)))
    if beta[0] != 0.0:
        logger.warning("beta[0] = %r is not 0; shifting it into alpha", beta[0])
        shift = beta[0]
        alpha = [a + shift for a in alpha]
        beta = [b - shift for b in beta]
    return ParameterSet(alpha, beta, levels)


def raw_to_dict(raw: RawDecomposition) -> dict:
    return {
        "n": raw.n,
        "raw": True,
        "psi": [float(v) for v in raw.psi],
        "levels": [
            {
                "theta": lev.theta,
                "vector": {"re": lev.vector.real.tolist(), "im": lev.vector.imag.tolist()},
            }
            for lev in raw.levels
        ],
    }


def read_matrix(path) -> np.ndarray:
    return matrix_from_dict(load_json(path))


def read_params(path) -> ParameterSet:
    return params_from_dict(load_json(path))
