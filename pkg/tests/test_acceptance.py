"""Exit criteria. Each test is one criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py``; a pass/fail line per criterion
is printed in the "acceptance criteria" summary section.
"""

import json
import time

import numpy as np
import pytest

from recunitary import cxcore
from recunitary.cli import main
from recunitary.decompose import decompose
from recunitary.formats import FormatError, matrix_from_dict, matrix_to_dict, params_from_dict
from recunitary.gauge import (
    LevelParams,
    ParameterSet,
    SphericalCoords,
    compose_parameters,
    levels_to_factor_specs,
    parameter_count,
)
from recunitary.recursion import (
    FactorSpec,
    b_from_a,
    compose_a,
    compose_b,
    factor_conjugation,
    mixed_form,
    paired_b_levels,
    step_a,
    step_b,
)
from recunitary.toolkit import FitConfig, fit, haar_unitary, sample_parameters

from conftest import random_a_levels, random_unit_vector, random_unitary

pytestmark = pytest.mark.acceptance


def max_abs(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def test_n2_closed_form(criterion):
    # the diagonal is evaluated as 1 - (1 - cos), which can differ from cos by one ulp
    eps = np.finfo(float).eps
    start = time.perf_counter()
    worst = 0.0
    for theta in np.linspace(-np.pi, np.pi, 100):
        v = compose_a([FactorSpec(1, theta, [1.0])], 2)
        expected = np.array([[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]])
        worst = max(worst, max_abs(v, expected))
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"max deviation {worst:.2e} (tol eps = {eps:.2e}), {elapsed:.3f}s"
    assert worst <= eps
    assert elapsed < 1.0


def test_form_equivalence(criterion):
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = 0.0
    for n in (3, 5, 8, 16):
        for _ in range(50):
            levels = random_a_levels(rng, n)
            by_mixed = by_a = by_b = np.ones((1, 1), dtype=complex)
            for spec in levels:
                by_mixed = mixed_form(by_mixed, spec.theta, spec.vector)
                by_b = step_b(by_b, spec.theta, b_from_a(by_a, spec.vector))
                by_a = step_a(by_a, spec.theta, spec.vector)
            ca = compose_a(levels, n)
            cb = compose_b(paired_b_levels(levels), n)
            worst = max(worst, *(max_abs(ca, m) for m in (by_mixed, by_a, by_b, cb)))
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"max deviation {worst:.2e} (tol 1e-12), {elapsed:.2f}s"
    assert worst <= 1e-12
    assert elapsed < 10.0


def test_factor_relation(criterion):
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 11))
        j = int(rng.integers(1, n))
        lhs, rhs = factor_conjugation(
            j, n, random_unitary(rng, j), rng.uniform(-np.pi, np.pi), random_unit_vector(rng, j)
        )
        worst = max(worst, max_abs(lhs, rhs))
    criterion["detail"] = f"max deviation {worst:.2e} (tol 1e-13)"
    assert worst <= 1e-13


def _zero_file(n):
    return {
        "n": n,
        "alpha": [0.0] * n,
        "beta": [0.0] * n,
        "levels": [{"theta": 0.0, "gammas": [0.0] * (j - 1), "deltas": [0.0] * (j - 1)} for j in range(1, n)],
    }


def test_parameter_counting(criterion):
    for n in range(1, 51):
        assert parameter_count(n, "V") == (n - 1) ** 2
        assert parameter_count(n, "X") == n * n
        doc = _zero_file(n)
        p = params_from_dict(doc)
        level_dof = sum(1 + len(lev.coords.gammas) + len(lev.coords.deltas) for lev in p.levels)
        assert level_dof == (n - 1) ** 2
        # alpha, beta and levels minus the pinned beta[0]
        assert p.to_vector().size - 1 == n * n
        for key in ("alpha", "beta"):
            for bad in (doc[key] + [0.0], doc[key][:-1]):
                with pytest.raises(FormatError):
                    params_from_dict({**doc, key: bad})
        if n > 1:
            last = dict(doc["levels"][-1])
            for key in ("gammas", "deltas"):
                with pytest.raises(FormatError):
                    params_from_dict({**doc, "levels": doc["levels"][:-1] + [{**last, key: last[key] + [0.0]}]})
            with pytest.raises(FormatError):
                params_from_dict({**doc, "levels": doc["levels"] + [doc["levels"][-1]]})
    criterion["detail"] = "n = 1..50"


def test_unitarity_and_special_unitarity(criterion):
    start = time.perf_counter()
    worst_dev = worst_det = 0.0
    for n in (2, 4, 8, 16, 32, 64):
        for seed in range(20):
            v = compose_a(levels_to_factor_specs(sample_parameters(n, seed)), n)
            dev = cxcore.unitarity_deviation(v)
            assert dev <= 1e-12 * n
            worst_dev = max(worst_dev, dev / n)
            worst_det = max(worst_det, abs(np.linalg.det(v) - 1))
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"max dev/n {worst_dev:.2e}, max |det-1| {worst_det:.2e}, {elapsed:.2f}s"
    assert worst_det <= 1e-11
    assert elapsed < 30.0


def _boundary(p: ParameterSet, rng) -> ParameterSet:
    edges = (0.0, np.pi / 2)
    levels = []
    for lev in p.levels:
        theta = rng.choice(edges) if rng.random() < 0.5 else lev.theta
        gammas = [rng.choice(edges) if rng.random() < 0.5 else g for g in lev.coords.gammas]
        levels.append(LevelParams(lev.j, theta, SphericalCoords(gammas, lev.coords.deltas)))
    return ParameterSet(p.alpha, p.beta, levels)


def test_round_trip_constructed(criterion):
    rng = np.random.default_rng(3)
    worst_param = worst_boundary = 0.0
    for n in (2, 3, 4, 8):
        for seed in range(100):
            p = sample_parameters(n, 1000 * n + seed)
            q = decompose(compose_parameters(p))
            worst_param = max(worst_param, float(np.max(np.abs(cxcore.wrap_angle(p.to_vector() - q.to_vector())))))
            b = _boundary(p, rng)
            xb = compose_parameters(b)
            worst_boundary = max(worst_boundary, cxcore.frobenius_distance(compose_parameters(decompose(xb)), xb) / n)
    criterion["detail"] = f"interior max param err {worst_param:.2e} (tol 1e-9), boundary max err/n {worst_boundary:.2e}"
    assert worst_param <= 1e-9
    assert worst_boundary <= 1e-9


def test_round_trip_haar(criterion):
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 5, 10, 32):
        for seed in range(100):
            x = haar_unitary(n, seed)
            worst = max(worst, cxcore.frobenius_distance(compose_parameters(decompose(x)), x) / n)
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"max err/n {worst:.2e} (tol 1e-9), {elapsed:.2f}s"
    assert worst <= 1e-9
    assert elapsed < 60.0


def test_gauge_identity(criterion):
    rng = np.random.default_rng(4)
    worst = 0.0
    for case in range(50):
        n = int(rng.integers(2, 9))
        levels = levels_to_factor_specs(sample_parameters(n, case))
        eta = rng.uniform(-np.pi, np.pi)
        top = levels[-1]
        rephased = levels[:-1] + [FactorSpec(top.level, top.theta, np.exp(1j * eta) * top.vector)]
        d = np.ones(n, dtype=complex)
        d[-1] = np.exp(-1j * eta)
        expected = np.diag(d) @ compose_a(levels, n) @ np.diag(d.conj())
        worst = max(worst, max_abs(compose_a(rephased, n), expected))
    criterion["detail"] = f"max deviation {worst:.2e} (tol 1e-13)"
    assert worst <= 1e-13


def test_fit(criterion):
    rng = np.random.default_rng(5)
    unitary_worst = 0.0
    for k in range(20):
        n = 1 + k % 6
        _, d = fit(haar_unitary(n, 500 + k))
        unitary_worst = max(unitary_worst, d)
    noisy_worst = 0.0
    for k in range(5):
        n = 2 + k
        noise = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        noise *= 0.01 / np.linalg.norm(noise)
        _, d = fit(haar_unitary(n, 600 + k) + noise, FitConfig(rng_seed=k))
        noisy_worst = max(noisy_worst, d)
    criterion["detail"] = f"unitary max {unitary_worst:.2e} (tol 1e-8), perturbed max {noisy_worst:.4f} (tol 0.011)"
    assert unitary_worst <= 1e-8
    assert noisy_worst <= 0.011


def test_cli_pipeline(criterion, tmp_path, capsys):
    worst = 0.0
    for n in (1, 2, 4, 7):
        p, x1, q, x2 = (str(tmp_path / f"{name}{n}.json") for name in ("p", "x1", "q", "x2"))
        assert main(["sample", "--n", str(n), "--seed", str(n), p]) == 0
        assert main(["compose", p, x1]) == 0
        assert main(["decompose", x1, q]) == 0
        assert main(["compose", q, x2]) == 0
        a = matrix_from_dict(json.loads(open(x1).read()))
        b = matrix_from_dict(json.loads(open(x2).read()))
        assert max_abs(a, b) <= 1e-9 * n
        worst = max(worst, max_abs(a, b) / n)

    good = tmp_path / "good.json"
    good.write_text(json.dumps(matrix_to_dict(np.eye(2))))
    bad_unitary = tmp_path / "scaled.json"
    bad_unitary.write_text(json.dumps(matrix_to_dict(1.1 * np.eye(2))))
    nan_file = tmp_path / "nan.json"
    nan_file.write_text('{"n": 1, "re": [[NaN]], "im": [[0.0]]}')
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    malformed = tmp_path / "malformed.json"
    malformed.write_text(json.dumps({"n": 2, "alpha": [0, 0], "beta": [0, 0], "levels": [{"theta": 0.1, "gammas": [1.0], "deltas": []}]}))
    out = str(tmp_path / "out.json")

    assert main(["verify", str(good)]) == 0
    assert main(["compose", str(tmp_path / "missing.json"), out]) == 1
    assert main(["compose", str(broken), out]) == 2
    capsys.readouterr()
    assert main(["compose", str(malformed), out]) == 2
    assert "levels[0].gammas" in capsys.readouterr().err
    assert main(["verify", str(bad_unitary)]) == 3
    assert main(["decompose", str(bad_unitary), out]) == 3
    assert main(["fit", str(nan_file), out]) == 4
    criterion["detail"] = f"max err/n {worst:.2e} (tol 1e-9); exit codes 0/1/2/3/4 checked"
