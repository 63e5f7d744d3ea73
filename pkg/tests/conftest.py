import numpy as np
import pytest

from recunitary import FactorKind, FactorSpec


def random_unit_vector(rng, j):
    v = rng.standard_normal(j) + 1j * rng.standard_normal(j)
    return v / np.linalg.norm(v)


def random_a_levels(rng, n):
    return [
        FactorSpec(j, rng.uniform(-np.pi, np.pi), random_unit_vector(rng, j), FactorKind.A)
        for j in range(1, n)
    ]


def random_unitary(rng, n):
    # independent of the package: QR of a Ginibre matrix with phase fix
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def rot2(theta):
    return np.array([[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]])


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the outcome is printed in the summary."""
    entry = {"name": request.node.name, "detail": ""}
    _ACCEPTANCE.append(entry)
    yield entry


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and "criterion" in item.fixturenames:
        for entry in _ACCEPTANCE:
            if entry["name"] == item.name:
                entry["passed"] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for entry in _ACCEPTANCE:
        verdict = "PASS" if entry.get("passed") else "FAIL"
        terminalreporter.write_line(f"{verdict}  {entry['name']}  {entry['detail']}")
