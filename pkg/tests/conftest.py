import numpy as np
import pytest

from pseudobosons.fock import TruncatedFockSpace
from pseudobosons.models import ModelKind, ModelSpec

_ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    """Collect one ``PASS``/``FAIL`` line per acceptance criterion."""

    def record(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  [{detail}]"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def space64():
    return TruncatedFockSpace(64)


DEFAULT_SPECS = [
    ModelSpec(ModelKind.EXTENDED_HO, beta=2.0),
    ModelSpec(ModelKind.SWANSON, theta=0.1),
    ModelSpec(ModelKind.SHIFTED_MOMENTUM, beta=2.0),
    ModelSpec(ModelKind.HYPERBOLIC_SQUEEZE, theta=0.1),
]
