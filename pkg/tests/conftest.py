import pathlib

import pytest
from hypothesis import HealthCheck, settings

from intervalstruct import Assignment, make_universe
from intervalstruct._kernels import HAVE_NUMBA, use_backend

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DATA = pathlib.Path(__file__).parent / "data"

# Worked example tables, copied from the source text (theta labels t1..t3).
WORKED_LOWER = {
    "": "",
    "t1": "w1,w2",
    "t2": "w4",
    "t3": "",
    "t1,t2": "w1,w2,w4",
    "t1,t3": "w1,w2",
    "t2,t3": "w4,w5",
    "t1,t2,t3": "w1,w2,w3,w4,w5",
}
WORKED_UPPER = {
    "": "",
    "t1": "w1,w2,w3",
    "t2": "w3,w4,w5",
    "t3": "w3,w5",
    "t1,t2": "w1,w2,w3,w4,w5",
    "t1,t3": "w1,w2,w3,w5",
    "t2,t3": "w3,w4,w5",
    "t1,t2,t3": "w1,w2,w3,w4,w5",
}
WORKED_BSA = {"t1": "w1,w2", "t2": "w4", "t2,t3": "w5", "t1,t2,t3": "w3"}
WORKED_NORMALIZED = {"t1,t2": "w1,w2,w4", "t1,t3": "w1,w2", "t2,t3": "w4,w5", "t1,t2,t3": "w3"}


def labels(text):
    return [s for s in text.split(",") if s]


@pytest.fixture(scope="session")
def W5():
    return make_universe(["w1", "w2", "w3", "w4", "w5"])


@pytest.fixture(scope="session")
def T3():
    return make_universe(["t1", "t2", "t3"])


@pytest.fixture(scope="session")
def worked(T3, W5):
    s, x = T3.subset, W5.subset
    return Assignment(
        T3,
        W5,
        lower={
            s(["t1", "t2"]): x(["w1", "w4"]),
            s(["t1", "t3"]): x(["w1", "w2"]),
            T3.full: x(["w3"]),
        },
        upper={s(["t3"]): x(["w3", "w5"]), s(["t1"]): x(["w1", "w2", "w3"])},
    )


def table_of(theta, w, mapping):
    """Frozen label table -> {theta mask: w mask}."""
    return {theta.subset(labels(k)).mask: w.subset(labels(v)).mask for k, v in mapping.items()}


BACKENDS = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    with use_backend(request.param):
        yield request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
