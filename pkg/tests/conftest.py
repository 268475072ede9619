import os

import numpy as np
import pytest
from hypothesis import settings

from cycleplan import CostParams, Horizon

settings.register_profile("thorough", max_examples=2000, deadline=None)
settings.register_profile("default", deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def paper_horizon():
    return Horizon([(1000, 200), (2000, 200)])


@pytest.fixture
def unit_costs():
    return CostParams(ordering_cost=0.0, holding_cost=1.0)


def random_instances(n, seed, t_range=(2, 8)):
    """Randomized suite: T in t_range, means in [50, 5000], CV in [0.05, 0.4]."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        T = int(rng.integers(t_range[0], t_range[1] + 1))
        means = rng.uniform(50, 5000, T)
        cv = rng.uniform(0.05, 0.4, T)
        horizon = Horizon.from_arrays(means, means * cv)
        costs = CostParams(float(rng.choice([0.0, 50.0, 500.0])), 1.0)
        beta = float(rng.choice([0.90, 0.95, 0.98]))
        out.append((horizon, costs, beta))
    return out


_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split("_")[2])):
        outcome = "PASS" if _criteria[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{outcome}  {name}")
