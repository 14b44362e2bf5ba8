import numpy as np
import pytest

from deltaxai import GaussianPopulation, LinearModel, kernels, sample_population

CASE1 = (100.0, 50.0, 50.0)
CASE2 = (1000.0, 50.0, 50.0)


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    previous = kernels.backend()
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


@pytest.fixture
def case1():
    return LinearModel(np.array(CASE1))


@pytest.fixture
def case2():
    return LinearModel(np.array(CASE2))


@pytest.fixture(scope="session")
def normal3_5000():
    return sample_population(GaussianPopulation.standard(3), 5000, seed=7)


# --- acceptance reporting -------------------------------------------------
import time

_session_start = time.perf_counter()
_criteria = {}
SUITE_BUDGET_S = 300.0


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    cid, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
        _criteria[(cid, item.name)] = (title, rep.outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for (cid, _), (title, outcome, detail) in sorted(_criteria.items()):
        tag = "PASS" if outcome == "passed" else "FAIL"
        tr.write_line(f"[{tag}] {cid:<3} {title}" + (f"  ({detail})" if detail else ""))
    elapsed = time.perf_counter() - _session_start
    tag = "PASS" if elapsed < SUITE_BUDGET_S else "FAIL"
    tr.write_line(f"[{tag}] 8   full suite runtime {elapsed:.1f} s < {SUITE_BUDGET_S:.0f} s")


def pytest_sessionfinish(session, exitstatus):
    if _criteria and time.perf_counter() - _session_start >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1
