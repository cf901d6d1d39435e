import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from archslice import build_aifg, gas_station_text, parse  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def gas_text():
    return gas_station_text()


@pytest.fixture(scope="session")
def gas_spec(gas_text):
    return parse(gas_text)


@pytest.fixture(scope="session")
def gas_graph(gas_spec):
    return build_aifg(gas_spec)


@pytest.fixture
def fixture_text():
    return lambda name: (FIXTURES / name).read_text(encoding="utf-8")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, title = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}. {title}")
