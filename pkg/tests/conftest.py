from pathlib import Path

import pytest

from rupminer.dataset import parse_profit_table, parse_transactions

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def ptable():
    return parse_profit_table((DATA / "table1_profits.txt").read_text())


@pytest.fixture
def db(ptable):
    return parse_transactions((DATA / "table1.txt").read_text(), ptable)


@pytest.fixture
def ids(db):
    """Map a label string like 'acd' to a tuple of item ids."""
    return lambda labels: db.ids(labels)


ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test body calls ``check(ok, detail)``."""
    name = request.node.get_closest_marker("criterion").args[0]

    def check(ok: bool, detail: str = ""):
        ACCEPTANCE[name] = (bool(ok), detail)
        assert ok, f"{name}: {detail}"

    return check


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
