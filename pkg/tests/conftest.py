import random

import pytest

from rpla.pla import PlaSpec, parse_pla

PARITY_PLA = ".i 3\n.o 1\n001 1\n010 1\n100 1\n111 1\n.e\n"


@pytest.fixture
def parity_spec():
    return parse_pla(PARITY_PLA)


@pytest.fixture
def parity_file(tmp_path):
    path = tmp_path / "parity.pla"
    path.write_text(PARITY_PLA)
    return path


def random_spec(rng: random.Random, max_n: int = 4, max_m: int = 3) -> PlaSpec:
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    rows = []
    for _ in range(rng.randint(0, 5)):
        cube = "".join(rng.choice("01-") for _ in range(n))
        outs = "".join(rng.choice("01") for _ in range(m))
        rows.append((cube, outs))
    return PlaSpec(n, m, tuple(rows))


# -- acceptance reporting ------------------------------------------------------

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        ok = report.passed
        _criteria[label] = _criteria.get(label, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0][2:])):
        terminalreporter.write_line(f"{'PASS' if _criteria[label] else 'FAIL'}  {label}")
