import math

import pytest

from combent import ChainParams

K_SET = (math.pi / 5, math.pi / 3, math.pi / 2, 3 * math.pi / 4)


@pytest.fixture(params=K_SET, ids=["pi/5", "pi/3", "pi/2", "3pi/4"])
def params(request):
    return ChainParams(request.param)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""
    log = request.config.stash[_ACCEPTANCE]

    def record(number, title, ok, detail):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title} [{detail}]"
        log.append((number, line))
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_ACCEPTANCE, [])
    if log:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(log):
            terminalreporter.write_line(line)
