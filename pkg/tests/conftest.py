import math

import pytest

from minkarr import Family, Homothet, NormBody, gen_hypercube_tight, gen_pentagon_tight

ACCEPTANCE_LINES = []


@pytest.fixture
def pentagon():
    return gen_pentagon_tight()


@pytest.fixture
def pentagon_family(pentagon):
    return pentagon.family


@pytest.fixture
def pentagon_plus_center(pentagon):
    members = pentagon.red + (Homothet((0.0, 0.0), pentagon.red[0].ratio),)
    return Family(pentagon.body, members)


@pytest.fixture
def cube_family():
    def make(d):
        return gen_hypercube_tight(d).family
    return make


@pytest.fixture
def record_acceptance():
    def record(number, name, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} {detail}".rstrip())
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def euclid_disk_family(points, radius=1.0):
    return Family(NormBody.euclidean(2), tuple(Homothet(p, radius) for p in points))


PENTAGON_SIDE = 2 * math.sin(math.pi / 5)
