import json
import random
from importlib import resources

import pytest
from hypothesis import strategies as st

from pltr.model import Instance, Job


def load_fixture(name):
    text = resources.files("pltr").joinpath("fixtures", f"{name}.json").read_text()
    return Instance.from_dict(json.loads(text))


@pytest.fixture
def fixture_a():
    return load_fixture("fixture_a")


@pytest.fixture
def fixture_b():
    return load_fixture("fixture_b")


@pytest.fixture
def fixture_inf():
    return load_fixture("fixture_inf")


def random_instance(rng: random.Random, n_max=4, d_max=8, m_max=3, q_choices=(0, 1, 2, 4), p_max=4):
    """Small instance whose jobs always fit their windows."""
    d = rng.randint(0, d_max)
    jobs = []
    for i in range(rng.randint(1, n_max)):
        r = rng.randint(0, d)
        dl = rng.randint(r, d)
        p = rng.randint(1, min(p_max, dl - r + 1))
        jobs.append(Job(f"j{i}", r, dl, p))
    return Instance.create(jobs, rng.randint(1, m_max), rng.choice(q_choices))


@st.composite
def instances(draw, n_max=4, d_max=8, m_max=3, q_max=4):
    d = draw(st.integers(0, d_max))
    n = draw(st.integers(1, n_max))
    jobs = []
    for i in range(n):
        r = draw(st.integers(0, d))
        dl = draw(st.integers(r, d))
        p = draw(st.integers(1, dl - r + 1))
        jobs.append(Job(f"j{i}", r, dl, p))
    return Instance.create(jobs, draw(st.integers(1, m_max)), draw(st.integers(0, q_max)))


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request):
    """Report one PASS/FAIL line for an acceptance criterion."""

    def report(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
        print(line)
        request.config.stash[_ACCEPTANCE].append(line)
        return ok

    return report
