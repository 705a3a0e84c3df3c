import random

import pytest
from hypothesis import strategies as st

from sandwich.finite_maps import FiniteTransformation, PartialInjection, Permutation


@st.composite
def transformations(draw, n=None, max_n=5):
    n = draw(st.integers(1, max_n)) if n is None else n
    return FiniteTransformation(tuple(draw(st.lists(st.integers(1, n), min_size=n, max_size=n))))


@st.composite
def permutations(draw, n):
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def partial_injections(draw, n=None, max_n=5):
    n = draw(st.integers(1, max_n)) if n is None else n
    perm = draw(st.permutations(range(1, n + 1)))
    keep = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return PartialInjection(tuple(v if k else None for v, k in zip(perm, keep)))


@pytest.fixture
def rng():
    return random.Random(12345)


_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the package")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark and rep.when == "call":
        _ACCEPTANCE.append((mark.args[0], mark.args[1], rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, duration in sorted(_ACCEPTANCE):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  criterion {number:>2}: {title}  ({duration:.2f}s)")
