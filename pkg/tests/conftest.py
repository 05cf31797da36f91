import random

import numpy as np
import pytest
from hypothesis import strategies as st

from fuzzyre import _kernels
from fuzzyre.regex import Concat, Empty, Epsilon, Scalar, Star, Sum, Sym

_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    entry = _results.setdefault(number, {"title": title, "passed": 0, "failed": 0})
    if rep.failed:
        entry["failed"] += 1
    elif rep.when == "call" and rep.passed:
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        r = _results[number]
        status = "PASS" if r["failed"] == 0 and r["passed"] > 0 else "FAIL"
        terminalreporter.write_line(
            f"criterion {number}: {status}  {r['title']}  ({r['passed']} passed, {r['failed']} failed)"
        )


@pytest.fixture(scope="session", autouse=True)
def _jit_warm():
    _kernels.warmup()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def pyrng():
    return random.Random(20240611)


# hypothesis strategies for expressions

LETTERS = ("x", "y", "z")
SCALARS = (0.0, 0.25, 0.5, 0.75, 1.0)


def regexes(letters=LETTERS, scalars=SCALARS, max_leaves=8):
    leaves = st.one_of(
        st.just(Empty()),
        st.just(Epsilon()),
        st.sampled_from(letters).map(Sym),
    )

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda t: Sum(*t)),
            st.tuples(children, children).map(lambda t: Concat(*t)),
            children.map(Star),
            st.tuples(st.sampled_from(scalars), children).map(lambda t: Scalar(*t)),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)
