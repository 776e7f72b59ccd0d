import numpy as np
import pytest
from hypothesis import settings, strategies as st

from algdiff.arith.field import GF, QQ
from algdiff.arith.poly import BiPoly, UniPoly

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

F7 = GF(7)
F9973 = GF(9973)
FIELDS = [QQ, F7, F9973]


def small_ints(lo=-6, hi=6):
    return st.integers(lo, hi)


@st.composite
def unipolys(draw, field, max_deg=5):
    cs = draw(st.lists(small_ints(), max_size=max_deg + 1))
    return UniPoly(field, cs)


@st.composite
def bipolys(draw, field, max_dx=3, max_dy=3):
    nx = draw(st.integers(1, max_dx + 1))
    ny = draw(st.integers(1, max_dy + 1))
    rows = [[draw(small_ints()) for _ in range(ny)] for _ in range(nx)]
    return BiPoly(field, rows)


def random_bipoly(field, D_X, D_Y, rng):
    """Dense P of the exact bidegree with nonzero discriminant."""
    from algdiff.lab import random_dense
    return random_dense(field, D_X, D_Y, rng)[0]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
