import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from besicover.generators import make_points, make_random_ultrametric

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def point_spaces(draw, max_n=9, dims=(1, 2), norms=("l1", "linf", "l2sq")):
    """Small spaces of distinct points with small integer coordinates."""
    dim = draw(st.sampled_from(dims))
    norm = draw(st.sampled_from(norms))
    coords = draw(st.lists(st.tuples(*[st.integers(-4, 4)] * dim), min_size=1, max_size=max_n, unique=True))
    return make_points([tuple(Fraction(c) for c in p) for p in coords], norm)


@st.composite
def ultrametric_spaces(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**16))
    return make_random_ultrametric(n, seed)


@pytest.fixture
def rng():
    return random.Random(1234)


def brute_members(space, center, radius, closed=True):
    """Oracle membership straight from the distance table."""
    out = set()
    for p in range(space.n):
        d = space.dist(center, p)
        r2 = radius * radius if space.squared else radius
        if (d <= r2) if closed else (d < r2):
            out.add(p)
    return out


def np_rng(seed=0):
    return np.random.default_rng(seed)


# -- acceptance summary ------------------------------------------------------
# criterion number -> list of (ok, detail) from its sub-checks

ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str) -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[k]
        ok = all(p[0] for p in parts)
        detail = "; ".join(("" if p[0] else "FAILED: ") + p[1] for p in parts)
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} -- {detail}")
