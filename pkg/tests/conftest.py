import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lambek_chase.fgab import FGAB
from lambek_chase.pset import PSET
from lambek_chase.harness.generate import generate_diagram, random_group, random_hom

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=200)
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def golden():
    return GOLDEN


# ---- fgab -------------------------------------------------------------------

Z = FGAB.free(1)
Z0 = FGAB.free(0)


def cyc(n):
    return FGAB.cyclic(n)


def mat(X, Y, rows):
    return FGAB.matrix(X, Y, rows)


def times(k, X=Z, Y=Z):
    return FGAB.matrix(X, Y, [[k]])


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def fg_groups(draw):
    return random_group(random.Random(draw(seeds)))


@st.composite
def fg_homs(draw, dom=None, cod=None):
    rng = random.Random(draw(seeds))
    X = dom or random_group(rng)
    Y = cod or random_group(rng)
    return random_hom(rng, X, Y)


@st.composite
def fg_composable(draw):
    rng = random.Random(draw(seeds))
    X, Y, W = (random_group(rng) for _ in range(3))
    return random_hom(rng, X, Y), random_hom(rng, Y, W)


# ---- pset ---------------------------------------------------------------------

sizes = st.integers(min_value=1, max_value=4)


@st.composite
def ps_maps(draw, n=None, m=None):
    n = draw(sizes) if n is None else n
    m = draw(sizes) if m is None else m
    rest = draw(st.lists(st.integers(0, m - 1), min_size=n - 1, max_size=n - 1))
    return PSET.map(n, m, [0] + rest)


@st.composite
def ps_composable(draw):
    a, b, c = draw(sizes), draw(sizes), draw(sizes)
    return draw(ps_maps(a, b)), draw(ps_maps(b, c))


# ---- generated diagrams -------------------------------------------------------

def generated(backend, shape, constraints=()):
    return seeds.map(lambda s: generate_diagram(backend, shape, s, constraints))


# ---- acceptance summary ---------------------------------------------------------

CRITERIA: dict[int, tuple[str, bool, str]] = {}


def record_criterion(n: int, title: str, ok: bool, detail: str = ""):
    CRITERIA[n] = (title, ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}  {detail}")
