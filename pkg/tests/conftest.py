from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from beliefcalc import Frame, MassFunction, build_frame
from beliefcalc.sampling import random_mass

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def frames(draw, min_size: int = 1, max_size: int = 4) -> Frame:
    n = draw(st.integers(min_size, max_size))
    return build_frame([f"w{i}" for i in range(n)])


@st.composite
def masses(draw, min_size: int = 1, max_size: int = 4, max_focal: int = 4) -> MassFunction:
    frame = draw(frames(min_size, max_size))
    full = (1 << frame.size) - 1
    k = draw(st.integers(1, min(max_focal, full)))
    focal = draw(st.lists(st.integers(1, full), min_size=k, max_size=k, unique=True))
    weights = draw(st.lists(st.integers(1, 6), min_size=k, max_size=k))
    total = sum(weights)
    return MassFunction(frame, {c: Fraction(w, total) for c, w in zip(focal, weights)})


@st.composite
def subsets_of(draw, frame: Frame) -> int:
    return draw(st.integers(0, (1 << frame.size) - 1))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1234)


@pytest.fixture
def coin() -> Frame:
    return build_frame(["h", "t"])


def sweep(seed: int, count: int, min_size: int = 1, max_size: int = 4):
    """Deterministic stream of random rational masses."""
    r = random.Random(seed)
    for _ in range(count):
        n = r.randint(min_size, max_size)
        yield random_mass(build_frame([f"w{i}" for i in range(n)]), r)
