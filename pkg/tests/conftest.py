import random

import pytest
from hypothesis import strategies as st

from realkn.exact_linalg import IntMatrix
from realkn.monodromy import AffineMonodromyRep, Presentation

ACCEPTANCE_RESULTS = []


def elementary_product(rng: random.Random, n: int, steps: int) -> IntMatrix:
    """Random unimodular matrix as a product of elementary integer operations."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        op = rng.randrange(3) if n > 1 else 2
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if op == 0:
            c = rng.choice((-1, 1))
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif op == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return IntMatrix.of(m)


def random_rep(rng: random.Random, n: int, n_gens: int, steps: int = 6) -> AffineMonodromyRep:
    names = tuple(f"g{k}" for k in range(n_gens))
    linear = {g: elementary_product(rng, n, steps) for g in names}
    lam = {g: tuple(rng.randint(-3, 3) for _ in range(n)) for g in names}
    theta = {g: tuple(rng.randint(0, 1) for _ in range(n)) for g in names}
    return AffineMonodromyRep(Presentation(n, names, ()), linear, lam, theta)


@st.composite
def unimodular(draw, n=None):
    n = n if n is not None else draw(st.integers(1, 4))
    seed = draw(st.integers(0, 2**32 - 1))
    steps = draw(st.integers(0, 8))
    return elementary_product(random.Random(seed), n, steps)


@st.composite
def reps(draw, n=None, max_gens=4):
    n = n if n is not None else draw(st.integers(1, 4))
    k = draw(st.integers(1, max_gens))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_rep(random.Random(seed), n, k)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20261018)
