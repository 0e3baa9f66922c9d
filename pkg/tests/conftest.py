import random

import pytest

from tau2.core import Tau2Presentation


@pytest.fixture
def heisenberg() -> Tau2Presentation:
    return Tau2Presentation.from_nonzero(2, 1, {(1, 1, 2): 1})


def random_presentation(rng: random.Random, n: int, m: int, bound: int) -> Tau2Presentation:
    table = {
        (t, i, j): rng.randint(-bound, bound)
        for t in range(1, m + 1)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    }
    return Tau2Presentation.from_nonzero(n, m, table)


def random_element(rng: random.Random, p: Tau2Presentation, bound: int = 10):
    return p.element(
        [rng.randint(-bound, bound) for _ in range(p.n)],
        [rng.randint(-bound, bound) for _ in range(p.m)],
    )
