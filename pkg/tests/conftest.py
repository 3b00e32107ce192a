import random

import pytest

from nichols2.cyclotomic import CycNum, root_of_unity
from nichols2.braidedalg import Braiding


def random_root(rng: random.Random, max_conductor: int = 12) -> CycNum:
    n = rng.randrange(1, max_conductor + 1)
    return root_of_unity(rng.randrange(n), n)


def random_root_braiding(rng: random.Random, max_conductor: int = 12) -> Braiding:
    """Braiding with all entries powers of one root of unity.

    Drawing the four entries from a single conductor keeps the generated
    field small, so the symmetrizer oracle stays at desk scale; mixed
    conductors are exercised by the scalar-level tests instead.
    """
    n = rng.randrange(2, max_conductor + 1)
    return Braiding(*(root_of_unity(rng.randrange(n), n) for _ in range(4)))


def naive_rank(matrix) -> int:
    """Straightforward Gaussian elimination over the field, kept independent
    of the fraction-free implementation it cross-checks."""
    m = [row[:] for row in matrix]
    if not m or not m[0]:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if not m[r][c].is_zero()), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][c].inv()
        m[rank] = [v * inv for v in m[rank]]
        for r in range(rows):
            if r != rank and not m[r][c].is_zero():
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


@pytest.fixture
def rng():
    return random.Random(20240811)
