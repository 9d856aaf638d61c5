import random
from fractions import Fraction

import pytest

from copotensor.tensor import SymTensor, SymTensorBuilder, canonical_tuples


def rand_rational_tensor(rng: random.Random, n: int, d: int,
                         lo: int = -8, hi: int = 8, denom: int = 8) -> SymTensor:
    """Dense random tensor with entries k/denom, k in [lo, hi]."""
    b = SymTensorBuilder(n, d)
    for key in canonical_tuples(n, d):
        b.set(key, Fraction(rng.randint(lo, hi), denom))
    return b.build()


def rand_nonneg_tensor(rng: random.Random, n: int, d: int,
                       hi: int = 8, denom: int = 8) -> SymTensor:
    b = SymTensorBuilder(n, d)
    for key in canonical_tuples(n, d):
        b.set(key, Fraction(rng.randint(0, hi), denom))
    return b.build()


def rand_diag_dominant_tensor(rng: random.Random, n: int, d: int,
                              off_scale: int = 2, denom: int = 16) -> SymTensor:
    """Positive diagonal, small mixed entries of either sign; strictly
    copositive for small enough off_scale."""
    b = SymTensorBuilder(n, d)
    for key in canonical_tuples(n, d):
        if len(set(key)) == 1:
            b.set(key, Fraction(rng.randint(denom, 2 * denom), denom))
        else:
            b.set(key, Fraction(rng.randint(-off_scale, off_scale), denom))
    return b.build()


def example31_tensor() -> SymTensor:
    """Order-4, dimension-3 tensor: zero first diagonal, unit other
    diagonals, 5 everywhere else."""
    b = SymTensorBuilder(3, 4, Fraction(5))
    b.set((1, 1, 1, 1), Fraction(0))
    b.set((2, 2, 2, 2), Fraction(1))
    b.set((3, 3, 3, 3), Fraction(1))
    return b.build()


EXAMPLE31_JSON = """\
{"name": "example-3x3x3x3-order4", "n": 3, "d": 4, "default": "5",
 "entries": [
   {"idx": [1,1,1,1], "val": "0"},
   {"idx": [2,2,2,2], "val": "1"},
   {"idx": [3,3,3,3], "val": "1"}]}
"""


@pytest.fixture
def example31():
    return example31_tensor()


@pytest.fixture
def rng():
    return random.Random(0xC0705)
