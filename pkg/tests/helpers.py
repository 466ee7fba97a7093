"""Small builders shared by the test modules."""

import random

from mttlab.cxcore import BoundedComplex
from mttlab.models import random_chain_map, random_complex
from mttlab.ratlin import RatMatrix


def pt(dim=1, deg=0, sector=None):
    return BoundedComplex.point(dim, deg, sector=sector)


def two_term(matrix_rows, start=0):
    """``Q^c --M--> Q^r`` in degrees ``start, start+1``."""
    return BoundedComplex.from_sequence(start, [RatMatrix.from_rows(matrix_rows)])


def contractible(deg=0):
    return BoundedComplex.from_sequence(deg, [RatMatrix.identity(1)])


def random_pairs(seed, count, max_dim=3, lo=-2, hi=2):
    rng = random.Random(seed)
    for _ in range(count):
        yield rng, random_complex(rng, max_dim, lo, hi), random_complex(rng, max_dim, lo, hi)


def random_map_between(rng, max_dim=3, lo=-2, hi=2, sector=None):
    X = random_complex(rng, max_dim, lo, hi, sector=sector)
    Y = random_complex(rng, max_dim, lo, hi, sector=sector)
    return random_chain_map(rng, X, Y)
