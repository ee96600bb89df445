import random
from fractions import Fraction

import pytest

from hnbounds import Scalar, SplitBundle, make_hn_type


def random_hn_type(rng, max_segments=4, rational=True):
    """Random valid slope data with strictly decreasing Fraction slopes."""
    k = rng.randint(1, max_segments)
    slopes = set()
    while len(slopes) < k:
        slopes.add(Fraction(rng.randint(-40, 40), rng.randint(1, 8)))
    slopes = sorted(slopes, reverse=True)
    return make_hn_type((rng.randint(1, 4), Scalar.exact(s)) for s in slopes)


def random_split_bundle(rng, max_rank=10, twist_range=10):
    rank = rng.randint(1, max_rank)
    return SplitBundle(rng.randint(-twist_range, twist_range) for _ in range(rank))


@pytest.fixture
def rng():
    return random.Random(20240811)
