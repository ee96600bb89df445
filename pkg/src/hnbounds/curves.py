"""Split vector bundles on the projective line, and genus-g h^0 envelopes.

A :class:`SplitBundle` is a direct sum of line bundles O(a_1) + ... + O(a_r)
on P^1, recorded as the multiset of its twists.  On P^1 everything is exact:
h^0 is a sum of monomial counts, the slope data is the sorted twist multiset,
tensor products add twists pairwise, and the successive minima are the twists
themselves.

For curves of positive genus there is no h^0 engine here; the honest surface
is :func:`h0_interval`, which returns the tightest interval guaranteed by the
slope data alone.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .hn import HNType, make_hn_type
from .scalars import Scalar

__all__ = ["SplitBundle", "CurveContext", "h0_interval"]


@dataclass(frozen=True)
class SplitBundle:
    """Direct sum of O(a_i) on P^1; ``twists`` is stored sorted decreasing."""

    twists: tuple[int, ...]

    def __init__(self, twists):
        twists = tuple(sorted((int(a) for a in twists), reverse=True))
        if not twists:
            raise ValueError("a split bundle needs at least one summand")
        object.__setattr__(self, "twists", twists)

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def degree(self) -> int:
        return sum(self.twists)

    def h0(self) -> int:
        """Global sections: each O(a) contributes max(a + 1, 0) monomials."""
        return sum(max(a + 1, 0) for a in self.twists)

    def hn_type(self) -> HNType:
        """Slope data: twists aggregated by value, sorted decreasing."""
        counts = Counter(self.twists)
        return make_hn_type(
            (counts[a], Scalar.exact(a)) for a in sorted(counts, reverse=True)
        )

    def tensor(self, other: "SplitBundle") -> "SplitBundle":
        return SplitBundle(a + b for a in self.twists for b in other.twists)

    def dual(self) -> "SplitBundle":
        return SplitBundle(-a for a in self.twists)

    def twist(self, c: int) -> "SplitBundle":
        """Tensor with the line bundle O(c)."""
        return SplitBundle(a + c for a in self.twists)

    def minima(self) -> list[Scalar]:
        """Successive minima of the height filtration, largest first.

        For a split bundle on P^1 the i-th minimum is the i-th largest twist:
        the line subbundles O(a_i) realize these heights, and no subsheaf does
        better.  Consistency with the slope data is witnessed by
        sum(max(minima, 0)) == deg_plus(hn_type()).
        """
        return [Scalar.exact(a) for a in self.twists]

    def to_json(self):
        """Sorted JSON integer array (ascending, a stable wire format)."""
        return sorted(self.twists)

    @classmethod
    def from_json(cls, data) -> "SplitBundle":
        return cls(int(a) for a in data)


@dataclass(frozen=True)
class CurveContext:
    """A smooth projective curve known only through its genus."""

    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be a nonnegative integer")


def h0_interval(h: HNType, ctx: CurveContext) -> tuple[Scalar, Scalar]:
    """Tightest interval guaranteed for h^0 of a bundle with slope data ``h``
    on a curve of the given genus.

    Intersects, over the cases whose hypotheses hold:

    * base estimate  |h^0 - deg+| <= rank * max(g - 1, 1);
    * mu_max < 0        ==>  h^0 = 0;
    * mu_min > 2g - 2   ==>  h^0 = deg + rank (1 - g)   (Riemann-Roch range);
    * mu_min > 0        ==>  |h^0 - deg| <= rank |g - 1|.

    The lower end is clamped at 0.  For slope data realizable by an actual
    bundle the cases are mutually consistent; formally inconsistent inputs
    raise ValueError rather than returning an empty interval.
    """
    g = ctx.genus
    rank = Scalar.exact(h.rank)
    deg = h.degree()
    deg_plus = h.deg_plus()
    mu_max, mu_min = h.slope_extremes()
    base_pad = rank * Scalar.exact(max(g - 1, 1))
    lo, hi = deg_plus - base_pad, deg_plus + base_pad

    zero = Scalar.exact(0)
    if mu_max < zero:
        lo, hi = _intersect(lo, hi, zero, zero)
    if mu_min > Scalar.exact(2 * g - 2):
        point = deg + rank * Scalar.exact(1 - g)
        lo, hi = _intersect(lo, hi, point, point)
    if mu_min > zero:
        pad = rank * Scalar.exact(abs(g - 1))
        lo, hi = _intersect(lo, hi, deg - pad, deg + pad)

    if lo < zero:
        lo = zero
    if lo > hi:
        raise ValueError("slope data is not realizable by a bundle of this genus")
    return (lo, hi)


def _intersect(lo, hi, lo2, hi2):
    if lo2 > lo:
        lo = lo2
    if hi2 < hi:
        hi = hi2
    return lo, hi
