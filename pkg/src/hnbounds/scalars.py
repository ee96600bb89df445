"""Exact scalars: rational numbers and certified real intervals.

Every numeric quantity in this library is a :class:`Scalar`.  A scalar is
either *rational* (an exact ``fractions.Fraction``, closed under +, -, *, /)
or an *interval* (a pair of arbitrary-precision floats guaranteed to bracket
the true real value).  Geometric quantities (slopes, degrees, volumes,
error terms) stay rational; logarithmic quantities (log-counts, Arakelov
degrees, Stirling-type constants) live in interval mode.

Interval endpoints are dyadic rationals, so mixed rational/interval
comparisons are exact.  A comparison whose outcome is not determined by the
endpoints raises :class:`CertificationError` instead of guessing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from mpmath.ctx_iv import MPIntervalContext

_iv = MPIntervalContext()
_iv.prec = 120

RationalLike = Union[int, Fraction, str, "Scalar"]


class CertificationError(ArithmeticError):
    """A comparison or sign query could not be decided from interval bounds."""


def _raw_to_fraction(raw) -> Fraction:
    """Exact value of a raw mpf endpoint tuple (endpoints are dyadic)."""
    sign, man, exp, _ = raw
    if man == 0 and exp != 0:
        raise CertificationError("interval endpoint is not finite")
    value = Fraction(int(man), 1) * (Fraction(2) ** exp)
    return -value if sign else value


def _fraction_to_iv(f: Fraction):
    """An interval guaranteed to contain the exact rational f."""
    if f.denominator == 1:
        return _iv.mpf(f.numerator)
    return _iv.mpf(f.numerator) / _iv.mpf(f.denominator)


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


class Scalar:
    """An exact rational or a certified real interval.

    Use :meth:`Scalar.exact` for rational values and the ``log*`` helpers in
    this module for interval-mode quantities.  Arithmetic between a rational
    and an interval promotes the rational exactly (with outward rounding of
    the conversion), so results always contain the true value.
    """

    __slots__ = ("_rat", "_ivl")

    def __init__(self, rat=None, ivl=None):
        if (rat is None) == (ivl is None):
            raise ValueError("Scalar needs exactly one of a rational or an interval")
        self._rat = rat
        self._ivl = ivl

    # -- construction --------------------------------------------------

    @classmethod
    def exact(cls, value: RationalLike) -> "Scalar":
        if isinstance(value, Scalar):
            if not value.is_rational:
                raise TypeError("Scalar.exact got an interval-mode scalar")
            return value
        if isinstance(value, str):
            return cls(rat=_parse_fraction(value))
        if isinstance(value, (int, Fraction)):
            return cls(rat=Fraction(value))
        raise TypeError(f"cannot build an exact Scalar from {type(value).__name__}")

    @classmethod
    def from_interval(cls, ivl) -> "Scalar":
        return cls(ivl=_iv.convert(ivl))

    @classmethod
    def from_fraction_bounds(cls, lo: Fraction, hi: Fraction) -> "Scalar":
        """Interval-mode scalar containing [lo, hi] (outward rounding)."""
        if lo > hi:
            raise ValueError("lower bound exceeds upper bound")
        lo_raw = _fraction_to_iv(lo)._mpi_[0]
        hi_raw = _fraction_to_iv(hi)._mpi_[1]
        return cls(ivl=_iv.make_mpf((lo_raw, hi_raw)))

    # -- mode and bounds -----------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self._rat is not None

    def as_fraction(self) -> Fraction:
        if self._rat is None:
            raise TypeError("interval-mode scalar has no exact rational value")
        return self._rat

    def bounds(self) -> tuple[Fraction, Fraction]:
        """Exact lower and upper bounds (equal in rational mode)."""
        if self._rat is not None:
            return (self._rat, self._rat)
        a_raw, b_raw = self._ivl._mpi_
        return (_raw_to_fraction(a_raw), _raw_to_fraction(b_raw))

    def width(self) -> Fraction:
        lo, hi = self.bounds()
        return hi - lo

    def midpoint(self) -> float:
        lo, hi = self.bounds()
        return float(lo + hi) / 2 if lo != hi else float(lo)

    def interval(self):
        """The value as an mpmath interval (promoting rationals soundly)."""
        if self._ivl is not None:
            return self._ivl
        return _fraction_to_iv(self._rat)

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(rat=Fraction(other))
        return NotImplemented

    def _binop(self, other, ratop, ivop):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._rat is not None and other._rat is not None:
            return Scalar(rat=ratop(self._rat, other._rat))
        return Scalar(ivl=ivop(self.interval(), other.interval()))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b, lambda a, b: a - b)

    def __rsub__(self, other):
        other = Scalar._coerce(other)
        return other.__sub__(self) if other is not NotImplemented else NotImplemented

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        lo, hi = other.bounds()
        if lo <= 0 <= hi:
            raise CertificationError("division by a scalar whose bounds straddle zero")
        return self._binop(other, lambda a, b: a / b, lambda a, b: a / b)

    def __rtruediv__(self, other):
        other = Scalar._coerce(other)
        return other.__truediv__(self) if other is not NotImplemented else NotImplemented

    def __neg__(self):
        if self._rat is not None:
            return Scalar(rat=-self._rat)
        return Scalar(ivl=-self._ivl)

    def __pos__(self):
        return self

    def max0(self) -> "Scalar":
        """max(x, 0), computed as the exact interval extension (never fails)."""
        if self._rat is not None:
            return Scalar(rat=max(self._rat, Fraction(0)))
        lo, hi = self.bounds()
        return Scalar.from_fraction_bounds(max(lo, Fraction(0)), max(hi, Fraction(0)))

    def __abs__(self) -> "Scalar":
        """Interval extension of |x|; exact in rational mode."""
        if self._rat is not None:
            return Scalar(rat=abs(self._rat))
        lo, hi = self.bounds()
        if lo >= 0:
            return self
        if hi <= 0:
            return -self
        return Scalar.from_fraction_bounds(Fraction(0), max(-lo, hi))

    # -- certified comparisons ------------------------------------------

    def _cmp(self, other) -> int:
        """-1, 0, +1 when certified; raises CertificationError otherwise."""
        other = Scalar._coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot compare Scalar with that type")
        alo, ahi = self.bounds()
        blo, bhi = other.bounds()
        if ahi < blo:
            return -1
        if alo > bhi:
            return 1
        if alo == ahi == blo == bhi:
            return 0
        raise CertificationError(
            f"cannot certify comparison of overlapping bounds [{alo},{ahi}] vs [{blo},{bhi}]"
        )

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        alo, ahi = self.bounds()
        blo, bhi = other.bounds()
        if alo == ahi == blo == bhi:
            return True
        if ahi < blo or alo > bhi:
            return False
        raise CertificationError("cannot certify equality of overlapping intervals")

    def __hash__(self):
        if self._rat is not None:
            return hash(self._rat)
        return hash(self.bounds())

    def __reduce__(self):
        if self._rat is not None:
            return (_rebuild_rational, (self._rat,))
        a, b = self._ivl._mpi_
        a = (int(a[0]), int(a[1]), int(a[2]), int(a[3]))
        b = (int(b[0]), int(b[1]), int(b[2]), int(b[3]))
        return (_rebuild_interval, (a, b))

    def certified_nonneg(self) -> bool:
        """True iff the lower bound is >= 0 (the certifiable direction)."""
        return self.bounds()[0] >= 0

    # -- display / serialization ----------------------------------------

    def __repr__(self):
        if self._rat is not None:
            return f"Scalar({self._rat})"
        return f"Scalar(~{self.midpoint():.12g}, width={float(self.width()):.3g})"

    def to_json(self):
        """``"p/q"`` for rationals, ``{"lo": .., "hi": ..}`` for intervals."""
        if self._rat is not None:
            return str(self._rat)
        lo, hi = self.bounds()
        return {"lo": str(lo), "hi": str(hi), "approx": self.midpoint()}

    @classmethod
    def from_json(cls, data) -> "Scalar":
        if isinstance(data, str):
            return cls.exact(data)
        if isinstance(data, int):
            return cls.exact(data)
        if isinstance(data, dict):
            return cls.from_fraction_bounds(Fraction(data["lo"]), Fraction(data["hi"]))
        raise ValueError(f"cannot parse Scalar from {data!r}")


def _rebuild_rational(rat: Fraction) -> Scalar:
    return Scalar(rat=rat)


def _rebuild_interval(a_raw, b_raw) -> Scalar:
    return Scalar(ivl=_iv.make_mpf((a_raw, b_raw)))


PI = Scalar.from_interval(_iv.pi)


def scalar_max(a: Scalar, b: Scalar) -> Scalar:
    """Interval extension of max; exact for rationals."""
    if a.is_rational and b.is_rational:
        return a if a.as_fraction() >= b.as_fraction() else b
    alo, ahi = a.bounds()
    blo, bhi = b.bounds()
    return Scalar.from_fraction_bounds(max(alo, blo), max(ahi, bhi))


def scalar_min(a: Scalar, b: Scalar) -> Scalar:
    if a.is_rational and b.is_rational:
        return a if a.as_fraction() <= b.as_fraction() else b
    alo, ahi = a.bounds()
    blo, bhi = b.bounds()
    return Scalar.from_fraction_bounds(min(alo, blo), min(ahi, bhi))


def log_scalar(x: RationalLike) -> Scalar:
    """Certified ln of a positive rational (or rational Scalar)."""
    x = Scalar.exact(x).as_fraction()
    if x <= 0:
        raise ValueError("log of a non-positive rational")
    return Scalar.from_interval(_iv.log(_fraction_to_iv(x)))


def log_interval(x: Scalar) -> Scalar:
    """Certified ln of any positive scalar."""
    if x.bounds()[0] <= 0:
        raise CertificationError("log requires certified positive bounds")
    return Scalar.from_interval(_iv.log(x.interval()))


def sqrt_interval(x: Scalar) -> Scalar:
    if x.bounds()[0] < 0:
        raise CertificationError("sqrt requires certified nonnegative bounds")
    return Scalar.from_interval(_iv.sqrt(x.interval()))


def exp_interval(x: Scalar) -> Scalar:
    return Scalar.from_interval(_iv.exp(x.interval()))


def log_pi() -> Scalar:
    return Scalar.from_interval(_iv.log(_iv.pi))


def log_factorial(n: int) -> Scalar:
    """ln(n!), certified (exact integer factorial, then interval log)."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    if n <= 1:
        return Scalar.from_interval(_iv.mpf(0))
    return Scalar.from_interval(_iv.log(_iv.mpf(math.factorial(n))))


def log_gamma(x: RationalLike) -> Scalar:
    """Certified ln Gamma(x) for positive rational x."""
    x = Scalar.exact(x).as_fraction()
    if x <= 0:
        raise ValueError("log_gamma requires a positive argument")
    return Scalar.from_interval(_iv.loggamma(_fraction_to_iv(x)))


def log_ball_volume(n: int) -> Scalar:
    """ln of the Lebesgue volume of the unit ball in R^n.

    V(B_n) = pi^(n/2) / Gamma(n/2 + 1).
    """
    if n < 1:
        raise ValueError("ball dimension must be >= 1")
    half_n = Fraction(n, 2)
    return Scalar.exact(half_n) * log_pi() - log_gamma(half_n + 1)


def cos_2pi(frac: Fraction) -> Scalar:
    """Certified cos(2*pi*frac)."""
    angle = 2 * _iv.pi * _fraction_to_iv(Fraction(frac))
    return Scalar.from_interval(_iv.cos(angle))
