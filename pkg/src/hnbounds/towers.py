"""Towers of curve fibrations and their recursive error terms.

A scheme of dimension d+1 presented as d+1 successive fibrations over curves
is summarized by its genus vector (g_0, ..., g_d).  A graded linear series on
it contributes a slope vector (mu_0, ..., mu_d) and a volume vector
(v_0, ..., v_d); from these the error term controlling the degree-one rank is
defined by downward recursion:

    eps_d = max(g_d - 1, 1)
    eps_i = mu_i * eps_{i+1} + (v_{i+1} / (d-i)! + eps_{i+1}) * max(g_i - 1, 1)

The positive-characteristic variant replaces the genus factor by
max(g_i - 1, 1) + ell(g_i) for a caller-supplied affine function ell (the
Riemann-Roch-free constant of the minima filtration; default ell(g) = g + 1).

All scalars here are rational mode: the recursion is a finite composition of
+, *, / and must stay bit-exact.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .scalars import Scalar

__all__ = [
    "Tower",
    "TowerData",
    "AffineFunction",
    "DEFAULT_ELL",
    "NegativeSlopeWarning",
    "epsilon",
    "epsilon_tilde",
    "rescale",
    "tower_from_json",
    "tower_to_json",
]


class NegativeSlopeWarning(UserWarning):
    """A slope coordinate is negative; the bound is outside its proven range."""


def _rational(x) -> Scalar:
    s = x if isinstance(x, Scalar) else Scalar.exact(x)
    if not s.is_rational:
        raise TypeError("tower data must be rational-mode scalars")
    return s


@dataclass(frozen=True)
class Tower:
    """Genus vector (g_0, ..., g_d) of a tower of curve fibrations."""

    genera: tuple[int, ...]

    def __init__(self, genera):
        genera = tuple(int(g) for g in genera)
        if not genera:
            raise ValueError("a tower has at least one level")
        if any(g < 0 for g in genera):
            raise ValueError("genera must be nonnegative")
        object.__setattr__(self, "genera", genera)

    @property
    def depth(self) -> int:
        """d, where the tower has d+1 levels."""
        return len(self.genera) - 1


@dataclass(frozen=True)
class TowerData:
    """Slope vector mu and volume vector vol attached to a tower's levels."""

    mu: tuple[Scalar, ...]
    vol: tuple[Scalar, ...]

    def __init__(self, mu, vol):
        mu = tuple(_rational(x) for x in mu)
        vol = tuple(_rational(x) for x in vol)
        if len(mu) != len(vol) or not mu:
            raise ValueError("mu and vol must be nonempty vectors of equal length")
        if any(v.as_fraction() < 0 for v in vol):
            raise ValueError("volumes must be nonnegative")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "vol", vol)

    def __len__(self):
        return len(self.mu)


@dataclass(frozen=True)
class AffineFunction:
    """g |-> intercept + slope * g, evaluable at nonnegative integers."""

    intercept: Scalar
    slope: Scalar

    def __init__(self, intercept, slope):
        object.__setattr__(self, "intercept", _rational(intercept))
        object.__setattr__(self, "slope", _rational(slope))

    def __call__(self, g: int) -> Scalar:
        return self.intercept + self.slope * Scalar.exact(g)


#: Documented default for the positive-characteristic constant.
DEFAULT_ELL = AffineFunction(1, 1)


def _check_lengths(tower: Tower, data: TowerData):
    if len(data) != len(tower.genera):
        raise ValueError(
            f"data length {len(data)} does not match tower length {len(tower.genera)}"
        )


def _warn_negative_mu(tower: Tower, data: TowerData):
    d = tower.depth
    for i in range(d):
        if data.mu[i].as_fraction() < 0:
            warnings.warn(
                f"mu[{i}] < 0: the error term is not asserted by any bound here",
                NegativeSlopeWarning,
                stacklevel=3,
            )


def _genus_factor(g: int) -> Scalar:
    return Scalar.exact(max(g - 1, 1))


def epsilon(tower: Tower, data: TowerData) -> Scalar:
    """Error term of the tower, exact rational.

    Base case max(g_d - 1, 1); one recursion step per fibration level, using
    mu_0..mu_{d-1} and v_1..v_d (mu_d and v_0 never enter).

    Kept independent of :func:`epsilon_tilde` so that the degeneration
    ell == 0 can be asserted as a genuine cross-check.
    """
    _check_lengths(tower, data)
    _warn_negative_mu(tower, data)
    genera = tower.genera
    d = tower.depth
    eps = _genus_factor(genera[d])
    for i in range(d - 1, -1, -1):
        v_next = data.vol[i + 1] / Scalar.exact(factorial(d - i))
        eps = data.mu[i] * eps + (v_next + eps) * _genus_factor(genera[i])
    return eps


def epsilon_tilde(tower: Tower, data: TowerData, ell: AffineFunction = DEFAULT_ELL) -> Scalar:
    """Positive-characteristic error term with affine correction ``ell``.

    Same recursion as :func:`epsilon` with genus factor
    max(g_i - 1, 1) + ell(g_i) at every non-base level; the base case carries
    no ell term.  With ell identically zero this reduces exactly to epsilon.
    """
    _check_lengths(tower, data)
    _warn_negative_mu(tower, data)
    genera = tower.genera
    d = tower.depth
    eps = _genus_factor(genera[d])
    for i in range(d - 1, -1, -1):
        level_factor = _genus_factor(genera[i]) + ell(genera[i])
        v_next = data.vol[i + 1] / Scalar.exact(factorial(d - i))
        eps = data.mu[i] * eps + (v_next + eps) * level_factor
    return eps


def rescale(data: TowerData, p: int) -> TowerData:
    """Data of the p-th power subsystem: mu_i -> p mu_i, v_i -> p^(d+1-i) v_i.

    Level i sits on a scheme of dimension d+1-i, which fixes the volume
    scaling exponent.  The error term of the rescaled data is bounded by
    p^d times the original (checked as a property, not assumed).
    """
    if p < 1:
        raise ValueError("rescaling exponent must be >= 1")
    d = len(data) - 1
    mu = tuple(Scalar.exact(p) * m for m in data.mu)
    vol = tuple(
        Scalar.exact(Fraction(p) ** (d + 1 - i)) * v for i, v in enumerate(data.vol)
    )
    return TowerData(mu, vol)


def tower_to_json(tower: Tower, data: TowerData):
    return {
        "genera": list(tower.genera),
        "mu": [m.to_json() for m in data.mu],
        "vol": [v.to_json() for v in data.vol],
    }


def tower_from_json(obj) -> tuple[Tower, TowerData]:
    tower = Tower(obj["genera"])
    data = TowerData(
        [Scalar.from_json(m) for m in obj["mu"]],
        [Scalar.from_json(v) for v in obj["vol"]],
    )
    _check_lengths(tower, data)
    return tower, data
