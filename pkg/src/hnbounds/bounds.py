"""Inequality assemblies and end-to-end verification reports.

Each check compares a quantity computed one way (a rank, a count, an exact
integral) against a bound assembled from closed-form invariants, and records
the outcome in a :class:`CheckReport`.  A report passes only when the margin
``rhs - lhs`` is certified nonnegative: for interval scalars that means the
*lower* endpoint of the margin is >= 0.

The desk-scale testbed at the bottom counts integer polynomials of bounded
degree whose sup norm on the unit circle is at most 1, with every norm
decision either exact or certified.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

from .lattices import EuclideanLattice, NumberFieldData, RATIONAL_FIELD, gillet_soule_constant
from .scalars import (
    CertificationError,
    PI,
    Scalar,
    cos_2pi,
    exp_interval,
    log_interval,
    log_scalar,
    scalar_min,
    sqrt_interval,
)
from .series import FiberedSeries
from .towers import Tower, TowerData, epsilon

__all__ = [
    "CheckReport",
    "IntPolynomial",
    "BoundaryResolutionError",
    "PrecisionBudgetError",
    "geometric_hs_bound",
    "check_toric_family",
    "check_filtered",
    "h0_minima_bound",
    "check_minkowski",
    "check_blichfeldt",
    "check_gillet_soule",
    "check_truncated_siegel",
    "arithmetic_error_F",
    "arithmetic_error_G",
    "circle_sup_norm",
    "p1z_h0",
    "reports_to_json",
    "reports_to_csv",
]


class BoundaryResolutionError(RuntimeError):
    """A norm-boundary case could not be resolved exactly (never a guess)."""


class PrecisionBudgetError(RuntimeError):
    """The requested certification precision is unreachable at the budget."""


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one certified comparison lhs <= rhs.

    ``margin`` is rhs - lhs (or, for composite checks, the minimum of the
    individual margins) and ``passed`` is derived from it: certified
    nonnegative lower bound.  ``context`` carries check-specific details.
    """

    name: str
    lhs: Scalar
    rhs: Scalar
    margin: Scalar
    passed: bool
    context: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != self.margin.certified_nonneg():
            raise ValueError("pass flag must equal the certified sign of the margin")

    @classmethod
    def compare(cls, name: str, lhs: Scalar, rhs: Scalar, context=None) -> "CheckReport":
        margin = rhs - lhs
        return cls(name, lhs, rhs, margin, margin.certified_nonneg(), dict(context or {}))

    @classmethod
    def with_margin(cls, name, lhs, rhs, margin, context=None) -> "CheckReport":
        return cls(name, lhs, rhs, margin, margin.certified_nonneg(), dict(context or {}))

    def to_json(self):
        return {
            "name": self.name,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "margin": self.margin.to_json(),
            "pass": self.passed,
            "context": {k: _context_value(v) for k, v in sorted(self.context.items())},
        }


def _context_value(v):
    if isinstance(v, Scalar):
        return v.to_json()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_context_value(x) for x in v]
    return v


def reports_to_json(reports) -> list:
    return [r.to_json() for r in reports]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["name", "lhs", "rhs", "margin", "pass"])
    for r in reports:
        writer.writerow(
            [r.name, _csv_scalar(r.lhs), _csv_scalar(r.rhs), _csv_scalar(r.margin), r.passed]
        )
    return buf.getvalue()


def _csv_scalar(s: Scalar) -> str:
    if s.is_rational:
        return str(s.as_fraction())
    return f"{s.midpoint():.15g}"


# ---------------------------------------------------------------------------
# geometric assemblies
# ---------------------------------------------------------------------------


def geometric_hs_bound(vol: Scalar, dim: int, eps: Scalar) -> Scalar:
    """Degree-one rank bound vol / dim! + eps for a dim-dimensional scheme."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    vol = vol if isinstance(vol, Scalar) else Scalar.exact(vol)
    eps = eps if isinstance(eps, Scalar) else Scalar.exact(eps)
    if not vol.certified_nonneg() or not eps.certified_nonneg():
        raise ValueError("volume and error term must be nonnegative")
    return vol / Scalar.exact(factorial(dim)) + eps


def _hirzebruch_tower_data(F: FiberedSeries) -> tuple[Tower, TowerData]:
    """Genus (0,0) tower with the honest slope/volume vectors of the family.

    mu = (a, b): base slope a, fiber-level asymptotic slope b.
    vol = (surface volume, fiber volume b); only v_1 enters the recursion.
    """
    tower = Tower((0, 0))
    data = TowerData(
        mu=(Scalar.exact(F.a), Scalar.exact(F.b)),
        vol=(F.volume_via_fibers(), Scalar.exact(F.b)),
    )
    return tower, data


def check_toric_family(F: FiberedSeries) -> CheckReport:
    """Degree-one rank of the Hirzebruch family vs the recursive bound.

    lhs: exact section count of the pushforward at n = 1.
    rhs: (normalized polytope volume) / 2! + eps of the genus-(0,0) tower.
    The margin works out to exactly e*b/2, so the bound is tight on P1 x P1.
    """
    if F.a < F.e * F.b:
        raise ValueError("family requires a >= e*b")
    lhs = Scalar.exact(F.pushforward(1).h0())
    volume = F.trapezoid().volume() if F.a >= 1 else F.volume_via_fibers()
    tower, data = _hirzebruch_tower_data(F)
    eps = epsilon(tower, data)
    rhs = geometric_hs_bound(volume, 2, eps)
    return CheckReport.compare(
        f"geometric a={F.a} b={F.b} e={F.e}",
        lhs,
        rhs,
        {
            "volume": volume,
            "epsilon": eps,
            "expected_margin": Scalar.exact(Fraction(F.e * F.b, 2)),
        },
    )


def check_filtered(F: FiberedSeries) -> CheckReport:
    """Filtered version: integral of the degree-one filtered ranks vs the
    integrated filtered volumes plus the asymptotic-slope error term.

    lhs: exact piecewise integral of rank F^t(E_1) over t >= 0 (this equals
    the positive degree of the pushforward; recorded in context).
    rhs: integral of filtered volumes / 1! + mu_max_asy * eps(fiber tower).
    """
    if F.a < F.e * F.b:
        raise ValueError("family requires a >= e*b")
    lhs = F.filtered_rank_integral(1)
    fiber_tower = Tower((0,))
    fiber_data = TowerData(mu=(Scalar.exact(F.b),), vol=(Scalar.exact(F.b),))
    eps = epsilon(fiber_tower, fiber_data)
    volume_integral = F.volume_via_fibers() / Scalar.exact(2)
    rhs = volume_integral + F.mu_max_asy() * eps
    deg_plus = F.pushforward(1).hn_type().deg_plus()
    return CheckReport.compare(
        f"filtered a={F.a} b={F.b} e={F.e}",
        lhs,
        rhs,
        {
            "deg_plus_pushforward": deg_plus,
            "lhs_equals_deg_plus": lhs == deg_plus,
            "epsilon_fiber": eps,
        },
    )


# ---------------------------------------------------------------------------
# lattice assemblies
# ---------------------------------------------------------------------------


def h0_minima_bound(L: EuclideanLattice) -> CheckReport:
    """Log-count of norm <= 1 vectors vs the positive minima plus r ln 2 + ln(2 r!)."""
    r = L.rank
    lhs = L.h0_hat()
    minima = L.successive_minima()
    rhs = Scalar.exact(0)
    for lam in minima:
        rhs = rhs + lam.max0()
    rhs = rhs + Scalar.exact(r) * log_scalar(2) + log_scalar(2 * factorial(r))
    return CheckReport.compare(
        f"minima-bound rank={r}",
        lhs,
        rhs,
        {"count": L.h0_count(), "rank": r},
    )


def check_minkowski(L: EuclideanLattice) -> CheckReport:
    """Double inequality r ln2 - ln r! <= chi - sum(lambda_i) <= r ln2.

    The report's margin is the minimum of the two one-sided margins, so it
    passes only when both sides are certified.
    """
    r = L.rank
    chi = L.euler_char()
    lam_sum = Scalar.exact(0)
    for lam in L.successive_minima():
        lam_sum = lam_sum + lam
    sandwiched = chi - lam_sum
    upper = Scalar.exact(r) * log_scalar(2)
    lower = upper - log_scalar(factorial(r))
    margin = scalar_min(upper - sandwiched, sandwiched - lower)
    return CheckReport.with_margin(
        f"minkowski rank={r}",
        sandwiched,
        upper,
        margin,
        {"lower": lower, "chi": chi, "lambda_sum": lam_sum},
    )


def check_blichfeldt(L: EuclideanLattice) -> CheckReport:
    """Counting bound: h0_hat <= ln(r! e^chi + r)."""
    r = L.rank
    lhs = L.h0_hat()
    chi = L.euler_char()
    rhs = log_interval(Scalar.exact(factorial(r)) * exp_interval(chi) + Scalar.exact(r))
    return CheckReport.compare(
        f"blichfeldt rank={r}", lhs, rhs, {"count": L.h0_count(), "chi": chi}
    )


def check_gillet_soule(
    L: EuclideanLattice, field_data: NumberFieldData = RATIONAL_FIELD
) -> CheckReport:
    """|h0_hat - positive degree| <= r ln|Delta| + C(K, r) for diagonal lattices.

    Section counts are computed over Z, so only the rational field is
    supported; C(K, n) itself is implemented for arbitrary signatures.

    At rank 1 the inequality can hold with exact equality (for the unit
    lattice both sides are ln 3), which no interval can certify; that single
    tie is resolved by exact rational comparison: with q the product of the
    reciprocals of the sub-1 diagonal entries, the margin is nonnegative iff
    max(count^2/q, q/count^2) <= 81 = exp(2 ln 3 + ... ) at rank 1.
    """
    if field_data.degree != 1:
        raise ValueError("section counts are only computed over the rationals")
    r = L.rank
    deg_plus = L.orthogonal_hn().deg_plus()
    lhs = abs(L.h0_hat() - deg_plus)
    rhs = (
        Scalar.exact(r) * field_data.log_abs_discriminant()
        + gillet_soule_constant(field_data, r)
    )
    margin = rhs - lhs
    lo, hi = margin.bounds()
    if lo < 0 <= hi and r == 1 and field_data.abs_discriminant == 1:
        # C(Q, 1) = ln 3 exactly; decide 2*margin = ln 9 - |ln(count^2/q)| on
        # exact rationals (q as in the docstring).
        d = L.gram[0][0]
        q = 1 / d if d < 1 else Fraction(1)
        ratio = Fraction(L.h0_count()) ** 2 / q
        worst = max(ratio, 1 / ratio)
        if worst == 9:
            margin = Scalar.exact(0)
        elif worst < 9:
            margin = margin.max0()
    return CheckReport.with_margin(
        f"gillet-soule rank={r} diag={[str(L.gram[i][i]) for i in range(r)]}",
        lhs,
        rhs,
        margin,
        {"count": L.h0_count(), "deg_plus": deg_plus},
    )


def check_truncated_siegel(L: EuclideanLattice) -> CheckReport:
    """Positive slopes vs positive absolute minima plus (1/2) r ln r.

    For diagonal lattices the absolute minima coincide with the usual minima
    and with the slopes, so the slack is exactly (1/2) r ln r.  That identity
    is verified on the exact rationals (enumerated minima norms against the
    Gram diagonal) before being used for the margin, so the report never
    depends on interval cancellation.
    """
    if not L.is_diagonal():
        raise ValueError("absolute minima are only computable here for diagonal lattices")
    r = L.rank
    diag = sorted(L.gram[i][i] for i in range(r))
    if sorted(L.minima_norms_squared()) != diag:
        raise AssertionError("orthogonal minima must match the Gram diagonal")
    slopes_positive = L.orthogonal_hn().deg_plus()
    minima_positive = Scalar.exact(0)
    for lam in L.successive_minima():
        minima_positive = minima_positive + lam.max0()
    rhs = minima_positive + Scalar.exact(Fraction(r, 2)) * log_scalar(r)
    margin = Scalar.exact(Fraction(r, 2)) * log_scalar(r)
    return CheckReport.with_margin(
        f"siegel-truncated rank={r}",
        slopes_positive,
        rhs,
        margin,
        {"minima_positive": minima_positive, "slack_exact": True},
    )


# ---------------------------------------------------------------------------
# arithmetic error functions
# ---------------------------------------------------------------------------


def arithmetic_error_F(
    n: int, deg_k: int, mu_asy: Scalar, eps: Scalar, r_n: int, *, dim_fiber: int
) -> Scalar:
    """Error term deg_k (n mu_asy n^(d-1) eps + r_n ln r_n), d = dim_fiber.

    Uses the standing majorization eps(n-th power system) <= n^(d-1) eps.
    """
    if n < 1 or r_n < 1:
        raise ValueError("n and r_n must be >= 1")
    if dim_fiber < 1:
        raise ValueError("fiber dimension must be >= 1")
    mu_asy = mu_asy if isinstance(mu_asy, Scalar) else Scalar.exact(mu_asy)
    eps = eps if isinstance(eps, Scalar) else Scalar.exact(eps)
    power = Scalar.exact(Fraction(n) ** (dim_fiber - 1))
    log_rn = log_scalar(r_n) if r_n > 1 else Scalar.exact(0)
    inner = Scalar.exact(n) * mu_asy * power * eps + Scalar.exact(r_n) * log_rn
    return Scalar.exact(deg_k) * inner


def arithmetic_error_G(
    n: int, mu_asy: Scalar, eps: Scalar, big_r_n: int, *, dim_fiber: int
) -> Scalar:
    """Error term n^d mu_asy eps + (R_n + 1) ln 2 + R_n ln R_n."""
    if n < 1 or big_r_n < 1:
        raise ValueError("n and R_n must be >= 1")
    if dim_fiber < 1:
        raise ValueError("fiber dimension must be >= 1")
    mu_asy = mu_asy if isinstance(mu_asy, Scalar) else Scalar.exact(mu_asy)
    eps = eps if isinstance(eps, Scalar) else Scalar.exact(eps)
    log_rn = log_scalar(big_r_n) if big_r_n > 1 else Scalar.exact(0)
    return (
        Scalar.exact(Fraction(n) ** dim_fiber) * mu_asy * eps
        + Scalar.exact(big_r_n + 1) * log_scalar(2)
        + Scalar.exact(big_r_n) * log_rn
    )


# ---------------------------------------------------------------------------
# integer polynomials on the unit circle
# ---------------------------------------------------------------------------

MAX_CIRCLE_DEGREE = 64
_MAX_GRID = 1 << 15


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial a_0 + a_1 x + ... (constant coefficient first)."""

    coefficients: tuple[int, ...]

    def __init__(self, coefficients):
        coeffs = tuple(int(c) for c in coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (0,)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        if self.coefficients == (0,):
            return -1
        return len(self.coefficients) - 1

    def sum_abs(self) -> int:
        return sum(abs(c) for c in self.coefficients)

    def max_abs(self) -> int:
        return max(abs(c) for c in self.coefficients)

    def autocorrelation(self) -> list[int]:
        """c_m = sum_k a_k a_{k+m}; |p(e^{i t})|^2 = c_0 + 2 sum_m c_m cos(m t)."""
        a = self.coefficients
        n = len(a)
        return [sum(a[k] * a[k + m] for k in range(n - m)) for m in range(n)]


@lru_cache(maxsize=None)
def _cos_table(n_grid: int):
    return [cos_2pi(Fraction(k, n_grid)) for k in range(n_grid)]


def circle_sup_norm(p: IntPolynomial, precision: Fraction) -> Scalar:
    """Certified interval around max |p(z)| over |z| = 1, width <= precision.

    Uses the coefficient sandwich max|a_k| <= norm <= sum|a_k| for early
    acceptance, then uniform grids of N points: the grid maximum is a lower
    bound, and the Bernstein derivative bound ||p'|| <= deg ||p|| certifies
    norm <= grid_max / (1 - pi deg / N) between grid points.  N doubles until
    the width target is met; an unreachable target raises
    :class:`PrecisionBudgetError`.
    """
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    deg = p.degree
    if deg > MAX_CIRCLE_DEGREE:
        raise ValueError(f"degree {deg} exceeds the budget ({MAX_CIRCLE_DEGREE})")
    lo_frac = Fraction(p.max_abs())
    hi_frac = Fraction(p.sum_abs())
    if deg <= 0 or hi_frac - lo_frac <= precision:
        return Scalar.from_fraction_bounds(lo_frac, hi_frac)

    corr = p.autocorrelation()
    n_grid = 64
    while n_grid <= _MAX_GRID:
        if n_grid > 4 * deg:
            low, high = _grid_bounds(corr, deg, n_grid)
            low = max(low, lo_frac)
            high = min(high, hi_frac)
            if high - low <= precision:
                return Scalar.from_fraction_bounds(low, high)
        n_grid *= 2
    raise PrecisionBudgetError(
        f"cannot certify the circle norm to width {precision} within the grid budget"
    )


def _grid_bounds(corr, deg, n_grid) -> tuple[Fraction, Fraction]:
    """(lower, upper) bounds for the sup norm from an N-point grid."""
    table = _cos_table(n_grid)
    sq_lo = Fraction(0)
    sq_hi = Fraction(0)
    c0 = Scalar.exact(corr[0])
    for j in range(n_grid):
        acc = c0
        for m in range(1, len(corr)):
            if corr[m]:
                acc = acc + Scalar.exact(2 * corr[m]) * table[(j * m) % n_grid]
        lo, hi = acc.bounds()
        sq_lo = max(sq_lo, lo)
        sq_hi = max(sq_hi, hi)
    grid_max = sqrt_interval(Scalar.from_fraction_bounds(max(sq_lo, Fraction(0)), sq_hi))
    # ||p|| <= grid_max / (1 - pi deg / N), certified with an interval pi
    denom = Scalar.exact(1) - PI * Scalar.exact(Fraction(deg, n_grid))
    if not denom.bounds()[0] > 0:
        raise PrecisionBudgetError("grid too coarse for the derivative certificate")
    upper = grid_max / denom
    return grid_max.bounds()[0], upper.bounds()[1]


# -- exact boundary resolution via cyclotomic arithmetic ---------------------


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial (exact, recursive)."""
    num = [-1] + [0] * (d - 1) + [1]  # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            num = _poly_div_exact(num, list(_cyclotomic(e)))
    return tuple(num)


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], den[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = q
        for k, dk in enumerate(den):
            num[i + k] -= q * dk
    if any(num):
        raise ArithmeticError("nonzero remainder in polynomial division")
    return out


def _poly_mod(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            for k in range(dn + 1):
                num[i - dn + k] -= c * den[k]
    return num[:dn]


def _exceeds_one_at_root(p: IntPolynomial, j: int, n_roots: int) -> bool:
    """Exactly decide |p(w)|^2 > 1 at w = exp(2 pi i j / n_roots).

    The squared modulus minus one is an algebraic integer in the cyclotomic
    field; it is tested for zero by exact division by the relevant cyclotomic
    polynomial and, when nonzero, its sign is certified by interval
    arithmetic (the fixed working precision is far below the conjugate-norm
    gap of these small elements).
    """
    a = p.coefficients
    n = len(a)
    coeffs = [0] * n_roots
    for k in range(n):
        for l in range(n):
            if a[k] and a[l]:
                coeffs[(k - l) % n_roots] += a[k] * a[l]
    coeffs[0] -= 1
    g = gcd(j, n_roots)
    d = n_roots // g
    j_red = (j // g) % d
    folded = [0] * d
    for r, c in enumerate(coeffs):
        if c:
            folded[(r * j_red) % d] += c
    reduced = _poly_mod(folded, _cyclotomic(d))
    if not any(reduced):
        return False  # the value equals 1 exactly: not above the threshold
    value = Scalar.exact(0)
    for r, c in enumerate(reduced):
        if c:
            value = value + Scalar.exact(c) * cos_2pi(Fraction(r, d))
    lo, hi = value.bounds()
    if lo > 0:
        return True
    if hi < 0:
        return False
    raise CertificationError("working precision too small for an exact sign")


def p1z_h0(n: int) -> tuple[int, CheckReport]:
    """Count integer polynomials of degree <= n with circle sup norm <= 1.

    The coefficient sandwich confines candidates to {-1, 0, 1}^(n+1).  Each
    candidate is decided by, in order: exact sandwich acceptance
    (sum|a_k| <= 1), the certified grid norm at increasing precision, and
    exact evaluation at the 2(n+1)-th roots of unity.  The discrete mean of
    |p|^2 over those roots equals sum a_k^2 (no aliasing at this order), so
    any multi-term candidate is provably rejected by the exact stage; an
    unresolved candidate raises :class:`BoundaryResolutionError` rather than
    guessing.

    Returns the count and a report checking ln(count) against the minima
    bound of the coefficient lattice, whose log minima all vanish: every
    nonzero integer polynomial has norm >= max|a_k| >= 1, and the monomials
    x^k attain norm exactly 1 with full rank.
    """
    if n < 0:
        raise ValueError("degree bound must be >= 0")
    if n > 6:
        raise ValueError("degree bound exceeds the enumeration budget (6)")
    count = 0
    n_roots = 2 * (n + 1)
    for p in _coefficient_box(n):
        if p.sum_abs() <= 1:
            count += 1
            continue
        decided = None
        for precision in (Fraction(1), Fraction(1, 2), Fraction(1, 4)):
            norm = circle_sup_norm(p, precision)
            lo, hi = norm.bounds()
            if lo > 1:
                decided = False
                break
            if hi <= 1:
                decided = True
                break
        if decided is None:
            if any(_exceeds_one_at_root(p, j, n_roots) for j in range(n_roots)):
                decided = False
            else:
                raise BoundaryResolutionError(
                    f"norm of {p.coefficients} vs 1 unresolved by exact evaluation"
                )
        if decided:
            count += 1

    r = n + 1
    lhs = log_scalar(count)
    rhs = Scalar.exact(r) * log_scalar(2) + log_scalar(2 * factorial(r))
    report = CheckReport.compare(
        f"p1z degree<={n}",
        lhs,
        rhs,
        {
            "count": count,
            "rank": r,
            "minima_all_zero": True,
        },
    )
    return count, report


def _coefficient_box(n: int):
    coeffs = [-1, 0, 1]
    stack = [()]
    for _ in range(n + 1):
        stack = [t + (c,) for t in stack for c in coeffs]
    for tup in stack:
        yield IntPolynomial(tup)
