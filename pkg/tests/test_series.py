from fractions import Fraction

import pytest

from hnbounds import FiberedSeries, ToricSeries


UNIT_SQUARE = ToricSeries([(0, 0), (1, 0), (0, 1), (1, 1)])
RECT = ToricSeries([(0, 0), (2, 0), (0, 3), (2, 3)])
TRAPEZOID = ToricSeries([(0, 0), (3, 0), (1, 2), (0, 2)])  # a=3, b=2, e=1


def brute_count(vertices, n):
    """Independent point-in-hull count via convex-combination feasibility."""
    from itertools import product

    d = len(vertices[0])
    scaled = [tuple(Fraction(n) * Fraction(x) for x in v) for v in vertices]
    import math

    lo = [min(v[j] for v in scaled) for j in range(d)]
    hi = [max(v[j] for v in scaled) for j in range(d)]
    count = 0
    ranges = [range(math.ceil(lo[j]), math.floor(hi[j]) + 1) for j in range(d)]
    for pt in product(*ranges):
        if _in_hull(scaled, pt):
            count += 1
    return count


def _in_hull(vertices, point):
    """Exact LP feasibility: point is a convex combination of the vertices."""
    d = len(point)
    m = len(vertices)
    # Solve sum l_i v_i = p, sum l_i = 1, l_i >= 0 by exhaustive search over
    # d+1-subsets (Caratheodory): enough for an oracle at desk scale.
    from itertools import combinations

    for subset in combinations(range(m), min(d + 1, m)):
        pts = [vertices[i] for i in subset]
        lam = _solve_affine(pts, point)
        if lam is not None and all(x >= 0 for x in lam):
            return True
    return False


def _solve_affine(pts, target):
    k = len(pts)
    d = len(target)
    rows = [[Fraction(pts[j][i]) for j in range(k)] for i in range(d)]
    rows.append([Fraction(1)] * k)
    rhs = [Fraction(x) for x in target] + [Fraction(1)]
    # Gaussian elimination on the (d+1) x k system
    aug = [row + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][-1] != 0:
            return None
    lam = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        lam[c] = aug[i][-1]
    return lam


# -- toric counting -----------------------------------------------------------


def test_rank_examples():
    assert UNIT_SQUARE.rank(1) == 4
    assert RECT.rank(1) == 12
    assert RECT.rank(0) == 1
    assert TRAPEZOID.rank(1) == 9
    with pytest.raises(ValueError):
        RECT.rank(-1)


def test_rank_matches_brute_force():
    for series in (UNIT_SQUARE, RECT, TRAPEZOID):
        for n in range(4):
            assert series.rank(n) == brute_count(series.vertices, n)
    shifted = ToricSeries([(Fraction(1, 2), 0), (2, 0), (1, Fraction(3, 2))])
    for n in range(5):
        assert shifted.rank(n) == brute_count(shifted.vertices, n)


def test_volume_examples():
    assert RECT.volume().as_fraction() == 12
    assert TRAPEZOID.volume().as_fraction() == 8
    assert UNIT_SQUARE.volume().as_fraction() == 2


def test_volume_3d():
    box = ToricSeries([(x, y, z) for x in (0, 1) for y in (0, 2) for z in (0, 3)])
    assert box.volume().as_fraction() == 36
    assert box.rank(1) == 24
    simplex = ToricSeries([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert simplex.volume().as_fraction() == 1
    assert simplex.rank(2) == 10
    for n in range(4):
        assert simplex.rank(n) == brute_count(simplex.vertices, n)


def test_sheared_tetrahedron_matches_determinant():
    # vol(conv(0, v1, v2, v3)) = |det| / 6, so normalized volume = |det|
    v1, v2, v3 = (2, 1, 0), (Fraction(1, 2), 3, 1), (1, 0, 4)
    det = (
        v1[0] * (v2[1] * v3[2] - v2[2] * v3[1])
        - v1[1] * (v2[0] * v3[2] - v2[2] * v3[0])
        + v1[2] * (v2[0] * v3[1] - v2[1] * v3[0])
    )
    tetra = ToricSeries([(0, 0, 0), v1, v2, v3])
    assert tetra.volume().as_fraction() == abs(Fraction(det))
    for n in range(3):
        assert tetra.rank(n) == brute_count(tetra.vertices, n)


def test_redundant_points_do_not_change_anything():
    cube = [(x, y, z) for x in (0, 2) for y in (0, 2) for z in (0, 2)]
    plain = ToricSeries(cube)
    cluttered = ToricSeries(
        cube + [(1, 1, 1), (1, 0, 0), (2, 1, 0), (1, 1, 0), (2, 1, 1)]
    )  # body center, edge midpoints, facet centers
    assert cluttered.volume().as_fraction() == plain.volume().as_fraction() == 48
    for n in range(3):
        assert cluttered.rank(n) == plain.rank(n)


def test_octahedron_3d():
    # conv{+-e_i}: volume 4/3, so normalized volume 3! * 4/3 = 8; the n-th
    # dilate counts points with |x|+|y|+|z| <= n
    octa = ToricSeries(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    )
    assert octa.volume().as_fraction() == 8
    assert octa.rank(1) == 7
    assert octa.rank(2) == 25
    for n in range(3):
        assert octa.rank(n) == brute_count(octa.vertices, n)


def test_rank_growth_approaches_volume():
    # |d! rank(n)/n^d - volume| <= C/n with C = 12 for this rectangle
    vol = RECT.volume().as_fraction()
    for n in range(1, 51):
        approx = Fraction(2 * RECT.rank(n), n * n)
        assert abs(approx - vol) <= Fraction(12, n)


def test_validation():
    with pytest.raises(ValueError):
        ToricSeries([])
    with pytest.raises(ValueError):
        ToricSeries([(0, 0), (1, 0)])  # not full-dimensional
    with pytest.raises(ValueError):
        ToricSeries([(0, 0, 0, 0), (1, 0, 0, 0)])  # dimension above budget


def test_toric_json_round_trip():
    back = ToricSeries.from_json(TRAPEZOID.to_json())
    assert back == TRAPEZOID


# -- fibered series --------------------------------------------------------------


def test_pushforward_examples():
    assert FiberedSeries(2, 3, 0).pushforward(1).twists == (2, 2, 2, 2)
    assert FiberedSeries(3, 2, 1).pushforward(1).twists == (3, 2, 1)
    assert FiberedSeries(3, 2, 1).pushforward(1).h0() == 9
    for n in range(1, 8):
        assert FiberedSeries(4, 3, 1).pushforward(n).rank == 3 * n + 1


def test_pushforward_matches_trapezoid_count():
    cases = [(a, b, e) for e in range(3) for a in range(1, 7) for b in range(1, 7) if a >= e * b]
    for a, b, e in cases:
        F = FiberedSeries(a, b, e)
        trap = F.trapezoid()
        for n in range(1, 21):
            assert F.pushforward(n).h0() == trap.rank(n), (a, b, e, n)


def test_mu_max_asy():
    assert FiberedSeries(2, 3, 0).mu_max_asy().as_fraction() == 2
    assert FiberedSeries(3, 2, 1).mu_max_asy().as_fraction() == 3
    F = FiberedSeries(5, 2, 2)
    for n in range(1, 21):
        mu_n = F.pushforward(n).hn_type().slope_extremes()[0]
        assert mu_n.as_fraction() == n * F.mu_max_asy().as_fraction()


def test_mu_max_superadditivity_is_equality():
    F = FiberedSeries(4, 3, 1)
    mu = lambda n: F.pushforward(n).hn_type().slope_extremes()[0].as_fraction()
    for n in range(1, 6):
        for m in range(1, 6):
            assert mu(n + m) == mu(n) + mu(m)


def test_filtered_rank_examples():
    assert FiberedSeries(2, 3, 0).filtered_rank(0, 1) == 4
    assert FiberedSeries(2, 3, 0).filtered_rank(3, 5) == 0
    assert FiberedSeries(3, 2, 1).filtered_rank(2, 4) == 5


def test_filtered_rank_matches_hn_filtration():
    F = FiberedSeries(3, 2, 1)
    for n in (1, 2, 5):
        h = F.pushforward(n).hn_type()
        for t in [Fraction(k, 2) for k in range(-2, 9)]:
            assert F.filtered_rank(t, n) == h.filtration_rank(n * t)


def test_filtered_volume_examples():
    assert FiberedSeries(2, 3, 0).filtered_volume(1).as_fraction() == 3
    assert FiberedSeries(3, 2, 1).filtered_volume(2).as_fraction() == 1
    assert FiberedSeries(3, 2, 1).filtered_volume(4).as_fraction() == 0


def test_filtered_volume_is_rank_limit():
    F = FiberedSeries(3, 2, 1)
    n = 60
    for t in [Fraction(k, 4) for k in range(0, 13)]:
        fv = F.filtered_volume(t).as_fraction()
        fr = Fraction(F.filtered_rank(t, n), n)
        assert abs(fr - fv) <= Fraction(1, n)


def test_volume_via_fibers_matches_trapezoid():
    # 2 * integral of filtered volumes = normalized polytope volume
    assert FiberedSeries(3, 2, 1).volume_via_fibers().as_fraction() == 8
    assert FiberedSeries(2, 3, 0).volume_via_fibers().as_fraction() == 12
    for e in range(3):
        for a in range(1, 7):
            for b in range(1, 7):
                if a >= e * b:
                    F = FiberedSeries(a, b, e)
                    assert (
                        F.volume_via_fibers().as_fraction()
                        == F.trapezoid().volume().as_fraction()
                    )


def test_filtered_rank_integral_is_deg_plus():
    for e in range(3):
        for a in range(0, 7):
            for b in range(1, 7):
                F = FiberedSeries(a, b, e)
                for n in (1, 3):
                    lhs = F.filtered_rank_integral(n).as_fraction()
                    rhs = F.pushforward(n).hn_type().deg_plus().as_fraction()
                    assert lhs * n == rhs, (a, b, e, n)


def test_bigness_criterion():
    # positive volume iff positive asymptotic slope (fiber degree is always >= 1)
    for e in range(3):
        for a in range(0, 5):
            for b in range(1, 5):
                F = FiberedSeries(a, b, e)
                vol_positive = F.volume_via_fibers().as_fraction() > 0
                mu_positive = F.mu_max_asy().as_fraction() > 0
                assert vol_positive == mu_positive


def test_fibered_validation_and_json():
    with pytest.raises(ValueError):
        FiberedSeries(-1, 2, 0)
    with pytest.raises(ValueError):
        FiberedSeries(2, 0, 0)
    F = FiberedSeries(4, 2, 1)
    assert FiberedSeries.from_json(F.to_json()) == F
    with pytest.raises(ValueError):
        FiberedSeries(1, 2, 1).trapezoid()  # a < e*b is degenerate
