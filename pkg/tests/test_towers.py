import json
from fractions import Fraction

import pytest

from hnbounds import AffineFunction, Scalar, Tower, TowerData, epsilon, epsilon_tilde, rescale
from hnbounds.towers import NegativeSlopeWarning, tower_from_json, tower_to_json


def data(mu, vol):
    return TowerData(tuple(map(Scalar.exact, mu)), tuple(map(Scalar.exact, vol)))


def test_epsilon_base_case():
    for g in range(6):
        assert epsilon(Tower((g,)), data([0], [0])).as_fraction() == max(g - 1, 1)


def test_epsilon_surface_examples():
    # genera (0,0), mu0=2, v1=3: 2*1 + (3/1! + 1)*1 = 6
    assert epsilon(Tower((0, 0)), data([2, 0], [0, 3])).as_fraction() == 6
    # genera (3,0): 2*1 + 4*max(2,1) = 10
    assert epsilon(Tower((3, 0)), data([2, 0], [0, 3])).as_fraction() == 10


def test_epsilon_threefold_hand_value():
    # d=2, genera (0,0,0): inner eps1 = mu1 + (v2 + 1); then
    # eps0 = mu0 eps1 + (v1/2! + eps1) * 1
    tower = Tower((0, 0, 0))
    d = data([2, 3, 0], [0, 8, 5])
    eps1 = Fraction(3 + 5 + 1)
    expected = 2 * eps1 + (Fraction(8, 2) + eps1)
    assert epsilon(tower, d).as_fraction() == expected


def test_epsilon_tilde_examples():
    zero_ell = AffineFunction(0, 0)
    shifted = AffineFunction(1, 1)  # ell(g) = g + 1
    t = Tower((0, 0))
    d = data([2, 0], [0, 3])
    assert epsilon_tilde(t, d, zero_ell).as_fraction() == 6
    assert epsilon_tilde(t, d, shifted).as_fraction() == 10


def test_epsilon_tilde_zero_ell_equals_epsilon(rng):
    zero_ell = AffineFunction(0, 0)
    for _ in range(200):
        tower, d = _random_nonneg(rng)
        assert epsilon_tilde(tower, d, zero_ell).as_fraction() == epsilon(tower, d).as_fraction()


def test_epsilon_tilde_dominates_epsilon(rng):
    ell = AffineFunction(Fraction(1, 2), Fraction(2))
    for _ in range(200):
        tower, d = _random_nonneg(rng)
        assert epsilon_tilde(tower, d, ell).as_fraction() >= epsilon(tower, d).as_fraction()


def _random_nonneg(rng, depth_max=3):
    depth = rng.randint(0, depth_max)
    genera = tuple(rng.randint(0, 5) for _ in range(depth + 1))
    mu = [Fraction(rng.randint(0, 20), rng.randint(1, 5)) for _ in range(depth + 1)]
    vol = [Fraction(rng.randint(0, 30), rng.randint(1, 5)) for _ in range(depth + 1)]
    return Tower(genera), data(mu, vol)


def test_rescale_examples():
    d = data([2, 0], [0, 3])
    r = rescale(d, 2)
    assert [m.as_fraction() for m in r.mu] == [4, 0]
    assert [v.as_fraction() for v in r.vol] == [0, 6]
    t = Tower((0, 0))
    assert epsilon(t, r).as_fraction() == 11
    assert epsilon(t, r).as_fraction() <= 2 * epsilon(t, d).as_fraction()
    assert rescale(d, 1) == d
    with pytest.raises(ValueError):
        rescale(d, 0)


def test_rescale_bound_sweep(rng):
    for _ in range(500):
        tower, d = _random_nonneg(rng)
        p = rng.randint(1, 5)
        depth = tower.depth
        scaled = epsilon(tower, rescale(d, p)).as_fraction()
        assert scaled <= Fraction(p) ** depth * epsilon(tower, d).as_fraction()


def test_monotonicity_in_every_argument(rng):
    for _ in range(500):
        tower, d = _random_nonneg(rng)
        base = epsilon(tower, d).as_fraction()
        depth = tower.depth
        bump = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        # slopes (only mu_0..mu_{d-1} enter)
        if depth >= 1:
            k = rng.randrange(depth)
            mu = list(d.mu)
            mu[k] = mu[k] + Scalar.exact(bump)
            assert epsilon(tower, TowerData(tuple(mu), d.vol)).as_fraction() >= base
        # volumes (only v_1..v_d enter)
        k = rng.randrange(len(d.vol))
        vol = list(d.vol)
        vol[k] = vol[k] + Scalar.exact(bump)
        assert epsilon(tower, TowerData(d.mu, tuple(vol))).as_fraction() >= base
        # genera
        k = rng.randrange(depth + 1)
        genera = list(tower.genera)
        genera[k] += rng.randint(1, 3)
        assert epsilon(Tower(tuple(genera)), d).as_fraction() >= base


def test_negative_slope_flagged_not_rejected():
    t = Tower((0, 0))
    d = data([-1, 0], [0, 3])
    with pytest.warns(NegativeSlopeWarning):
        value = epsilon(t, d)
    assert value.as_fraction() == -1 + 4


def test_validation():
    with pytest.raises(ValueError):
        Tower(())
    with pytest.raises(ValueError):
        Tower((0, -1))
    with pytest.raises(ValueError):
        TowerData((Scalar.exact(1),), (Scalar.exact(1), Scalar.exact(2)))
    with pytest.raises(ValueError):
        data([1], [-1])
    with pytest.raises(ValueError):
        epsilon(Tower((0, 0)), data([1], [1]))
    with pytest.raises(TypeError):
        from hnbounds import log_scalar

        TowerData((log_scalar(2),), (Scalar.exact(1),))


def test_affine_function():
    ell = AffineFunction(Fraction(1, 2), 3)
    assert ell(0).as_fraction() == Fraction(1, 2)
    assert ell(4).as_fraction() == Fraction(25, 2)


def test_json_round_trip():
    t = Tower((0, 2))
    d = data([Fraction(3, 2), 0], [0, 5])
    blob = json.dumps(tower_to_json(t, d))
    t2, d2 = tower_from_json(json.loads(blob))
    assert t2 == t and d2 == d
