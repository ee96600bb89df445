"""Slope data, polygons and the positive degree.

Walks through the core objects: build slope data from (rank, slope)
segments, draw its concave polygon, and see three routes to the positive
degree agree exactly: the nonnegative-slope sum, the polygon maximum, and
the integral of the rank filtration.
"""

from fractions import Fraction

from hnbounds import make_hn_type

h = make_hn_type([(2, 3), (1, 0), (2, -2)])
print("segments:", [(r, str(s.as_fraction())) for r, s in h.segments])
print("rank:", h.rank, " degree:", h.degree().as_fraction())

print("\npolygon breakpoints (cumulative rank, cumulative degree):")
for x, y in h.polygon().breakpoints:
    print(f"  ({x.as_fraction()}, {y.as_fraction()})")

print("\nthree routes to the positive degree:")
print("  sum over nonnegative slopes:", h.deg_plus().as_fraction())
print("  maximum of the polygon:     ", h.polygon().max_value().as_fraction())
print("  integral of rank(F^t):      ", h.positive_rank_integral().as_fraction())

print("\nrank of the filtration F^t (closed at each slope):")
for t in [Fraction(4), Fraction(3), Fraction(1), Fraction(0), Fraction(-2), Fraction(-3)]:
    print(f"  t = {t}: rank {h.filtration_rank(t)}")

print("\nslope measure (atom, mass):")
for slope, mass in h.slope_measure().atoms:
    print(f"  ({slope.as_fraction()}, {mass})")

print("\nduality: mu_max(h) + mu_min(dual h) =",
      (h.slope_extremes()[0] + h.dual().slope_extremes()[1]).as_fraction())

g = make_hn_type([(1, 1), (1, -1)])
t = h.tensor(g)
print("\ntensor with [(1,1),(1,-1)]:",
      [(r, str(s.as_fraction())) for r, s in t.segments])
print("rank multiplies:", t.rank, "=", h.rank, "*", g.rank)
