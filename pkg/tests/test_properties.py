"""Property-based checks with fixed hypothesis seeds."""
from fractions import Fraction

from hypothesis import given, seed, settings
from hypothesis import strategies as st

from a2flats.bpoints import building_point, cartan_vector, minor_minima
from a2flats.modelflat import FlatVector
from a2flats.projplane import ProjPoint, cross_ratio_points, geom_cross_ratio
from a2flats.valfield import PAdicRationals

from oracles import lattice_cartan

K5 = PAdicRationals(5)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)
small_ints = st.integers(min_value=-30, max_value=30)
weights = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))


@seed(1)
@given(rationals, rationals)
def test_src_round_trip(a, b):
    v = FlatVector.from_src(a, b)
    assert v.src() == (a, b)
    assert sum(v.coords) == 0


@seed(2)
@given(st.tuples(rationals, rationals, rationals))
def test_weyl_type_is_chamber_representative(c):
    v = FlatVector(c)
    w = v.weyl_type()
    assert w.weyl_type() == w
    assert w.root(1) >= 0 and w.root(2) >= 0
    assert w.norm_sq() == v.norm_sq()
    assert v.opposite_type() == (-w).weyl_type()


@seed(3)
@given(small_ints.filter(bool), small_ints.filter(bool))
def test_padic_valuation(a, b):
    a, b = Fraction(a), Fraction(b)
    assert K5.val(a * b) == K5.val(a) + K5.val(b)
    if a + b:
        assert K5.val(a + b) >= min(K5.val(a), K5.val(b))


@seed(4)
@settings(max_examples=60)
@given(st.lists(small_ints, min_size=4, max_size=4, unique=True))
def test_cross_ratio_symmetries(xs):
    a, b, c, d = (ProjPoint(K5, (x, 1, 0)) for x in xs)
    r = cross_ratio_points(a, b, c, d)
    assert cross_ratio_points(b, a, d, c) == r
    assert cross_ratio_points(c, d, a, b) == r
    assert cross_ratio_points(c, b, a, d) * r == 1
    g = (geom_cross_ratio(a, b, c, d), geom_cross_ratio(a, d, b, c), geom_cross_ratio(a, c, d, b))
    assert sum(g) == 0
    # ultrametric: one of the three vanishes and the other two are opposite
    lo, mid, hi = sorted(g)
    assert mid == 0 and lo == -hi


matrices = st.tuples(*[st.tuples(small_ints, small_ints, small_ints)] * 3)


@seed(5)
@settings(max_examples=60, deadline=None)
@given(matrices, matrices, weights, weights)
def test_cartan_matches_lattice_model(X, Y, c, d):
    from a2flats import linalg

    if linalg.columns_det(X) == 0 or linalg.columns_det(Y) == 0:
        return
    got = cartan_vector(building_point(K5, X, c), building_point(K5, Y, d))
    assert got.coords == lattice_cartan(K5, X, c, Y, d)
    m = minor_minima(building_point(K5, X, c), building_point(K5, Y, d))
    assert m[0] - 0 <= m[1] - m[0] <= m[2] - m[1]
