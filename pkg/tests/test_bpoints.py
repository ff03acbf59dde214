import random
from fractions import Fraction as Fr

import pytest

from a2flats import linalg
from a2flats.bpoints import (
    MarkedFlat,
    apply_group,
    building_point,
    cartan_vector,
    distance_sq,
    dualize,
    dualize_flat,
    equals,
    flat_coords,
    minor_minima,
    norm_logeval,
    standard_point,
)
from a2flats.errors import DegenerateError
from a2flats.modelflat import FlatVector
from a2flats.valfield import INF
from a2flats.verify import random_vector

from oracles import lattice_cartan

E = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def shear(K):
    t = K.t
    return building_point(K, ((1, 0, 0), (0, 1, 0), (1 / t, 0, 1)))


def random_basis(K, rng):
    while True:
        B = tuple(random_vector(K, rng) for _ in range(3))
        if linalg.columns_det(B) != 0:
            return B


def test_cartan_diagonal(qt):
    c = FlatVector((Fr(-1, 2), 1, Fr(-1, 2)))
    assert cartan_vector(standard_point(qt), standard_point(qt, c)) == c.weyl_type()


def test_cartan_shear(qt):
    x, y = standard_point(qt), shear(qt)
    assert cartan_vector(x, y) == FlatVector((1, 0, -1))
    assert minor_minima(x, y) == (-1, -1, 0)
    assert lattice_cartan(qt, E, (0, 0, 0), y.basis, (0, 0, 0)) == (1, 0, -1)


def test_rescaled_basis_is_same_point(qt):
    t = qt.t
    x = standard_point(qt, (1, 0, -1))
    # scaling e1 by t moves its weight by v(t) = 1
    y = building_point(qt, ((t, 0, 0), (0, 3, 0), (0, 0, 1)), (2, 0, -1))
    assert cartan_vector(x, y).is_zero()
    assert x == y


def test_equals_and_distance(qt):
    x, y = standard_point(qt), shear(qt)
    assert equals(x, x) and distance_sq(x, x) == 0
    assert not equals(x, y) and distance_sq(x, y) == 4
    z = standard_point(qt, (1, 1, -2))
    assert distance_sq(x, z) == 12


def test_norm_logeval(qt):
    t = qt.t
    x = standard_point(qt)
    assert norm_logeval(x, (1, 0, 0)) == 0
    assert norm_logeval(x, (1, t, 0)) == 0
    assert norm_logeval(standard_point(qt, (1, 0, -1)), (0, 0, 1)) == 1
    with pytest.raises(DegenerateError):
        norm_logeval(x, (0, 0, 0))


def test_flat_coords(qt):
    F = MarkedFlat(qt, E)
    c = FlatVector.from_src(Fr(1, 2), -3)
    assert flat_coords(F.point_at(c), F) == c
    assert flat_coords(shear(qt), F) is None
    y = building_point(qt, shear(qt).basis, (1, 0, -1))
    assert flat_coords(y, MarkedFlat(qt, y.basis)) == y.weights


def test_dualize(qt):
    x = standard_point(qt)
    d = dualize(x)
    assert d.dual and d.weights.is_zero()
    c = FlatVector((1, 0, -1))
    dc = dualize(standard_point(qt, c))
    assert dc.weights == -c
    assert dualize(dc) == standard_point(qt, c)
    y = shear(qt)
    assert distance_sq(dualize(x), dualize(y)) == distance_sq(x, y) == 4
    assert cartan_vector(dualize(x), dualize(y)) == cartan_vector(x, y).opposite_type()
    F = dualize_flat(MarkedFlat(qt, E))
    assert flat_coords(dc, F) == -c


def test_apply_group(qt):
    t = qt.t
    x = standard_point(qt)
    assert apply_group(E, x) == x
    moved = apply_group(((t, 0, 0), (0, 1, 0), (0, 0, 1 / t)), x)
    assert cartan_vector(x, moved) == FlatVector((1, 0, -1))
    # the action is isometric
    rng = random.Random(2)
    g = random_basis(qt, rng)
    y = shear(qt)
    assert distance_sq(apply_group(g, x), apply_group(g, y)) == distance_sq(x, y)
    assert apply_group(g, dualize(y)) == dualize(apply_group(g, y))


def test_cartan_against_lattice_oracle(field):
    rng = random.Random(7)
    for _ in range(25):
        X, Y = random_basis(field, rng), random_basis(field, rng)
        c = [rng.randint(-3, 3) for _ in range(3)]
        d = [rng.randint(-3, 3) for _ in range(3)]
        got = cartan_vector(building_point(field, X, c), building_point(field, Y, d))
        assert got.coords == lattice_cartan(field, X, c, Y, d)


def test_singular_basis_rejected(qp5):
    with pytest.raises(DegenerateError):
        building_point(qp5, ((1, 0, 0), (2, 0, 0), (0, 0, 1)))
