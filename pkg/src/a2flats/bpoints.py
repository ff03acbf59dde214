"""Points of the building ``E(K^n)`` as weighted bases (diagonalizable norm classes).

The point with basis ``(e_1, ..., e_n)`` and weights ``c`` is the homothety
class of the norm ``N(sum u_i e_i) = max_i exp(-v(u_i) - c_i)``.  With this
sign convention a diagonal ``g = diag(a_i)`` moves ``(e, 0)`` to
``(e, (log|a_i|)_i)``.

The same code serves ``n = 3`` (the building) and ``n = 2`` (transverse
trees, see :mod:`a2flats.transverse`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Optional, Tuple

from . import linalg
from .errors import DegenerateError, FieldMismatchError
from .modelflat import FlatVector
from .valfield import INF, Val, ValuedField


@lru_cache(maxsize=4096)
def _inverse(basis) -> tuple:
    return linalg.inverse_rows(tuple(zip(*basis)))


@lru_cache(maxsize=16384)
def _transition(field: ValuedField, xbasis, ybasis):
    """Valuations of the entries and minors of the matrix expressing ``ybasis`` in ``xbasis``.

    Returns ``(entries, minor_table)`` where ``entries[i][j] = v(g_ij)`` and
    ``minor_table[k-1]`` lists ``(rows, cols, v(det))`` for the nonzero
    ``k x k`` minors.
    """
    inv = _inverse(xbasis)
    cols = [linalg.mat_vec(inv, y) for y in ybasis]
    g = tuple(zip(*cols))  # g[i][j]: coordinate i of y_j
    n = len(g)
    entries = tuple(tuple(field.val(g[i][j]) for j in range(n)) for i in range(n))
    table = []
    for k in range(1, n + 1):
        level = []
        for rs, cs, m in linalg.minors(g, k):
            if m != 0:
                v = field.val(m)
                level.append((rs, cs, int(v) if v.denominator == 1 else v))
        table.append(tuple(level))
    return entries, tuple(table)


def _subset_sums(w):
    n = len(w)
    return {
        s: sum(w[i] for i in s)
        for k in range(1, n + 1)
        for s in combinations(range(n), k)
    }


def _integral(weights, D: int):
    return [c.numerator * (D // c.denominator) for c in weights]


@dataclass(frozen=True, eq=False)
class BuildingPoint:
    field: ValuedField
    basis: Tuple[tuple, ...]
    weights: FlatVector
    dual: bool = False

    def __post_init__(self):
        basis = tuple(tuple(self.field.coerce(c) for c in v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        if not isinstance(self.weights, FlatVector):
            object.__setattr__(self, "weights", FlatVector(tuple(self.weights)))
        n = len(basis)
        if any(len(v) != n for v in basis) or len(self.weights) != n:
            raise ValueError("basis and weights must have matching dimension")
        if linalg.columns_det(basis) == 0:
            raise DegenerateError("basis is not invertible")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _compatible(self, other: "BuildingPoint"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")
        if self.dual != other.dual or self.dim != other.dim:
            raise ValueError("points live in different buildings")

    def __eq__(self, other):
        if not isinstance(other, BuildingPoint):
            return NotImplemented
        return equals(self, other)

    __hash__ = None

    def __repr__(self):
        fmt = self.field.format
        basis = "; ".join("(" + ", ".join(fmt(c) for c in v) + ")" for v in self.basis)
        return f"BuildingPoint(basis=[{basis}], weights={self.weights}{', dual' if self.dual else ''})"


def building_point(field, basis, weights=None, dual=False) -> BuildingPoint:
    if weights is None:
        weights = FlatVector.zero(len(basis))
    return BuildingPoint(field, tuple(tuple(v) for v in basis), weights, dual)


def standard_point(field: ValuedField, weights=None, n: int = 3) -> BuildingPoint:
    """The point of the standard basis with given weights (default: origin)."""
    zero, one = field.zero, field.one
    basis = tuple(tuple(one if i == j else zero for i in range(n)) for j in range(n))
    return building_point(field, basis, weights)


def minor_minima(x: BuildingPoint, y: BuildingPoint) -> Tuple[Fraction, ...]:
    """``m_k``: minimum effective valuation of the ``k x k`` minors, ``k = 1..n``."""
    x._compatible(y)
    _, table = _transition(x.field, x.basis, y.basis)
    # work with integers over a common denominator; the valuations are integral here
    D = lcm(*(c.denominator for c in x.weights.coords + y.weights.coords))
    cs = _subset_sums(_integral(x.weights.coords, D))
    ds = _subset_sums(_integral(y.weights.coords, D))
    out = []
    for level in table:
        out.append(Fraction(min(v * D + cs[rs] - ds[cols] for rs, cols, v in level), D))
    return tuple(out)


def cartan_vector(x: BuildingPoint, y: BuildingPoint) -> FlatVector:
    """Vector distance from ``x`` to ``y`` in the closed model chamber."""
    m = minor_minima(x, y)
    prev = Fraction(0)
    lam = []
    for mk in m:
        lam.append(mk - prev)
        prev = mk
    return FlatVector(tuple(-a for a in lam))


def equals(x: BuildingPoint, y: BuildingPoint) -> bool:
    return cartan_vector(x, y).is_zero()


def distance_sq(x: BuildingPoint, y: BuildingPoint) -> Fraction:
    return cartan_vector(x, y).norm_sq()


def norm_logeval(x: BuildingPoint, v) -> Val:
    """``log N_x(v) = max_i(-v(u_i) - c_i)`` with ``u`` the coordinates of ``v`` in ``x.basis``."""
    v = tuple(x.field.coerce(c) for c in v)
    if linalg.is_zero_vector(v):
        raise DegenerateError("norm of the zero vector")
    u = linalg.mat_vec(_inverse(x.basis), v)
    best = -INF
    for ui, ci in zip(u, x.weights.coords):
        if ui != 0:
            best = max(best, -x.field.val(ui) - ci)
    return best


def _basis_logevals(x: BuildingPoint, basis) -> Tuple[Val, ...]:
    """``norm_logeval(x, b)`` for every vector of ``basis``, via the cached transition."""
    entries, _ = _transition(x.field, x.basis, basis)
    c = x.weights.coords
    n = len(basis)
    return tuple(
        max(-entries[i][j] - c[i] for i in range(n) if entries[i][j] != INF)
        for j in range(n)
    )


@dataclass(frozen=True)
class MarkedFlat:
    """The flat of a basis; its marking sends the model chamber's boundary to ``([f1], f1⊕f2)``."""

    field: ValuedField
    basis: Tuple[tuple, ...]
    dual: bool = False
    name: str = ""

    def __post_init__(self):
        basis = tuple(tuple(self.field.coerce(c) for c in v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        if linalg.columns_det(basis) == 0:
            raise DegenerateError("flat basis is not invertible")

    def point_at(self, c) -> BuildingPoint:
        if not isinstance(c, FlatVector):
            c = FlatVector(tuple(c))
        p = object.__new__(BuildingPoint)
        object.__setattr__(p, "field", self.field)
        object.__setattr__(p, "basis", self.basis)
        object.__setattr__(p, "weights", c)
        object.__setattr__(p, "dual", self.dual)
        return p

    @property
    def origin(self) -> BuildingPoint:
        return self.point_at(FlatVector.zero(len(self.basis)))

    def __repr__(self):
        return f"MarkedFlat({self.name or 'unnamed'})"


def flat_coords(x: BuildingPoint, F: MarkedFlat) -> Optional[FlatVector]:
    """Coordinates of ``x`` in the marked flat ``F``, or ``None`` if ``x`` is not on ``F``."""
    if x.field != F.field:
        raise FieldMismatchError(f"{x.field.name} vs {F.field.name}")
    if x.dual != F.dual:
        raise ValueError("point and flat live in different buildings")
    c = FlatVector(tuple(-a for a in _basis_logevals(x, F.basis)))
    if equals(x, F.point_at(c)):
        return c
    return None


def dualize(x: BuildingPoint) -> BuildingPoint:
    """The dual norm class, living in the building of the dual space."""
    inv = _inverse(x.basis)
    return BuildingPoint(x.field, tuple(tuple(r) for r in inv), -x.weights, not x.dual)


def dualize_flat(F: MarkedFlat) -> MarkedFlat:
    inv = _inverse(F.basis)
    return MarkedFlat(F.field, tuple(tuple(r) for r in inv), not F.dual, F.name + "*")


def apply_group(g, x: BuildingPoint) -> BuildingPoint:
    """Push ``x`` forward by the matrix ``g`` (rows); dual points use the contragredient action."""
    rows = tuple(tuple(x.field.coerce(c) for c in r) for r in g)
    if linalg.det(rows) == 0:
        raise DegenerateError("singular matrix")
    if x.dual:
        rows = linalg.transpose(linalg.inverse_rows(rows))
    basis = tuple(linalg.mat_vec(rows, b) for b in x.basis)
    return BuildingPoint(x.field, basis, x.weights, x.dual)
