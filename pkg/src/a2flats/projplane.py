"""The projective plane ``P(K^3)``, its dual, flags, cross ratios and triple ratios."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from . import linalg
from .errors import DegenerateError, FieldMismatchError
from .valfield import INF, INFINITY, Val, ValuedField


def _canonical(field: ValuedField, coords) -> tuple:
    coords = tuple(field.coerce(c) for c in coords)
    if len(coords) != 3:
        raise ValueError("homogeneous coordinates must have length 3")
    for c in coords:
        if c != 0:
            lead = c
            break
    else:
        raise DegenerateError("all homogeneous coordinates are zero")
    if lead == 1:
        return coords
    return tuple(c / lead for c in coords)


@dataclass(frozen=True)
class _Homogeneous:
    field: ValuedField
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", _canonical(self.field, self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _same_field(self, other):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")

    def __str__(self):
        body = ":".join(self.field.format(c) for c in self.coords)
        return f"[{body}]"


class ProjPoint(_Homogeneous):
    """A point of ``P(K^3)``; first nonzero coordinate is 1."""

    def __repr__(self):
        return f"ProjPoint{self}"


class ProjLine(_Homogeneous):
    """A line of ``P(K^3)`` given by a linear form; first nonzero coefficient is 1."""

    def __repr__(self):
        return f"ProjLine{self}"

    def contains(self, p: ProjPoint) -> bool:
        self._same_field(p)
        return linalg.dot(self.coords, p.coords) == 0


def incident(p: ProjPoint, line: ProjLine) -> bool:
    return line.contains(p)


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """The line ``pq``."""
    p._same_field(q)
    if p == q:
        raise DegenerateError(f"cannot join equal points {p}")
    return ProjLine(p.field, linalg.cross(p.coords, q.coords))


def meet(a: ProjLine, b: ProjLine) -> ProjPoint:
    """The intersection point of two distinct lines."""
    a._same_field(b)
    if a == b:
        raise DegenerateError(f"cannot meet equal lines {a}")
    return ProjPoint(a.field, linalg.cross(a.coords, b.coords))


def collinear(*points: ProjPoint) -> bool:
    distinct = list(dict.fromkeys(points))
    if len(distinct) <= 2:
        return True
    line = join(distinct[0], distinct[1])
    return all(line.contains(p) for p in distinct[2:])


def concurrent(*lines: ProjLine) -> bool:
    distinct = list(dict.fromkeys(lines))
    if len(distinct) <= 2:
        return True
    p = meet(distinct[0], distinct[1])
    return all(line.contains(p) for line in distinct[2:])


@dataclass(frozen=True)
class Flag:
    point: ProjPoint
    line: ProjLine

    def __post_init__(self):
        if not self.line.contains(self.point):
            raise DegenerateError(f"{self.point} does not lie on {self.line}")

    @property
    def field(self):
        return self.point.field


def opposite(f: Flag, g: Flag) -> bool:
    return not g.line.contains(f.point) and not f.line.contains(g.point)


@dataclass(frozen=True)
class FlagTriple:
    """Three flags indexed by ``Z/3Z`` (``T.p(4) == T.p(1)``)."""

    flags: Tuple[Flag, Flag, Flag]

    def __post_init__(self):
        object.__setattr__(self, "flags", tuple(self.flags))
        if len(self.flags) != 3:
            raise ValueError("a flag triple has three flags")
        f = self.flags[0].field
        if any(g.field != f for g in self.flags):
            raise FieldMismatchError("flags over different fields")

    @property
    def field(self) -> ValuedField:
        return self.flags[0].field

    def F(self, i: int) -> Flag:
        return self.flags[(i - 1) % 3]

    def p(self, i: int) -> ProjPoint:
        return self.F(i).point

    def D(self, i: int) -> ProjLine:
        return self.F(i).line

    def p_meet(self, i: int, j: int) -> ProjPoint:
        """``p_ij = D_i ∩ D_j``."""
        return meet(self.D(i), self.D(j))

    def D_join(self, i: int, j: int) -> ProjLine:
        """``D_ij = p_i p_j``."""
        return join(self.p(i), self.p(j))

    def cyclic(self) -> "FlagTriple":
        """``(F2, F3, F1)``."""
        return FlagTriple((self.F(2), self.F(3), self.F(1)))

    def reversed(self) -> "FlagTriple":
        """``(F3, F2, F1)``."""
        return FlagTriple((self.F(3), self.F(2), self.F(1)))

    def swapped(self) -> "FlagTriple":
        """``(F1, F3, F2)``."""
        return FlagTriple((self.F(1), self.F(3), self.F(2)))

    def __iter__(self):
        return iter(self.flags)


def nondegenerate(T: FlagTriple) -> bool:
    forward = all(not T.D(i + 1).contains(T.p(i)) for i in (1, 2, 3))
    backward = all(not T.D(i - 1).contains(T.p(i)) for i in (1, 2, 3))
    return forward or backward


def generic(T: FlagTriple) -> bool:
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i != j and T.D(j).contains(T.p(i)):
                return False
    if linalg.columns_det([T.p(i).coords for i in (1, 2, 3)]) == 0:
        return False
    if linalg.columns_det([T.D(i).coords for i in (1, 2, 3)]) == 0:
        return False
    return True


def require_generic(T: FlagTriple) -> None:
    if not generic(T):
        raise DegenerateError("flag triple is not generic")


def remark_triple(field: ValuedField, Z) -> FlagTriple:
    """The normalized triple with ``Δ_i = e_i^*`` and points (0,1,1), (Z,0,1), (1,1,0).

    Its algebraic triple ratio is ``Z``.
    """
    Z = field.coerce(Z)
    one, zero = field.one, field.zero
    points = [(zero, one, one), (Z, zero, one), (one, one, zero)]
    lines = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    return FlagTriple(tuple(
        Flag(ProjPoint(field, p), ProjLine(field, d)) for p, d in zip(points, lines)
    ))


# --------------------------------------------------------------------------
# cross ratios


def bir_vectors(v1, v2, v3, v4):
    """Cross ratio of four vectors of ``K^2`` (or of a common plane in any chart).

    ``(a1-a2)(a3-a4) / ((a1-a4)(a2-a3))`` written with 2x2 determinants, so the
    point at infinity needs no special case.
    """
    def d(a, b):
        return a[0] * b[1] - a[1] * b[0]

    num = d(v1, v2) * d(v3, v4)
    den = d(v1, v4) * d(v2, v3)
    if den == 0:
        if num == 0:
            raise DegenerateError("quadruple has a triple point")
        return INFINITY
    return num / den


def _chart_drop(line_coords, chart=None) -> int:
    """Index of the coordinate dropped by the affine chart of a line."""
    if chart is None:
        for k, c in enumerate(line_coords):
            if c != 0:
                return k
    if line_coords[chart] == 0:
        raise ValueError(f"chart dropping coordinate {chart} is not injective on this line")
    return chart


def _project(v, k):
    return tuple(c for i, c in enumerate(v) if i != k)


def common_line(points) -> ProjLine:
    distinct = list(dict.fromkeys(points))
    if len(distinct) < 2:
        raise DegenerateError("quadruple has a triple point")
    line = join(distinct[0], distinct[1])
    for p in distinct[2:]:
        if not line.contains(p):
            raise DegenerateError("points are not collinear")
    return line


def common_point(lines) -> ProjPoint:
    distinct = list(dict.fromkeys(lines))
    if len(distinct) < 2:
        raise DegenerateError("quadruple has a triple line")
    p = meet(distinct[0], distinct[1])
    for line in distinct[2:]:
        if not line.contains(p):
            raise DegenerateError("lines are not concurrent")
    return p


def cross_ratio_points(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint, chart=None):
    """Algebraic cross ratio of four collinear points, in ``K ∪ {INFINITY}``.

    ``chart`` optionally selects which homogeneous coordinate the affine chart
    drops; the value does not depend on it.
    """
    pts = (p1, p2, p3, p4)
    line = common_line(pts)
    k = _chart_drop(line.coords, chart)
    return bir_vectors(*(_project(p.coords, k) for p in pts))


def cross_ratio_lines(L1: ProjLine, L2: ProjLine, L3: ProjLine, L4: ProjLine, transversal=None):
    """Cross ratio of four concurrent lines, read on a transversal line.

    By default the transversal is the coordinate line ``x_k = 0`` for the first
    ``k`` with ``q_k != 0``, ``q`` being the common point.
    """
    lines = (L1, L2, L3, L4)
    q = common_point(lines)
    if transversal is None:
        k = next(i for i, c in enumerate(q.coords) if c != 0)
        coords = [q.field.zero] * 3
        coords[k] = q.field.one
        transversal = ProjLine(q.field, coords)
    elif transversal.contains(q):
        raise DegenerateError("transversal passes through the common point")
    return cross_ratio_points(*(meet(L, transversal) for L in lines))


def cross_ratio(a, b, c, d):
    if isinstance(a, ProjLine):
        return cross_ratio_lines(a, b, c, d)
    return cross_ratio_points(a, b, c, d)


def geom_cross_ratio(a, b, c, d) -> Val:
    """``log|Bir|`` of a quadruple of collinear points or concurrent lines.

    Degenerate quadruples without triple point give 0, -inf or +inf.
    """
    value = cross_ratio(a, b, c, d)
    field = a.field
    if value is INFINITY:
        return INF
    return field.logabs(value)


# --------------------------------------------------------------------------
# triple ratios


def _require_nondegenerate(T: FlagTriple) -> None:
    if not nondegenerate(T):
        raise DegenerateError("flag triple is degenerate")


def triple_ratio(T: FlagTriple):
    """Algebraic triple ratio ``Δ1(p2)Δ2(p3)Δ3(p1) / (Δ1(p3)Δ2(p1)Δ3(p2))``."""
    _require_nondegenerate(T)

    def ev(i, j):
        return linalg.dot(T.D(i).coords, T.p(j).coords)

    num = ev(1, 2) * ev(2, 3) * ev(3, 1)
    den = ev(1, 3) * ev(2, 1) * ev(3, 2)
    if den == 0:
        return INFINITY
    return num / den


def pencil_at_p1(T: FlagTriple):
    """The lines ``D1, p1p2, p1p23, p1p3`` through ``p1``."""
    p1 = T.p(1)
    return (T.D(1), join(p1, T.p(2)), join(p1, T.p_meet(2, 3)), join(p1, T.p(3)))


def points_on_D1(T: FlagTriple):
    """The points ``p1, D2∩D1, D23∩D1, D3∩D1`` on ``D1``."""
    D1 = T.D(1)
    return (T.p(1), meet(T.D(2), D1), meet(T.D_join(2, 3), D1), meet(T.D(3), D1))


def _three_shifts(a, b, c, d):
    return (
        geom_cross_ratio(a, b, c, d),
        geom_cross_ratio(a, d, b, c),
        geom_cross_ratio(a, c, d, b),
    )


def geom_triple_ratio(T: FlagTriple) -> Tuple[Val, Val, Val]:
    """Geometric triple ratio ``(Z1, Z2, Z3)`` from the pencil of lines at ``p1``."""
    _require_nondegenerate(T)
    return _three_shifts(*pencil_at_p1(T))


def geom_triple_ratio_dual(T: FlagTriple) -> Tuple[Val, Val, Val]:
    """Dual invariants from the quadruple of points on ``D1``."""
    _require_nondegenerate(T)
    return _three_shifts(*points_on_D1(T))
