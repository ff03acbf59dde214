"""Transverse trees, centers of projective frames and the Busemann cocycle.

A tree is the space of norm classes on a 2-dimensional space.  Three kinds
of ambient space occur: ``K^2`` itself, a plane ``D`` of ``K^3`` (the
restriction tree of a line of the projective plane) and a quotient
``K^3/p`` (the tree at a point).  Each one carries a chart to ``K^2`` and
tree points are weighted bases in chart coordinates.

Tree coordinates: on the flat of a basis ``(w1, w2)`` the point with weights
``(s/2, -s/2)`` sits at signed distance ``s`` from the origin towards the end
``[w1]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Optional, Tuple, Union

from . import linalg
from .bpoints import (
    BuildingPoint,
    MarkedFlat,
    cartan_vector,
    dualize,
    equals,
    norm_logeval,
)
from .errors import DegenerateError, FieldMismatchError, NoProjectionError, VerificationError
from .modelflat import FlatVector
from .projplane import Flag, ProjLine, ProjPoint
from .valfield import INF, Val, ValuedField


def _first_nonzero(coords) -> int:
    return next(i for i, c in enumerate(coords) if c != 0)


@dataclass(frozen=True)
class TreeSpace:
    """A 2-dimensional ambient space with its chart to ``K^2``.

    ``kind`` is ``"k2"``, ``"plane"`` (``anchor`` is the line ``D``) or
    ``"quotient"`` (``anchor`` is the point ``p``).
    """

    field: ValuedField
    kind: str
    anchor: Optional[Union[ProjPoint, ProjLine]] = None

    @classmethod
    def k2(cls, field: ValuedField) -> "TreeSpace":
        return cls(field, "k2")

    @classmethod
    def plane(cls, D: ProjLine) -> "TreeSpace":
        return cls(D.field, "plane", D)

    @classmethod
    def quotient(cls, p: ProjPoint) -> "TreeSpace":
        return cls(p.field, "quotient", p)

    def _split(self):
        k = _first_nonzero(self.anchor.coords)
        i, j = (a for a in range(3) if a != k)
        return k, i, j

    def to_chart(self, v) -> tuple:
        """Chart coordinates of a vector of the ambient ``K^3`` (or ``K^2``)."""
        v = tuple(self.field.coerce(c) for c in v)
        if self.kind == "k2":
            return v
        k, i, j = self._split()
        if self.kind == "plane":
            if linalg.dot(self.anchor.coords, v) != 0:
                raise DegenerateError("vector does not lie in the plane")
            return (v[i], v[j])
        p = self.anchor.coords
        return (v[i] - p[i] * v[k], v[j] - p[j] * v[k])

    def lift(self, u) -> tuple:
        """A vector of ``K^3`` whose chart image is ``u`` (inside the plane for ``plane``)."""
        if self.kind == "k2":
            return tuple(u)
        k, i, j = self._split()
        out = [self.field.zero] * 3
        out[i], out[j] = u
        if self.kind == "plane":
            l = self.anchor.coords
            out[k] = -(l[i] * u[0] + l[j] * u[1])
        return tuple(out)

    def end_vector(self, xi) -> tuple:
        """Chart direction of an end of the tree.

        Ends are points of ``D`` for a plane, lines through ``p`` for a
        quotient, and vectors (or ``ProjPoint``-like pairs) for ``K^2``.
        """
        if self.kind == "k2":
            v = tuple(self.field.coerce(c) for c in xi)
        elif self.kind == "plane":
            if not isinstance(xi, ProjPoint):
                raise TypeError("ends of a plane tree are points")
            v = self.to_chart(xi.coords)
        else:
            if not isinstance(xi, ProjLine):
                raise TypeError("ends of a quotient tree are lines through the point")
            if not xi.contains(self.anchor):
                raise DegenerateError(f"{xi} does not pass through {self.anchor}")
            _, i, j = self._split()
            l = xi.coords
            v = (l[j], -l[i])
        if linalg.is_zero_vector(v):
            raise DegenerateError("zero end vector")
        return v


@dataclass(frozen=True, eq=False)
class TreePoint(BuildingPoint):
    space: Optional[TreeSpace] = None

    def _compatible(self, other):
        super()._compatible(other)
        if getattr(other, "space", None) != self.space:
            raise ValueError("tree points live in different trees")

    def __repr__(self):
        fmt = self.field.format
        basis = "; ".join("(" + ", ".join(fmt(c) for c in v) + ")" for v in self.basis)
        return f"TreePoint({self.space.kind}, basis=[{basis}], weights={self.weights})"


def tree_point(space: TreeSpace, basis, weights=None) -> TreePoint:
    if weights is None:
        weights = FlatVector.zero(2)
    return TreePoint(space.field, tuple(tuple(v) for v in basis), weights, False, space)


def tree_distance(x: TreePoint, y: TreePoint) -> Fraction:
    """Exact distance (the Cartan vector of a tree is ``(d/2, -d/2)``)."""
    return 2 * cartan_vector(x, y)[0]


def tree_position(x: TreePoint, basis) -> Optional[Fraction]:
    """Signed coordinate of ``x`` on the flat of ``basis`` (``None`` if off it)."""
    F = MarkedFlat(x.field, basis)
    c = tuple(-norm_logeval(x, b) for b in F.basis)
    if not equals(x, tree_point(x.space, F.basis, c)):
        return None
    return c[0] - c[1]


# --------------------------------------------------------------------------
# best approximation and adapted bases


def best_approx(N: BuildingPoint, v, w) -> Tuple[object, Val]:
    """``λ`` minimizing ``log N(v - λw)`` and the minimal value.

    The minimum is attained at ``0`` or at one of the ratios ``u_i/w_i`` of
    coordinates in ``N``'s basis; the first minimizing candidate (in that
    order) is returned.
    """
    field = N.field
    v = tuple(field.coerce(c) for c in v)
    w = tuple(field.coerce(c) for c in w)
    if linalg.is_zero_vector(w):
        raise DegenerateError("cannot approximate along the zero vector")
    u = linalg.coordinates(N.basis, v)
    wc = linalg.coordinates(N.basis, w)
    if all(u[i] * wc[j] == u[j] * wc[i] for i in range(len(u)) for j in range(i)):
        raise DegenerateError("v lies in the span of w")
    candidates = [field.zero] + [ui / wi for ui, wi in zip(u, wc) if wi != 0]
    best = None
    for lam in candidates:
        val = norm_logeval(N, linalg.sub(v, linalg.scale(lam, w)))
        if best is None or val < best[1]:
            best = (lam, val)
    return best


def adapted_basis(N: BuildingPoint, w) -> Tuple[tuple, tuple]:
    """A basis ``(w, r)`` of a tree point's space that is orthogonal for ``N``, with its weights."""
    if N.dim != 2:
        raise ValueError("adapted_basis is for tree points")
    w = tuple(N.field.coerce(c) for c in w)
    v = N.basis[0]
    if linalg.columns_det((w, v)) == 0:
        v = N.basis[1]
    lam, val = best_approx(N, v, w)
    r = linalg.sub(v, linalg.scale(lam, w))
    return (w, r), (-norm_logeval(N, w), -val)


# --------------------------------------------------------------------------
# centers of frames


def _frame_vectors(objs):
    vecs = []
    for o in objs:
        vecs.append(tuple(o.coords) if isinstance(o, (ProjPoint, ProjLine)) else tuple(o))
    return vecs


def _center_basis(field: ValuedField, frame, unit):
    """Scale the frame vectors so that ``unit`` is their sum."""
    if linalg.columns_det(frame) == 0:
        raise DegenerateError("frame vectors are dependent")
    a = linalg.coordinates(frame, unit)
    if any(ai == 0 for ai in a):
        raise DegenerateError("tuple is not in general position")
    return tuple(linalg.scale(ai, f) for ai, f in zip(a, frame))


def center_frame(points, space: Optional[TreeSpace] = None):
    """Center of a generic ``(N+1)``-tuple: the last entry plays the unit point.

    With three ``ProjPoint`` s and a unit point the result is a point of the
    building; with ``ProjLine`` s it is a point of the dual building.  With
    2-vectors (``N = 2``) the result is a tree point of ``space`` (default
    ``K^2``).
    """
    objs = list(points)
    if len(objs) not in (3, 4):
        raise ValueError("a frame has 3 or 4 entries")
    first = objs[0]
    field = first.field if isinstance(first, (ProjPoint, ProjLine)) else (space.field if space else None)
    if field is None:
        raise ValueError("a tree space is needed for raw vectors")
    if isinstance(first, (ProjPoint, ProjLine)) and any(o.field != field for o in objs):
        raise FieldMismatchError("frame over different fields")
    vecs = [tuple(field.coerce(c) for c in v) for v in _frame_vectors(objs)]
    n = len(vecs) - 1
    if any(len(v) != n for v in vecs):
        raise ValueError(f"a frame of {len(vecs)} entries needs vectors of length {n}")
    basis = _center_basis(field, vecs[:-1], vecs[-1])
    if n == 2:
        return tree_point(space or TreeSpace.k2(field), basis)
    return BuildingPoint(field, basis, FlatVector.zero(3), isinstance(first, ProjLine))


def tree_center(space: TreeSpace, a, b, c) -> TreePoint:
    """The center of the ideal tripod with ends ``a, b, c``."""
    vecs = [space.end_vector(e) for e in (a, b, c)]
    return center_frame(vecs, space)


def project_ideal_point_on_flat(p: ProjPoint, frame) -> BuildingPoint:
    """Projection of the ideal point ``p`` on the flat of the points ``frame``."""
    try:
        return center_frame(list(frame) + [p])
    except DegenerateError as exc:
        raise NoProjectionError(f"{p} and the flat do not form a projective frame") from exc


def project_ideal_line_on_flat(D: ProjLine, frame) -> BuildingPoint:
    """Projection of the ideal line ``D`` on the flat of the lines ``frame``, as a point of the building."""
    try:
        dual = center_frame(list(frame) + [D])
    except DegenerateError as exc:
        raise NoProjectionError(f"{D} and the flat do not form a projective frame") from exc
    return dualize(dual)


# --------------------------------------------------------------------------
# restriction and quotient


def restrict_point(x: BuildingPoint, D: ProjLine) -> TreePoint:
    """The restriction of the norm ``x`` to the plane ``D``."""
    if x.dual:
        raise ValueError("restrict_point expects a point of the primal building")
    space = TreeSpace.plane(D)
    d1 = space.lift((x.field.one, x.field.zero))
    d2 = space.lift((x.field.zero, x.field.one))
    lam, val = best_approx(x, d2, d1)
    r = linalg.sub(d2, linalg.scale(lam, d1))
    basis = (space.to_chart(d1), space.to_chart(r))
    return tree_point(space, basis, (-norm_logeval(x, d1), -val))


def quotient_point(x: BuildingPoint, p: ProjPoint) -> TreePoint:
    """The quotient norm on ``K^3/p``.

    Writing ``p`` in the basis of ``x``, the basis vector carrying the norm of
    ``p`` is exchanged for ``p``; the other two stay orthogonal modulo ``p``.
    """
    if x.dual:
        raise ValueError("quotient_point expects a point of the primal building")
    space = TreeSpace.quotient(p)
    u = linalg.coordinates(x.basis, p.coords)
    c = x.weights.coords
    k = max((i for i in range(3) if u[i] != 0), key=lambda i: -x.field.val(u[i]) - c[i])
    keep = [i for i in range(3) if i != k]
    basis = tuple(space.to_chart(x.basis[i]) for i in keep)
    return tree_point(space, basis, tuple(c[i] for i in keep))


# --------------------------------------------------------------------------
# Busemann functions


def tree_busemann(xi, x: TreePoint, y: TreePoint) -> Fraction:
    """``lim d(x, z) - d(y, z)`` as ``z`` runs to the end ``xi``."""
    x._compatible(y)
    w = x.space.end_vector(xi)
    basis, (a, b) = adapted_basis(x, w)
    d = tree_distance(x, y)
    values = []
    for t in (ceil(d) + 1, ceil(d) + 2):
        z = tree_point(x.space, basis, (a + Fraction(t, 2), b - Fraction(t, 2)))
        values.append(t - tree_distance(y, z))
    if values[0] != values[1]:
        raise VerificationError(f"Busemann march did not stabilize: {values}")
    return values[0]


def busemann_chamber(F: Flag, x: BuildingPoint, y: BuildingPoint) -> FlatVector:
    """Vector-valued Busemann cocycle at the chamber ``F = (p, D)``, read in simple-root coordinates."""
    p, D = F.point, F.line
    a1 = tree_busemann(p, restrict_point(x, D), restrict_point(y, D))
    a2 = tree_busemann(D, quotient_point(x, p), quotient_point(y, p))
    return FlatVector.from_src(a1, a2)


def geombir_tree_oracle(space: TreeSpace, xi1, xi2, xi3, xi4) -> Fraction:
    """``Bus_ξ1(center(ξ3, ξ1, ξ2), center(ξ3, ξ1, ξ4))``: the cross ratio read in the tree."""
    ends = (xi1, xi2, xi3, xi4)
    vecs = [space.end_vector(e) for e in ends]
    for i in range(4):
        for j in range(i + 1, 4):
            if linalg.columns_det((vecs[i], vecs[j])) == 0:
                raise DegenerateError("ends must be pairwise distinct")
    c1 = tree_center(space, xi3, xi1, xi2)
    c2 = tree_center(space, xi3, xi1, xi4)
    return tree_busemann(xi1, c1, c2)
