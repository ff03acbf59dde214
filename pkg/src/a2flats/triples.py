"""Generic triples of flags: five flats, special points, tripod / flat-triangle classification.

Conventions used throughout:

* ``A_ij`` (ids ``"A12"``, ``"A23"``, ``"A31"``) is the flat of the basis
  ``(p_j, D_i ∩ D_j, p_i)``, so its marking sends the model chamber's
  boundary to ``F_j``.
* ``A_p`` (``"Ap"``) is the flat of ``(p1, p2, p3)``.
* ``A_D`` (``"AD"``) is the flat of ``(D1∩D2, D1∩D3, D2∩D3)``, marked so
  that the boundary goes to ``(D1∩D2, D1)``.
* ``y_k`` is the center of ``(p1, p2, p3; p_ij)`` and ``y_k*`` the dual
  center of ``(D1, D2, D3; p_i p_j)``, for ``{i, j, k} = {1, 2, 3}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .bpoints import (
    BuildingPoint,
    MarkedFlat,
    apply_group,
    distance_sq,
    dualize,
    equals,
    flat_coords,
)
from .errors import DegenerateError, VerificationError
from .modelflat import FlatVector
from .projplane import (
    FlagTriple,
    ProjLine,
    ProjPoint,
    geom_triple_ratio,
    join,
    meet,
    require_generic,
    triple_ratio,
)
from .transverse import (
    center_frame,
    project_ideal_line_on_flat,
    project_ideal_point_on_flat,
    quotient_point,
    restrict_point,
    tree_center,
)

PAIRS = ((1, 2), (2, 3), (3, 1))
FLAT_IDS = ("A12", "A23", "A31", "Ap", "AD")


def _third(i: int, j: int) -> int:
    return 6 - i - j


def _idx(i: int) -> int:
    return (i - 1) % 3 + 1


def pair_id(i: int, j: int) -> str:
    """Flat id of ``A(F_i, F_j)`` regardless of order."""
    i, j = _idx(i), _idx(j)
    for a, b in PAIRS:
        if {a, b} == {i, j}:
            return f"A{a}{b}"
    raise ValueError(f"no flat for ({i}, {j})")


# --------------------------------------------------------------------------
# directions of ideal points in a marked flat


def ideal_direction(F: MarkedFlat, obj) -> FlatVector:
    """Direction in ``F``'s marking of an ideal point or line of its boundary."""
    n = 3
    reps = [ProjPoint(F.field, b) for b in F.basis]
    if isinstance(obj, ProjPoint):
        for i, r in enumerate(reps):
            if r == obj:
                return FlatVector.basis_class(i + 1)
    elif isinstance(obj, ProjLine):
        for a in range(n):
            b, c = [k for k in range(n) if k != a]
            if join(reps[b], reps[c]) == obj:
                return -FlatVector.basis_class(a + 1)
    raise ValueError(f"{obj} is not in the boundary of {F}")


# --------------------------------------------------------------------------
# the geometry attached to a triple


@dataclass(frozen=True)
class FiveFlats:
    A12: MarkedFlat
    A23: MarkedFlat
    A31: MarkedFlat
    Ap: MarkedFlat
    AD: MarkedFlat

    def __getitem__(self, flat_id: str) -> MarkedFlat:
        if flat_id not in FLAT_IDS:
            raise KeyError(flat_id)
        return getattr(self, flat_id)

    def items(self):
        return [(k, self[k]) for k in FLAT_IDS]


def five_flats(T: FlagTriple) -> FiveFlats:
    require_generic(T)
    return _five_flats(T)


@lru_cache(maxsize=256)
def _five_flats(T: FlagTriple) -> FiveFlats:
    K = T.field
    flats = {}
    for i, j in PAIRS:
        basis = (T.p(j).coords, T.p_meet(i, j).coords, T.p(i).coords)
        flats[f"A{i}{j}"] = MarkedFlat(K, basis, name=f"A{i}{j}")
    flats["Ap"] = MarkedFlat(K, tuple(T.p(i).coords for i in (1, 2, 3)), name="Ap")
    flats["AD"] = MarkedFlat(
        K, (T.p_meet(1, 2).coords, T.p_meet(1, 3).coords, T.p_meet(2, 3).coords), name="AD"
    )
    return FiveFlats(**flats)


@dataclass(frozen=True, eq=False)
class SpecialPoints:
    y: Tuple[BuildingPoint, BuildingPoint, BuildingPoint]
    ystar: Tuple[BuildingPoint, BuildingPoint, BuildingPoint]

    def Y(self, k: int) -> BuildingPoint:
        return self.y[_idx(k) - 1]

    def Ystar(self, k: int) -> BuildingPoint:
        return self.ystar[_idx(k) - 1]

    def __iter__(self):
        return iter(self.y + self.ystar)


def special_points(T: FlagTriple) -> SpecialPoints:
    require_generic(T)
    return _special_points(T)


@lru_cache(maxsize=256)
def _special_points(T: FlagTriple) -> SpecialPoints:
    y, ys = {}, {}
    for i, j in PAIRS:
        k = _third(i, j)
        y[k] = center_frame([T.p(1), T.p(2), T.p(3), T.p_meet(i, j)])
        ys[k] = dualize(center_frame([T.D(1), T.D(2), T.D(3), T.D_join(i, j)]))
    return SpecialPoints(tuple(y[k] for k in (1, 2, 3)), tuple(ys[k] for k in (1, 2, 3)))


# --------------------------------------------------------------------------
# classification


RAY_CLASSES = {
    (0, 1, -1): "(0,+,-)",
    (-1, 0, 1): "(-,0,+)",
    (1, -1, 0): "(+,-,0)",
    (0, 0, 0): "zero",
}


def _sign(a) -> int:
    return (a > 0) - (a < 0)


def ray_class(Z: Sequence[Fraction]) -> str:
    key = tuple(_sign(z) for z in Z)
    if key not in RAY_CLASSES:
        raise VerificationError(f"geometric triple ratio {tuple(Z)} violates ultrametricity")
    return RAY_CLASSES[key]


@dataclass(eq=False)
class Tripod:
    x: BuildingPoint
    xstar: BuildingPoint
    kind: str = "tripod"

    def points(self) -> Dict[str, BuildingPoint]:
        return {"x": self.x, "x*": self.xstar}


@dataclass(eq=False)
class FlatTriangle:
    vertices: Tuple[BuildingPoint, BuildingPoint, BuildingPoint]
    kind: str = "flat_triangle"

    def X(self, i: int) -> BuildingPoint:
        return self.vertices[_idx(i) - 1]

    def points(self) -> Dict[str, BuildingPoint]:
        return {f"x{i}": self.X(i) for i in (1, 2, 3)}


@dataclass(eq=False)
class CoincidentPoint:
    x: BuildingPoint
    kind: str = "coincident_point"

    def points(self) -> Dict[str, BuildingPoint]:
        return {"x": self.x}


@dataclass(eq=False)
class TripleReport:
    triple: FlagTriple
    Z: Tuple[Fraction, Fraction, Fraction]
    algebraic: object
    ray_class: str
    type: object
    special: SpecialPoints
    verification: Dict[str, str] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v == "pass" for v in self.verification.values())


def triangle_vertices(T: FlagTriple) -> Tuple[BuildingPoint, BuildingPoint, BuildingPoint]:
    """``x_i = y_{i-1}`` when ``Z1 >= 0`` and ``x_i = y_{i+1}`` when ``Z1 <= 0``."""
    Z1 = geom_triple_ratio(T)[0]
    sp = special_points(T)
    shift = -1 if Z1 >= 0 else 1
    return tuple(sp.Y(i + shift) for i in (1, 2, 3))


def classify(T: FlagTriple, verify: bool = False, margin=None, step=Fraction(1, 2)) -> TripleReport:
    require_generic(T)
    Z = geom_triple_ratio(T)
    rc = ray_class(Z)
    sp = special_points(T)
    Z1, Z2, _ = Z
    if rc == "zero":
        kind = CoincidentPoint(sp.Y(1))
    elif Z1 == 0:
        kind = Tripod(sp.Y(1), sp.Ystar(1))
    else:
        kind = FlatTriangle(triangle_vertices(T))
    report = TripleReport(T, Z, triple_ratio(T), rc, kind, sp)
    if verify:
        report.verification = verify_theorems(T, margin=margin, step=step)
    return report


# --------------------------------------------------------------------------
# cells of the partitions


_REL = {">=": "≥", "<=": "≤", "==": "="}


@dataclass(frozen=True)
class Inequality:
    root: int
    op: str
    bound: Fraction

    def holds(self, v: FlatVector) -> bool:
        a = v.root(self.root)
        if self.op == ">=":
            return a >= self.bound
        if self.op == "<=":
            return a <= self.bound
        return a == self.bound

    def strict(self, v: FlatVector) -> bool:
        a = v.root(self.root)
        if self.op == ">=":
            return a > self.bound
        if self.op == "<=":
            return a < self.bound
        return False

    def __str__(self):
        return f"α{self.root} {_REL[self.op]} {self.bound}"


@dataclass(frozen=True)
class Cell:
    """A cell of a flat, described by root inequalities.

    ``flat`` names the other flat whose intersection this cell is, or is
    ``None`` for a cell that is not an intersection (the degenerate triangle
    in the tripod case).
    """

    label: str
    flat: Optional[str]
    inequalities: Tuple[Inequality, ...]

    def contains(self, v: FlatVector) -> bool:
        return all(q.holds(v) for q in self.inequalities)

    def contains_strictly(self, v: FlatVector) -> bool:
        return all(q.strict(v) for q in self.inequalities)

    def __str__(self):
        return f"{self.label}: " + ", ".join(str(q) for q in self.inequalities)


def _coords_in(x: BuildingPoint, F: MarkedFlat, what: str) -> FlatVector:
    c = flat_coords(x, F)
    if c is None:
        raise VerificationError(f"{what} is not in {F.name}")
    return c


def sector_inequalities(apex: FlatVector, u: FlatVector, v: FlatVector) -> Tuple[Inequality, ...]:
    """The sector at ``apex`` spanned by the adjacent singular directions ``u`` and ``v``."""
    out = []
    for along, other in ((u, v), (v, u)):
        for k in (1, 2, 3):
            if along.root(k) == 0 and other.root(k) != 0:
                op = ">=" if other.root(k) > 0 else "<="
                out.append(Inequality(k, op, apex.root(k)))
                break
        else:
            raise ValueError("sector directions are not adjacent singular directions")
    return tuple(out)


def triangle_inequalities(a: FlatVector, b: FlatVector, c: FlatVector) -> Tuple[Inequality, ...]:
    """A singular triangle as root inequalities (a single point when the vertices coincide)."""
    if (a - b).is_zero() and (a - c).is_zero():
        return (Inequality(1, "==", a.root(1)), Inequality(2, "==", a.root(2)))
    out = []
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        side = q - p
        if side.is_zero():
            continue
        for k in (1, 2, 3):
            if side.root(k) == 0:
                s = (r - p).root(k)
                if s == 0:
                    raise VerificationError("triangle is degenerate but not a point")
                out.append(Inequality(k, ">=" if s > 0 else "<=", p.root(k)))
                break
        else:
            raise VerificationError("triangle side is not singular")
    return tuple(out)


def sector_descriptions(T: FlagTriple, flat_id: str) -> List[Cell]:
    """The cells of ``flat_id`` cut out by the four other flats, with their root inequalities."""
    require_generic(T)
    flats = _five_flats(T)
    sp = _special_points(T)
    F = flats[flat_id]
    Z2 = geom_triple_ratio(T)[1]
    if flat_id in ("Ap", "AD"):
        dual = flat_id == "AD"
        pts = [sp.Ystar(k) if dual else sp.Y(k) for k in (1, 2, 3)]
        name = "y*" if dual else "y"
        coords = [_coords_in(p, F, f"{name}{k}") for k, p in zip((1, 2, 3), pts)]
        cells = []
        for i in (1, 2, 3):
            ends = (T.D(i), T.D(i + 1)) if dual else (T.p(i), T.p(i + 1))
            u, v = (ideal_direction(F, e) for e in ends)
            apex = coords[_idx(i + 2) - 1]
            label = f"SW{'*' if dual else ''}{i}"
            cells.append(Cell(label, pair_id(i, i + 1), sector_inequalities(apex, u, v)))
        other = "Ap" if dual else "AD"
        tri = triangle_inequalities(*coords)
        cells.append(Cell("Delta*" if dual else "Delta", other if Z2 <= 0 else None, tri))
        return cells
    i, j = int(flat_id[1]), int(flat_id[2])
    k = _third(i, j)
    y = _coords_in(sp.Y(k), F, f"y{k}")
    ys = _coords_in(sp.Ystar(k), F, f"y*{k}")
    return [
        Cell("Ap", "Ap", (Inequality(1, ">=", y.root(1)), Inequality(2, "<=", y.root(2)))),
        Cell("AD", "AD", (Inequality(1, "<=", ys.root(1)), Inequality(2, ">=", ys.root(2)))),
        Cell(pair_id(j, k), pair_id(j, k), (
            Inequality(1, ">=", ys.root(1)),
            Inequality(2, ">=", y.root(2)),
            Inequality(3, "<=", min(y.root(3), ys.root(3))),
        )),
        Cell(pair_id(k, i), pair_id(k, i), (
            Inequality(1, "<=", y.root(1)),
            Inequality(2, "<=", ys.root(2)),
            Inequality(3, ">=", max(y.root(3), ys.root(3))),
        )),
    ]


def _frange(lo: Fraction, hi: Fraction, step: Fraction):
    out = []
    v = lo
    while v <= hi:
        out.append(v)
        v += step
    return out


def default_margin(T: FlagTriple) -> Fraction:
    Z = geom_triple_ratio(T)
    return 2 + abs(Z[0]) + abs(Z[1])


def special_coords(T: FlagTriple, flat_id: str) -> Dict[str, FlatVector]:
    """Flat coordinates of the special points lying on ``flat_id``."""
    F = _five_flats(T)[flat_id]
    sp = _special_points(T)
    out = {}
    for k in (1, 2, 3):
        for name, pt in ((f"y{k}", sp.Y(k)), (f"y*{k}", sp.Ystar(k))):
            if pt.dual:
                continue
            c = flat_coords(pt, F)
            if c is not None:
                out[name] = c
    return out


def grid(T: FlagTriple, flat_id: str, margin=None, step=Fraction(1, 2)) -> List[FlatVector]:
    """Grid in simple-root coordinates around the special points of ``flat_id``."""
    margin = default_margin(T) if margin is None else Fraction(margin)
    step = Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    pts = list(special_coords(T, flat_id).values()) or [FlatVector.zero()]
    a1 = [p.root(1) for p in pts]
    a2 = [p.root(2) for p in pts]
    return [
        FlatVector.from_src(a, b)
        for a, b in product(
            _frange(min(a1) - margin, max(a1) + margin, step),
            _frange(min(a2) - margin, max(a2) + margin, step),
        )
    ]


@dataclass
class PartitionReport:
    flat_id: str
    points: int
    failures: List[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.ok:
            return "pass"
        more = f" (+{len(self.failures) - 1} more)" if len(self.failures) > 1 else ""
        return f"fail: {self.failures[0]}{more}"


def membership(T: FlagTriple, flat_id: str, c: FlatVector) -> Dict[str, bool]:
    """Which of the other four flats contain the point of ``flat_id`` at ``c``."""
    flats = _five_flats(T)
    P = flats[flat_id].point_at(c)
    return {g: flat_coords(P, flats[g]) is not None for g in FLAT_IDS if g != flat_id}


def partition_check(T: FlagTriple, flat_id: str, box_margin=None, step=Fraction(1, 2)) -> PartitionReport:
    """Compare the cell inequalities with flat membership on a grid.

    Checks pointwise agreement, covering, and that points strictly inside a
    cell lie in no other cell.
    """
    require_generic(T)
    cells = sector_descriptions(T, flat_id)
    by_flat = {c.flat: c for c in cells if c.flat}
    failures = []
    pts = grid(T, flat_id, box_margin, step)
    for c in pts:
        where = f"{flat_id} at src{tuple(str(a) for a in c.src())}"
        member = membership(T, flat_id, c)
        for g, inside in member.items():
            cell = by_flat.get(g)
            predicted = cell.contains(c) if cell else False
            if predicted != inside:
                failures.append(f"{where}: in {g} is {inside}, inequalities say {predicted}")
        containing = [cell for cell in cells if cell.contains(c)]
        if not containing:
            failures.append(f"{where}: not covered by any cell")
        for cell in cells:
            if cell.contains_strictly(c) and len(containing) != 1:
                labels = ", ".join(x.label for x in containing)
                failures.append(f"{where}: interior of {cell.label} meets {labels}")
    return PartitionReport(flat_id, len(pts), failures)


# --------------------------------------------------------------------------
# theorem checks


def _record(results: Dict[str, str], name: str, ok: bool, detail: str = ""):
    results[name] = "pass" if ok else f"fail: {detail}" if detail else "fail"


def _vec_in(T, flat_id, a: BuildingPoint, b: BuildingPoint) -> Optional[FlatVector]:
    F = _five_flats(T)[flat_id]
    ca, cb = flat_coords(a, F), flat_coords(b, F)
    if ca is None or cb is None:
        return None
    return cb - ca


def _src(v: Optional[FlatVector]) -> str:
    return "off flat" if v is None else "src" + str(tuple(str(a) for a in v.src()))


def _samples(n: int = 5, top=Fraction(2)) -> List[Fraction]:
    return [top * Fraction(k, n - 1) for k in range(n)]


def check_special_points(T: FlagTriple, results: Dict[str, str]):
    """Centers versus projections, and the vector from ``y_k*`` to ``y_k`` in every ``A_ij``."""
    sp = _special_points(T)
    Z = geom_triple_ratio(T)
    ok = True
    for i, j in PAIRS:
        k = _third(i, j)
        a = project_ideal_point_on_flat(T.p(k), [T.p(i), T.p(j), T.p_meet(i, j)])
        b = project_ideal_point_on_flat(T.p_meet(i, j), [T.p(1), T.p(2), T.p(3)])
        c = project_ideal_line_on_flat(T.D(k), [T.D(i), T.D(j), T.D_join(i, j)])
        d = project_ideal_line_on_flat(T.D_join(i, j), [T.D(1), T.D(2), T.D(3)])
        ok &= equals(a, sp.Y(k)) and equals(b, sp.Y(k))
        ok &= equals(c, sp.Ystar(k)) and equals(d, sp.Ystar(k))
    _record(results, "special_points.centers_are_projections", ok)
    want = FlatVector.from_src(Z[1], Z[2])
    bad = []
    for i, j in PAIRS:
        k = _third(i, j)
        v = _vec_in(T, f"A{i}{j}", sp.Ystar(k), sp.Y(k))
        if v != want:
            bad.append(f"A{i}{j}: {_src(v)}")
    _record(results, "special_points.ystar_to_y_in_Aij", not bad, "; ".join(bad))
    v = _vec_in(T, "Ap", sp.Y(2), sp.Y(3))
    _record(results, "special_points.y2_to_y3_in_Ap", v == FlatVector.from_src(Z[0], 0), _src(v))
    v = _vec_in(T, "AD", sp.Ystar(2), sp.Ystar(3))
    _record(results, "special_points.ystar2_to_ystar3_in_AD", v == FlatVector.from_src(0, -Z[0]), _src(v))


def check_tripod(T: FlagTriple, results: Dict[str, str], step=Fraction(1, 2)):
    sp = _special_points(T)
    flats = _five_flats(T)
    Z2 = geom_triple_ratio(T)[1]
    x, xs = sp.Y(1), sp.Ystar(1)
    _record(results, "tripod.y_equal", all(equals(x, sp.Y(k)) for k in (2, 3)))
    _record(results, "tripod.ystar_equal", all(equals(xs, sp.Ystar(k)) for k in (2, 3)))
    want = FlatVector.from_src(-Z2, Z2)
    bad = [f"{fid}: {_src(v)}" for fid in ("A12", "A23", "A31")
           if (v := _vec_in(T, fid, x, xs)) != want]
    _record(results, "tripod.x_to_xstar", not bad, "; ".join(bad))
    # eleven points of [x, x*], read in A12, must lie on the three A_ij
    F = flats["A12"]
    cx, cxs = flat_coords(x, F), flat_coords(xs, F)
    bad = []
    if cx is None or cxs is None:
        bad.append("x or x* off A12")
    else:
        for n in range(11):
            c = cx + (cxs - cx) * Fraction(n, 10)
            P = F.point_at(c)
            for fid in ("A23", "A31"):
                if flat_coords(P, flats[fid]) is None:
                    bad.append(f"{n}/10 off {fid}")
    _record(results, "tripod.segment_in_Aij", not bad, "; ".join(bad))
    # refutation search for a shorter A_p to A_D segment
    d0 = distance_sq(x, xs)
    ok = d0 == want.norm_sq()
    cp, cd = flat_coords(x, flats["Ap"]), flat_coords(xs, flats["AD"])
    offsets = [FlatVector.from_src(a, b) for a in _frange(-2, 2, step) for b in _frange(-2, 2, step)]
    worst = None
    for op in offsets:
        P = flats["Ap"].point_at(cp + op)
        for od in offsets:
            d = distance_sq(P, flats["AD"].point_at(cd + od))
            if d < d0:
                worst = (op, od, d)
                break
        if worst:
            break
    ok &= worst is None
    _record(results, "tripod.shortest_segment", ok,
            f"distance_sq {worst[2]} < {d0}" if worst else f"distance_sq {d0}")


def check_triangle(T: FlagTriple, results: Dict[str, str], step=Fraction(1, 2)):
    Z1 = geom_triple_ratio(T)[0]
    sp = _special_points(T)
    flats = _five_flats(T)
    xs = triangle_vertices(T)
    X = lambda i: xs[_idx(i) - 1]  # noqa: E731
    if Z1 >= 0:
        ok = all(equals(X(i), sp.Y(i - 1)) and equals(X(i), sp.Ystar(i + 1)) for i in (1, 2, 3))
    else:
        ok = all(equals(X(i), sp.Y(i + 1)) and equals(X(i), sp.Ystar(i - 1)) for i in (1, 2, 3))
    _record(results, "triangle.vertex_identities", ok)
    want = FlatVector.from_src(max(Z1, 0), max(-Z1, 0))
    bad = []
    for i, j in PAIRS:
        v = _vec_in(T, f"A{i}{j}", X(i), X(j))
        if v != want:
            bad.append(f"A{i}{j}: {_src(v)}")
    _record(results, "triangle.edge_vectors", not bad, "; ".join(bad))
    # A_ij ∩ A_ik is the Weyl chamber from x_i to F_i, read in both flats through F_i
    bad = []
    for i in (1, 2, 3):
        for fid, sign in ((pair_id(i - 1, i), 1), (pair_id(i, i + 1), -1)):
            other = pair_id(i + 1, i) if fid == pair_id(i - 1, i) else pair_id(i - 1, i)
            tip = flat_coords(X(i), flats[fid])
            if tip is None:
                bad.append(f"x{i} off {fid}")
                continue
            for c in grid(T, fid, None, step):
                d = (c - tip) * sign
                in_chamber = d.root(1) >= 0 and d.root(2) >= 0
                inside = flat_coords(flats[fid].point_at(c), flats[other]) is not None
                if in_chamber != inside:
                    bad.append(f"x{i} in {fid} src{tuple(str(a) for a in c.src())}")
    _record(results, "triangle.Aij_cap_Aik_is_chamber", not bad, "; ".join(bad[:3]))
    # Δ = A_p ∩ A_D on the A_p grid
    tri = triangle_inequalities(*(flat_coords(X(i), flats["Ap"]) for i in (1, 2, 3)))
    bad = []
    for c in grid(T, "Ap", None, step):
        inside = flat_coords(flats["Ap"].point_at(c), flats["AD"]) is not None
        if inside != all(q.holds(c) for q in tri):
            bad.append(f"src{tuple(str(a) for a in c.src())}")
    _record(results, "triangle.Delta_is_Ap_cap_AD", not bad, "; ".join(bad[:3]))
    _record(results, "triangle.transverse_centers", *_transverse_centers(T, X))
    _record(results, "triangle.flat_through_Delta_and_Fi", *_opposition_flat(T, X))


def _transverse_centers(T: FlagTriple, X) -> Tuple[bool, str]:
    bad = []
    for i in (1, 2, 3):
        for j in (i + 1, i - 1):
            k = 6 - _idx(i) - _idx(j)
            p, D = T.p(i), T.D(i)
            qi, ri = quotient_point(X(i), p), restrict_point(X(i), D)
            if not equals(qi, tree_center(qi.space, D, join(p, T.p(j)), join(p, T.p(k)))):
                bad.append(f"quotient x{i} at p{i}")
            if not equals(ri, tree_center(ri.space, p, meet(D, T.D(j)), meet(D, T.D(k)))):
                bad.append(f"restrict x{i} to D{i}")
            qj, rj = quotient_point(X(j), p), restrict_point(X(j), D)
            pjk, Djk = T.p_meet(j, k), T.D_join(j, k)
            if not equals(qj, tree_center(qj.space, D, join(p, T.p(j)), join(p, pjk))):
                bad.append(f"quotient x{_idx(j)} at p{i}")
            if not equals(rj, tree_center(rj.space, p, meet(D, T.D(j)), meet(D, Djk))):
                bad.append(f"restrict x{_idx(j)} to D{i}")
    return not bad, "; ".join(sorted(set(bad)))


def _chamber_of_Ap_containing_Delta(T: FlagTriple, X, i: int) -> Tuple[int, int]:
    """Indices ``(a, b)`` with ``(p_a, p_a p_b)`` the chamber of ``A_p`` at ``x_i`` containing Δ."""
    Ap = _five_flats(T)["Ap"]
    tip = flat_coords(X(i), Ap)
    others = [flat_coords(X(i + s), Ap) - tip for s in (1, 2)]
    if all(o.is_zero() for o in others):
        return _idx(i + 1), _idx(i + 2)
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            if a == b:
                continue
            c = 6 - a - b
            # chamber with rays e_a and -e_c, i.e. coordinates ordered v_a >= v_b >= v_c
            if all(o[a - 1] >= o[b - 1] >= o[c - 1] for o in others):
                return a, b
    raise VerificationError(f"Δ is not in a Weyl chamber at x{i}")


def _opposition_flat(T: FlagTriple, X) -> Tuple[bool, str]:
    """Exhibit a flat containing Δ with ``F_i`` in its boundary.

    Its basis is ``(p_i, D_i ∩ p_a p_b, p_a)`` where ``(p_a, p_a p_b)`` is
    the chamber of ``A_p`` at ``x_i`` containing Δ; a Weyl chamber from
    ``x_i`` to ``F_i`` is sampled as well.
    """
    flats = _five_flats(T)
    K = T.field
    bad = []
    for i in (1, 2, 3):
        a, b = _chamber_of_Ap_containing_Delta(T, X, i)
        q = meet(T.D(i), join(T.p(a), T.p(b)))
        try:
            Phi = MarkedFlat(K, (T.p(i).coords, q.coords, T.p(a).coords), name=f"Phi{i}")
        except DegenerateError:
            bad.append(f"Phi{i} basis degenerate")
            continue
        tips = [flat_coords(X(k), Phi) for k in (1, 2, 3)]
        if any(c is None for c in tips):
            bad.append(f"Δ not in Phi{i}")
            continue
        tip = tips[_idx(i) - 1]
        A, B = flats[pair_id(i - 1, i)], flats[pair_id(i, i + 1)]
        for s, r in product(_samples(), _samples()):
            P = Phi.point_at(tip + FlatVector.from_src(s, r))
            if flat_coords(P, A) is None or flat_coords(P, B) is None:
                bad.append(f"Phi{i} chamber sample src({s}, {r}) off A_ij ∩ A_ik")
                break
    return not bad, "; ".join(bad)


def check_coincident(T: FlagTriple, results: Dict[str, str]):
    sp = _special_points(T)
    flats = _five_flats(T)
    x = sp.Y(1)
    pts_ok = all(equals(x, p) for p in sp)
    _record(results, "coincident.special_points_equal", pts_ok)
    missing = [fid for fid, F in flats.items() if flat_coords(x, F) is None]
    _record(results, "coincident.common_point", not missing, ", ".join(missing))


def verify_theorems(T: FlagTriple, margin=None, step=Fraction(1, 2)) -> Dict[str, str]:
    """Run every applicable check; returns ``{name: "pass" | "fail: ..."}``."""
    require_generic(T)
    results: Dict[str, str] = {}
    Z = geom_triple_ratio(T)
    _record(results, "invariants.sum_zero", sum(Z) == 0, str(Z))
    try:
        rc = ray_class(Z)
        _record(results, "invariants.ray_class", True)
    except VerificationError as exc:
        _record(results, "invariants.ray_class", False, str(exc))
        return results
    check_special_points(T, results)
    if rc == "zero":
        check_coincident(T, results)
    elif Z[0] == 0:
        check_tripod(T, results, step)
    else:
        check_triangle(T, results, step)
    for fid in FLAT_IDS:
        rep = partition_check(T, fid, margin, step)
        results[f"partition.{fid}"] = rep.summary()
    return results


# --------------------------------------------------------------------------
# the explicit matrix of the normalized triple


def remark_matrix(field, Z):
    """``g`` sending ``[e_i]`` to ``p_{i+1}`` for the normalized triple of parameter ``Z``."""
    Z = field.coerce(Z)
    o, z = field.one, field.zero
    return ((o, o, z), (z, o, o), (o / Z, z, o))


def check_remark_matrix(T: FlagTriple, Z, margin=Fraction(3), step=Fraction(1, 2)) -> Dict[str, str]:
    """The matrix maps the ``A_D`` frame onto the ``A_p`` frame; its fixed set in ``A_D`` is the triangle.

    ``T`` must be the normalized triple of parameter ``Z`` (so ``e_i`` is
    dual to ``D_i``).  The fixed-point description is only checked when
    ``|1 + Z| >= 1`` and ``log|Z| >= 0``.
    """
    K = T.field
    Z = K.coerce(Z)
    g = remark_matrix(K, Z)
    results: Dict[str, str] = {}
    e = [tuple(K.one if a == b else K.zero for a in range(3)) for b in range(3)]
    ok = all(ProjPoint(K, linalg.mat_vec(g, e[i])) == T.p(i + 2) for i in range(3))
    ok &= all(ProjPoint(K, e[i]) == meet(T.D(i + 2), T.D(i + 3)) for i in range(3))
    _record(results, "normalized.sends_e_i_to_p_next", ok)
    flats = _five_flats(T)
    img = MarkedFlat(K, tuple(linalg.mat_vec(g, b) for b in flats["AD"].basis))
    ok = all(flat_coords(flats["Ap"].point_at(c), img) is not None
             for c in (FlatVector.zero(), FlatVector.from_src(1, 0), FlatVector.from_src(0, -1)))
    _record(results, "normalized.maps_AD_to_Ap", ok)
    logZ = K.logabs(Z)
    if K.logabs(1 + Z) >= 0 and logZ >= 0:
        # marking of the basis (e1, e2, e3) = (D2∩D3, D1∩D3, D1∩D2)
        Fe = MarkedFlat(K, tuple(e), name="A_e")
        bad = []
        lo, hi = -logZ - margin, logZ + margin
        for a, b in product(_frange(lo, hi, step), repeat=2):
            v = FlatVector.from_src(a, b)
            P = Fe.point_at(v)
            fixed = equals(apply_group(g, P), P)
            predicted = a >= 0 and b >= 0 and v[0] - v[2] <= logZ
            if fixed != predicted:
                bad.append(f"src({a}, {b}): fixed={fixed}")
        sp = _special_points(T)
        verts = [flat_coords(y, Fe) for y in sp.y]
        tri_ok = all(c is not None and c.root(1) >= 0 and c.root(2) >= 0 and c[0] - c[2] <= logZ for c in verts)
        _record(results, "normalized.fixed_set_is_triangle", not bad and tri_ok, "; ".join(bad[:3]))
    return results
