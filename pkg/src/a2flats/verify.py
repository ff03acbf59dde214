"""Randomized regression checks of the projection formulas and cross-ratio identities.

Every comparison is exact.  Random data are small-height scalars from
:meth:`ValuedField.random_scalar` drawn from a seeded ``random.Random``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

from . import linalg
from .bpoints import MarkedFlat, flat_coords
from .errors import DegenerateError
from .modelflat import FlatVector
from .projplane import (
    Flag,
    FlagTriple,
    ProjLine,
    ProjPoint,
    generic,
    geom_cross_ratio,
    join,
    meet,
    opposite,
)
from .transverse import (
    TreeSpace,
    geombir_tree_oracle,
    project_ideal_line_on_flat,
    project_ideal_point_on_flat,
)
from .valfield import ValuedField

DEFAULT_SEED = 20240601


@dataclass
class CheckReport:
    name: str
    passed: int = 0
    failures: List[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: str):
        if ok:
            self.passed += 1
        else:
            self.failures.append(detail)

    def summary(self) -> str:
        if self.ok:
            return "pass"
        return f"fail: {len(self.failures)} of {self.passed + len(self.failures)}: {self.failures[0]}"


# --------------------------------------------------------------------------
# random data


def random_vector(K: ValuedField, rng: random.Random, n: int = 3) -> tuple:
    while True:
        v = tuple(K.random_scalar(rng) for _ in range(n))
        if not linalg.is_zero_vector(v):
            return v


def random_point(K: ValuedField, rng: random.Random) -> ProjPoint:
    return ProjPoint(K, random_vector(K, rng))


def random_line(K: ValuedField, rng: random.Random) -> ProjLine:
    return ProjLine(K, random_vector(K, rng))


def random_line_through(p: ProjPoint, rng: random.Random) -> ProjLine:
    while True:
        q = random_point(p.field, rng)
        if q != p:
            return join(p, q)


def random_flag(K: ValuedField, rng: random.Random) -> Flag:
    p = random_point(K, rng)
    return Flag(p, random_line_through(p, rng))


def random_generic_triple(K: ValuedField, rng: random.Random) -> FlagTriple:
    while True:
        T = FlagTriple(tuple(random_flag(K, rng) for _ in range(3)))
        if generic(T):
            return T


def random_point_on(D: ProjLine, rng: random.Random) -> ProjPoint:
    K = D.field
    k = next(i for i, c in enumerate(D.coords) if c != 0)
    while True:
        u = [K.random_scalar(rng) for _ in range(3)]
        # solve the linear form for coordinate k
        u[k] = K.zero
        u[k] = -linalg.dot(D.coords, u) / D.coords[k]
        if not linalg.is_zero_vector(u):
            return ProjPoint(K, u)


def random_collinear_quadruple(K: ValuedField, rng: random.Random) -> Tuple[ProjLine, tuple]:
    """A random line with four pairwise distinct points on it."""
    D = random_line(K, rng)
    while True:
        pts = tuple(random_point_on(D, rng) for _ in range(4))
        if len(set(pts)) == 4:
            return D, pts


# --------------------------------------------------------------------------
# projections of two ideal points


def two_points_projection(p1, p2, p3, p, q) -> Tuple[FlatVector, Tuple]:
    """The vector ``x -> y`` in ``A(p1, p2, p3)`` and the three vertex cross ratios."""
    frame = (p1, p2, p3)
    for a, b in ((p1, p2), (p2, p3), (p3, p1)):
        L = join(a, b)
        if L.contains(p) or L.contains(q):
            raise DegenerateError("p and q must avoid the lines of the triangle")
    x = project_ideal_point_on_flat(p, frame)
    y = project_ideal_point_on_flat(q, frame)
    F = MarkedFlat(p1.field, tuple(a.coords for a in frame))
    v = flat_coords(y, F) - flat_coords(x, F)
    gb = (
        geom_cross_ratio(join(p3, p1), join(p3, p), join(p3, p2), join(p3, q)),
        geom_cross_ratio(join(p1, p2), join(p1, p), join(p1, p3), join(p1, q)),
        geom_cross_ratio(join(p2, p3), join(p2, p), join(p2, p1), join(p2, q)),
    )
    return v, gb


def check_two_points_projection(p1, p2, p3, p, q, report: Optional[CheckReport] = None) -> CheckReport:
    report = report or CheckReport("two_points_projection")
    if linalg.columns_det([a.coords for a in (p1, p2, p3)]) == 0:
        raise DegenerateError("p1, p2, p3 are collinear")
    v, gb = two_points_projection(p1, p2, p3, p, q)
    ok = v.roots() == gb
    report.record(ok, f"roots {tuple(map(str, v.roots()))} vs cross ratios {tuple(map(str, gb))}")
    return report


# --------------------------------------------------------------------------
# projections of a point and a line


def point_line_projection(Fm: Flag, Fp: Flag, p: ProjPoint, D: ProjLine):
    """The vector ``x -> x*`` in the flat of ``(F-, F+)`` marked towards ``F+``, and the four expressions."""
    if not opposite(Fm, Fp):
        raise DegenerateError("the two flags are not opposite")
    pm, Dm, pp, Dp = Fm.point, Fm.line, Fp.point, Fp.line
    q = meet(Dp, Dm)
    L = join(pm, pp)
    for line in (Dm, Dp, L):
        if line.contains(p):
            raise DegenerateError(f"p lies on {line}")
    for pt in (pm, pp, q):
        if D.contains(pt):
            raise DegenerateError(f"D passes through {pt}")
    x = project_ideal_point_on_flat(p, (pp, q, pm))
    xs = project_ideal_line_on_flat(D, (Dp, Dm, L))
    F = MarkedFlat(p.field, (pp.coords, q.coords, pm.coords))
    cx, cxs = flat_coords(x, F), flat_coords(xs, F)
    if cx is None or cxs is None:
        raise DegenerateError("projection is not on the flat")
    Zm = (
        geom_cross_ratio(pp, meet(Dp, join(pm, p)), q, meet(Dp, D)),
        geom_cross_ratio(Dm, join(pm, meet(Dp, D)), L, join(pm, p)),
    )
    Zp = (
        geom_cross_ratio(pm, meet(Dm, D), q, meet(Dm, join(pp, p))),
        geom_cross_ratio(Dp, join(pp, p), L, join(pp, meet(Dm, D))),
    )
    return cxs - cx, Zm, Zp


def check_point_line_projection(Fm: Flag, Fp: Flag, p: ProjPoint, D: ProjLine,
                                report: Optional[CheckReport] = None, _computed=None) -> CheckReport:
    report = report or CheckReport("point_line_projection")
    v, Zm, Zp = _computed or point_line_projection(Fm, Fp, p, D)
    ok = Zm[0] == Zm[1] and Zp[0] == Zp[1] and v.src() == (Zm[0], Zp[0])
    report.record(ok, f"src{tuple(map(str, v.src()))} vs Z-={Zm} Z+={Zp}")
    return report


# --------------------------------------------------------------------------
# cross-ratio identities


def check_quadruple(D: ProjLine, pts, report: CheckReport):
    a, b, c, d = pts
    g = geom_cross_ratio
    space = TreeSpace.plane(D)
    tag = "[" + ", ".join(str(x) for x in pts) + "]"
    cyc = (g(a, b, c, d), g(a, d, b, c), g(a, c, d, b))
    report.record(sum(cyc) == 0, f"3-cycle sum {cyc} on {tag}")
    ultra = all(
        cyc[(s + 2) % 3] == 0 and cyc[(s + 1) % 3] == -cyc[s]
        for s in range(3) if cyc[s] > 0
    )
    report.record(ultra, f"ultrametricity {cyc} on {tag}")
    report.record(g(a, b, c, d) == g(b, a, d, c) == g(c, d, a, b) == g(d, c, b, a),
                  f"double transpositions on {tag}")
    report.record(g(c, b, a, d) == -g(a, b, c, d), f"(13) on {tag}")
    oracle = geombir_tree_oracle(space, a, b, c, d)
    report.record(oracle == g(a, b, c, d), f"oracle {oracle} vs {g(a, b, c, d)} on {tag}")


def check_cross_ratio_identities(K: ValuedField, samples: int = 100, seed: int = DEFAULT_SEED,
                                 report: Optional[CheckReport] = None) -> CheckReport:
    report = report or CheckReport(f"cross_ratio_identities[{K.name}]")
    rng = random.Random(seed)
    for _ in range(samples):
        D, pts = random_collinear_quadruple(K, rng)
        check_quadruple(D, pts, report)
    return report


def near_degenerate_quadruple(K: ValuedField, depth: int = 10) -> Tuple[ProjLine, tuple]:
    """Four points on ``x3 = 0`` with the first two at valuation distance ``depth``."""
    pi = K.uniformizer
    one, zero = K.one, K.zero
    D = ProjLine(K, (zero, zero, one))
    pts = (
        ProjPoint(K, (one, zero, zero)),
        ProjPoint(K, (one, pi ** depth, zero)),
        ProjPoint(K, (zero, one, zero)),
        ProjPoint(K, (one, one, zero)),
    )
    return D, pts


# --------------------------------------------------------------------------
# suites


def random_two_points_instance(K: ValuedField, rng: random.Random):
    while True:
        p1, p2, p3 = (random_point(K, rng) for _ in range(3))
        if linalg.columns_det([a.coords for a in (p1, p2, p3)]) == 0:
            continue
        p, q = random_point(K, rng), random_point(K, rng)
        lines = [join(p1, p2), join(p2, p3), join(p3, p1)]
        if any(L.contains(p) or L.contains(q) for L in lines):
            continue
        return p1, p2, p3, p, q


def random_point_line_instance(K: ValuedField, rng: random.Random):
    while True:
        Fm, Fp = random_flag(K, rng), random_flag(K, rng)
        if not opposite(Fm, Fp):
            continue
        p, D = random_point(K, rng), random_line(K, rng)
        q = meet(Fp.line, Fm.line)
        L = join(Fm.point, Fp.point)
        if any(line.contains(p) for line in (Fm.line, Fp.line, L)):
            continue
        if any(D.contains(pt) for pt in (Fm.point, Fp.point, q)):
            continue
        # the four expressions need these auxiliary points and lines to be distinct
        try:
            computed = point_line_projection(Fm, Fp, p, D)
        except DegenerateError:
            continue
        return (Fm, Fp, p, D), computed


def two_points_suite(K: ValuedField, samples: int = 100, seed: int = DEFAULT_SEED) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport(f"two_points_projection[{K.name}]")
    for _ in range(samples):
        check_two_points_projection(*random_two_points_instance(K, rng), report=report)
    return report


def point_line_suite(K: ValuedField, samples: int = 100, seed: int = DEFAULT_SEED) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport(f"point_line_projection[{K.name}]")
    for _ in range(samples):
        args, computed = random_point_line_instance(K, rng)
        check_point_line_projection(*args, report=report, _computed=computed)
    return report
