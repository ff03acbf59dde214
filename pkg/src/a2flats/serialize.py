"""JSON encoding and decoding of scalars, flags, building points and reports.

Scalars are canonical strings (``"1/5"``, ``"(t+1)/t^2"``); valuations are
rational strings with ``"inf"`` and ``"-inf"``.  A building point is
``{"basis": rows, "weights": [...]}`` where the columns of ``rows`` are the
basis vectors.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

from .bpoints import BuildingPoint, flat_coords
from .errors import DegenerateError
from .modelflat import FlatVector
from .projplane import Flag, FlagTriple, ProjLine, ProjPoint
from .valfield import INFINITY, ValuedField, format_val


class InputError(ValueError):
    """Malformed input, reported with the position of the offending entry."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def scalar_json(K: ValuedField, a) -> str:
    if a is INFINITY:
        return "inf"
    return K.format(a)


def flat_vector_json(v: FlatVector) -> Dict[str, List[str]]:
    return {"coords": [str(c) for c in v.coords], "src": [str(c) for c in v.src()]}


def point_json(x: BuildingPoint) -> Dict[str, Any]:
    K = x.field
    rows = [[K.format(x.basis[j][i]) for j in range(x.dim)] for i in range(x.dim)]
    out: Dict[str, Any] = {"basis": rows, "weights": [str(c) for c in x.weights.coords]}
    if x.dual:
        out["dual"] = True
    return out


def point_from_json(K: ValuedField, data: Dict[str, Any], where: str = "point") -> BuildingPoint:
    try:
        rows = data["basis"]
        weights = data["weights"]
    except (KeyError, TypeError):
        raise InputError(f"{where}: expected an object with 'basis' and 'weights'") from None
    parsed = [[_scalar(K, c, f"{where}.basis[{i}][{j}]") for j, c in enumerate(r)] for i, r in enumerate(rows)]
    basis = tuple(zip(*parsed))
    try:
        w = tuple(Fraction(str(c)) for c in weights)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}.weights: expected rational numbers") from None
    return BuildingPoint(K, basis, FlatVector(w), bool(data.get("dual", False)))


def _scalar(K: ValuedField, value, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"{where}: expected a number or a string, got {value!r}")
    try:
        return K.parse(str(value))
    except (ValueError, TypeError, ZeroDivisionError, SyntaxError) as exc:
        raise InputError(f"{where}: cannot parse {value!r} ({exc})") from None


def _coords(K: ValuedField, value, where: str) -> tuple:
    if not isinstance(value, list) or len(value) != 3:
        raise InputError(f"{where}: expected a list of three scalars")
    return tuple(_scalar(K, c, f"{where}[{i}]") for i, c in enumerate(value))


def flag_from_json(K: ValuedField, data, where: str = "flag") -> Flag:
    if not isinstance(data, dict) or "point" not in data or "line" not in data:
        raise InputError(f"{where}: expected an object with 'point' and 'line'")
    try:
        p = ProjPoint(K, _coords(K, data["point"], f"{where}.point"))
        D = ProjLine(K, _coords(K, data["line"], f"{where}.line"))
        return Flag(p, D)
    except DegenerateError as exc:
        raise DegenerateError(f"{where}: {exc}") from None


def flag_json(F: Flag) -> Dict[str, List[str]]:
    K = F.field
    return {"point": [K.format(c) for c in F.point], "line": [K.format(c) for c in F.line]}


def triple_from_json(K: ValuedField, data) -> FlagTriple:
    if isinstance(data, dict):
        if "flags" not in data:
            raise InputError("expected a list of three flags or an object with 'flags'")
        data = data["flags"]
    if not isinstance(data, list) or len(data) != 3:
        raise InputError("expected exactly three flags")
    return FlagTriple(tuple(flag_from_json(K, f, f"flags[{i}]") for i, f in enumerate(data)))


def triple_json(T: FlagTriple) -> List[Dict[str, List[str]]]:
    return [flag_json(F) for F in T]


def load_triple(K: ValuedField, path: str) -> FlagTriple:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return triple_from_json(K, data)


def val_json(v) -> str:
    return format_val(v)


def report_json(report, with_points: bool = True) -> Dict[str, Any]:
    """The classification report, with flat coordinates of all special points."""
    from .triples import FLAT_IDS, five_flats

    T = report.triple
    K = T.field
    kind = report.type
    out: Dict[str, Any] = {
        "field": K.name,
        "Z": [val_json(z) for z in report.Z],
        "triple_ratio": scalar_json(K, report.algebraic),
        "ray_class": report.ray_class,
        "type": kind.kind,
    }
    named = dict(kind.points())
    for k in (1, 2, 3):
        named[f"y{k}"] = report.special.Y(k)
        named[f"y*{k}"] = report.special.Ystar(k)
    if with_points:
        out["points"] = {name: point_json(p) for name, p in named.items()}
    flats = five_flats(T)
    coords: Dict[str, Dict[str, Any]] = {}
    for fid in FLAT_IDS:
        row = {}
        for name, p in named.items():
            c = flat_coords(p, flats[fid])
            if c is not None:
                row[name] = [str(a) for a in c.src()]
        coords[fid] = row
    out["flat_coords_src"] = coords
    if report.verification:
        out["verification"] = dict(report.verification)
    return out
