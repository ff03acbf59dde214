"""Command-line interface: ``a2flats <invariants|classify|verify|figure>``.

Exit codes: 0 success, 2 bad input or degenerate configuration, 3 failed
verification.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import DegenerateError, FieldMismatchError, VerificationError
from .projplane import FlagTriple, geom_triple_ratio, nondegenerate, remark_triple, triple_ratio
from .serialize import (
    InputError,
    dumps,
    load_triple,
    report_json,
    scalar_json,
    triple_json,
    val_json,
)
from .triples import FLAT_IDS, check_remark_matrix, classify, ray_class
from .valfield import ValuedField, field_from_spec
from .verify import DEFAULT_SEED

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3


@dataclass
class RunConfig:
    command: str
    field: ValuedField
    triple: FlagTriple
    remark_z: Optional[object]
    margin: Optional[Fraction]
    step: Fraction
    out: Optional[str]
    flats: List[str]
    suites: int
    seed: int


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="a2flats",
        description="Triples of flags over valued fields and the flats they span in the A2 building.",
    )
    parser.add_argument("command", choices=("invariants", "classify", "verify", "figure"))
    parser.add_argument("--field", required=True, help="qp:P (rationals with the P-adic valuation) or qt (Q(t))")
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="JSON file with three flags {point, line}")
    src.add_argument("--remark-z", help="build the normalized triple with algebraic triple ratio Z")
    parser.add_argument("--margin", type=_rational, help="grid margin around the special points")
    parser.add_argument("--step", type=_rational, default=Fraction(1, 2), help="grid spacing (default 1/2)")
    parser.add_argument("--out", help="output file (JSON commands) or directory (figure)")
    parser.add_argument("--flat", action="append", choices=FLAT_IDS, dest="flats",
                        help="flat to draw (repeatable, default all five)")
    parser.add_argument("--suites", type=int, default=0,
                        help="verify: also run the random projection and cross-ratio suites with this many samples")
    parser.add_argument("--seed", type=int, default=None, help="seed of the random suites")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    K = field_from_spec(args.field)
    z = None
    if args.remark_z is not None:
        try:
            z = K.parse(args.remark_z)
        except (ValueError, TypeError, ZeroDivisionError, SyntaxError) as exc:
            raise InputError(f"--remark-z: cannot parse {args.remark_z!r} ({exc})") from None
        if z == 0:
            raise DegenerateError("--remark-z: Z = 0 gives a degenerate triple")
        T = remark_triple(K, z)
    else:
        T = load_triple(K, args.input)
    if args.step <= 0:
        raise InputError("--step must be positive")
    if args.margin is not None and args.margin < 0:
        raise InputError("--margin must be nonnegative")
    return RunConfig(args.command, K, T, z, args.margin, args.step, args.out,
                     args.flats or list(FLAT_IDS), args.suites,
                     DEFAULT_SEED if args.seed is None else args.seed)


def cmd_invariants(cfg: RunConfig) -> dict:
    T = cfg.triple
    if not nondegenerate(T):
        raise DegenerateError("flag triple is degenerate")
    Z = geom_triple_ratio(T)
    return {
        "Z": [val_json(z) for z in Z],
        "triple_ratio": scalar_json(cfg.field, triple_ratio(T)),
        "ray_class": ray_class(Z),
    }


def cmd_classify(cfg: RunConfig) -> dict:
    out = report_json(classify(cfg.triple))
    out["flags"] = triple_json(cfg.triple)
    return out


def cmd_verify(cfg: RunConfig) -> dict:
    report = classify(cfg.triple, verify=True, margin=cfg.margin, step=cfg.step)
    out = report_json(report, with_points=False)
    checks = dict(report.verification)
    if cfg.remark_z is not None:
        checks.update(check_remark_matrix(cfg.triple, cfg.remark_z))
    if cfg.suites > 0:
        from .verify import check_cross_ratio_identities, point_line_suite, two_points_suite

        for suite in (two_points_suite, point_line_suite, check_cross_ratio_identities):
            r = suite(cfg.field, cfg.suites, cfg.seed)
            checks[f"suite.{r.name}"] = r.summary()
    out["verification"] = checks
    out["ok"] = all(v == "pass" for v in checks.values())
    return out


def cmd_figure(cfg: RunConfig) -> dict:
    from .figures import write_figures

    written = write_figures(cfg.triple, cfg.out or ".", cfg.flats, cfg.margin)
    return {"figures": written, "type": classify(cfg.triple).type.kind}


COMMANDS = {
    "invariants": cmd_invariants,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "figure": cmd_figure,
}


def _bind_scalar_values(argv: Sequence[str]) -> List[str]:
    """Glue ``--remark-z -1+t`` into ``--remark-z=-1+t`` so argparse does not read it as an option."""
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a == "--remark-z":
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_bind_scalar_values(sys.argv[1:] if argv is None else argv))
    try:
        cfg = make_config(args)
        result = COMMANDS[cfg.command](cfg)
    except (InputError, DegenerateError, FieldMismatchError, ValueError) as exc:
        print(f"a2flats: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"a2flats: verification error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    text = dumps(result)
    if cfg.out and cfg.command != "figure":
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if cfg.command == "verify" and not result["ok"]:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
