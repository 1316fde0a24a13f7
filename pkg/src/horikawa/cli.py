"""Command-line entry point.  Every command prints one JSON envelope on stdout."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Optional, Sequence

from . import __version__
from .algebra.bivariate import format_polynomial
from .algebra.fields import GF2k, gf, parse_field
from .classify import InadmissibleError, classification_table, enumerate_horikawa, validate
from .cohomology import OracleLimitExceeded, cech_oracle, cohomology, h1_vanishes, vanishing_region
from .cover import (
    DoubleCoverDatum,
    SectionOutOfBounds,
    SplittingError,
    invariants,
    noether_check,
    pluricanonical_h0,
)
from .family import LiftRefused, draw_f2_cover, draw_family, lambda_sweep, lift_check
from .foliation import (
    FoliationError,
    QuotientRejected,
    build_eta,
    catalog_existence,
    check_additive,
    make_recipe,
    quotient_invariants,
    remark_delta,
    remark_quotient,
    singular_points,
)
from .lattice import (
    CanonicalImage,
    DivisorClass,
    ProjectivePlane,
    SurfaceMismatch,
    parse_image,
    parse_surface,
)

EXIT_OK, EXIT_INTERNAL, EXIT_REJECTED, EXIT_USAGE = 0, 1, 2, 64

# flags whose values may start with "-" (comma-separated integer lists)
_LIST_FLAGS = ("--bundle", "--L", "--a", "--b", "--lambda")

REJECTIONS = (
    InadmissibleError,
    FoliationError,
    LiftRefused,
    SplittingError,
    SectionOutOfBounds,
    SurfaceMismatch,
    OracleLimitExceeded,
)


class UsageError(Exception):
    pass


class Rejected(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("reason", "rejected"))
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _surface(text: str):
    try:
        return parse_surface(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _image(text: str):
    try:
        return parse_image(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _field(text: str):
    try:
        return parse_field(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", type=_field, help="Q or 2^k")
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="horikawa", description="Exact numerics of Horikawa surfaces.")
    p.add_argument("--version", action="version", version=f"horikawa {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("classify", parents=[common], help="admissible data for a range of pg")
    c.add_argument("--pg", type=int)
    c.add_argument("--to", "--pg-to", type=int, dest="pg_to")
    c.add_argument("--validate", action="store_true", help="validate --image with --L")
    c.add_argument("--image", type=_image)
    c.add_argument("--L", type=_int_list, dest="L")

    h = sub.add_parser("cohom", parents=[common], help="line-bundle cohomology")
    h.add_argument("--surface", type=_surface, required=True)
    h.add_argument("--bundle", type=_int_list, required=True)
    h.add_argument("--oracle", action="store_true", help="also run the Cech oracle")

    v = sub.add_parser("cover", parents=[common], help="double-cover invariants")
    v.add_argument("--surface", type=_surface, required=True)
    v.add_argument("--bundle", "--L", type=_int_list, dest="L", required=True)
    v.add_argument("--n", type=int, default=3, help="report P_n for n = 1..N")

    f = sub.add_parser("foliate", parents=[common], help="characteristic-2 foliations on F_d")
    f.add_argument("--d", type=int)
    f.add_argument("--ell", type=int)
    f.add_argument("--m", type=int)
    f.add_argument("--a", type=_int_list)
    f.add_argument("--b", type=_int_list)
    f.add_argument("--remark55", action="store_true", help="the delta + delta field on F_0")
    f.add_argument("--catalog", action="store_true", help="construction for --pg and --image")
    f.add_argument("--pg", type=int)
    f.add_argument("--image", type=_image)

    d = sub.add_parser("deform", parents=[common], help="lambda sweep of z^2 + lambda s z + t")
    d.add_argument("--pg", type=int, required=True)
    d.add_argument("--image", type=_image, required=True)
    d.add_argument("--lambda", type=_int_list, dest="lam", default=[0, 1])

    lf = sub.add_parser("lift", parents=[common], help="coefficient lift from F_2 to Q")
    lf.add_argument("--pg", type=int)
    lf.add_argument("--image", type=_image)
    lf.add_argument("--surface", type=_surface)
    lf.add_argument("--bundle", type=_int_list)

    sub.add_parser("selftest", parents=[common], help="run every acceptance check")
    return p


def _join_list_flags(argv: Sequence[str]) -> list[str]:
    """``--bundle -2,-5`` -> ``--bundle=-2,-5`` so argparse does not read -2 as a flag."""
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        a = argv[i]
        if a in _LIST_FLAGS and i + 1 < len(argv) and re.fullmatch(r"-?\d+(,-?\d+)*,?", argv[i + 1]):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def _divisor(S, coeffs) -> DivisorClass:
    if len(coeffs) != S.rank:
        raise UsageError(f"{S} needs {S.rank} coefficient(s), got {len(coeffs)}")
    return DivisorClass(S, tuple(coeffs))


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _char2(field, default: GF2k) -> GF2k:
    if field is None:
        return default
    if not isinstance(field, GF2k):
        raise UsageError("this command works over F_{2^k}; pass --field 2^k")
    return field


def _datum_for(pg: int, image: CanonicalImage):
    for h in enumerate_horikawa(pg):
        if h.image.shape == image.shape and (image.shape == "P2" or h.image.degree == image.degree):
            return h
    raise Rejected({"reason": f"no admissible datum with pg={pg} and image {image.label}"})


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args, warnings):
    if args.validate:
        _need(args, "image", "L")
        S = args.image.desingularisation
        verdict = validate(args.image, _divisor(S, args.L))
        if not verdict.accepted:
            raise Rejected(verdict.to_json())
        return verdict.to_json(), None
    _need(args, "pg")
    rows = classification_table(args.pg, args.pg_to)
    payload = {
        "rows": [
            {k: (v.to_json() if isinstance(v, DivisorClass) else v) for k, v in r.items()} for r in rows
        ],
        "row_count": len(rows),
    }
    text = None
    if args.format in ("csv", "table"):
        header = ["pg", "image", "d", "L_a", "L_b", "Ksq"]
        lines = [[r["pg"], r["image"], "" if r["d"] is None else r["d"], *_ab(r["L"]), r["Ksq"]] for r in rows]
        if args.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            w.writerows(lines)
            text = buf.getvalue()
        else:
            text = _table(header, lines)
    return payload, text


def _ab(L: DivisorClass):
    return (L.coeffs[0], "") if L.surface.rank == 1 else L.coeffs


def _table(header, rows) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def cmd_cohom(args, warnings):
    S = args.surface
    D = _divisor(S, args.bundle)
    vec = cohomology(S, D)
    payload = {
        "surface": S.name,
        "bundle": D.to_json(),
        "cohomology": vec.to_json(),
        "h1_vanishes": h1_vanishes(S, D),
        "stated_vanishing_region": vanishing_region(S, D),
    }
    if args.oracle:
        char = 0 if args.field is None or args.field.characteristic == 0 else 2
        oracle = cech_oracle(S, D, characteristic=char)
        payload["oracle"] = {"characteristic": char, "cohomology": oracle.to_json(), "agrees": oracle == vec}
        if oracle != vec:
            warnings.append("Cech oracle disagrees with the closed formulas")
    return payload, None


def cmd_cover(args, warnings):
    S = args.surface
    c = DoubleCoverDatum(S, _divisor(S, args.L))
    inv = invariants(c)
    check = noether_check(inv.Ksq, inv.pg)
    return {
        "L": c.L.to_json(),
        "invariants": inv.to_json(),
        "noether": {"status": check.status.value, "pencil_bound": check.pencil_bound},
        "plurigenera": {str(n): pluricanonical_h0(c, n) for n in range(1, max(1, args.n) + 1)},
    }, None


def _foliation_payload(v, report, quotient_fn, warnings):
    payload = {
        "field_label": v.field.label,
        "label": v.label,
        "additive": check_additive(v),
        "report": report.to_json(),
    }
    if report.total_multiplicity != report.expected_total:
        warnings.append(
            f"total zero multiplicity {report.total_multiplicity} differs from the Chern count {report.expected_total}"
        )
    try:
        payload["quotient"] = quotient_fn().to_json()
    except QuotientRejected as e:
        payload["quotient"] = {"rejected": True, "case_value": e.case_value}
        warnings.append(f"case value {e.case_value} is outside the smooth/elliptic dichotomy; zero structure reported as computed")
    return payload


def cmd_foliate(args, warnings):
    if args.remark55:
        v = remark_delta()
        report = singular_points(v)
        return _foliation_payload(v, report, lambda: remark_quotient(v, report), warnings), None
    if args.catalog:
        _need(args, "pg")
        d = None if args.image is None or args.image.shape == "P2" else args.image.degree
        plan = catalog_existence(args.pg, d)
        payload = {"plan": plan.to_json()}
        if plan.note:
            warnings.append(plan.note)
        if plan.recipe is not None:
            v = build_eta(plan.recipe)
            report = singular_points(v, plan.recipe)
            payload.update(_foliation_payload(v, report, lambda: quotient_invariants(plan.recipe, v), warnings))
        return payload, None
    _need(args, "d", "ell", "m")
    field = None if args.field is None else _char2(args.field, None)
    recipe = make_recipe(args.d, args.ell, args.m, field, args.a, args.b)
    v = build_eta(recipe)
    report = singular_points(v, recipe)
    payload = {"recipe": recipe.to_json()}
    payload.update(_foliation_payload(v, report, lambda: quotient_invariants(recipe, v), warnings))
    return payload, None


def cmd_deform(args, warnings):
    F = _char2(args.field, gf(2))
    datum = _datum_for(args.pg, args.image)
    if datum.image.shape == "cone":
        warnings.append("the cover lives on the minimal desingularisation of the cone")
    drawn = draw_family(datum.base, datum.L, F, args.seed)
    bad = [x for x in args.lam if not 0 <= x < F.order]
    if bad:
        raise Rejected({"reason": f"lambda values {bad} are not element codes of {F.label}"})
    rows = lambda_sweep(drawn.family, args.lam)
    ksq = {r.invariants.Ksq for r in rows}
    return {
        "datum": datum.to_json(),
        "s": format_polynomial(drawn.family.s),
        "t": format_polynomial(drawn.family.t),
        "draws": drawn.draws,
        "seed": drawn.seed,
        "rows": [r.to_json(F) for r in rows],
        "invariants_constant": len({(r.invariants.Ksq, r.invariants.pg, r.invariants.chi) for r in rows}) == 1,
        "Ksq_column": sorted(ksq),
    }, None


def cmd_lift(args, warnings):
    if args.surface is not None:
        _need(args, "bundle")
        S = args.surface
        L = _divisor(S, args.bundle)
        datum = None
    else:
        _need(args, "pg", "image")
        datum = _datum_for(args.pg, args.image)
        S, L = datum.base, datum.L
    c = draw_f2_cover(S, L, args.seed)
    report = lift_check(c)
    payload = {"L": L.to_json(), "report": report.to_json()}
    if datum is not None:
        payload["datum"] = datum.to_json()
    if not report.passed:
        warnings.append("lift changed a cohomology dimension or invariant")
    return payload, None


def cmd_selftest(args, warnings):
    from .selftest import run_all

    results = run_all()
    failed = [r for r in results if not r.passed]
    payload = {
        "criteria": [r.to_json() for r in results],
        "passed": len(results) - len(failed),
        "failed": len(failed),
    }
    text = None
    if args.format in ("table", "csv"):
        text = "".join(f"{'PASS' if r.passed else 'FAIL'} {r.ident} {r.name}: {r.detail}\n" for r in results)
    if failed:
        raise _SelftestFailed(payload, text)
    return payload, text


class _SelftestFailed(Exception):
    def __init__(self, payload, text):
        super().__init__("selftest failed")
        self.payload, self.text = payload, text


COMMANDS = {
    "classify": cmd_classify,
    "cohom": cmd_cohom,
    "cover": cmd_cover,
    "foliate": cmd_foliate,
    "deform": cmd_deform,
    "lift": cmd_lift,
    "selftest": cmd_selftest,
}


def _envelope(argv, args, payload, warnings) -> str:
    field = getattr(args, "field", None)
    env = {
        "command": list(argv),
        "version": __version__,
        "field": None if field is None else field.label,
        "payload": payload,
        "warnings": warnings,
    }
    return json.dumps(env, sort_keys=True, indent=2) + "\n"


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    """Run one command; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(_join_list_flags(argv))
    except UsageError as e:
        err.write(f"{e}\n")
        return EXIT_USAGE
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    warnings: list[str] = []
    try:
        payload, text = COMMANDS[args.command](args, warnings)
    except UsageError as e:
        err.write(f"{parser.format_usage()}horikawa: error: {e}\n")
        return EXIT_USAGE
    except Rejected as e:
        out.write(_envelope(argv, args, {"rejected": True, **e.payload}, warnings))
        return EXIT_REJECTED
    except REJECTIONS as e:
        out.write(_envelope(argv, args, {"rejected": True, "reason": str(e), "error": type(e).__name__}, warnings))
        return EXIT_REJECTED
    except _SelftestFailed as e:
        out.write(e.text if e.text is not None else _envelope(argv, args, e.payload, warnings))
        return EXIT_INTERNAL
    except Exception as e:  # noqa: BLE001
        err.write(f"horikawa: internal error: {type(e).__name__}: {e}\n")
        return EXIT_INTERNAL
    out.write(text if text is not None else _envelope(argv, args, payload, warnings))
    return EXIT_OK


def main() -> None:
    sys.exit(run())
