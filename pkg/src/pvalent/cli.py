"""Command-line front end.

Subcommands::

    pvalent apply F.json [--prime] [--out doc.json]
    pvalent check F.json G.json --criterion suff-n --delta 2 [--alpha pi*0.25 ...]
    pvalent construct G.json --delta 2 -K 50 [--out partner.json]
    pvalent suite --suite thm_2_1_implication --trials 500 --seed 1

Function files are UTF-8 JSON documents with keys ``p``, ``n``, optional
``m``/``lambda``/``Omega`` (defaulting to 0) and ``coefficients``, an ordered
list of ``[re, im]`` pairs for the perturbation indices k = n..K.  Angles
are radians and accept an optional ``pi*`` prefix (``pi*0.5``); negative
pi-forms need the ``--alpha=-pi*0.5`` spelling so the shell parser does not
mistake them for flags.

Exit codes: 0 the checked statement holds (or the command succeeded),
1 it fails, 2 usage or parse error, 3 domain violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import criteria, harness
from .circlemax import DEFAULT_GRID
from .errors import DomainError, HypothesisViolationError, PValentError
from .series import (
    MultivalentFunction,
    NeighborhoodParams,
    OperatorParams,
    TruncatedSeries,
    blend_derivative_normalized,
    salagean_blend,
)

SCHEMA_VERSION = 1

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

CRITERIA = ("suff-n", "suff-m", "member-n", "member-m", "nec-n", "nec-m", "thm211")


class FunctionFileError(PValentError):
    """A function file failed to parse or validate."""


class UsageError(PValentError):
    """A flag combination the parser cannot catch (e.g. nec-* without --phi)."""


def parse_angle(text: str) -> float:
    """Radians, with an optional pi* prefix: '0.5', 'pi*0.5', '-pi*1'."""
    t = text.strip()
    sign = 1.0
    if t.startswith(("+", "-")):
        if t[0] == "-":
            sign = -1.0
        t = t[1:]
    if t.startswith("pi*"):
        return sign * math.pi * float(t[3:])
    return sign * float(t)


def load_function_file(path: Path) -> tuple[MultivalentFunction, OperatorParams]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FunctionFileError(f"{path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FunctionFileError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise FunctionFileError(f"{path}: top-level value must be an object")

    def integer(key, default=None, minimum=0):
        value = doc.get(key, default)
        if value is None:
            raise FunctionFileError(f"{path}: missing required key {key!r}")
        if isinstance(value, bool) or not isinstance(value, int):
            raise FunctionFileError(f"{path}: key {key!r} must be an integer")
        if value < minimum:
            raise FunctionFileError(f"{path}: key {key!r} must be >= {minimum}")
        return value

    p = integer("p", minimum=1)
    n = integer("n", minimum=1)
    m = integer("m", default=0)
    omega = integer("Omega", default=0)
    lam = doc.get("lambda", 0.0)
    if isinstance(lam, bool) or not isinstance(lam, (int, float)) or not math.isfinite(lam):
        raise FunctionFileError(f"{path}: key 'lambda' must be a finite number")
    raw = doc.get("coefficients", [])
    if not isinstance(raw, list):
        raise FunctionFileError(f"{path}: key 'coefficients' must be a list")
    coeffs = []
    for i, entry in enumerate(raw):
        ok = (
            isinstance(entry, list)
            and len(entry) == 2
            and all(
                isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)
                for v in entry
            )
        )
        if not ok:
            raise FunctionFileError(
                f"{path}: coefficients[{i}]: expected a [re, im] pair of finite numbers"
            )
        coeffs.append(complex(entry[0], entry[1]))
    try:
        return (
            MultivalentFunction(p, n, tuple(coeffs)),
            OperatorParams(lam=float(lam), m=m, omega=omega),
        )
    except DomainError as exc:
        raise FunctionFileError(f"{path}: {exc}") from exc


def function_file_document(f: MultivalentFunction, op: OperatorParams) -> dict:
    return {
        "p": f.p,
        "n": f.n,
        "m": op.m,
        "lambda": op.lam,
        "Omega": op.omega,
        "coefficients": [[c.real, c.imag] for c in f.coeffs],
    }


def _write_document(doc: dict, out: Path | None) -> None:
    if out is not None:
        out.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _series_document(series: TruncatedSeries, prime: bool) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "series",
        "prime": prime,
        "terms": [[e, [c.real, c.imag]] for e, c in series.terms()],
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_apply(args) -> int:
    f, op = load_function_file(args.function)
    series = (
        blend_derivative_normalized(f, op) if args.prime else salagean_blend(f, op)
    )
    print("# exponent re im")
    for e, c in series.terms():
        print(f"{e} {c.real!r} {c.imag!r}")
    _write_document(_series_document(series, args.prime), args.out)
    return EXIT_HOLDS


def _require_matching_files(ff, fop, gf, gop):
    if ff.p != gf.p or ff.n != gf.n:
        raise DomainError(
            f"files disagree on (p, n): ({ff.p}, {ff.n}) vs ({gf.p}, {gf.n})"
        )
    if fop != gop:
        raise DomainError(
            f"files disagree on operator parameters: {fop} vs {gop}"
        )


def _print_verdict(label: str, verdict: criteria.Verdict) -> None:
    print(f"{label}holds     : {'yes' if verdict.holds else 'no'}")
    print(f"{label}lhs       : {verdict.lhs!r}")
    print(f"{label}threshold : {verdict.threshold!r}")
    print(f"{label}margin    : {verdict.margin!r}")
    for note in verdict.notes:
        print(f"{label}note      : {note}")


def cmd_check(args) -> int:
    f, fop = load_function_file(args.f)
    g, gop = load_function_file(args.g)
    _require_matching_files(f, fop, g, gop)
    op = fop
    nb = NeighborhoodParams(args.alpha, args.beta, args.delta)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "check_report",
        "criterion": args.criterion,
        "f": str(args.f),
        "g": str(args.g),
        "alpha": nb.alpha,
        "beta": nb.beta,
        "delta": nb.delta,
        "phi": args.phi,
        "grid": args.grid,
        "p": f.p,
        "n": f.n,
        "m": op.m,
        "lambda": op.lam,
        "Omega": op.omega,
    }
    print(f"criterion : {args.criterion}")

    if args.criterion == "thm211":
        pair = criteria.transfer_check(f, g, op, nb, args.grid)
        print("hypothesis (derivative-side sup bound)")
        _print_verdict("  ", pair.hypothesis)
        print("conclusion (value-side sup bound)")
        _print_verdict("  ", pair.conclusion)
        doc["verdict"] = pair.conclusion.to_dict()
        doc["hypothesis"] = pair.hypothesis.to_dict()
        if pair.falsification:
            print("FALSIFICATION EVENT: hypothesis held but conclusion failed", file=sys.stderr)
        _write_document(doc, args.out)
        return EXIT_HOLDS if pair.conclusion.holds else EXIT_FAILS

    if args.criterion in ("nec-n", "nec-m"):
        if args.phi is None:
            raise UsageError("--phi is required for the nec-n and nec-m criteria")
        align = criteria.ArgAlignment(phi=args.phi, tolerance=args.tolerance)
        check = criteria.necessary_n if args.criterion == "nec-n" else criteria.necessary_m
        verdict = check(f, g, op, nb, align, grid=args.grid)
        _print_verdict("", verdict)
        doc["verdict"] = verdict.to_dict()
        if verdict.falsification:
            print("FALSIFICATION EVENT: verified hypotheses, failed conclusion", file=sys.stderr)
        _write_document(doc, args.out)
        return EXIT_HOLDS if verdict.holds else EXIT_FAILS

    if args.criterion in ("suff-n", "suff-m"):
        check = criteria.sufficient_n if args.criterion == "suff-n" else criteria.sufficient_m
        verdict = check(f, g, op, nb)
        _print_verdict("", verdict)
        doc["verdict"] = verdict.to_dict()
        _write_document(doc, args.out)
        return EXIT_HOLDS if verdict.holds else EXIT_FAILS

    # member-n / member-m: also surface the sum criterion, whose holding
    # guarantees membership; disagreement in that direction is a falsification
    member = criteria.membership_n if args.criterion == "member-n" else criteria.membership_m
    suff = criteria.sufficient_n if args.criterion == "member-n" else criteria.sufficient_m
    verdict = member(f, g, op, nb, args.grid)
    companion = suff(f, g, op, nb)
    _print_verdict("", verdict)
    print("sufficient-side companion")
    _print_verdict("  ", companion)
    falsified = companion.holds and not verdict.holds
    if companion.holds:
        print("note      : sum criterion holds, so membership is implied")
    doc["verdict"] = verdict.to_dict()
    doc["sufficient_side"] = companion.to_dict()
    doc["implied_by_sufficient"] = bool(companion.holds)
    doc["falsification"] = bool(falsified)
    if falsified:
        print(
            "FALSIFICATION EVENT: sum criterion holds but membership failed",
            file=sys.stderr,
        )
    _write_document(doc, args.out)
    return EXIT_HOLDS if verdict.holds else EXIT_FAILS


def cmd_construct(args) -> int:
    g, op = load_function_file(args.g)
    nb = NeighborhoodParams(args.alpha, args.beta, args.delta)
    partner = criteria.telescoping_partner(g, op, nb, args.trunc)
    doc = function_file_document(partner, op)
    print(json.dumps(doc, indent=2))
    _write_document(doc, args.out)
    return EXIT_HOLDS


def cmd_suite(args) -> int:
    report = harness.run_property_suite(args.suite, args.trials, args.seed)
    print(report.text_summary())
    _write_document(report.to_document(), args.out)
    return EXIT_HOLDS if report.passed else EXIT_FAILS


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvalent",
        description="Blended Salagean operators and neighborhood checks "
        "for truncated p-valent functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    apply_p = sub.add_parser("apply", help="apply the blended operator to a function file")
    apply_p.add_argument("function", type=Path, help="function file (JSON)")
    apply_p.add_argument(
        "--prime",
        action="store_true",
        help="emit the derivative of the image divided by z^(p-m-1) instead",
    )
    apply_p.add_argument("--out", type=Path, help="write the machine-readable document here")
    apply_p.set_defaults(func=cmd_apply)

    check_p = sub.add_parser("check", help="run a criterion or membership test on a pair")
    check_p.add_argument("f", type=Path, help="candidate function file")
    check_p.add_argument("g", type=Path, help="centre function file")
    check_p.add_argument("--criterion", required=True, choices=CRITERIA)
    check_p.add_argument("--alpha", type=parse_angle, default=0.0, help="phase twist for f")
    check_p.add_argument("--beta", type=parse_angle, default=0.0, help="phase twist for g")
    check_p.add_argument("--delta", type=float, required=True, help="neighborhood radius")
    check_p.add_argument("--phi", type=parse_angle, default=None, help="alignment slope (nec-*)")
    check_p.add_argument("--grid", type=int, default=DEFAULT_GRID, help="boundary samples")
    check_p.add_argument(
        "--tolerance", type=float, default=1e-8, help="alignment tolerance in radians"
    )
    check_p.add_argument("--out", type=Path)
    check_p.set_defaults(func=cmd_check)

    cons_p = sub.add_parser(
        "construct", help="build the telescoping partner of a function file"
    )
    cons_p.add_argument("g", type=Path, help="centre function file")
    cons_p.add_argument("--delta", type=float, required=True)
    cons_p.add_argument("--alpha", type=parse_angle, default=0.0)
    cons_p.add_argument("--beta", type=parse_angle, default=0.0)
    cons_p.add_argument("-K", "--trunc", type=int, required=True, help="truncation order")
    cons_p.add_argument("--out", type=Path)
    cons_p.set_defaults(func=cmd_construct)

    suite_p = sub.add_parser("suite", help="run a property suite")
    suite_p.add_argument("--suite", required=True, choices=sorted(harness.SUITES))
    suite_p.add_argument("--trials", type=int, default=100)
    suite_p.add_argument("--seed", type=int, default=0)
    suite_p.add_argument("--out", type=Path)
    suite_p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (FunctionFileError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, HypothesisViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
