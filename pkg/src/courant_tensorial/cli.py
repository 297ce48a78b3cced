"""Command-line interface.

Exit codes: 0 success, 1 negative verdict, 2 input error, 3 the three
tensoriality criteria disagree (an internal error, never a verdict).
Results go to stdout; logs go to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .algebroid.core import (
    Algebroid,
    AlgebroidError,
    Section,
    classify_endomorphism,
)
from .algebroid.examples import heisenberg_example, heisenberg_expected_defect
from .algebroid.forms import nijenhuis_torsion, shifted_torsion, tensoriality_defect, torsion_defect
from .algebroid.scalar import DepthBoundExceeded, ScalarSyntaxError
from .io import (
    FormatError,
    algebroid_from_json,
    endomorphism_from_json,
    load_json,
    section_from_json,
)
from .poly import UV, PolySyntaxError, parse_poly3, parse_unipoly
from .tensorial import (
    CriteriaDisagree,
    Variant,
    check_all,
    graded_dimension,
    minimality_polynomial,
    polynomially_tensorial,
    reduce_mod_minimal,
)

log = logging.getLogger("courant_tensorial")

OK, NEGATIVE, INPUT_ERROR, DISAGREE = 0, 1, 2, 3

INPUT_ERRORS = (PolySyntaxError, ScalarSyntaxError, FormatError, AlgebroidError, DepthBoundExceeded, ValueError)


class Output:
    """Collects text lines or a JSON document and writes exactly one of them."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.doc: dict = {}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def flush(self) -> None:
        if self.as_json:
            sys.stdout.write(json.dumps(self.doc) + "\n")
        else:
            for text in self.lines:
                sys.stdout.write(text + "\n")


def _variant(args) -> Variant:
    return Variant.SYMMETRIC if args.symmetric else Variant.SKEW


# -- polynomial commands ------------------------------------------------------

def cmd_check(args, out: Output) -> int:
    p = parse_poly3(args.expr)
    verdicts = check_all(p, _variant(args))
    criteria = {"coefficient": verdicts.coefficient.tensorial,
                "variety": verdicts.variety[3],
                "divisibility": verdicts.divisibility.tensorial}
    if not verdicts.agree:
        out.doc = {"criteria": criteria}
        raise CriteriaDisagree(verdicts)
    report = verdicts.report()
    out.doc = dict(report.to_json(), variant=_variant(args).value, criteria=criteria)
    if report.tensorial:
        out.line(f"tensorial: yes (quotient {report.quotient})")
        return OK
    if report.violated_equations:
        where = ", ".join(f"family {v.family} at (i={v.i},t={v.t})" for v in report.violated_equations)
        out.line(f"tensorial: no; violated {where}")
    else:
        out.line("tensorial: no")
    return NEGATIVE


def cmd_dim(args, out: Output) -> int:
    if args.degree < 0:
        raise ValueError("degree must be non-negative")
    dim, basis = graded_dimension(args.degree, _variant(args))
    out.doc = {"degree": args.degree, "variant": _variant(args).value, "dim": dim}
    out.line(f"dim = {dim}")
    if args.basis:
        out.doc["basis"] = [b.to_str() for b in basis]
        out.lines.extend(b.to_str() for b in basis)
    return OK


def cmd_shift(args, out: Output) -> int:
    P = parse_unipoly(args.unipoly)
    Q = minimality_polynomial(P)
    out.doc = {"P": P.to_str(), "Q": Q.to_str()}
    out.line(Q.to_str())
    return OK


def cmd_reduce(args, out: Output) -> int:
    p, m = parse_poly3(args.expr), parse_unipoly(args.min)
    r = reduce_mod_minimal(p, m)
    out.doc = {"input": p.to_str(), "min": m.to_str(), "reduced": r.to_str()}
    out.line(r.to_str())
    return OK


def cmd_polytens(args, out: Output) -> int:
    p, m = parse_poly3(args.expr), parse_unipoly(args.min)
    mode = "literal" if args.literal else "modular"
    res = polynomially_tensorial(p, m, mode)
    names = UV if res.failed in ("A", "B", "C") else ("t", "y", "z")
    witness = None if res.witness is None else res.witness.to_str(names)
    out.doc = {"tensorial": res.tensorial, "mode": mode, "failed": res.failed, "witness": witness}
    if res.tensorial:
        out.line(f"polynomially tensorial ({mode}): yes")
        return OK
    detail = f"; {res.failed} reduces to {witness}" if witness is not None else f"; {res.failed} equations fail"
    out.line(f"polynomially tensorial ({mode}): no{detail}")
    return NEGATIVE


# -- algebroid commands -------------------------------------------------------

def _load_algebroid(path: str, depth: int, validate: bool = True) -> Algebroid:
    return Algebroid(algebroid_from_json(load_json(path)), depth_bound=depth, validate=validate)


def _load_section(text: str, rank: int) -> Section:
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid section list: {exc.msg}") from None
    else:
        doc = load_json(text)
    return section_from_json(doc, rank)


def _fresh_symbol(*sections: Section) -> str:
    used = set().union(*(s.symbols() for s in sections))
    name, k = "f", 0
    while name in used:
        k += 1
        name = f"f{k}"
    return name


def cmd_algebroid_check(args, out: Output) -> int:
    alg = _load_algebroid(args.file, args.depth, validate=False)
    report = alg.check_courant_axiom()
    out.doc = {"ok": report.ok, "mode": alg.mode, "residuals": [
        {"equality": eq, "triple": [i + 1 for i in idx], "scaled": scaled, "residual": str(res)}
        for eq, idx, scaled, res in report.residuals
    ]}
    if report.ok:
        out.line(f"axiom: ok (rank {alg.rank}, {alg.mode})")
        return OK
    out.line(f"axiom: fails at {len(report.residuals)} place(s)")
    for eq, idx, scaled, res in report.residuals[:10]:
        triple = ",".join(alg.names[i] for i in idx)
        out.line(f"  equality {eq} at ({triple}){' scaled' if scaled else ''}: residual {res}")
    return NEGATIVE if alg.mode == "proto_courant" else OK


def _load_pair(args):
    alg = _load_algebroid(args.file, args.depth)
    J = endomorphism_from_json(load_json(args.j), alg.rank)
    return alg, classify_endomorphism(alg, J)


def cmd_torsion(args, out: Output) -> int:
    alg, J = _load_pair(args)
    x, y = _load_section(args.x, alg.rank), _load_section(args.y, alg.rank)
    f = _fresh_symbol(x, y)
    torsion = shifted_torsion if args.shifted else nijenhuis_torsion
    value = torsion(alg, J.matrix, x, y)
    defect = torsion_defect(alg, J.matrix, x, y, f=f, shifted=args.shifted)
    label = "shifted torsion" if args.shifted else "torsion"
    out.doc = {"symmetry": J.symmetry, "shifted": args.shifted, "torsion": value.to_str(alg.names),
               "defect": defect.to_str(alg.names), "function": f, "tensorial_here": defect.is_zero()}
    out.line(f"{label} = {value.to_str(alg.names)}")
    out.line(f"defect({f}) = {defect.to_str(alg.names)}")
    return OK if defect.is_zero() else NEGATIVE


def cmd_defect(args, out: Output) -> int:
    alg, J = _load_pair(args)
    P = parse_poly3(args.poly)
    x, y, z = (_load_section(s, alg.rank) for s in (args.x, args.y, args.z))
    f = _fresh_symbol(x, y, z)
    d = tensoriality_defect(alg, P, J.matrix, x, y, z, args.slot, f=f)
    out.doc = {"slot": args.slot, "function": f, "defect": str(d), "zero": d.is_zero()}
    out.line(f"defect = {d}")
    return OK if d.is_zero() else NEGATIVE


def cmd_demo(args, out: Output) -> int:
    data, J, x, y = heisenberg_example()
    alg = Algebroid(data, depth_bound=args.depth)
    names = alg.names
    expected = heisenberg_expected_defect()
    printed = torsion_defect(alg, J.matrix, x, y)
    corrected = torsion_defect(alg, J.matrix, x, x)
    ref = expected.to_str(names)
    out.doc = {
        "symmetry": J.symmetry,
        "x": x.to_str(names), "y": y.to_str(names),
        "inner_xy": str(alg.inner(x, y)),
        "reference": ref,
        "defect": printed.to_str(names),
        "matches": printed == expected,
        "defect_x_equals_y": corrected.to_str(names),
        "matches_x_equals_y": corrected == expected,
    }
    out.line(f"J: {J.symmetry}")
    out.line(f"x = {x.to_str(names)}, y = {y.to_str(names)}, <x, y> = {alg.inner(x, y)}")
    out.line(f"defect = {printed.to_str(names)}")
    out.line(f"matches reference {ref}: {'yes' if printed == expected else 'no'}")
    out.line(f"with y = x: defect = {corrected.to_str(names)}")
    out.line(f"matches reference {ref}: {'yes' if corrected == expected else 'no'}")
    return OK if printed == expected else NEGATIVE


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document instead of text")
    common.add_argument("--depth", type=int, default=2, help="derivative depth bound (default 2)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    variant = argparse.ArgumentParser(add_help=False)
    group = variant.add_mutually_exclusive_group()
    group.add_argument("--symmetric", action="store_true", help="symmetric-endomorphism variant")
    group.add_argument("--skew", action="store_true", help="skew-symmetric variant (default)")

    parser = argparse.ArgumentParser(prog="courant-tensorial",
                                     description="Tensoriality of polynomial actions on the Courant element.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common, variant], help="decide tensoriality by all three criteria")
    p.add_argument("expr")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dim", parents=[common, variant], help="dimension of a graded piece of the ideal")
    p.add_argument("degree", type=int)
    p.add_argument("--basis", action="store_true", help="also print the canonical basis")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("shift", parents=[common], help="Q(x, y, z) = P(x + y + z)")
    p.add_argument("unipoly")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("reduce", parents=[common], help="reduce each variable modulo m")
    p.add_argument("expr")
    p.add_argument("--min", required=True, metavar="UNIPOLY")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("polytens", parents=[common], help="polynomial tensoriality modulo m")
    p.add_argument("expr")
    p.add_argument("--min", required=True, metavar="UNIPOLY")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--literal", action="store_true", help="the definition read verbatim")
    mode.add_argument("--modular", action="store_true", help="A, B, C modulo m (default)")
    p.set_defaults(func=cmd_polytens)

    p = sub.add_parser("algebroid", help="algebroid data files")
    asub = p.add_subparsers(dest="action", required=True)
    q = asub.add_parser("check", parents=[common], help="verify the algebroid axiom symbolically")
    q.add_argument("file")
    q.set_defaults(func=cmd_algebroid_check)

    p = sub.add_parser("torsion", parents=[common], help="Courant-Nijenhuis torsion and its defect")
    p.add_argument("file")
    p.add_argument("--j", required=True, metavar="FILE")
    p.add_argument("--x", required=True, metavar="SECT")
    p.add_argument("--y", required=True, metavar="SECT")
    p.add_argument("--shifted", action="store_true")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("defect", parents=[common], help="tensoriality defect of P acting on the Courant element")
    p.add_argument("file")
    p.add_argument("--j", required=True, metavar="FILE")
    p.add_argument("--poly", required=True, metavar="EXPR")
    p.add_argument("--x", required=True, metavar="SECT")
    p.add_argument("--y", required=True, metavar="SECT")
    p.add_argument("--z", required=True, metavar="SECT")
    p.add_argument("--slot", required=True, type=int, choices=(1, 2, 3))
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("demo", parents=[common], help="built-in worked examples")
    p.add_argument("name", choices=("heisenberg",))
    p.set_defaults(func=cmd_demo)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s",
                        level=logging.INFO if args.verbose else logging.WARNING)
    if args.depth < 1:
        sys.stderr.write("error: --depth must be at least 1\n")
        return INPUT_ERROR
    out = Output(args.json)
    log.info("running %s", args.command)
    try:
        code = args.func(args, out)
    except CriteriaDisagree as exc:
        sys.stderr.write(f"error: {exc}\n")
        out.doc.setdefault("error", str(exc))
        out.flush()
        return DISAGREE
    except INPUT_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        if args.json:
            sys.stdout.write(json.dumps({"error": str(exc)}) + "\n")
        return INPUT_ERROR
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
