"""``verify-fe`` command line.

Running ``verify-fe --form F --a A --p P --level N`` performs the full
verification; the subcommands expose the individual layers.

Exit codes: 0 pass, 1 identity failure, 2 precision failure, 3 input failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import charelem
from .classify import classify_primes, count_points_weight2
from .errors import FalseTateError, InputError, PrecisionExhausted
from .euler import CONVENTIONS, companion, euler_factor
from .group import decomposition_data, group_order
from .padic import DEFAULT_PRECISION, PadicScalar
from .reps import (ArtinRep, RepLabel, complex_conjugation_signs, contragredient,
                   enumerate_irreps)
from .verifier import (EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_PRECISION, VerifyOptions,
                       check_level_monotonicity, emit_report, ingest_form_file,
                       verify_functional_equation)

SUBCOMMANDS = ("verify", "lemma-check", "euler", "classify", "eval-charelem", "irreps",
               "count-points")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_char_spec(text: str) -> RepLabel:
    return RepLabel.parse(text)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _select_reps(p: int, n: int, spec: str, precision: int) -> list[ArtinRep]:
    if spec == "all":
        return enumerate_irreps(p, n, precision)
    label = parse_char_spec(spec).canonical(p, n)
    return [ArtinRep(p, n, label, precision)]


def _add_common(sp, form=False, a=False, level_name="--level"):
    if form:
        sp.add_argument("--form", required=True, help="JSON form data file")
    if a:
        sp.add_argument("--a", type=int, required=True, help="Kummer base")
    sp.add_argument("--p", type=int, required=True, help="odd working prime")
    sp.add_argument(level_name, dest="level", type=int, required=True, help="finite level n")
    sp.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                    help="p-adic digits (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="verify-fe",
                     description="Verify the false-Tate functional-equation identity at finite level.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    v = sub.add_parser("verify", help="full verification over all irreducibles (default)")
    _add_common(v, form=True, a=True)
    v.add_argument("--twist-convention", choices=CONVENTIONS, default="paper-display")
    v.add_argument("--frobenius-lift", type=int, default=0, metavar="C",
                   help="use (q, C) as the Frobenius at every q")
    v.add_argument("--report-digits", type=int, default=None,
                   help="absolute precision of reported values (default precision // 4)")
    v.add_argument("--report", default=None, help="write the report here instead of stdout")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--check-monotonicity", action="store_true",
                   help="also compare against the inflation to level n + 1")

    lc = sub.add_parser("lemma-check", help="closed forms against determinant evaluations")
    lc.add_argument("--p", type=int, required=True)
    lc.add_argument("--n", dest="level", type=int, required=True)
    lc.add_argument("--q", type=int, required=True)
    lc.add_argument("--x", type=_rational, required=True)
    lc.add_argument("--char", default="all", help="label such as 'psi(1,0)', 'theta_1', or 'all'")
    lc.add_argument("--precision", type=int, default=DEFAULT_PRECISION)

    eu = sub.add_parser("euler", help="Euler factors of eta and eta* at one prime")
    eu.add_argument("--form", required=True)
    eu.add_argument("--p", type=int, required=True)
    eu.add_argument("--n", dest="level", type=int, required=True)
    eu.add_argument("--q", type=int, required=True)
    eu.add_argument("--char", default="all")
    eu.add_argument("--twist-convention", choices=CONVENTIONS, default="paper-display")
    eu.add_argument("--precision", type=int, default=DEFAULT_PRECISION)

    cl = sub.add_parser("classify", help="classify the primes of the Kummer base")
    _add_common(cl, form=True, a=True)
    cl.add_argument("--twist-convention", choices=CONVENTIONS, default="paper-display")

    ev = sub.add_parser("eval-charelem", help="evaluate a local characteristic element")
    ev.add_argument("--p", type=int, required=True)
    ev.add_argument("--n", dest="level", type=int, required=True)
    ev.add_argument("--q", type=int, required=True)
    ev.add_argument("--kind", choices=charelem.KINDS, required=True)
    ev.add_argument("--x", type=_rational, help="rank-one Frobenius eigenvalue")
    ev.add_argument("--trace", type=_rational, help="rank two: trace of X")
    ev.add_argument("--det", type=_rational, help="rank two: determinant of X")
    ev.add_argument("--char", default="all")
    ev.add_argument("--frobenius-lift", type=int, default=0)
    ev.add_argument("--precision", type=int, default=DEFAULT_PRECISION)

    ir = sub.add_parser("irreps", help="list the irreducible representations of G_n")
    ir.add_argument("--p", type=int, required=True)
    ir.add_argument("--n", dest="level", type=int, required=True)
    ir.add_argument("--precision", type=int, default=DEFAULT_PRECISION)

    cp = sub.add_parser("count-points", help="a_q of an elliptic curve by point counting")
    cp.add_argument("--curve", required=True, help="a1,a2,a3,a4,a6")
    cp.add_argument("--q", type=int, nargs="+", required=True)
    cp.add_argument("--allow-multiplicative", action="store_true")
    return parser


def _cmd_verify(args) -> int:
    ff = ingest_form_file(args.form)
    opts = VerifyOptions(precision=args.precision, convention=args.twist_convention,
                         frobenius_lift=args.frobenius_lift, report_digits=args.report_digits,
                         override=ff.override)
    report = verify_functional_equation(ff.form, args.a, args.p, args.level, opts)
    code = emit_report(report, args.format, args.report)
    if args.check_monotonicity:
        bad = check_level_monotonicity(ff.form, args.a, args.p, args.level, opts)
        if bad:
            print(f"level monotonicity FAILED for: {', '.join(bad)}", file=sys.stderr)
            code = code or EXIT_FAIL
        else:
            print(f"level monotonicity: n={args.level} -> n={args.level + 1} agree",
                  file=sys.stderr)
    return code


def _cmd_lemma_check(args) -> int:
    dd = decomposition_data(args.q, args.p, args.level)
    ok = True
    for eta in _select_reps(args.p, args.level, args.char, args.precision):
        specs = {k: charelem.LocalModuleSpec.rank_one(dd, args.x, k, args.precision)
                 for k in charelem.KINDS}
        if eta.dimension == 1:
            for k, spec in specs.items():
                closed = charelem.closed_form(spec, eta)
                oracle = charelem.evaluate(spec, eta).value
                diff = closed - oracle if oracle is not charelem.Indeterminate else closed
                good = oracle is not charelem.Indeterminate and diff.is_zero()
                ok &= good
                print(f"{eta.label} {k}: closed {closed}  oracle {oracle}  "
                      f"{'ok' if good else 'MISMATCH'}")
        else:
            n_res = charelem.evaluate(specs["N"], eta)
            m_res = charelem.evaluate(specs["M"], eta)
            if n_res.is_indeterminate or m_res.is_indeterminate:
                same = n_res.is_indeterminate and m_res.is_indeterminate
                print(f"{eta.label}: oracle N {n_res.value}  oracle M {m_res.value}  "
                      f"{'both vanish' if same else 'MISMATCH'}")
                ok &= same
                continue
            ratio = n_res.value / m_res.value
            good = (ratio - 1).is_zero()
            ok &= good
            print(f"{eta.label}: oracle N {n_res.value}  oracle M {m_res.value}  "
                  f"ratio {'1' if good else ratio}")
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_euler(args) -> int:
    ff = ingest_form_file(args.form)
    f = ff.form.with_prime(args.p)
    for eta in _select_reps(args.p, args.level, args.char, args.precision):
        a = euler_factor(f, eta, args.q, args.twist_convention)
        b = euler_factor(f, contragredient(eta), args.q, args.twist_convention)
        ratio = a.value / b.value
        print(f"{eta.label}: P(eta) {a.value} [deg {a.degree}]  P(eta*) {b.value}  "
              f"v(ratio) {ratio.valuation()}")
    return EXIT_PASS


def _cmd_classify(args) -> int:
    ff = ingest_form_file(args.form)
    cls = classify_primes(ff.form.with_prime(args.p), args.a, args.p, args.level,
                          args.twist_convention, args.precision, ff.override)
    print(f"P0 = {list(cls.P0)}")
    print(f"P1 = {list(cls.P1)}")
    print(f"P2 = {list(cls.P2)}")
    for q, ev in cls.evidence.items():
        print(f"  {q}: {ev}")
    return EXIT_PASS


def _cmd_eval(args) -> int:
    dd = decomposition_data(args.q, args.p, args.level, args.frobenius_lift)
    if args.x is not None:
        X = ((PadicScalar.from_rational(args.x, args.p, args.precision),),)
    elif args.trace is not None and args.det is not None:
        X = companion(PadicScalar.from_rational(args.trace, args.p, args.precision),
                      PadicScalar.from_rational(args.det, args.p, args.precision))
    else:
        raise InputError("give --x, or both --trace and --det")
    spec = charelem.LocalModuleSpec(dd, X, args.kind)
    for eta in _select_reps(args.p, args.level, args.char, args.precision):
        res = charelem.evaluate(spec, eta)
        print(f"{eta.label}: {res.value}  valuation {charelem.rational_valuation(res.valuation)}")
    return EXIT_PASS


def _cmd_irreps(args) -> int:
    reps = enumerate_irreps(args.p, args.level, args.precision)
    for eta in reps:
        dp, dm = complex_conjugation_signs(eta)
        print(f"{str(eta.label):<22} dim {eta.dimension:>3}  d+ {dp:>3}  d- {dm:>3}")
    total = sum(r.dimension ** 2 for r in reps)
    print(f"{len(reps)} irreducibles, sum of squared dimensions {total} = |G_{args.level}| "
          f"= {group_order(args.p, args.level)}")
    return EXIT_PASS


def _cmd_count_points(args) -> int:
    try:
        curve = [int(c) for c in args.curve.split(",")]
    except ValueError:
        raise InputError(f"bad curve coefficients {args.curve!r}") from None
    for q in args.q:
        print(f"a_{q} = {count_points_weight2(curve, q, args.allow_multiplicative)}")
    return EXIT_PASS


COMMANDS = {
    "verify": _cmd_verify,
    "lemma-check": _cmd_lemma_check,
    "euler": _cmd_euler,
    "classify": _cmd_classify,
    "eval-charelem": _cmd_eval,
    "irreps": _cmd_irreps,
    "count-points": _cmd_count_points,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    first = next((a for a in argv if a not in ("-v", "--verbose")), None)
    if first not in SUBCOMMANDS and first not in ("-h", "--help"):
        i = argv.index(first) if first is not None else len(argv)
        argv.insert(i, "verify")
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except PrecisionExhausted as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (FalseTateError, ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
