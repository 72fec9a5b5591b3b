"""End-to-end verification of the functional-equation identity at finite level.

For every irreducible eta of G_n the algebraic side is

    lhs(eta) = prod over error-term summands of eta(xi_N) / eta(xi_M)

and the analytic side is

    rhs(eta) = prod over q in P0 of P_q(f, eta) / P_q(f, eta*).

The identity holds up to a p-adic unit, so eta passes when
v(lhs) = v(rhs), i.e. v(lhs / rhs) = 0.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import jsonschema

from .charelem import EvalResult, local_error_eval
from .classify import (ErrorTermClass, PrimeClassification, assemble_error_term,
                       classify_primes)
from .errors import ParseError, PrecisionExhausted, SchemaViolation
from .euler import CONVENTIONS, FormData, euler_ratio_product
from .padic import DEFAULT_PRECISION, INF, CycElem
from .reps import ArtinRep, RepLabel, enumerate_irreps

EXIT_PASS, EXIT_FAIL, EXIT_PRECISION, EXIT_INPUT = 0, 1, 2, 3

ASSUMPTIONS = (
    "f is a normalized newform of even weight k >= 2 on Gamma_0(N), N square-free, p does not divide N",
    "a_p(f) is a p-adic unit (ordinary at p); declared, not checked since a_p is not used",
    "the dual Selmer groups over the false-Tate tower lie in M_H(G) and satisfy the torsion hypotheses",
    "Euler factors at p are trivial for nontrivial eta and cancel between eta and eta* for trivial eta",
    "'up to a p-adic unit' is tested as equality of valuations",
)

FORM_SCHEMA = {
    "type": "object",
    "required": ["label", "weight", "level", "coefficients"],
    "additionalProperties": False,
    "properties": {
        "label": {"type": "string"},
        "weight": {"type": "integer"},
        "level": {"type": "integer"},
        "coefficients": {
            "type": "object",
            "patternProperties": {"^[0-9]+$": {"type": "integer"}},
            "additionalProperties": False,
        },
        "special": {
            "type": "object",
            "patternProperties": {"^[0-9]+$": {
                "oneOf": [
                    {"type": "integer", "enum": [1, -1]},
                    {"type": "object", "required": ["delta"], "additionalProperties": False,
                     "properties": {"delta": {"type": "integer", "enum": [1, -1]}}},
                ]}},
            "additionalProperties": False,
        },
        "classification_override": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "P1": {"type": "array", "items": {"type": "integer"}},
                "P2": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "curve": {"type": "array", "items": {"type": "integer"}, "minItems": 5, "maxItems": 5},
        "notes": {"type": "string"},
    },
}


@dataclass(frozen=True)
class FormFile:
    form: FormData
    override: dict | None = None
    curve: tuple | None = None


def parse_form(data: dict) -> FormFile:
    try:
        jsonschema.validate(data, FORM_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise SchemaViolation(f"{where}: {exc.message}") from None
    special = {}
    for q, d in data.get("special", {}).items():
        special[int(q)] = d["delta"] if isinstance(d, dict) else d
    form = FormData(
        label=data["label"],
        weight=data["weight"],
        level=data["level"],
        coefficients={int(q): a for q, a in data["coefficients"].items()},
        special=special,
    )
    curve = tuple(data["curve"]) if "curve" in data else None
    return FormFile(form, data.get("classification_override"), curve)


def ingest_form_file(path) -> FormFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    return parse_form(data)


def ingest_form(path) -> FormData:
    return ingest_form_file(path).form


# report

@dataclass(frozen=True)
class VerifyOptions:
    precision: int = DEFAULT_PRECISION
    convention: str = "paper-display"
    frobenius_lift: int = 0
    report_digits: int | None = None
    override: dict | None = None

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown twist convention {self.convention!r}")
        if self.precision < 8:
            raise ValueError("precision must be at least 8 digits")

    @property
    def digits(self) -> int:
        return self.report_digits if self.report_digits is not None else self.precision // 4


@dataclass
class EtaRecord:
    label: str
    dimension: int
    status: str                      # pass | fail | indeterminate | precision
    lhs: CycElem | None = None
    rhs: CycElem | None = None
    lhs_valuation: object = None
    rhs_valuation: object = None
    ratio_valuation: object = None
    unit_ratio_ok: bool = False
    exact_one: bool = False
    notes: list[str] = field(default_factory=list)


@dataclass
class VerificationReport:
    parameters: dict
    classification: PrimeClassification
    records: list[EtaRecord]

    @property
    def counts(self) -> dict[str, int]:
        out = {"total": len(self.records), "pass": 0, "fail": 0, "indeterminate": 0,
               "precision": 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    @property
    def exit_code(self) -> int:
        c = self.counts
        if c["fail"] or c["indeterminate"]:
            return EXIT_FAIL
        if c["precision"]:
            return EXIT_PRECISION
        return EXIT_PASS

    def failing_labels(self) -> list[str]:
        return [r.label for r in self.records if r.status != "pass"]

    def record(self, label: str) -> EtaRecord:
        for r in self.records:
            if r.label == label:
                return r
        raise KeyError(label)


def _fmt_valuation(v) -> str | None:
    if v is None:
        return None
    if v == INF:
        return "inf"
    return str(Fraction(v))


def serialize_value(x: CycElem | None, digits: int):
    """Canonical JSON form: numerator coordinates mod p^(digits + den_exp)."""
    if x is None:
        return None
    r = x.reduce_to(digits)
    return {"num": list(r.numerator), "den_exp": r.denom_exp, "O": digits, "level": r.level}


def lhs_value(error_term: ErrorTermClass, eta: ArtinRep) -> tuple[object, list[str]]:
    value = CycElem.one(eta.p, eta.n, eta.precision)
    notes = []
    for summand in error_term.summands:
        res: EvalResult = local_error_eval(summand.q_class, summand, eta)
        if res.cancelled_factors:
            notes.append(f"q={summand.dd.q}: cancelled {', '.join(res.cancelled_factors)}")
        if res.is_indeterminate:
            notes.append(f"q={summand.dd.q}: indeterminate after cancellation")
            return None, notes
        value = value * res.value
    return value, notes


def _evaluate_eta(f: FormData, error_term: ErrorTermClass, P0, eta: ArtinRep,
                  opts: VerifyOptions) -> EtaRecord:
    rec = EtaRecord(str(eta.label), eta.dimension, "fail")
    try:
        lhs, notes = lhs_value(error_term, eta)
        rec.notes.extend(notes)
        rhs = euler_ratio_product(f, eta, P0, opts.convention, opts.frobenius_lift)
        rec.rhs = rhs.embed(eta.n)
        rec.rhs_valuation = rhs.valuation()
        if lhs is None:
            rec.status = "indeterminate"
            return rec
        rec.lhs = lhs.embed(eta.n)
        rec.lhs_valuation = lhs.valuation()
        if lhs.is_zero() or rhs.is_zero():
            rec.notes.append("a side vanishes at working precision")
            return rec
        ratio = lhs / rhs
        rec.ratio_valuation = ratio.valuation()
        rec.unit_ratio_ok = rec.lhs_valuation == rec.rhs_valuation and rec.ratio_valuation == 0
        rec.exact_one = (ratio - 1).is_zero()
        # report values at a fixed precision so output is canonical
        for x in (rec.lhs, rec.rhs):
            x.reduce_to(opts.digits)
        rec.status = "pass" if rec.unit_ratio_ok else "fail"
    except PrecisionExhausted as exc:
        rec.status = "precision"
        rec.notes.append(f"precision exhausted ({exc}); rerun with a larger --precision")
    return rec


def verify_functional_equation(f: FormData, a: int, p: int, n: int,
                               options: VerifyOptions | None = None,
                               classification: PrimeClassification | None = None
                               ) -> VerificationReport:
    """Run the identity for every irreducible of G_n.

    ``classification`` replaces the computed one wholesale, e.g. an empty
    classification (P0 = P1 = P2 = ()) for the case without exceptional primes.
    """
    opts = options or VerifyOptions()
    f = f.with_prime(p)
    if classification is None:
        cls = classify_primes(f, a, p, n, opts.convention, opts.precision, opts.override)
    else:
        if (classification.p, classification.n) != (p, n):
            raise ValueError(f"classification is for p={classification.p}, n={classification.n}")
        cls = classification
    error_term = assemble_error_term(cls, f, opts.convention, opts.precision)
    if opts.frobenius_lift:
        error_term = error_term.with_frobenius_lift(opts.frobenius_lift)
    records = [_evaluate_eta(f, error_term, cls.P0, eta, opts)
               for eta in enumerate_irreps(p, n, opts.precision)]
    params = {
        "p": p, "a": a, "n": n, "form": f.label, "weight": f.weight, "level": f.level,
        "precision": opts.precision, "report_digits": opts.digits,
        "twist_convention": opts.convention, "frobenius_lift": opts.frobenius_lift,
    }
    return VerificationReport(params, cls, records)


def check_level_monotonicity(f: FormData, a: int, p: int, n: int,
                             options: VerifyOptions | None = None) -> list[str]:
    """Labels whose lhs or rhs change when inflated from G_n to G_{n+1}."""
    low = verify_functional_equation(f, a, p, n, options)
    high = verify_functional_equation(f, a, p, n + 1, options)
    by_label = {r.label: r for r in high.records}
    bad = []
    for rec in low.records:
        lab = RepLabel.parse(rec.label).inflate(p).canonical(p, n + 1)
        other = by_label[str(lab)]
        for mine, theirs in ((rec.lhs, other.lhs), (rec.rhs, other.rhs)):
            if mine is None or theirs is None or not (mine.embed(n + 1) == theirs):
                bad.append(rec.label)
                break
    return bad


def report_to_dict(report: VerificationReport) -> dict:
    digits = report.parameters["report_digits"]
    cls = report.classification
    records = []
    for r in report.records:
        def val(x):
            try:
                return serialize_value(x, digits)
            except PrecisionExhausted:
                return None
        records.append({
            "label": r.label,
            "dimension": r.dimension,
            "status": r.status,
            "lhs": {"value": val(r.lhs), "valuation": _fmt_valuation(r.lhs_valuation)},
            "rhs": {"value": val(r.rhs), "valuation": _fmt_valuation(r.rhs_valuation)},
            "ratio_valuation": _fmt_valuation(r.ratio_valuation),
            "unit_ratio_ok": r.unit_ratio_ok,
            "exact_one": r.exact_one,
            "notes": list(r.notes),
        })
    counts = report.counts
    return {
        "header": {
            "parameters": report.parameters,
            "assumptions": list(ASSUMPTIONS),
            "classification": {
                "P0": list(cls.P0), "P1": list(cls.P1), "P2": list(cls.P2),
                "overridden": cls.overridden,
                "evidence": {str(k): v for k, v in sorted(cls.evidence.items(), key=lambda kv: str(kv[0]))},
            },
        },
        "body": records,
        "summary": {"pass": report.passed, "counts": counts,
                    "failing": report.failing_labels(), "exit_code": report.exit_code},
    }


def render_json(report: VerificationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


def render_text(report: VerificationReport) -> str:
    d = report_to_dict(report)
    prm = d["header"]["parameters"]
    cls = d["header"]["classification"]
    lines = [
        f"form {prm['form']} (k={prm['weight']}, N={prm['level']})  a={prm['a']}  p={prm['p']}  "
        f"n={prm['n']}  precision={prm['precision']}  convention={prm['twist_convention']}",
        f"P0={cls['P0']}  P1={cls['P1']}  P2={cls['P2']}" + ("  (override)" if cls["overridden"] else ""),
    ]
    for q, ev in cls["evidence"].items():
        lines.append(f"  {q}: {ev}")
    lines.append(f"{'eta':<22}{'dim':>4}  {'v(lhs)':>8}  {'v(rhs)':>8}  {'v(ratio)':>8}  status")
    for r in d["body"]:
        lines.append(f"{r['label']:<22}{r['dimension']:>4}  {str(r['lhs']['valuation']):>8}  "
                     f"{str(r['rhs']['valuation']):>8}  {str(r['ratio_valuation']):>8}  {r['status']}"
                     + ("  exact 1" if r["exact_one"] else ""))
        for note in r["notes"]:
            lines.append(f"    {note}")
    c = d["summary"]["counts"]
    verdict = "PASS" if d["summary"]["pass"] else "FAIL"
    lines.append(f"{verdict}: {c['pass']}/{c['total']} passed, {c['fail']} failed, "
                 f"{c['indeterminate']} indeterminate, {c['precision']} precision")
    if d["summary"]["failing"]:
        lines.append("failing: " + ", ".join(d["summary"]["failing"]))
    return "\n".join(lines) + "\n"


def emit_report(report: VerificationReport, fmt: str = "json", path=None) -> int:
    """Write the report (stdout when path is None) and return the exit code."""
    if fmt not in ("json", "text"):
        raise ValueError(f"unknown format {fmt!r}")
    text = render_json(report) if fmt == "json" else render_text(report)
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
    return report.exit_code
