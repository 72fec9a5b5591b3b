"""Classification of the primes of the Kummer base and assembly of the error term.

For q | a with q != p:

* q | N (special):  q is in P1 when delta_q is trivial on the local field
  Q_q(mu_p), i.e. delta_q^f = 1 with f the order of q mod p.
* q not dividing N (good):  q is in P2 when some power X^(f p^J) of the
  module Frobenius fixes a nonzero vector mod p, detected by
  det(X^(f p^J) - I) having positive valuation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .charelem import LocalErrorData, LocalModuleSpec
from .errors import BadKummerBase, BadReduction, PrecisionExhausted, SchemaViolation
from .euler import FormData, companion, module_frobenius_charpoly, prime_factors
from .group import decomposition_data, multiplicative_order
from .padic import DEFAULT_PRECISION, CycElem, PadicScalar, check_prime, is_prime

log = logging.getLogger(__name__)

STABILIZATION_STEPS = 3


@dataclass(frozen=True)
class PrimeClassification:
    a: int
    p: int
    n: int
    P0: tuple[int, ...]
    P1: tuple[int, ...]
    P2: tuple[int, ...]
    evidence: dict = field(default_factory=dict)
    overridden: bool = False

    def __post_init__(self):
        if set(self.P1) & set(self.P2):
            raise ValueError("P1 and P2 overlap")
        if not set(self.P1) | set(self.P2) <= set(self.P0):
            raise ValueError("P1 and P2 must be subsets of P0")

    def tag(self, q: int) -> str:
        if q in self.P1:
            return "P1"
        if q in self.P2:
            return "P2"
        return "P0"


def check_kummer_base(a: int, p: int) -> None:
    if not isinstance(a, int) or a < 2:
        raise BadKummerBase(f"Kummer base must be an integer >= 2, got {a!r}")
    if a % p == 0:
        raise BadKummerBase(f"p = {p} divides a = {a}")
    for q in prime_factors(a):
        if a % q**p == 0:
            raise BadKummerBase(f"a = {a} is divisible by {q}^{p}; it must be p-power-free")


def _mat_pow(X: linalg.Matrix, k: int) -> linalg.Matrix:
    p = X[0][0].prime
    result = linalg.identity(len(X), p, 0, X[0][0].precision)
    base = X
    while k:
        if k & 1:
            result = linalg.mat_mul(result, base)
        base = linalg.mat_mul(base, base)
        k >>= 1
    return result


def fixed_point_valuations(X: linalg.Matrix, f: int, p: int, steps: int = STABILIZATION_STEPS):
    """valuations of det(X^(f p^J) - I) for J = 0 .. steps - 1."""
    out = []
    Y = _mat_pow(X, f)
    ident = linalg.identity(len(X), p, 0, X[0][0].precision)
    for _ in range(steps):
        d = linalg.det(linalg.mat_sub(Y, ident))
        if d.is_zero():
            raise PrecisionExhausted("det(X^k - I) vanishes at working precision")
        v = d.valuation()
        if v >= d.abs_precision:
            raise PrecisionExhausted("fixed-point test inconclusive at working precision")
        out.append(v)
        Y = _mat_pow(Y, p)
    return out


def p2_frobenius_matrix(f: FormData, q: int, p: int, convention: str = "paper-display",
                        precision: int = DEFAULT_PRECISION):
    tr, dt = module_frobenius_charpoly(f, q, p, convention, precision)
    return companion(tr, dt)


def classify_primes(f: FormData, a: int, p: int, n: int, convention: str = "paper-display",
                    precision: int = DEFAULT_PRECISION,
                    override: dict | None = None) -> PrimeClassification:
    check_prime(p)
    check_kummer_base(a, p)
    P0 = tuple(sorted(q for q in prime_factors(a) if q != p))
    P1, P2, evidence = [], [], {}
    for q in P0:
        dd = decomposition_data(q, p, n)
        f_q = multiplicative_order(q, p)
        if f.is_special(q):
            delta = f.delta(q)
            hit = delta ** f_q == 1
            evidence[q] = (f"special, delta={delta:+d}, order of q mod p = {f_q}: "
                           f"delta^f = {delta ** f_q:+d}")
            if hit:
                P1.append(q)
        else:
            X = [[CycElem.from_scalar(x) for x in row]
                 for row in p2_frobenius_matrix(f, q, p, convention, precision)]
            vals = fixed_point_valuations(X, dd.residue_order, p)
            positive = [v > 0 for v in vals]
            if len(set(positive)) != 1:
                raise PrecisionExhausted(f"fixed-point test at q = {q} did not stabilize: {vals}")
            evidence[q] = (f"good, a_q={f.a(q)}, f={dd.residue_order}: "
                           f"v(det(X^(f p^J) - I)) = {[str(Fraction(v)) for v in vals]}")
            if positive[0]:
                P2.append(q)
    if override is not None:
        return _apply_override(a, p, n, P0, P1, P2, evidence, override, f)
    return PrimeClassification(a, p, n, P0, tuple(P1), tuple(P2), evidence)


def _apply_override(a, p, n, P0, P1, P2, evidence, override, f: FormData):
    new1 = tuple(sorted(int(q) for q in override.get("P1", [])))
    new2 = tuple(sorted(int(q) for q in override.get("P2", [])))
    for q in new1 + new2:
        if q not in P0:
            raise SchemaViolation(f"override lists q = {q}, which is not in P0 = {list(P0)}")
    for q in new1:
        if not f.is_special(q):
            raise SchemaViolation(f"override puts good prime {q} in P1")
    for q in new2:
        if f.is_special(q):
            raise SchemaViolation(f"override puts special prime {q} in P2")
    evidence = dict(evidence)
    if (new1, new2) != (tuple(P1), tuple(P2)):
        msg = f"classification override: computed P1={list(P1)} P2={list(P2)}, using P1={list(new1)} P2={list(new2)}"
        log.warning(msg)
        evidence["override"] = msg
    return PrimeClassification(a, p, n, P0, new1, new2, evidence, overridden=True)


@dataclass(frozen=True)
class ErrorTermClass:
    summands: tuple[LocalErrorData, ...]

    def with_frobenius_lift(self, c: int) -> ErrorTermClass:
        return ErrorTermClass(tuple(s.with_frobenius_lift(c) for s in self.summands))

    @property
    def primes(self) -> list[int]:
        return [s.dd.q for s in self.summands]


def _pair(dd, X):
    return (LocalModuleSpec(dd, X, "N"), LocalModuleSpec(dd, X, "M"))


def assemble_error_term(cls: PrimeClassification, f: FormData,
                        convention: str = "paper-display",
                        precision: int = DEFAULT_PRECISION) -> ErrorTermClass:
    p, n = cls.p, cls.n
    summands = []
    for q in sorted(set(cls.P1) | set(cls.P2)):
        dd = decomposition_data(q, p, n)
        if q in cls.P1:
            delta = f.delta(q)
            eigen = [Fraction(delta), Fraction(delta, q)]
            comps = tuple(_pair(dd, ((PadicScalar.from_rational(x, p, precision),),))
                          for x in eigen)
            summands.append(LocalErrorData("P1", dd, comps))
        else:
            X = p2_frobenius_matrix(f, q, p, convention, precision)
            summands.append(LocalErrorData("P2", dd, (_pair(dd, X),)))
    return ErrorTermClass(tuple(summands))


# elliptic curves: just enough to produce weight-2 coefficients

def weierstrass_invariants(curve) -> dict[str, int]:
    a1, a2, a3, a4, a6 = curve
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return {"b2": b2, "b4": b4, "b6": b6, "b8": b8, "c4": c4, "disc": disc}


def count_points(curve, q: int) -> int:
    """Projective points of the Weierstrass cubic over F_q, singular point included."""
    a1, a2, a3, a4, a6 = (c % q for c in curve)
    count = 1
    for x in range(q):
        rhs = (x**3 + a2 * x * x + a4 * x + a6) % q
        for y in range(q):
            if (y * y + a1 * x * y + a3 * y - rhs) % q == 0:
                count += 1
    return count


def count_points_weight2(curve, q: int, allow_multiplicative: bool = False) -> int:
    """a_q = q + 1 - #E(F_q) by exhaustive counting.

    At primes of bad reduction this raises BadReduction unless
    ``allow_multiplicative`` is set and the reduction is multiplicative, in
    which case the same count (singular point included) gives a_q = +-1.
    """
    if len(curve) != 5:
        raise ValueError("expected Weierstrass coefficients [a1, a2, a3, a4, a6]")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    inv = weierstrass_invariants(curve)
    if inv["disc"] == 0:
        raise BadReduction("singular curve")
    if inv["disc"] % q == 0:
        if not allow_multiplicative:
            raise BadReduction(f"q = {q} divides the discriminant {inv['disc']}")
        if inv["c4"] % q == 0:
            raise BadReduction(f"additive reduction at q = {q}")
    return q + 1 - count_points(curve, q)


def conductor_primes(curve) -> list[int]:
    return prime_factors(abs(weierstrass_invariants(curve)["disc"]))

