"""Local data of a modular form and its Euler factors against Artin representations.

Two normalizations of the twisted Frobenius roots are supported:

``paper-display`` (default)
    alpha + beta = a_q q^(1 - k/2), alpha beta = q.  The error-term module
    carries Frobenius eigenvalues alpha/q, beta/q.
``paper-text``
    alpha + beta = a_q q^(-k/2), alpha beta = q^(-1), with module eigenvalues
    q alpha, q beta.  Kept so that the acceptance suite can show it fails.

Euler factors are evaluated at the contragredient value eta*(F) = psi(F)^(-1):

    good q:    1 - s psi*(F)/q + t psi*(F)^2/q^2
    special q: 1 - delta psi*(F)/q
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import (DivisionByIndeterminate, InconsistentSpecialData, MissingCoefficient,
                     SchemaViolation, UnsupportedPrime)
from .group import decomposition_data
from .padic import DEFAULT_PRECISION, CycElem, PadicScalar, is_prime
from .reps import ArtinRep, contragredient, inertia_invariants_dim

CONVENTIONS = ("paper-display", "paper-text")


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            if d not in out:
                out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FormData:
    label: str
    weight: int
    level: int
    coefficients: dict = field(default_factory=dict)   # q -> a_q
    special: dict = field(default_factory=dict)        # q | N -> delta_q
    p: int | None = None

    def __post_init__(self):
        k, N = self.weight, self.level
        if not isinstance(k, int) or k < 2 or k % 2:
            raise SchemaViolation(f"weight must be an even integer >= 2, got {k!r}")
        if not isinstance(N, int) or N < 1 or not is_squarefree(N):
            raise SchemaViolation(f"level must be a square-free positive integer, got {N!r}")
        coeffs = {int(q): int(a) for q, a in self.coefficients.items()}
        special = {int(q): int(d) for q, d in self.special.items()}
        for q in list(coeffs) + list(special):
            if not is_prime(q):
                raise SchemaViolation(f"coefficient index {q} is not prime")
        for q, d in special.items():
            if N % q:
                raise SchemaViolation(f"special prime {q} does not divide the level {N}")
            if d not in (1, -1):
                raise SchemaViolation(f"delta_{q} must be +1 or -1, got {d}")
        for q in prime_factors(N):
            expected_scale = q ** (k // 2 - 1)
            if q in coeffs:
                a = coeffs[q]
                if q in special:
                    if a != special[q] * expected_scale:
                        raise InconsistentSpecialData(
                            f"a_{q} = {a} but delta_{q} q^(k/2-1) = {special[q] * expected_scale}")
                elif a in (expected_scale, -expected_scale):
                    special[q] = a // expected_scale
                else:
                    raise InconsistentSpecialData(
                        f"a_{q} = {a} is not +-{expected_scale} at a prime of the level")
        if self.p is not None and N % self.p == 0:
            raise SchemaViolation(f"p = {self.p} divides the level {N}")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "special", special)

    def with_prime(self, p: int) -> FormData:
        return replace(self, p=p)

    def a(self, q: int) -> int:
        try:
            return self.coefficients[q]
        except KeyError:
            raise MissingCoefficient(f"a_{q} is not available for form {self.label}") from None

    def delta(self, q: int) -> int:
        try:
            return self.special[q]
        except KeyError:
            raise MissingCoefficient(f"delta_{q} is not available for form {self.label}") from None

    def is_special(self, q: int) -> bool:
        return self.level % q == 0


def _working_prime(f: FormData, p: int | None) -> int:
    p = p if p is not None else f.p
    if p is None:
        raise ValueError("no working prime: pass p or set FormData.p")
    return p


def _check_q(q: int, p: int):
    if q == p:
        raise UnsupportedPrime(f"Euler factors at q = p = {p} are not modelled")


def twisted_frobenius_data(f: FormData, q: int, p: int | None = None,
                           convention: str = "paper-display",
                           precision: int = DEFAULT_PRECISION) -> tuple[PadicScalar, PadicScalar]:
    """(s, t) = (alpha + beta, alpha beta) of the twisted Frobenius roots at a good q."""
    p = _working_prime(f, p)
    _check_q(q, p)
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown twist convention {convention!r}")
    a = f.a(q)
    k = f.weight
    if convention == "paper-display":
        s = Fraction(a) * Fraction(q) ** (1 - k // 2)
        t = Fraction(q)
    else:
        s = Fraction(a) * Fraction(q) ** (-(k // 2))
        t = Fraction(1, q)
    return PadicScalar.from_rational(s, p, precision), PadicScalar.from_rational(t, p, precision)


def module_frobenius_charpoly(f: FormData, q: int, p: int | None = None,
                              convention: str = "paper-display",
                              precision: int = DEFAULT_PRECISION) -> tuple[PadicScalar, PadicScalar]:
    """(trace, det) of the Frobenius matrix on the rank-2 error-term module at a good q."""
    s, t = twisted_frobenius_data(f, q, p, convention, precision)
    if convention == "paper-display":
        return s / q, t / (q * q)
    return s * q, t * (q * q)


def companion(trace: PadicScalar, det: PadicScalar) -> tuple[tuple[PadicScalar, ...], ...]:
    """Companion matrix of Y^2 - trace Y + det."""
    zero = trace * 0
    one = zero + 1
    return ((zero, -det), (one, trace))


@dataclass(frozen=True)
class EulerFactorValue:
    value: CycElem
    degree: int


def euler_factor(f: FormData, eta: ArtinRep, q: int, convention: str = "paper-display",
                 c: int = 0) -> EulerFactorValue:
    p = eta.p
    _check_q(q, p)
    if f.p is not None and f.p != p:
        raise ValueError(f"form is set up for p = {f.p}, representation for p = {p}")
    dd = decomposition_data(q, p, eta.n, c)
    one = CycElem.one(p, eta.n, eta.precision)
    if inertia_invariants_dim(eta, dd) == 0:
        return EulerFactorValue(one, 0)
    if eta.dimension != 1:
        raise ValueError(f"{eta} has inertia invariants but is not one-dimensional")
    fstar = contragredient(eta).value(dd.frob)
    qinv = CycElem.from_rational(Fraction(1, q), p, 0, eta.precision)
    if f.is_special(q):
        return EulerFactorValue(one - fstar * qinv * f.delta(q), 1)
    s, t = twisted_frobenius_data(f, q, p, convention, eta.precision)
    s, t = CycElem.from_scalar(s), CycElem.from_scalar(t)
    u = fstar * qinv
    return EulerFactorValue(one - s * u + t * u * u, 2)


def euler_ratio_product(f: FormData, eta: ArtinRep, primes, convention: str = "paper-display",
                        c: int = 0) -> CycElem:
    """prod over q of P_q(f, eta) / P_q(f, eta*)."""
    dual = contragredient(eta)
    result = CycElem.one(eta.p, eta.n, eta.precision)
    for q in primes:
        num = euler_factor(f, eta, q, convention, c).value
        den = euler_factor(f, dual, q, convention, c).value
        if den.is_zero():
            raise DivisionByIndeterminate(
                f"Euler factor of {dual} at q = {q} vanishes at working precision")
        result = result * num / den
    return result
