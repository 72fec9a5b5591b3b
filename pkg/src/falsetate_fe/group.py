"""The finite-level false-Tate group G_n = (Z/p^n)^x semidirect Z/p^n.

An element (u, b) acts on zeta_{p^n} by zeta -> zeta^u and on a^{1/p^n} by
multiplication with zeta^b, which gives the law

    (u1, b1) * (u2, b2) = (u1 u2, b1 + u1 b2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import LevelMismatch, QEqualsP
from .padic import CycElem, check_prime, is_prime


@dataclass(frozen=True, order=True)
class GroupElem:
    u: int
    b: int
    p: int
    n: int

    def __post_init__(self):
        mod = self.p**self.n
        object.__setattr__(self, "u", self.u % mod)
        object.__setattr__(self, "b", self.b % mod)
        if self.u % self.p == 0:
            raise ValueError(f"u = {self.u} is not a unit mod {self.p}")

    def _check(self, other: GroupElem):
        if (self.p, self.n) != (other.p, other.n):
            raise LevelMismatch(
                f"cannot combine elements of G_{self.n}(p={self.p}) and G_{other.n}(p={other.p})")

    def __mul__(self, other: GroupElem) -> GroupElem:
        self._check(other)
        return GroupElem(self.u * other.u, self.b + self.u * other.b, self.p, self.n)

    def inverse(self) -> GroupElem:
        ui = pow(self.u, -1, self.p**self.n)
        return GroupElem(ui, -ui * self.b, self.p, self.n)

    def __pow__(self, k: int) -> GroupElem:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = identity(self.p, self.n)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cyclotomic_character(self) -> int:
        return self.u

    def is_identity(self) -> bool:
        return self.u == 1 and self.b == 0

    def reduce(self, n: int) -> GroupElem:
        """Image under the projection G_self.n -> G_n."""
        return GroupElem(self.u, self.b, self.p, n)


def compose(*elems: GroupElem) -> GroupElem:
    result = elems[0]
    for g in elems[1:]:
        result = result * g
    return result


def identity(p: int, n: int) -> GroupElem:
    return GroupElem(1, 0, p, n)


def group_order(p: int, n: int) -> int:
    return p**n * (p - 1) * p ** (n - 1)


def units(modulus: int) -> list[int]:
    return [u for u in range(1, modulus) if math.gcd(u, modulus) == 1]


def elements(p: int, n: int):
    mod = p**n
    for u in units(mod):
        for b in range(mod):
            yield GroupElem(u, b, p, n)


def multiplicative_order(q: int, modulus: int) -> int:
    """Order of q in (Z/modulus)^x, by brute force."""
    if math.gcd(q, modulus) != 1:
        raise ValueError(f"{q} is not a unit mod {modulus}")
    x, k = q % modulus, 1
    while x != 1 % modulus:
        x = x * q % modulus
        k += 1
    return k


def conjugacy_classes(p: int, n: int) -> list[list[GroupElem]]:
    seen: set[GroupElem] = set()
    classes = []
    all_elems = list(elements(p, n))
    for g in all_elems:
        if g in seen:
            continue
        cls = sorted({h * g * h.inverse() for h in all_elems})
        seen.update(cls)
        classes.append(cls)
    return classes


@dataclass(frozen=True)
class DecompData:
    """Decomposition group at q: Frobenius (q, c) and inertia generator (1, 1)."""

    q: int
    p: int
    n: int
    frob: GroupElem
    inertia_gen: GroupElem
    residue_order: int


def decomposition_data(q: int, p: int, n: int, c: int = 0) -> DecompData:
    """``c`` selects the Frobenius lift (q, c); the default lift is (q, 0)."""
    check_prime(p)
    if q == p:
        raise QEqualsP(f"q = p = {p}: the decomposition group at p is not modelled")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    return DecompData(
        q=q,
        p=p,
        n=n,
        frob=GroupElem(q, c, p, n),
        inertia_gen=GroupElem(1, 1, p, n),
        residue_order=multiplicative_order(q, p**n),
    )


@dataclass(frozen=True)
class GroupAlgElem:
    """A finite formal sum of group elements with cyclotomic coefficients."""

    p: int
    n: int
    terms: dict = field(default_factory=dict)

    @classmethod
    def from_terms(cls, p: int, n: int, pairs) -> GroupAlgElem:
        terms: dict[GroupElem, CycElem] = {}
        for g, c in pairs:
            if (g.p, g.n) != (p, n):
                raise LevelMismatch("group element from a different level")
            terms[g] = terms[g] + c if g in terms else c
        return cls(p, n, {g: c for g, c in terms.items() if not c.is_zero()})

    @classmethod
    def of(cls, g: GroupElem, coeff=1, precision: int | None = None) -> GroupAlgElem:
        if not isinstance(coeff, CycElem):
            kw = {} if precision is None else {"precision": precision}
            coeff = CycElem.from_rational(coeff, g.p, 0, **kw)
        return cls.from_terms(g.p, g.n, [(g, coeff)])

    def _check(self, other: GroupAlgElem):
        if (self.p, self.n) != (other.p, other.n):
            raise LevelMismatch("group algebra elements from different levels")

    def __add__(self, other: GroupAlgElem) -> GroupAlgElem:
        self._check(other)
        return GroupAlgElem.from_terms(self.p, self.n,
                                       list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> GroupAlgElem:
        return GroupAlgElem(self.p, self.n, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: GroupAlgElem) -> GroupAlgElem:
        return self + (-other)

    def __mul__(self, other) -> GroupAlgElem:
        if isinstance(other, GroupAlgElem):
            self._check(other)
            return GroupAlgElem.from_terms(
                self.p, self.n,
                [(g * h, a * b) for g, a in self.terms.items() for h, b in other.terms.items()])
        return GroupAlgElem.from_terms(self.p, self.n,
                                       [(g, c * other) for g, c in self.terms.items()])

    def __rmul__(self, other) -> GroupAlgElem:
        return self * other

    def coefficient(self, g: GroupElem):
        return self.terms.get(g)

    def support(self) -> list[GroupElem]:
        return sorted(self.terms)


def geometric_sum(dd: DecompData, precision: int | None = None) -> GroupAlgElem:
    """S_q = 1 + h + ... + h^(q-1) with h the inertia generator."""
    one = CycElem.one(dd.p, 0) if precision is None else CycElem.one(dd.p, 0, precision)
    h = dd.inertia_gen
    return GroupAlgElem.from_terms(dd.p, dd.n, [(h**i, one) for i in range(dd.q)])
