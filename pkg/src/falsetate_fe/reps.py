"""Irreducible Artin representations of the finite-level false-Tate group.

Every irreducible of G_n is either a character psi of the cyclotomic
quotient (Z/p^n)^x, or theta_m psi with 1 <= m <= n, where theta_m is
induced from a character of exact order p^m of the Kummer subgroup Z/p^n.

Characters of (Z/p^n)^x are written in Teichmuller / (1+p)-adic log
coordinates:

    psi_{i,j}(u) = omega(u)^i * zeta_{p^(n-1)}^(j e(u)),   u = omega(u) (1+p)^e(u).

theta_m is realized on the basis e_w, w in (Z/p^m)^x, with coset
representatives (w, 0):

    theta_m((v, c)) e_w = zeta_{p^m}^((v w)^(-1) c) e_{v w}.

All matrices are monomial; ArtinRep stores them as (permutation, scalars)
and only expands to dense form on request.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .errors import CompletenessFailure, LevelMismatch
from .group import (DecompData, GroupAlgElem, GroupElem, conjugacy_classes,
                    group_order, units)
from .padic import DEFAULT_PRECISION, CycElem, check_prime, teichmuller


@dataclass(frozen=True, order=True)
class RepLabel:
    tame: int
    wild: int
    theta: int = 0

    def __str__(self):
        psi = f"psi({self.tame},{self.wild})"
        return psi if self.theta == 0 else f"theta_{self.theta}*{psi}"

    @classmethod
    def parse(cls, text: str) -> RepLabel:
        """Inverse of str(): 'psi(i,j)', 'theta_m*psi(i,j)', 'theta_m' or 'trivial'."""
        t = text.replace(" ", "")
        if t == "trivial":
            return cls(0, 0, 0)
        m = re.fullmatch(r"(?:theta_(\d+))?\*?(?:psi\((-?\d+),(-?\d+)\))?", t)
        if not t or m is None or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"cannot parse representation label {text!r}")
        theta = int(m.group(1)) if m.group(1) else 0
        tame = int(m.group(2)) if m.group(2) else 0
        wild = int(m.group(3)) if m.group(3) else 0
        return cls(tame, wild, theta)

    def canonical(self, p: int, n: int) -> RepLabel:
        """The label of the isomorphism class (theta_m psi only sees psi on 1 + p^m)."""
        if self.theta == 0:
            return RepLabel(self.tame % (p - 1), self.wild % p ** (n - 1), 0)
        return RepLabel(0, self.wild % p ** (n - self.theta), self.theta)

    def dual(self, p: int, n: int) -> RepLabel:
        return RepLabel(-self.tame, -self.wild, self.theta).canonical(p, n)

    def inflate(self, p: int) -> RepLabel:
        """Label of the same representation viewed on G_{n+1}."""
        return RepLabel(self.tame, self.wild * p, self.theta)


@lru_cache(maxsize=None)
def _unit_coordinates(p: int, n: int, precision: int) -> dict[int, tuple]:
    """u -> (omega(u) at ``precision``, e(u) mod p^(n-1))."""
    mod = p**n
    wild_order = p ** (n - 1)
    log_table = {}
    x = 1
    for e in range(wild_order):
        log_table[x] = e
        x = x * (1 + p) % mod
    coords = {}
    for u in units(mod):
        w = teichmuller(u, p, precision)
        one_unit = u * pow(w.residue % mod, -1, mod) % mod
        coords[u] = (w, log_table[one_unit])
    return coords


class ArtinRep:
    """An irreducible representation of G_n with values in Q_p(zeta_{p^n})."""

    def __init__(self, p: int, n: int, label: RepLabel, precision: int = DEFAULT_PRECISION,
                 _dual_of: ArtinRep | None = None):
        check_prime(p)
        if n < 1:
            raise ValueError("level must be >= 1")
        if not 0 <= label.theta <= n:
            raise ValueError(f"theta level {label.theta} outside 0..{n}")
        self.p = p
        self.n = n
        self.precision = precision
        self._dual_of = _dual_of
        self.label = label if _dual_of is None else _dual_of.label.dual(p, n)
        m = self.label.theta if _dual_of is None else _dual_of.label.theta
        self.theta = m
        self.dimension = 1 if m == 0 else (p - 1) * p ** (m - 1)
        self._basis = [1] if m == 0 else units(p**m)
        self._index = {w: k for k, w in enumerate(self._basis)}
        self._psi_cache: dict[int, CycElem] = {}
        self._mono_cache: dict[GroupElem, tuple] = {}
        self._char_cache: dict[GroupElem, CycElem] = {}

    def __repr__(self):
        tag = "*" if self._dual_of is not None else ""
        return f"ArtinRep({self.label}{tag}, p={self.p}, n={self.n}, dim={self.dimension})"

    @property
    def is_contragredient(self) -> bool:
        return self._dual_of is not None

    def psi(self, u: int) -> CycElem:
        """The 1-dimensional factor psi_{i,j} evaluated at a unit u mod p^n."""
        if self._dual_of is not None:
            return self._dual_of.psi(u).inverse()
        u %= self.p**self.n
        val = self._psi_cache.get(u)
        if val is None:
            omega, e = _unit_coordinates(self.p, self.n, self.precision)[u]
            root = CycElem.zeta(self.p, self.n, self.p * self.label.wild * e, self.precision)
            val = root * (omega ** (self.label.tame % (self.p - 1)))
            self._psi_cache[u] = val
        return val

    def monomial(self, g: GroupElem) -> tuple[list[int], list[CycElem]]:
        """(targets, scalars) with matrix_of(g) e_k = scalars[k] e_{targets[k]}."""
        if (g.p, g.n) != (self.p, self.n):
            raise LevelMismatch(f"{g} is not an element of G_{self.n} for p={self.p}")
        cached = self._mono_cache.get(g)
        if cached is not None:
            return cached
        if self._dual_of is not None:
            src = self._dual_of
            targets, _ = src.monomial(g)
            inv_targets, inv_scalars = src.monomial(g.inverse())
            # transpose(rho(g^-1)): e_k -> (rho(g^-1) entry at [k, target]) e_target
            scalars = [None] * self.dimension
            for k in range(self.dimension):
                t = targets[k]
                assert inv_targets[t] == k
                scalars[k] = inv_scalars[t]
            result = (targets, scalars)
        elif self.theta == 0:
            result = ([0], [self.psi(g.u)])
        else:
            p, n, m = self.p, self.n, self.theta
            mod_m = p**m
            shift = p ** (n - m)
            chi = self.psi(g.u)
            targets, scalars = [], []
            for w in self._basis:
                vw = g.u * w % mod_m
                expo = pow(vw, -1, mod_m) * g.b % mod_m
                targets.append(self._index[vw])
                scalars.append(chi * CycElem.zeta(p, n, shift * expo, self.precision))
            result = (targets, scalars)
        self._mono_cache[g] = result
        return result

    def matrix_of(self, g: GroupElem) -> linalg.Matrix:
        targets, scalars = self.monomial(g)
        zero = CycElem.zero(self.p, self.n, self.precision)
        M = [[zero] * self.dimension for _ in range(self.dimension)]
        for k, (t, s) in enumerate(zip(targets, scalars)):
            M[t][k] = s
        return M

    def character(self, g: GroupElem) -> CycElem:
        val = self._char_cache.get(g)
        if val is None:
            targets, scalars = self.monomial(g)
            val = CycElem.zero(self.p, self.n, self.precision)
            for k, t in enumerate(targets):
                if t == k:
                    val = val + scalars[k]
            self._char_cache[g] = val
        return val

    def value(self, g: GroupElem) -> CycElem:
        """The scalar of a 1-dimensional representation."""
        if self.dimension != 1:
            raise ValueError(f"{self} is not 1-dimensional")
        return self.monomial(g)[1][0]


def contragredient(eta: ArtinRep) -> ArtinRep:
    if eta._dual_of is not None:
        return eta._dual_of
    return ArtinRep(eta.p, eta.n, eta.label, eta.precision, _dual_of=eta)


def _character_key(rep: ArtinRep, class_reps, digits: int) -> tuple:
    return tuple(rep.character(g).key(digits) for g in class_reps)


@lru_cache(maxsize=None)
def class_representatives(p: int, n: int) -> tuple[tuple[GroupElem, int], ...]:
    return tuple((cls[0], len(cls)) for cls in conjugacy_classes(p, n))


def enumerate_irreps(p: int, n: int, precision: int = DEFAULT_PRECISION) -> list[ArtinRep]:
    check_prime(p)
    reps = [ArtinRep(p, n, RepLabel(i, j, 0), precision)
            for i in range(p - 1) for j in range(p ** (n - 1))]
    class_reps = [g for g, _ in class_representatives(p, n)]
    digits = precision // 2
    for m in range(1, n + 1):
        seen = set()
        for i in range(p - 1):
            for j in range(p ** (n - 1)):
                cand = ArtinRep(p, n, RepLabel(i, j, m), precision)
                key = _character_key(cand, class_reps, digits)
                if key in seen:
                    continue
                seen.add(key)
                reps.append(cand)
    total = sum(r.dimension ** 2 for r in reps)
    if total != group_order(p, n):
        raise CompletenessFailure(
            f"sum of squared dimensions {total} != |G_{n}| = {group_order(p, n)}")
    return reps


def character_inner_product(a: ArtinRep, b: ArtinRep) -> CycElem:
    """sum over g of chi_a(g) chi_b(g^-1), accumulated class by class."""
    acc = CycElem.zero(a.p, a.n, a.precision)
    for g, size in class_representatives(a.p, a.n):
        acc = acc + a.character(g) * b.character(g.inverse()) * size
    return acc


def inertia_invariants_dim(eta: ArtinRep, dd: DecompData) -> int:
    """Dimension of the subspace fixed by the inertia generator (1, 1)."""
    M = eta.matrix_of(dd.inertia_gen)
    ident = linalg.identity(eta.dimension, eta.p, eta.n, eta.precision)
    return linalg.kernel_dim(linalg.mat_sub(M, ident))


def complex_conjugation_signs(eta: ArtinRep) -> tuple[int, int]:
    c = GroupElem(-1, 0, eta.p, eta.n)
    M = eta.matrix_of(c)
    ident = linalg.identity(eta.dimension, eta.p, eta.n, eta.precision)
    d_plus = linalg.kernel_dim(linalg.mat_sub(M, ident))
    d_minus = linalg.kernel_dim(linalg.mat_add(M, ident))
    return d_plus, d_minus


def apply_to_algebra_elem(eta: ArtinRep, x: GroupAlgElem) -> linalg.Matrix:
    if (x.p, x.n) != (eta.p, eta.n):
        raise LevelMismatch("group algebra element and representation live on different levels")
    d = eta.dimension
    out = linalg.zeros(d, d, eta.p, eta.n, eta.precision)
    for g, coeff in x.terms.items():
        targets, scalars = eta.monomial(g)
        for k, (t, s) in enumerate(zip(targets, scalars)):
            out[t][k] = out[t][k] + s * coeff
    return out
