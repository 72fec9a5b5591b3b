"""Characteristic elements of the local modules at primes of the Kummer base.

For a decomposition group at q with Frobenius F, inertia generator h and
S_q = 1 + h + ... + h^(q-1), a rank-r unramified coefficient module C with
Frobenius matrix X gives two cyclic modules whose annihilators are

    N:  F (x) I_r - 1   (x) X
    M:  F (x) I_r - S_q (x) X

Evaluating at an Artin representation eta means taking the determinant of
the block matrix eta(F) (x) I_r - eta(1 or S_q) (x) X.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import LevelMismatch, NotInvertible
from .group import DecompData, GroupAlgElem, geometric_sum, identity
from .padic import INF, CycElem, PadicScalar
from .reps import ArtinRep, apply_to_algebra_elem


class _Indeterminate:
    """The evaluation is a pole (the determinant vanishes)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Indeterminate"

    def __reduce__(self):
        return (_Indeterminate, ())


Indeterminate = _Indeterminate()

KINDS = ("N", "M")


@dataclass(frozen=True)
class LocalModuleSpec:
    dd: DecompData
    frob_matrix: tuple[tuple[PadicScalar, ...], ...]
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        X = tuple(tuple(row) for row in self.frob_matrix)
        if not X or any(len(row) != len(X) for row in X):
            raise ValueError("Frobenius matrix must be square and non-empty")
        object.__setattr__(self, "frob_matrix", X)
        if linalg.det(self.cyc_matrix()).is_zero():
            raise NotInvertible("Frobenius must be invertible on the coefficient module")

    @classmethod
    def rank_one(cls, dd: DecompData, x, kind: str, precision: int = 40) -> LocalModuleSpec:
        if not isinstance(x, PadicScalar):
            x = PadicScalar.from_rational(x, dd.p, precision)
        return cls(dd, ((x,),), kind)

    @property
    def rank(self) -> int:
        return len(self.frob_matrix)

    def cyc_matrix(self) -> linalg.Matrix:
        return [[CycElem.from_scalar(x) for x in row] for row in self.frob_matrix]

    def with_kind(self, kind: str) -> LocalModuleSpec:
        return LocalModuleSpec(self.dd, self.frob_matrix, kind)

    def with_frobenius_lift(self, c: int) -> LocalModuleSpec:
        from .group import decomposition_data
        dd = decomposition_data(self.dd.q, self.dd.p, self.dd.n, c)
        return LocalModuleSpec(dd, self.frob_matrix, self.kind)


@dataclass(frozen=True)
class Annihilator:
    """sum over terms of (group algebra element) (x) (r x r matrix)."""

    rank: int
    terms: tuple[tuple[GroupAlgElem, tuple], ...]

    def evaluate_at(self, eta: ArtinRep) -> linalg.Matrix:
        total = None
        for g_part, mat in self.terms:
            block = linalg.kron(apply_to_algebra_elem(eta, g_part), [list(r) for r in mat])
            total = block if total is None else linalg.mat_add(total, block)
        return total


@dataclass(frozen=True)
class EvalResult:
    value: object                     # CycElem or Indeterminate
    valuation: object                 # Fraction, INF for zero, None when Indeterminate
    cancelled_factors: tuple[str, ...] = field(default=())

    @classmethod
    def of(cls, value, cancelled=()) -> EvalResult:
        if value is Indeterminate:
            return cls(Indeterminate, None, tuple(cancelled))
        return cls(value, value.valuation(), tuple(cancelled))

    @property
    def is_indeterminate(self) -> bool:
        return self.value is Indeterminate


def _group_part(spec: LocalModuleSpec, precision: int) -> GroupAlgElem:
    dd = spec.dd
    if spec.kind == "N":
        return GroupAlgElem.of(identity(dd.p, dd.n), 1, precision)
    return geometric_sum(dd, precision)


def annihilator(spec: LocalModuleSpec, precision: int = 40) -> Annihilator:
    dd = spec.dd
    r = spec.rank
    ident = tuple(tuple(row) for row in linalg.identity(r, dd.p, 0, precision))
    X = spec.cyc_matrix()
    neg_X = tuple(tuple(-x for x in row) for row in X)
    frob = GroupAlgElem.of(dd.frob, 1, precision)
    return Annihilator(r, ((frob, ident), (_group_part(spec, precision), neg_X)))


def _check_levels(spec: LocalModuleSpec, eta: ArtinRep):
    if (spec.dd.p, spec.dd.n) != (eta.p, eta.n):
        raise LevelMismatch(
            f"module at p={spec.dd.p}, n={spec.dd.n} but representation at "
            f"p={eta.p}, n={eta.n}")


def evaluate(spec: LocalModuleSpec, eta: ArtinRep) -> EvalResult:
    """det(eta(F) (x) I_r - eta(1 or S_q) (x) X); Indeterminate if it vanishes."""
    _check_levels(spec, eta)
    d = linalg.det(annihilator(spec, eta.precision).evaluate_at(eta))
    return EvalResult.of(Indeterminate if d.is_zero() else d)


def closed_form(spec: LocalModuleSpec, eta: ArtinRep) -> CycElem:
    """psi(F) - x for kind N and psi(F) - q x for kind M (rank one, 1-dim psi)."""
    _check_levels(spec, eta)
    if spec.rank != 1 or eta.dimension != 1:
        raise ValueError("closed form only for rank-one modules and characters")
    x = CycElem.from_scalar(spec.frob_matrix[0][0])
    fv = eta.value(spec.dd.frob)
    return fv - x if spec.kind == "N" else fv - x * spec.dd.q


def frobenius_orbits(p: int, n: int, q: int) -> list[list[int]]:
    """Orbits of multiplication by q on (Z/p^n)^x."""
    mod = p**n
    seen, orbits = set(), []
    for u in range(1, mod):
        if u % p == 0 or u in seen:
            continue
        orbit, c = [], u
        while c not in seen:
            seen.add(c)
            orbit.append(c)
            c = c * q % mod
        orbits.append(orbit)
    return orbits


def cycle_product(p: int, n: int, q: int, orbit: list[int], precision: int = 40) -> CycElem:
    """prod over c in the orbit of (zeta^(qc) - 1) / (zeta^c - 1), zeta = zeta_{p^n}."""
    num = CycElem.one(p, n, precision)
    den = CycElem.one(p, n, precision)
    for c in orbit:
        num = num * (CycElem.zeta(p, n, q * c, precision) - 1)
        den = den * (CycElem.zeta(p, n, c, precision) - 1)
    return num / den


# local error term

@dataclass(frozen=True)
class LocalErrorData:
    """One summand of the error term: (N, M) spec pairs sharing a decomposition group."""

    q_class: str
    dd: DecompData
    components: tuple[tuple[LocalModuleSpec, LocalModuleSpec], ...]

    def with_frobenius_lift(self, c: int) -> LocalErrorData:
        return LocalErrorData(self.q_class, self.components[0][0].with_frobenius_lift(c).dd,
                              tuple((a.with_frobenius_lift(c), b.with_frobenius_lift(c))
                                    for a, b in self.components))


def _describe(c: CycElem) -> str:
    if c.is_scalar():
        v = c.coeffs[0].lift()
        return f"eta(F) - ({v})"
    return f"eta(F) - {c!r}"


def _linear_constant(spec: LocalModuleSpec, eta: ArtinRep) -> CycElem:
    g_part = _group_part(spec, eta.precision)
    coeff = apply_to_algebra_elem(eta, g_part)[0][0]
    return coeff * CycElem.from_scalar(spec.frob_matrix[0][0])


def _ratio_rank_one_character(data: LocalErrorData, eta: ArtinRep) -> EvalResult:
    fv = eta.value(data.dd.frob)
    num_consts = [_linear_constant(n_spec, eta) for n_spec, _ in data.components]
    den_consts = [_linear_constant(m_spec, eta) for _, m_spec in data.components]
    cancelled = []
    for c in list(num_consts):
        for k, d in enumerate(den_consts):
            if c == d:
                cancelled.append(_describe(c))
                num_consts.remove(c)
                del den_consts[k]
                break
    num = CycElem.one(eta.p, eta.n, eta.precision)
    for c in num_consts:
        num = num * (fv - c)
    den = CycElem.one(eta.p, eta.n, eta.precision)
    for d in den_consts:
        den = den * (fv - d)
    if den.is_zero():
        return EvalResult.of(Indeterminate, cancelled)
    if num.is_zero():
        return EvalResult(num, INF, tuple(cancelled))
    return EvalResult.of(num / den, cancelled)


def _pencil(spec: LocalModuleSpec, eta: ArtinRep) -> list[CycElem]:
    """det(y eta(F) (x) I - eta(1 or S) (x) X) / det(eta(F))^r as a polynomial in y."""
    dd = spec.dd
    g_part = GroupAlgElem.of(dd.frob.inverse(), 1, eta.precision) * _group_part(spec, eta.precision)
    C = linalg.kron(apply_to_algebra_elem(eta, g_part), spec.cyc_matrix())
    return linalg.charpoly(C)


def _ratio_by_pencil(data: LocalErrorData, eta: ArtinRep) -> EvalResult:
    """Deform F to y F, cancel common factors (y - 1), and evaluate at y = 1."""
    one = CycElem.one(eta.p, eta.n, eta.precision)
    num, den = [one], [one]
    for n_spec, m_spec in data.components:
        num = linalg.poly_mul(num, _pencil(n_spec, eta))
        den = linalg.poly_mul(den, _pencil(m_spec, eta))
    cancelled = []
    while linalg.poly_eval(num, one).is_zero() and linalg.poly_eval(den, one).is_zero():
        num = linalg.poly_divide_linear(num, one)
        den = linalg.poly_divide_linear(den, one)
        cancelled.append("y - 1")
    nv, dv = linalg.poly_eval(num, one), linalg.poly_eval(den, one)
    if dv.is_zero():
        return EvalResult.of(Indeterminate, cancelled)
    if nv.is_zero():
        return EvalResult(nv, INF, tuple(cancelled))
    return EvalResult.of(nv / dv, cancelled)


def local_error_eval(q_class: str, local_data: LocalErrorData, eta: ArtinRep) -> EvalResult:
    """eta(N) / eta(M) over the components of one error-term summand."""
    if q_class != local_data.q_class:
        raise ValueError(f"class tag {q_class} does not match the data ({local_data.q_class})")
    rank_one = all(n.rank == 1 for n, _ in local_data.components)
    if eta.dimension == 1 and rank_one:
        return _ratio_rank_one_character(local_data, eta)
    num = den = None
    for n_spec, m_spec in local_data.components:
        a, b = evaluate(n_spec, eta), evaluate(m_spec, eta)
        if a.is_indeterminate or b.is_indeterminate:
            return _ratio_by_pencil(local_data, eta)
        num = a.value if num is None else num * a.value
        den = b.value if den is None else den * b.value
    return EvalResult.of(num / den)


def rational_valuation(v) -> str:
    """Printable form of a valuation."""
    if v is None:
        return "indeterminate"
    if v == INF:
        return "inf"
    return str(Fraction(v))
