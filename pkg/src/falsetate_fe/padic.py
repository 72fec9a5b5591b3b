"""Exact arithmetic in Q_p and in the cyclotomic fields Q_p(zeta_{p^m}).

Elements carry an integer numerator (or a vector of them, in the power
basis 1, zeta, ..., zeta^(phi-1)), a common denominator exponent ``e`` and
the number ``N`` of p-adic digits to which the numerator is known.  The
value is ``numerator * p^(-e)`` and it is determined modulo
``p^(N - e)``; ``N - e`` is the absolute precision.

All values are immutable.  p = 2 is rejected everywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import NotInvertible, PrecisionExhausted

DEFAULT_PRECISION = 40
INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        raise ValueError("p = 2 is not supported; the prime must be odd")
    return p


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _split_rational(x, p: int) -> tuple[int, int, int]:
    """Write a nonzero rational as (unit numerator, unit denominator, v)."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return num, den, v


def _strip(coeffs: list[int], e: int, prec: int, p: int):
    while e > 0 and all(c % p == 0 for c in coeffs):
        coeffs = [c // p for c in coeffs]
        e -= 1
        prec -= 1
    return coeffs, e, prec


def _exact_precision(x, c) -> int:
    """Absolute precision at which to embed an exact rational c next to x.

    Chosen so that c carries at least as many significant digits as x and is
    known at least as far as x; exact constants then never limit a result.
    """
    v = 0
    if c:
        f = Fraction(c)
        v = vp(f.numerator, x.prime) - vp(f.denominator, x.prime)
    return max(x.abs_precision, x.precision + v, 1)


class PadicScalar:
    """An element of Q_p known to finite precision."""

    __slots__ = ("prime", "precision", "residue", "denom_exp")

    def __init__(self, prime: int, precision: int, residue: int, denom_exp: int = 0):
        if denom_exp < 0:
            residue *= prime ** (-denom_exp)
            precision -= denom_exp
            denom_exp = 0
        (residue,), denom_exp, precision = _strip([residue], denom_exp, precision, prime)
        if precision <= 0:
            raise PrecisionExhausted(f"p-adic scalar lost all precision (p={prime})")
        self.prime = prime
        self.precision = precision
        self.residue = residue % prime**precision
        self.denom_exp = denom_exp

    @classmethod
    def from_rational(cls, x, p: int, precision: int = DEFAULT_PRECISION) -> PadicScalar:
        """Embed an int or Fraction; ``precision`` is the absolute precision."""
        if x == 0:
            return cls(p, precision, 0)
        num, den, v = _split_rational(x, p)
        e = max(-v, 0)
        digits = precision + e
        unit = num * pow(den, -1, p**digits)
        return cls(p, digits, unit * p ** max(v, 0), e)

    @property
    def abs_precision(self) -> int:
        return self.precision - self.denom_exp

    def is_zero(self) -> bool:
        return self.residue == 0

    def valuation(self):
        if self.residue == 0:
            return INF
        return vp(self.residue, self.prime) - self.denom_exp

    def _coerce(self, other) -> PadicScalar:
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise ValueError("prime mismatch")
            return other
        if isinstance(other, (int, Rational)):
            return PadicScalar.from_rational(other, self.prime, _exact_precision(self, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.prime
        e = max(self.denom_exp, other.denom_exp)
        s1, s2 = e - self.denom_exp, e - other.denom_exp
        prec = min(self.precision + s1, other.precision + s2)
        return PadicScalar(p, prec, self.residue * p**s1 + other.residue * p**s2, e)

    __radd__ = __add__

    def __neg__(self):
        return PadicScalar(self.prime, self.precision, -self.residue, self.denom_exp)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # (A + dA)(B + dB) - AB lies in p^min(N_A + v(B), N_B + v(A))
        t1 = vp(self.residue, self.prime) if self.residue else self.precision
        t2 = vp(other.residue, other.prime) if other.residue else other.precision
        return PadicScalar(
            self.prime,
            min(self.precision + t2, other.precision + t1),
            self.residue * other.residue,
            self.denom_exp + other.denom_exp,
        )

    __rmul__ = __mul__

    def inverse(self) -> PadicScalar:
        if self.residue == 0:
            raise NotInvertible("inverse of a p-adic zero")
        p = self.prime
        v = vp(self.residue, p)
        unit = self.residue // p**v
        digits = self.precision - v
        if digits <= 0:
            raise PrecisionExhausted("no digits left to invert")
        inv = pow(unit, -1, p**digits)
        return PadicScalar(p, digits, inv, v - self.denom_exp)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = PadicScalar(self.prime, self.precision, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def lift(self) -> Fraction:
        """Smallest rational congruent to self (rational reconstruction).

        Falls back to residue / p^e when no rational with numerator and
        denominator below sqrt(p^N / 2) exists.
        """
        mod = self.prime**self.precision
        bound = math.isqrt(mod // 2)
        r0, r1, s0, s1 = mod, self.residue, 0, 1
        while r1 > bound:
            k = r0 // r1
            r0, r1 = r1, r0 - k * r1
            s0, s1 = s1, s0 - k * s1
        if s1 != 0 and abs(s1) <= bound and math.gcd(s1, self.prime) == 1:
            return Fraction(r1, s1 * self.prime**self.denom_exp)
        return Fraction(self.residue, self.prime**self.denom_exp)

    def __repr__(self):
        tail = f"/{self.prime}^{self.denom_exp}" if self.denom_exp else ""
        return f"PadicScalar({self.residue}{tail} + O({self.prime}^{self.abs_precision}))"


def teichmuller(u: int, p: int, precision: int = DEFAULT_PRECISION) -> PadicScalar:
    """The (p-1)-st root of unity congruent to ``u`` mod p."""
    if u % p == 0:
        raise ValueError(f"{u} is not a unit mod {p}")
    mod = p**precision
    x = u % mod
    while True:
        y = pow(x, p, mod)
        if y == x:
            return PadicScalar(p, precision, x)
        x = y


class _Field:
    """Static data for Q_p(zeta_{p^m})."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.order = p**m if m else 1
        self.block = p ** (m - 1) if m else 1
        self.phi = (p - 1) * self.block if m else 1
        self._binom = None

    @property
    def binomials(self) -> list[list[int]]:
        # rows k: C(k, i) for i <= k, used to rewrite in powers of zeta - 1
        if self._binom is None:
            self._binom = [[math.comb(k, i) for i in range(k + 1)] for k in range(self.phi)]
        return self._binom


@lru_cache(maxsize=None)
def _field(p: int, m: int) -> _Field:
    return _Field(p, m)


def _fold(res: list[int], F: _Field) -> list[int]:
    """Reduce a vector indexed by exponents mod p^m to the power basis."""
    if F.m == 0:
        return [sum(res)]
    phi, blk, p = F.phi, F.block, F.p
    for r in range(blk):
        c = res[phi + r]
        if c:
            for i in range(p - 1):
                res[r + i * blk] -= c
    return res[:phi]


def _poly_mul(a, b, F: _Field, mod: int) -> list[int]:
    if F.m == 0:
        return [a[0] * b[0] % mod]
    n = F.order
    res = [0] * n
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    k = i + j
                    if k >= n:
                        k -= n
                    res[k] += ai * bj
    return [c % mod for c in _fold(res, F)]


@lru_cache(maxsize=None)
def _pi_power_exact(p: int, m: int, e: int) -> tuple[int, ...]:
    """(zeta - 1)^e in the power basis, over Z."""
    F = _field(p, m)
    res = [0] * F.order
    for i in range(e + 1):
        res[i % F.order] += math.comb(e, i) * (-1) ** (e - i)
    return tuple(_fold(res, F))


def _pi_power(F: _Field, e: int, mod: int) -> list[int]:
    return [c % mod for c in _pi_power_exact(F.p, F.m, e)]


def _conjugate(a, j: int, F: _Field) -> list[int]:
    """Image of sum a_i zeta^i under zeta -> zeta^j."""
    if F.m == 0:
        return list(a)
    n = F.order
    res = [0] * n
    for i, ai in enumerate(a):
        if ai:
            res[(i * j) % n] += ai
    return _fold(res, F)


def _norm_parts(a, F: _Field, mod: int):
    """Return (product of the nontrivial conjugates, norm) modulo ``mod``."""
    if F.m == 0:
        return [1], a[0] % mod
    others = [1] + [0] * (F.phi - 1)
    for j in range(2, F.order):
        if j % F.p:
            others = _poly_mul(others, [c % mod for c in _conjugate(a, j, F)], F, mod)
    full = _poly_mul(others, a, F, mod)
    if any(full[1:]):
        raise AssertionError("norm is not a rational scalar")
    return others, full[0]


class CycElem:
    """An element of Q_p(zeta_{p^m}) with tracked precision.

    ``coeffs`` holds integers in [0, p^precision), the numerator's coordinates
    in the power basis; the value is ``sum coeffs[i] zeta^i / p^denom_exp``.
    """

    __slots__ = ("prime", "level", "_num", "denom_exp", "precision")

    def __init__(self, prime: int, level: int, coeffs, denom_exp: int = 0,
                 precision: int = DEFAULT_PRECISION):
        F = _field(prime, level)
        coeffs = list(coeffs)
        if len(coeffs) != F.phi:
            raise ValueError(f"expected {F.phi} coefficients at level {level}, got {len(coeffs)}")
        if denom_exp < 0:
            s = prime ** (-denom_exp)
            coeffs = [c * s for c in coeffs]
            precision -= denom_exp
            denom_exp = 0
        coeffs, denom_exp, precision = _strip(coeffs, denom_exp, precision, prime)
        if precision <= 0:
            raise PrecisionExhausted(
                f"cyclotomic element lost all precision (p={prime}, level={level})")
        mod = prime**precision
        self.prime = prime
        self.level = level
        self._num = tuple(c % mod for c in coeffs)
        self.denom_exp = denom_exp
        self.precision = precision

    # construction helpers

    @classmethod
    def from_rational(cls, x, p: int, level: int = 0,
                      precision: int = DEFAULT_PRECISION) -> CycElem:
        return cls.from_scalar(PadicScalar.from_rational(x, p, precision), level)

    @classmethod
    def from_scalar(cls, s: PadicScalar, level: int = 0) -> CycElem:
        phi = _field(s.prime, level).phi
        return cls(s.prime, level, [s.residue] + [0] * (phi - 1), s.denom_exp, s.precision)

    @classmethod
    def zero(cls, p: int, level: int = 0, precision: int = DEFAULT_PRECISION) -> CycElem:
        return cls(p, level, [0] * _field(p, level).phi, 0, precision)

    @classmethod
    def one(cls, p: int, level: int = 0, precision: int = DEFAULT_PRECISION) -> CycElem:
        return cls.from_rational(1, p, level, precision)

    @classmethod
    def zeta(cls, p: int, level: int, k: int = 1,
             precision: int = DEFAULT_PRECISION) -> CycElem:
        """zeta_{p^level}^k, reduced to the power basis."""
        F = _field(p, level)
        res = [0] * F.order
        res[k % F.order] = 1
        return cls(p, level, _fold(res, F), 0, precision)

    # basic accessors

    @property
    def coeffs(self) -> tuple[PadicScalar, ...]:
        return tuple(PadicScalar(self.prime, self.precision, c, self.denom_exp)
                     for c in self._num)

    @property
    def numerator(self) -> tuple[int, ...]:
        return self._num

    @property
    def abs_precision(self) -> int:
        return self.precision - self.denom_exp

    @property
    def degree(self) -> int:
        return _field(self.prime, self.level).phi

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_scalar(self) -> bool:
        return not any(self._num[1:])

    def embed(self, level: int) -> CycElem:
        """Image under Q_p(zeta_{p^m}) -> Q_p(zeta_{p^level})."""
        if level == self.level:
            return self
        if level < self.level:
            raise ValueError("can only embed into a higher level")
        F = _field(self.prime, level)
        res = [0] * F.phi
        step = self.prime ** (level - self.level) if self.level else 0
        for i, c in enumerate(self._num):
            res[i * step] = c
        return CycElem(self.prime, level, res, self.denom_exp, self.precision)

    # arithmetic

    def _coerce(self, other) -> CycElem:
        if isinstance(other, CycElem):
            if other.prime != self.prime:
                raise ValueError("prime mismatch")
            return other
        if isinstance(other, PadicScalar):
            return CycElem.from_scalar(other, self.level)
        if isinstance(other, (int, Rational)):
            return CycElem.from_rational(other, self.prime, self.level,
                                         _exact_precision(self, other))
        return NotImplemented

    def _align(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return self, other
        if other.level == self.level:
            return self, other
        m = max(self.level, other.level)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        p = a.prime
        e = max(a.denom_exp, b.denom_exp)
        s1, s2 = e - a.denom_exp, e - b.denom_exp
        prec = min(a.precision + s1, b.precision + s2)
        f1, f2 = p**s1, p**s2
        return CycElem(p, a.level, [x * f1 + y * f2 for x, y in zip(a._num, b._num)], e, prec)

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.prime, self.level, [-c for c in self._num],
                       self.denom_exp, self.precision)

    def __sub__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        p = a.prime
        prec = min(a.precision + b._content(), b.precision + a._content())
        F = _field(p, a.level)
        num = _poly_mul(a._num, b._num, F, p**prec)
        return CycElem(p, a.level, num, a.denom_exp + b.denom_exp, prec)

    __rmul__ = __mul__

    def _content(self) -> int:
        """min v_p of the numerator coordinates (the precision when all vanish)."""
        p = self.prime
        t = self.precision
        for c in self._num:
            if c:
                k = 0
                while c % p == 0 and k < t:
                    c //= p
                    k += 1
                t = min(t, k)
                if t == 0:
                    break
        return t

    def _unit_split(self):
        """Return (t, primitive numerator, digits) with numerator = p^t * primitive."""
        p = self.prime
        t = min(vp(c, p) for c in self._num if c)
        digits = self.precision - t
        if digits <= 0:
            raise PrecisionExhausted("numerator has no significant digits")
        s = p**t
        return t, [c // s for c in self._num], digits

    def norm_valuation(self) -> tuple[int, int]:
        """(t, K): numerator = p^t * a0 with v_p(N(a0)) = K."""
        if self.is_zero():
            raise NotInvertible("zero has no finite valuation")
        F = _field(self.prime, self.level)
        t, a0, digits = self._unit_split()
        _, n0 = _norm_parts(a0, F, self.prime**digits)
        if n0 == 0:
            raise PrecisionExhausted(
                f"norm vanishes modulo p^{digits}; valuation is only a lower bound")
        return t, vp(n0, self.prime)

    def valuation(self):
        """Valuation normalized so that v(p) = 1; +inf for zero."""
        if self.is_zero():
            return INF
        t, k = self.norm_valuation()
        return t + Fraction(k, _field(self.prime, self.level).phi) - self.denom_exp

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def pi_adic_valuation(self):
        """Valuation read off the expansion in powers of pi = zeta - 1.

        The powers pi^i (i < phi) have pairwise distinct fractional
        valuations, so the minimum over the terms is attained exactly.
        Cheaper than the norm and used for pivot selection.
        """
        if self.is_zero():
            return INF
        p = self.prime
        F = _field(p, self.level)
        if self.denom_exp == 0 and sum(self._num) % p:
            return Fraction(0)
        binom = F.binomials
        best = None
        for i in range(F.phi):
            d = sum(self._num[k] * binom[k][i] for k in range(i, F.phi)) % p**self.precision
            if d:
                v = vp(d, p) + Fraction(i, F.phi)
                if best is None or v < best:
                    best = v
        if best is None:
            raise PrecisionExhausted("pi-adic expansion vanishes at working precision")
        return best - self.denom_exp

    def inverse(self) -> CycElem:
        if self.is_zero():
            raise NotInvertible("element is indistinguishable from 0 at current precision")
        p = self.prime
        F = _field(p, self.level)
        t, a0, digits = self._unit_split()
        mod = p**digits
        others, n0 = _norm_parts(a0, F, mod)
        if n0 == 0:
            raise PrecisionExhausted("norm vanishes at working precision")
        k = vp(n0, p)
        if k == 0:
            u_inv = pow(n0, -1, mod)
            num = [c * u_inv % mod for c in others]
            return CycElem(p, self.level, num, t - self.denom_exp, digits)
        # a0 = pi^k * unit with pi = zeta - 1, so a0 * pi^(phi - k) = p w with w a
        # unit and 1/a0 = pi^(phi - k) / (p w); only one digit is lost
        if digits <= 1:
            raise PrecisionExhausted("inverse would have no significant digits")
        shift = _pi_power(F, F.phi - k, mod)
        b = _poly_mul(a0, shift, F, mod)
        if any(c % p for c in b):
            raise PrecisionExhausted("uniformizer shift did not reach valuation 1")
        mod1 = p ** (digits - 1)
        w = [(c // p) % mod1 for c in b]
        w_others, w_norm = _norm_parts(w, F, mod1)
        w_inv = pow(w_norm, -1, mod1)
        num = _poly_mul([c * w_inv % mod1 for c in w_others], shift, F, mod1)
        return CycElem(p, self.level, num, t + 1 - self.denom_exp, digits - 1)

    def __truediv__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._align(other)
        return b * a.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycElem.one(self.prime, self.level, self.precision)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        return (a - b).is_zero()

    __hash__ = None

    def reduce_to(self, abs_precision: int) -> CycElem:
        """Canonical truncation to a fixed absolute precision."""
        if abs_precision > self.abs_precision:
            raise PrecisionExhausted(
                f"value known to O(p^{self.abs_precision}), requested O(p^{abs_precision})")
        return CycElem(self.prime, self.level, self._num, self.denom_exp,
                       abs_precision + self.denom_exp)

    def key(self, abs_precision: int) -> tuple:
        """Hashable canonical form at the given absolute precision."""
        r = self.reduce_to(abs_precision)
        return (r.prime, r.level, r.denom_exp, r._num)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self._num):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*z^{i}")
        body = " + ".join(terms) or "0"
        tail = f")/{self.prime}^{self.denom_exp}" if self.denom_exp else ")"
        return f"CycElem[p={self.prime},m={self.level}]({body}{tail} + O({self.prime}^{self.abs_precision})"

    def __str__(self):
        """Coordinates shown as small rationals where rational reconstruction finds one."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            r = c.lift()
            if abs(r.numerator) * r.denominator < self.prime ** (self.precision // 2):
                v = str(r)
            else:
                v = str(c.residue) + (f"/{self.prime}^{c.denom_exp}" if c.denom_exp else "")
            if i:
                v = f"({v})*z^{i}" if "/" in v or v.startswith("-") else f"{v}*z^{i}"
            terms.append(v)
        body = " + ".join(terms) or "0"
        return f"{body} + O({self.prime}^{self.abs_precision})"


def cyclotomic_polynomial(p: int, m: int) -> list[int]:
    """Coefficients (low degree first) of Phi_{p^m}; Phi_1 = X - 1."""
    if m == 0:
        return [-1, 1]
    blk = p ** (m - 1)
    coeffs = [0] * ((p - 1) * blk + 1)
    for i in range(p):
        coeffs[i * blk] = 1
    return coeffs
