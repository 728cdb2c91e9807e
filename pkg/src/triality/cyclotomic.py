"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element of Q(zeta_n) is stored as integer numerators over a common
positive denominator, in the power basis 1, z, ..., z^(phi(n)-1) modulo the
n-th cyclotomic polynomial.  Elements of different conductors mix freely:
binary operations promote both operands to the lcm of the conductors.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "CycNum",
    "DEFAULT_CONDUCTOR",
    "zeta",
    "root_of_unity",
    "sqrt_rational",
    "cyclotomic_polynomial",
]

DEFAULT_CONDUCTOR = 36


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _totient(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant term first."""
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(a[i + len(b) - 1], lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[i] = q
        for j, c in enumerate(b):
            a[i + j] -= q * c
    if any(a[: len(b) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


class _Field:
    """Per-conductor tables: reduction of z^j (0 <= j < n) into the power basis."""

    __slots__ = ("n", "phi", "poly", "reduce_table", "tau")

    def __init__(self, n: int):
        self.n = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        phi = self.phi
        table = []
        vec = [0] * phi
        vec[0] = 1
        for _ in range(n):
            table.append(tuple(vec))
            # multiply by z, then reduce z^phi = -sum poly[i] z^i
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(phi):
                    vec[i] -= top * self.poly[i]
        self.reduce_table = table
        # normalized trace of z^k depends only on the order m of z^k
        tau = []
        for k in range(phi):
            m = n // math.gcd(k, n)
            tau.append(Fraction(_mobius(m), _totient(m)))
        self.tau = tau

    def reduce(self, acc: list[int]) -> list[int]:
        """Reduce a length-n coefficient list (indices mod n) to the power basis."""
        phi = self.phi
        out = acc[:phi]
        table = self.reduce_table
        for j in range(phi, self.n):
            c = acc[j]
            if c:
                row = table[j]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return out


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    return _Field(n)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class CycNum:
    """An exact element of the cyclotomic field Q(zeta_n).

    ``CycNum(3)`` and ``CycNum(Fraction(1, 2))`` are rationals (conductor 1);
    ``CycNum([0, 1], 3)`` is zeta_3.  Use :func:`zeta` for roots of unity.
    """

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, value=0, n: int = 1):
        if isinstance(value, CycNum):
            other = value.promote(_lcm(value.n, n)) if n % value.n else value.promote(n)
            self.n, self.num, self.den = other.n, other.num, other.den
            self._hash = None
            return
        field = _field(n)
        if isinstance(value, (int, Rational)):
            coeffs = [Fraction(value)] + [Fraction(0)] * (field.phi - 1)
        else:
            coeffs = [Fraction(c) for c in value]
            if len(coeffs) > field.phi:
                # allow any length: interpret index as an exponent of zeta_n
                acc = [Fraction(0)] * n
                for k, c in enumerate(coeffs):
                    acc[k % n] += c
                den = math.lcm(*(c.denominator for c in acc))
                ints = field.reduce([int(c * den) for c in acc])
                coeffs = [Fraction(c, den) for c in ints]
            coeffs += [Fraction(0)] * (field.phi - len(coeffs))
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        num = tuple(int(c * den) for c in coeffs)
        self.n, self.num, self.den = self._normalize(n, num, den)
        self._hash = None

    @staticmethod
    def _normalize(n, num, den):
        g = den
        for c in num:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        if not any(num):
            den = 1
        return n, tuple(num), den

    @classmethod
    def _raw(cls, n: int, num, den: int) -> "CycNum":
        obj = object.__new__(cls)
        obj.n, obj.num, obj.den = cls._normalize(n, tuple(num), den)
        obj._hash = None
        return obj

    @classmethod
    def parse(cls, text: str) -> "CycNum":
        """Parse ``z3``, ``z3^2``, ``-1``, ``p/q`` and ``*``-products of these."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty cyclotomic expression")
        result = cls(1)
        for factor in text.split("*"):
            sign = 1
            while factor.startswith("-"):
                sign = -sign
                factor = factor[1:]
            m = re.fullmatch(r"z(\d+)(?:\^(-?\d+))?", factor)
            if m:
                value = root_of_unity(int(m.group(1)), int(m.group(2) or 1))
            elif re.fullmatch(r"\d+(?:/\d+)?", factor):
                value = cls(Fraction(factor))
            else:
                raise ValueError(f"cannot parse cyclotomic factor {factor!r}")
            result = result * value * sign
        return result

    # -- conversions ---------------------------------------------------------

    def promote(self, n: int) -> "CycNum":
        """Return the same element written in Q(zeta_n); requires self.n | n."""
        if n == self.n:
            return self
        if n % self.n:
            raise ValueError(f"conductor {self.n} does not divide {n}")
        step = n // self.n
        acc = [0] * n
        for k, c in enumerate(self.num):
            if c:
                acc[(k * step) % n] += c
        return CycNum._raw(n, _field(n).reduce(acc), self.den)

    def coords(self, n: int | None = None) -> tuple[Fraction, ...]:
        """Power-basis coordinates, optionally after promotion to conductor n."""
        x = self if n is None else self.promote(n)
        return tuple(Fraction(c, x.den) for c in x.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __complex__(self) -> complex:
        return sum(
            (c / self.den) * complex(math.cos(2 * math.pi * k / self.n), math.sin(2 * math.pi * k / self.n))
            for k, c in enumerate(self.num)
            if c
        ) + 0j

    def trace_normalized(self) -> Fraction:
        """Tr_{Q(zeta_n)/Q}(x) / phi(n); independent of the chosen conductor."""
        tau = _field(self.n).tau
        return sum((c * tau[k] for k, c in enumerate(self.num) if c), Fraction(0)) / self.den

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "CycNum | None":
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return CycNum._raw(1, (f.numerator,), f.denominator)
        return None

    def _common(self, other: "CycNum") -> tuple["CycNum", "CycNum"]:
        if self.n == other.n:
            return self, other
        n = _lcm(self.n, other.n)
        return self.promote(n), other.promote(n)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        if a.den == b.den:
            return CycNum._raw(a.n, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycNum._raw(a.n, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.n, [-c for c in self.num], self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.n == 1:
            c = other.num[0]
            return CycNum._raw(self.n, [x * c for x in self.num], self.den * other.den)
        if self.n == 1:
            c = self.num[0]
            return CycNum._raw(other.n, [x * c for x in other.num], self.den * other.den)
        a, b = self._common(other)
        n = a.n
        acc = [0] * n
        bnz = [(j, y) for j, y in enumerate(b.num) if y]
        for i, x in enumerate(a.num):
            if x:
                for j, y in bnz:
                    acc[(i + j) % n] += x * y
        return CycNum._raw(n, _field(n).reduce(acc), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if not any(self.num):
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        nz = [(k, c) for k, c in enumerate(self.num) if c]
        n = self.n
        if len(nz) == 1:
            k, c = nz[0]
            acc = [0] * n
            acc[(-k) % n] = self.den
            return CycNum._raw(n, _field(n).reduce(acc), c) if c > 0 else CycNum._raw(
                n, [-v for v in _field(n).reduce(acc)], -c
            )
        # extended Euclid in Q[x] against the cyclotomic polynomial
        field = _field(n)
        a = [Fraction(c, self.den) for c in self.num]
        m = [Fraction(c) for c in field.poly]
        s = _poly_inverse_mod(a, m)
        return CycNum(s, n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.n == 1:
            c = other.num[0]
            if c == 0:
                raise ZeroDivisionError("division by zero")
            sign = 1 if c > 0 else -1
            return CycNum._raw(self.n, [x * other.den * sign for x in self.num], self.den * abs(c))
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def galois(self, a: int) -> "CycNum":
        """Apply the automorphism zeta_n -> zeta_n^a (gcd(a, n) = 1)."""
        n = self.n
        if math.gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit modulo {n}")
        acc = [0] * n
        for k, c in enumerate(self.num):
            if c:
                acc[(a * k) % n] += c
        return CycNum._raw(n, _field(n).reduce(acc), self.den)

    def conjugate(self) -> "CycNum":
        """Complex conjugation."""
        return self.galois(-1)

    # -- comparison ----------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.n == other.n:
            return self.den == other.den and self.num == other.num
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.trace_normalized())
        return self._hash

    def sort_key(self, n: int | None = None) -> tuple[Fraction, ...]:
        """Total order key; compare only keys taken at the same conductor."""
        return self.coords(n)

    # -- display -------------------------------------------------------------

    def as_root_of_unity(self) -> tuple[Fraction, int, int] | None:
        """Return (c, m, k) with self == c * zeta_m^k, k < m minimal, or None."""
        n = self.n
        field = _field(n)
        for k in range(n):
            acc = [0] * n
            for j, c in enumerate(self.num):
                if c:
                    acc[(j - k) % n] += c
            red = field.reduce(acc)
            if not any(red[1:]):
                if red[0] == 0:
                    return None
                g = math.gcd(k, n)
                c = Fraction(red[0], self.den)
                return c, n // g, k // g
        return None

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.to_fraction())
        ru = self.as_root_of_unity()
        if ru is not None:
            c, m, k = ru
            base = f"z{m}" if k == 1 else f"z{m}^{k}"
            if c == 1:
                return base
            if c == -1:
                return "-" + base
            return f"{c}*{base}"
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            f = Fraction(c, self.den)
            if k == 0:
                terms.append(str(f))
                continue
            mono = f"z{self.n}" if k == 1 else f"z{self.n}^{k}"
            if f == 1:
                terms.append(mono)
            elif f == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{f}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CycNum({str(self)!r})"


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _poly_trim(a[: len(b) - 1])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


@lru_cache(maxsize=None)
def root_of_unity(n: int, k: int = 1) -> CycNum:
    """zeta_n^k as an element of conductor n."""
    if n == 1:
        return CycNum(1)
    acc = [0] * n
    acc[k % n] = 1
    return CycNum._raw(n, _field(n).reduce(acc), 1)


def zeta(n: int) -> CycNum:
    """The primitive root of unity exp(2 pi i / n)."""
    return root_of_unity(n, 1)


def _sqrt_prime(p: int) -> CycNum:
    if p == 2:
        return root_of_unity(8, 1) + root_of_unity(8, 7)
    # quadratic Gauss sum: g^2 = (-1)^((p-1)/2) p
    g = CycNum(0)
    for a in range(1, p):
        legendre = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
        g = g + legendre * root_of_unity(p, a)
    if p % 4 == 3:
        g = g * root_of_unity(4, 3)
    return g if complex(g).real > 0 else -g


def sqrt_rational(r) -> CycNum:
    """The non-negative real square root of a non-negative rational, in a cyclotomic field."""
    r = Fraction(r)
    if r < 0:
        return sqrt_rational(-r) * zeta(4)
    if r == 0:
        return CycNum(0)
    m = r.numerator * r.denominator
    square, free = 1, 1
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            square *= p
            m //= p * p
        if m % p == 0:
            free *= p
            m //= p
        p += 1
    free *= m
    result = CycNum(Fraction(square, r.denominator))
    q = 2
    while free > 1:
        if free % q == 0:
            result = result * _sqrt_prime(q)
            free //= q
        q += 1
    return result
