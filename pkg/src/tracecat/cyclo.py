"""Exact arithmetic in the cyclotomic field generated by zeta = exp(i*pi/(2(k+2))).

Scalars live in Q(zeta) where zeta is a primitive root of unity of order
N = 4(k+2), so that

    q       = zeta**2,
    q^(1/2) = zeta,
    i       = zeta**(k+2).

Elements are represented as integer coefficient vectors (with a single
positive integer denominator) modulo the N-th cyclotomic polynomial, which
makes equality decidable and all arithmetic exact.  A complex-double
variant with tolerance-based equality is provided as a fast path; exact
mode is the default everywhere.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial.

    Computed by exact division of x^n - 1 by the cyclotomic polynomials of
    the proper divisors of n.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(12)
    (1, 0, -1, 0, 1)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    poly = [0] * n + [1]
    poly[0] = -1  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


cyclotomic_polynomial = lru_cache(maxsize=None)(cyclotomic_polynomial)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        coef = num[shift + len(den) - 1]
        if coef % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        coef //= den[-1]
        out[shift] = coef
        for i, d in enumerate(den):
            num[shift + i] -= coef * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


class CycloField:
    """The field Q(zeta_N), zeta_N = exp(2*pi*i/N), with exact arithmetic."""

    def __init__(self, conductor: int):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = conductor
        minpoly = cyclotomic_polynomial(conductor)
        self.degree = len(minpoly) - 1
        self._minpoly = minpoly
        # x^(degree+t) reduced mod the (monic) minimal polynomial, as integer rows
        self._reduction = self._reduction_rows()
        self.zero = Cyc(self, (0,) * self.degree, 1)
        self.one = self.from_int(1)

    @classmethod
    @lru_cache(maxsize=None)
    def for_level(cls, k: int) -> "CycloField":
        """Field containing q^(1/2) and i for the level-k theory."""
        return cls(4 * (k + 2))

    def _reduction_rows(self) -> list[tuple[int, ...]]:
        d = self.degree
        count = max(d - 1, self.conductor - d)
        rows: list[tuple[int, ...]] = []
        # invariant: current holds x^(d+t) as a degree-<d integer vector
        current = [-c for c in self._minpoly[:d]]
        for _ in range(count):
            rows.append(tuple(current))
            lead = current[d - 1]
            current = [0] + current[: d - 1]
            if lead:
                current = [c + lead * r for c, r in zip(current, rows[0])]
        return rows

    # -- constructors ------------------------------------------------------

    def from_int(self, n: int) -> "Cyc":
        vec = [0] * self.degree
        vec[0] = n
        return Cyc(self, tuple(vec), 1)

    def from_fraction(self, fr: Fraction) -> "Cyc":
        vec = [0] * self.degree
        vec[0] = fr.numerator
        return Cyc(self, tuple(vec), fr.denominator)

    def zeta(self, power: int = 1) -> "Cyc":
        """zeta_N raised to an integer power (any sign)."""
        power %= self.conductor
        vec = [0] * self.conductor
        vec[power] = 1
        return Cyc(self, self._reduce(vec), 1)

    def _reduce(self, vec: list[int]) -> tuple[int, ...]:
        d = self.degree
        if len(vec) <= d:
            return tuple(vec) + (0,) * (d - len(vec))
        out = list(vec[:d])
        for t, coef in enumerate(vec[d:]):
            if coef:
                row = self._reduction[t]
                for i in range(d):
                    out[i] += coef * row[i]
        return tuple(out)

    # -- level-k helpers ----------------------------------------------------

    def q(self, power: int = 1) -> "Cyc":
        return self.zeta(2 * power)

    def q_half(self, power: int = 1) -> "Cyc":
        return self.zeta(power)

    def imag_unit(self) -> "Cyc":
        if self.conductor % 4 != 0:
            raise ValueError("i is not in this field")
        return self.zeta(self.conductor // 4)

    def quantum_integer(self, n: int) -> "Cyc":
        """[n]_q = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
        acc = self.zero
        for j in range(n):
            acc = acc + self.q(n - 1 - 2 * j)
        return acc

    def loop_value(self) -> "Cyc":
        """delta = [2]_q = q + q^(-1)."""
        return self.quantum_integer(2)


class Cyc:
    """An element of a CycloField: integer vector over a common denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: CycloField, num: tuple[int, ...], den: int):
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = den
        for c in num:
            g = math.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.field = field
        self.num = num
        self.den = den

    def __add__(self, other: "Cyc") -> "Cyc":
        a, b = self, other
        if a.den == b.den:
            return Cyc(a.field, tuple(x + y for x, y in zip(a.num, b.num)), a.den)
        return Cyc(
            a.field,
            tuple(x * b.den + y * a.den for x, y in zip(a.num, b.num)),
            a.den * b.den,
        )

    def __sub__(self, other: "Cyc") -> "Cyc":
        return self + (-other)

    def __neg__(self) -> "Cyc":
        return Cyc(self.field, tuple(-c for c in self.num), self.den)

    def __mul__(self, other: "Cyc") -> "Cyc":
        d = self.field.degree
        a, b = self.num, other.num
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return Cyc(self.field, self.field._reduce(conv), self.den * other.den)

    def __truediv__(self, other: "Cyc") -> "Cyc":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Cyc":
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.field.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self) -> "Cyc":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        mod = [Fraction(c) for c in self.field._minpoly]
        a = [Fraction(c, self.den) for c in self.num]
        # extended gcd of a and mod
        r0, r1 = mod, a
        t0: list[Fraction] = [Fraction(0)]
        t1: list[Fraction] = [Fraction(1)]
        while any(r1):
            q, rem = _polydivmod_frac(r0, r1)
            r0, r1 = r1, rem
            t0, t1 = t1, _polysub_frac(t0, _polymul_frac(q, t1))
        # r0 is the gcd, a nonzero constant since the minimal polynomial is irreducible
        const = next(c for c in r0 if c != 0)
        inv = [c / const for c in t0]
        den = 1
        for c in inv:
            den = den * c.denominator // math.gcd(den, c.denominator)
        vec = [int(c * den) for c in inv]
        return Cyc(self.field, self.field._reduce(vec), den)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.field.conductor)
        acc = 0j
        for c in reversed(self.num):
            acc = acc * z + c
        return acc / self.den

    def __repr__(self) -> str:
        terms = []
        for p, c in enumerate(self.num):
            if c:
                frac = Fraction(c, self.den)
                terms.append(f"{frac}*z^{p}" if p else f"{frac}")
        return " + ".join(terms) if terms else "0"


def _polydivmod_frac(
    num: list[Fraction], den: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    while num and num[-1] == 0:
        num.pop()
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if len(num) < len(den):
        return [Fraction(0)], num
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        coef = num[shift + len(den) - 1] / den[-1]
        out[shift] = coef
        for i, d in enumerate(den):
            num[shift + i] -= coef * d
    while num and num[-1] == 0:
        num.pop()
    return out, num if num else [Fraction(0)]


def _polymul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _polysub_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


class FloatField:
    """Complex-double stand-in for CycloField (fast path, tolerance 1e-9)."""

    TOL = 1e-9

    def __init__(self, conductor: int):
        self.conductor = conductor
        self._zeta = cmath.exp(2j * cmath.pi / conductor)
        self.zero = FloatScalar(0j)
        self.one = FloatScalar(1 + 0j)

    @classmethod
    @lru_cache(maxsize=None)
    def for_level(cls, k: int) -> "FloatField":
        return cls(4 * (k + 2))

    def from_int(self, n: int) -> "FloatScalar":
        return FloatScalar(complex(n))

    def zeta(self, power: int = 1) -> "FloatScalar":
        return FloatScalar(self._zeta**power)

    def q(self, power: int = 1) -> "FloatScalar":
        return self.zeta(2 * power)

    def q_half(self, power: int = 1) -> "FloatScalar":
        return self.zeta(power)

    def imag_unit(self) -> "FloatScalar":
        return self.zeta(self.conductor // 4)

    def quantum_integer(self, n: int) -> "FloatScalar":
        acc = 0j
        for j in range(n):
            acc += self._zeta ** (2 * (n - 1 - 2 * j))
        return FloatScalar(acc)

    def loop_value(self) -> "FloatScalar":
        return self.quantum_integer(2)


class FloatScalar:
    """Complex number with tolerance-based equality, mirroring Cyc's API."""

    __slots__ = ("value",)

    def __init__(self, value: complex):
        self.value = value

    def __add__(self, other: "FloatScalar") -> "FloatScalar":
        return FloatScalar(self.value + other.value)

    def __sub__(self, other: "FloatScalar") -> "FloatScalar":
        return FloatScalar(self.value - other.value)

    def __neg__(self) -> "FloatScalar":
        return FloatScalar(-self.value)

    def __mul__(self, other: "FloatScalar") -> "FloatScalar":
        return FloatScalar(self.value * other.value)

    def __truediv__(self, other: "FloatScalar") -> "FloatScalar":
        return FloatScalar(self.value / other.value)

    def __pow__(self, n: int) -> "FloatScalar":
        return FloatScalar(self.value**n)

    def inverse(self) -> "FloatScalar":
        return FloatScalar(1 / self.value)

    def is_zero(self) -> bool:
        return abs(self.value) <= FloatField.TOL

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FloatScalar):
            return NotImplemented
        return abs(self.value - other.value) <= FloatField.TOL

    def __complex__(self) -> complex:
        return self.value

    def __repr__(self) -> str:
        return f"FloatScalar({self.value:.6g})"


def scalar_field(k: int, exact: bool = True):
    """Scalar field for level k: exact cyclotomic, or complex doubles."""
    return CycloField.for_level(k) if exact else FloatField.for_level(k)
