"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as an integer coefficient vector over the power basis
1, z, ..., z^(phi(n)-1) together with one positive common denominator, reduced
modulo the n-th cyclotomic polynomial.  Elements whose irrational part vanishes
are demoted to conductor 1, which keeps the (very common) rational case fast and
makes equality canonical.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import DivisionByZero

__all__ = ["Cyc", "ZERO", "ONE", "zeta", "as_scalar", "cyclotomic_polynomial"]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _powers(n: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """(phi, table) with table[k] = z^k reduced mod Phi_n, for 0 <= k < max(n, 2 phi)."""
    phi_poly = cyclotomic_polynomial(n)
    phi = len(phi_poly) - 1
    size = max(n, 2 * phi)
    table = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(size):
        table.append(tuple(cur))
        # multiply by z and reduce the overflow coefficient with the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * phi_poly[j]
    return phi, tuple(table)


def _normalize(n: int, num: list[int], den: int) -> "Cyc":
    if den < 0:
        den = -den
        num = [-a for a in num]
    g = den
    for a in num:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if g != 1:
        num = [a // g for a in num]
        den //= g
    if n != 1 and not any(num[1:]):
        n, num = 1, num[:1]
    if not num[0] and len(num) == 1:
        den = 1
    obj = object.__new__(Cyc)
    obj.n = n
    obj.num = tuple(num)
    obj.den = den
    return obj


class Cyc:
    """An element of Q(zeta_n), immutable."""

    __slots__ = ("n", "num", "den")

    def __init__(self, value=0, den: int = 1):
        if isinstance(value, Cyc):
            self.n, self.num, self.den = value.n, value.num, value.den
            return
        f = Fraction(value) / den
        self.n = 1
        self.num = (f.numerator,)
        self.den = f.denominator

    # -- construction -----------------------------------------------------
    @staticmethod
    def from_coeffs(n: int, coeffs) -> "Cyc":
        """Element sum_k coeffs[k] z_n^k; any length, exponents reduced mod n."""
        phi, table = _powers(n)
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        acc = [0] * phi
        for k, c in enumerate(fr):
            if c:
                a = c.numerator * (den // c.denominator)
                row = table[k % n]
                for j in range(phi):
                    if row[j]:
                        acc[j] += a * row[j]
        return _normalize(n, acc, den)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(a, self.den) for a in self.num]

    # -- conversions -------------------------------------------------------
    def lift(self, m: int) -> tuple[tuple[int, ...], int]:
        """Numerator vector of self viewed in Q(zeta_m) (n must divide m)."""
        if m == self.n:
            return self.num, self.den
        if m % self.n:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        phi, table = _powers(m)
        step = m // self.n
        acc = [0] * phi
        for k, a in enumerate(self.num):
            if a:
                row = table[(k * step) % m]
                for j in range(phi):
                    if row[j]:
                        acc[j] += a * row[j]
        return tuple(acc), self.den

    def is_rational(self) -> bool:
        return self.n == 1

    def to_fraction(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(a * z**k for k, a in enumerate(self.num)) / self.den

    # -- arithmetic ---------------------------------------------------------
    def _common(self, other: "Cyc"):
        if self.n == other.n:
            return self.n, self.num, self.den, other.num, other.den
        m = lcm(self.n, other.n)
        a, ad = self.lift(m)
        b, bd = other.lift(m)
        return m, a, ad, b, bd

    def __add__(self, other) -> "Cyc":
        other = as_scalar(other)
        if self.n == 1 and other.n == 1:
            return _normalize(1, [self.num[0] * other.den + other.num[0] * self.den], self.den * other.den)
        n, a, ad, b, bd = self._common(other)
        if ad == bd:
            return _normalize(n, [x + y for x, y in zip(a, b)], ad)
        return _normalize(n, [x * bd + y * ad for x, y in zip(a, b)], ad * bd)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        obj = object.__new__(Cyc)
        obj.n, obj.num, obj.den = self.n, tuple(-a for a in self.num), self.den
        return obj

    def __sub__(self, other) -> "Cyc":
        return self + (-as_scalar(other))

    def __rsub__(self, other) -> "Cyc":
        return as_scalar(other) + (-self)

    def __mul__(self, other) -> "Cyc":
        other = as_scalar(other)
        if other.n == 1:
            if self.n == 1:
                return _normalize(1, [self.num[0] * other.num[0]], self.den * other.den)
            c = other.num[0]
            return _normalize(self.n, [a * c for a in self.num], self.den * other.den)
        if self.n == 1:
            c = self.num[0]
            return _normalize(other.n, [a * c for a in other.num], self.den * other.den)
        n, a, ad, b, bd = self._common(other)
        phi, table = _powers(n)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = list(prod[:phi])
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                row = table[k]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return _normalize(n, out, ad * bd)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self:
            raise DivisionByZero("inverse of zero")
        if self.n == 1:
            return _normalize(1, [self.den], self.num[0])
        n = self.n
        phi, table = _powers(n)
        # columns: self * z^k, solve sum x_k (self z^k) = 1
        cols = []
        for k in range(phi):
            v = (self * Cyc.from_coeffs(n, [0] * k + [1])).lift(n)
            cols.append([Fraction(a, v[1]) for a in v[0]])
        rows = [[cols[k][j] for k in range(phi)] + [Fraction(int(j == 0))] for j in range(phi)]
        for c in range(phi):
            p = next(r for r in range(c, phi) if rows[r][c])
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [x / piv for x in rows[c]]
            for r in range(phi):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return Cyc.from_coeffs(n, [rows[j][phi] for j in range(phi)])

    def __truediv__(self, other) -> "Cyc":
        other = as_scalar(other)
        if not other:
            raise DivisionByZero("division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyc":
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int) -> "Cyc":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -----------------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyc):
            if isinstance(other, (int, Fraction)):
                return self.n == 1 and Fraction(self.num[0], self.den) == other
            return NotImplemented
        if self.n == other.n:
            return self.num == other.num and self.den == other.den
        if self.n == 1 or other.n == 1:
            return False
        return not (self - other)

    def __hash__(self) -> int:
        if self.n == 1:
            return hash(Fraction(self.num[0], self.den))
        # non-rational values of distinct conductors may coincide after embedding
        return hash("cyclotomic")

    # -- display / serialization -------------------------------------------
    def __repr__(self) -> str:
        return f"Cyc({self})"

    def __str__(self) -> str:
        if self.n == 1:
            return str(Fraction(self.num[0], self.den))
        terms = []
        for k, c in enumerate(self.coefficients()):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = f"z{self.n}" if k == 1 else f"z{self.n}^{k}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"conductor": self.n, "coeffs": [[c.numerator, c.denominator] for c in self.coefficients()]}

    @staticmethod
    def from_json(obj) -> "Cyc":
        if isinstance(obj, (int, str)):
            return Cyc(Fraction(obj))
        if isinstance(obj, Cyc):
            return obj
        n = int(obj["conductor"])
        coeffs = [Fraction(int(a), int(b)) for a, b in obj["coeffs"]]
        return Cyc.from_coeffs(n, coeffs)


ZERO = Cyc(0)
ONE = Cyc(1)


def zeta(n: int, k: int = 1) -> Cyc:
    """The root of unity z_n^k."""
    return Cyc.from_coeffs(n, [0] * (k % n) + [1])


def as_scalar(x) -> Cyc:
    if isinstance(x, Cyc):
        return x
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return _normalize(1, [f.numerator], f.denominator)
    if isinstance(x, str):
        return Cyc(Fraction(x))
    raise TypeError(f"cannot interpret {x!r} as a cyclotomic scalar")
