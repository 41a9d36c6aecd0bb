"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as an integer numerator vector over the
power basis 1, zeta, ..., zeta^(phi(N)-1) together with one positive common
denominator.  Everything is reduced modulo the N-th cyclotomic polynomial, so
equality is a plain comparison of normalized data once both sides share a
conductor.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

__all__ = [
    "Cyclotomic",
    "RootOfUnity",
    "Infinite",
    "INFINITE",
    "qnum",
    "order_of",
    "cyclotomic_poly",
    "lcm",
]

Number = Union[int, Fraction, "Cyclotomic"]


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // lead
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds zeta_n^e reduced to the power basis, for 0 <= e < n."""
    phi = _phi(n)
    poly = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * poly[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    # normalized trace of zeta_n^k is mu(n/g)/phi(n/g), g = gcd(n, k); it does
    # not depend on the conductor an element is written in
    weights = []
    for k in range(_phi(n)):
        m = n // math.gcd(n, k)
        weights.append(Fraction(_mobius(m), _phi(m)))
    return tuple(weights)


def _mobius(m: int) -> int:
    out, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)


class Cyclotomic:
    """Immutable element of the cyclotomic field Q(zeta_N)."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, coeffs: Iterable[Number] = (), _raw: bool = False):
        if _raw:
            # trusted path: coeffs is (numerators, denominator), already reduced
            self.n = n
            self.num, self.den = coeffs
            return
        phi = _phi(n)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > phi:
            table = _power_table(n)
            acc = [Fraction(0)] * phi
            for e, c in enumerate(coeffs):
                if c:
                    row = table[e % n]
                    for j in range(phi):
                        if row[j]:
                            acc[j] += c * row[j]
            coeffs = acc
        coeffs = coeffs + [Fraction(0)] * (phi - len(coeffs))
        den = lcm(*(c.denominator for c in coeffs))
        num = [int(c * den) for c in coeffs]
        self.n = n
        self.num, self.den = _normalize(num, den)

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_int(cls, value: Number, n: int = 1) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value.embed(lcm(n, value.n))
        value = Fraction(value)
        phi = _phi(n)
        num = [0] * phi
        num[0] = value.numerator
        return cls(n, (tuple(num), value.denominator), _raw=True)

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k, written in conductor n."""
        row = _power_table(n)[k % n]
        return cls(n, (row, 1), _raw=True)

    @classmethod
    def zero(cls, n: int = 1) -> "Cyclotomic":
        return cls(n, ((0,) * _phi(n), 1), _raw=True)

    @classmethod
    def one(cls, n: int = 1) -> "Cyclotomic":
        return cls.from_int(1, n)

    # -- structure -----------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    @property
    def conductor(self) -> int:
        return self.n

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def embed(self, m: int) -> "Cyclotomic":
        """Image under Q(zeta_n) -> Q(zeta_m), zeta_n -> zeta_m^(m/n)."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed conductor {self.n} into {m}")
        step = m // self.n
        table = _power_table(m)
        phi = _phi(m)
        acc = [0] * phi
        for k, c in enumerate(self.num):
            if c:
                row = table[(k * step) % m]
                for j in range(phi):
                    if row[j]:
                        acc[j] += c * row[j]
        return Cyclotomic(m, (tuple(acc), self.den), _raw=True)

    def _common(self, other: Number) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            return self, Cyclotomic.from_int(other, self.n)
        if other.n == self.n:
            return self, other
        m = lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: Number) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Fraction(other)
            num = list(self.num)
            if other.denominator == 1:
                num[0] += other.numerator * self.den
                return Cyclotomic(self.n, _normalize(num, self.den), _raw=True)
            other = Cyclotomic.from_int(other, self.n)
        a, b = self._common(other)
        if a.den == b.den:
            num = [x + y for x, y in zip(a.num, b.num)]
            return Cyclotomic(a.n, _normalize(num, a.den), _raw=True)
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return Cyclotomic(a.n, _normalize(num, a.den * b.den), _raw=True)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.n, (tuple(-x for x in self.num), self.den), _raw=True)

    def __sub__(self, other: Number) -> "Cyclotomic":
        return self + (-other)

    def __rsub__(self, other: Number) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other: Number) -> "Cyclotomic":
        if not isinstance(other, Cyclotomic):
            other = Fraction(other)
            num = [x * other.numerator for x in self.num]
            return Cyclotomic(self.n, _normalize(num, self.den * other.denominator), _raw=True)
        a, b = self._common(other)
        n = a.n
        phi = len(a.num)
        if phi == 1:
            return Cyclotomic(n, _normalize([a.num[0] * b.num[0]], a.den * b.den), _raw=True)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        table = _power_table(n)
        for e in range(phi, 2 * phi - 1):
            c = prod[e]
            if c:
                row = table[e % n]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return Cyclotomic(n, _normalize(out, a.den * b.den), _raw=True)

    __rmul__ = __mul__

    def conjugate_by(self, k: int) -> "Cyclotomic":
        """Galois image under zeta -> zeta^k (gcd(k, n) = 1)."""
        table = _power_table(self.n)
        phi = len(self.num)
        acc = [0] * phi
        for e, c in enumerate(self.num):
            if c:
                row = table[(e * k) % self.n]
                for j in range(phi):
                    if row[j]:
                        acc[j] += c * row[j]
        return Cyclotomic(self.n, (tuple(acc), self.den), _raw=True)

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic.from_int(1 / self.to_fraction(), self.n)
        # product of the non-trivial conjugates divided by the norm
        others = Cyclotomic.one(self.n)
        for k in _units(self.n):
            if k % self.n != 1:
                others = others * self.conjugate_by(k)
        norm = (self * others).to_fraction()
        return others * (1 / norm)

    def __truediv__(self, other: Number) -> "Cyclotomic":
        if not isinstance(other, Cyclotomic):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> "Cyclotomic":
        return self.inverse() * other

    def __pow__(self, e: int) -> "Cyclotomic":
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic.one(self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        w = _trace_weights(self.n)
        return hash(sum(c * wk for c, wk in zip(self.num, w)) / self.den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- text -------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"Cyclotomic({self.n}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Exact literal readable by the expression grammar."""
        if self.is_rational():
            return str(Fraction(self.num[0], self.den))
        root = self.as_root_of_unity()
        if root is not None:
            return root.to_text()
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z({self.n},{k})" if k else str(c))
        return "(" + " + ".join(terms) + ")"

    def as_root_of_unity(self) -> "RootOfUnity | None":
        order = order_of(self)
        if order is INFINITE:
            return None
        m = lcm(self.n, order)
        e = self.embed(m)
        for k in range(m):
            if e == Cyclotomic.root(m, k):
                return RootOfUnity(m, k)
        return None  # pragma: no cover


class Infinite:
    """Order of an element that is not a root of unity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"


INFINITE = Infinite()


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    g = den
    for x in num:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                break
    if not any(num):
        return tuple(num), 1
    if g != 1:
        num = [x // g for x in num]
        den //= g
    if den < 0:
        num = [-x for x in num]
        den = -den
    return tuple(num), den


class RootOfUnity:
    """zeta_order^exponent, normalized so the pair is canonical.

    ``RootOfUnity(6, 2)`` and ``RootOfUnity(3, 1)`` are the same value and
    compare equal; both store ``order=3, exponent=1``.
    """

    __slots__ = ("order", "exponent")

    def __init__(self, n: int, k: int):
        if n < 1:
            raise ValueError("order must be positive")
        k %= n
        g = math.gcd(n, k)
        self.order = n // g
        self.exponent = (k // g) % self.order if self.order > 1 else 0

    def to_cyclotomic(self, n: int | None = None) -> Cyclotomic:
        c = Cyclotomic.root(self.order, self.exponent)
        return c if n is None else c.embed(n)

    def exponent_in(self, n: int) -> int:
        """k with value = zeta_n^k; requires order | n."""
        if n % self.order:
            raise ValueError(f"zeta_{self.order} is not in Q(zeta_{n})")
        return self.exponent * (n // self.order)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = lcm(self.order, other.order)
        return RootOfUnity(m, self.exponent_in(m) + other.exponent_in(m))

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exponent * e)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    def is_one(self) -> bool:
        return self.order == 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RootOfUnity):
            return (self.order, self.exponent) == (other.order, other.exponent)
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.to_cyclotomic() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_cyclotomic())

    def to_text(self) -> str:
        if self.order == 1:
            return "1"
        if self.order == 2:
            return "-1"
        return f"z({self.order},{self.exponent})"

    def __repr__(self) -> str:
        return f"RootOfUnity({self.order}, {self.exponent})"

    __str__ = to_text


def qnum(n: int, q: Number) -> Cyclotomic:
    """The q-number (n)_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q-number index must be non-negative")
    if not isinstance(q, Cyclotomic):
        q = Cyclotomic.from_int(q)
    total = Cyclotomic.zero(q.n)
    power = Cyclotomic.one(q.n)
    for _ in range(n):
        total = total + power
        power = power * q
    return total


def order_of(q: Number):
    """Multiplicative order of q, or INFINITE when q is not a root of unity.

    Roots of unity inside Q(zeta_N) have order dividing lcm(2, N), so the
    search stops there.
    """
    if not isinstance(q, Cyclotomic):
        q = Cyclotomic.from_int(q)
    if q.is_zero():
        raise ValueError("order of zero is undefined")
    bound = lcm(2, q.n)
    power = q
    for n in range(1, bound + 1):
        if power.is_one():
            return n if bound % n == 0 else INFINITE
        power = power * q
    return INFINITE

