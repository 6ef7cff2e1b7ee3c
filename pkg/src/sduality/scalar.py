"""Exact coefficient fields: the rationals and prime fields F_p.

Rational elements are plain :class:`fractions.Fraction` values (always in
lowest terms with a positive denominator).  Prime-field elements are
:class:`Fp` instances carrying their modulus, so arithmetic between two
different prime fields is caught instead of silently wrapping.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Union

MAX_MODULUS = 2**31


class FieldError(ValueError):
    """Raised on field mismatches and malformed field descriptors."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """An element of the prime field F_p, stored as a residue 0 <= value < p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int | None:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            raise FieldError("cannot mix rational and prime-field elements")
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * Fp(v, self.p).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(v, self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


FieldElement = Union[Fraction, Fp]


class Field:
    """Common interface of the two supported coefficient fields."""

    characteristic: int
    name: str

    def __call__(self, value) -> FieldElement:
        raise NotImplementedError

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    def parse(self, text: str) -> FieldElement:
        raise NotImplementedError

    def format(self, x: FieldElement) -> str:
        return str(x)

    def random(self, rng: random.Random, bound: int = 5) -> FieldElement:
        raise NotImplementedError

    def is_element(self, x) -> bool:
        raise NotImplementedError

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class RationalField(Field):
    characteristic = 0
    name = "rational"

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fp):
            raise FieldError("cannot coerce a prime-field element to Q")
        return Fraction(value)

    def parse(self, text: str) -> Fraction:
        m = _RATIONAL_RE.match(text)
        if not m:
            raise FieldError(f"not a rational literal: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise FieldError(f"zero denominator in {text!r}")
        return Fraction(num, den)

    def format(self, x: Fraction) -> str:
        return str(x)

    def random(self, rng: random.Random, bound: int = 5) -> Fraction:
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        return Fraction(num, den)

    def is_element(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        if p >= MAX_MODULUS:
            raise FieldError(f"modulus {p} exceeds 31 bits")
        self.p = p
        self.characteristic = p
        self.name = f"fp:{p}"

    def __call__(self, value) -> Fp:
        if isinstance(value, Fp):
            if value.p != self.p:
                raise FieldError(f"mixed moduli {self.p} and {value.p}")
            return value
        if isinstance(value, Fraction):
            return Fp(value.numerator, self.p) / Fp(value.denominator, self.p)
        return Fp(int(value), self.p)

    def parse(self, text: str) -> Fp:
        # a/b literals are read as a * b^-1
        return self(QQ.parse(text))

    def format(self, x: Fp) -> str:
        return str(x.value)

    def random(self, rng: random.Random, bound: int = 5) -> Fp:
        return Fp(rng.randrange(self.p), self.p)

    def is_element(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc: str) -> Field:
    """Accepts ``rational``, ``fp:P`` and ``prime P``."""
    d = desc.strip().lower()
    if d in ("rational", "q", "qq"):
        return QQ
    m = re.match(r"^(?:fp:|prime\s+|gf\()\s*(\d+)\)?$", d)
    if not m:
        raise FieldError(f"unknown field descriptor {desc!r}")
    return PrimeField(int(m.group(1)))


def field_of(x: FieldElement) -> Field:
    if isinstance(x, Fp):
        return PrimeField(x.p)
    return QQ


# Functional forms of the arithmetic, for callers that want explicit checks.

def _check_same(a: FieldElement, b: FieldElement) -> None:
    if isinstance(a, Fp) != isinstance(b, Fp):
        raise FieldError("operands live in different fields")
    if isinstance(a, Fp) and a.p != b.p:
        raise FieldError(f"mixed moduli {a.p} and {b.p}")


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a * b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_inv(a: FieldElement) -> FieldElement:
    if isinstance(a, Fp):
        return a.inverse()
    if a == 0:
        raise ZeroDivisionError("inverse of 0 in Q")
    return 1 / Fraction(a)
