"""Symmetric bilinear forms: congruence diagonalization and invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from . import linalg
from .scalar import Field, Fp

TRIAL_DIVISION_BOUND = 10**6


class CharacteristicTwoError(ValueError):
    pass


@dataclass
class BilinearForm:
    matrix: list
    field: Field
    labels: list = field(default_factory=list)

    def __post_init__(self):
        d = len(self.matrix)
        if any(len(r) != d for r in self.matrix):
            raise ValueError("Gram matrix must be square")
        for i in range(d):
            for j in range(i + 1, d):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")

    @property
    def dim(self) -> int:
        return len(self.matrix)


@dataclass
class FormInvariants:
    rank: int
    diagonal: list
    signature: int | None
    determinant: object
    discriminant: int
    discriminant_complete: bool
    field: Field

    def as_dict(self) -> dict:
        F = self.field
        return {
            "rank": self.rank,
            "diagonal": [F.format(x) for x in self.diagonal],
            "signature": self.signature,
            "determinant": F.format(self.determinant),
            "discriminant_class": self.discriminant,
            "discriminant_complete": self.discriminant_complete,
        }


def _check_char(F: Field) -> None:
    if F.characteristic == 2:
        raise CharacteristicTwoError("symmetric diagonalization is not available in characteristic 2")


def diagonalize(G: BilinearForm) -> tuple[list, list]:
    """Return (diagonal, P) with P^T G P = diag(diagonal).

    Pivot on the first nonzero remaining diagonal entry; when the remaining
    diagonal vanishes but the block does not, add row/column j to i, which
    puts 2 G[i][j] on the diagonal.
    """
    F = G.field
    _check_char(F)
    d = G.dim
    A = [list(r) for r in G.matrix]
    P = linalg.identity(d, F)

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in P:
            r[i], r[j] = r[j], r[i]

    def add_to(i, j, f):
        # row_i += f row_j, col_i += f col_j
        A[i] = [a + f * b for a, b in zip(A[i], A[j])]
        for r in A:
            r[i] = r[i] + f * r[j]
        for r in P:
            r[i] = r[i] + f * r[j]

    for i in range(d):
        if not A[i][i]:
            j = next((j for j in range(i + 1, d) if A[j][j]), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, d) if A[i][j]), None)
                if j is None:
                    continue
                add_to(i, j, F.one)
        piv = A[i][i]
        for j in range(i + 1, d):
            if A[j][i]:
                add_to(j, i, -(A[j][i] / piv))
    return [A[i][i] for i in range(d)], P


@lru_cache(maxsize=1)
def _primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def squarefree_part(n: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, bool]:
    """Square-free part of a nonzero integer by trial division up to ``bound``.

    Returns (part, complete); when an unfactored cofactor remains it is kept
    whole and ``complete`` is False.
    """
    if n == 0:
        return 0, True
    sign = -1 if n < 0 else 1
    m = abs(n)
    part = 1
    exhausted = True
    for q in _primes_upto(bound):
        if q * q > m:
            exhausted = False
            break
        if m % q:
            continue
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        if e % 2:
            part *= q
    complete = True
    if m > 1:
        if not exhausted:
            part *= m  # m has no factor below its square root: prime
        elif isqrt(m) ** 2 != m:
            part *= m
            complete = False
    return sign * part, complete


def discriminant_class(det, F: Field) -> tuple[int, bool]:
    """Square class of the determinant.

    Over Q: the signed square-free integer.  Over F_p: 1 for squares, else
    the least quadratic non-residue.
    """
    if isinstance(det, Fp):
        if det.value == 0:
            return 0, True
        p = det.p
        if pow(det.value, (p - 1) // 2, p) == 1:
            return 1, True
        return next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1), True
    det = Fraction(det)
    if det == 0:
        return 0, True
    part, ok = squarefree_part(det.numerator * det.denominator)
    return part, ok


def invariants(G: BilinearForm) -> FormInvariants:
    F = G.field
    _check_char(F)
    diag, _ = diagonalize(G)
    r = sum(1 for x in diag if x)
    sig = None
    if F.is_rational:
        sig = sum(1 for x in diag if x > 0) - sum(1 for x in diag if x < 0)
    detv = linalg.det(G.matrix, F)
    disc, complete = discriminant_class(detv, F)
    return FormInvariants(r, diag, sig, detv, disc, complete, F)


def degree_summary(inv: FormInvariants) -> dict:
    """Degree readings of the global form of f = (f_1, ..., f_n)."""
    if not inv.field.is_rational:
        raise ValueError("degree summary needs the rational base field")
    return {
        "scope": "global degree of the map f = (f_1, ..., f_n); local refinement not computed",
        "complex_degree": inv.rank,
        "real_degree": inv.signature,
    }
