"""Exact dense and sparse linear algebra over Q and F_p.

Matrices are lists of rows of field elements.  Internally, prime-field work
is done on plain ints and rational matrix products are done on integers
after clearing denominators; results are converted back on the way out.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from operator import mul
from typing import Iterable, Sequence

import numpy as np

from .scalar import Field, Fp, PrimeField

Matrix = list  # list[list[FieldElement]]


class SingularMatrixError(ArithmeticError):
    pass


def _modulus(field: Field) -> int | None:
    return field.p if isinstance(field, PrimeField) else None


def _raw(x, p):
    if p is None:
        return x if isinstance(x, Fraction) else Fraction(x)
    return x.value if isinstance(x, Fp) else x % p


def _cook(v, p):
    return Fp(v, p) if p is not None else v


def zeros(r: int, c: int, field: Field) -> Matrix:
    z = field.zero
    return [[z] * c for _ in range(r)]


def identity(n: int, field: Field) -> Matrix:
    m = zeros(n, n, field)
    for i in range(n):
        m[i][i] = field.one
    return m


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def _to_int_matrix(a: Matrix) -> tuple[list[list[int]], int]:
    den = 1
    for row in a:
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
    if den == 1:
        return [[int(x) for x in row] for row in a], 1
    return [[x.numerator * (den // x.denominator) for x in row] for row in a], den


_QZERO = Fraction(0)


def matmul(a: Matrix, b: Matrix, field: Field) -> Matrix:
    if not a or not b:
        return [[] for _ in a]
    if len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0])}")
    p = _modulus(field)
    if p is not None:
        ai = [[x.value for x in row] for row in a]
        bt = [[x.value for x in col] for col in zip(*b)]
        return [[Fp(sum(map(mul, row, col)), p) for col in bt] for row in ai]
    ai, da = _to_int_matrix(a)
    bi, db = _to_int_matrix(b)
    bt = list(zip(*bi))
    d = da * db
    if d == 1:
        return [[Fraction(sum(map(mul, row, col))) for col in bt] for row in ai]
    out = []
    for row in ai:
        vals = [sum(map(mul, row, col)) for col in bt]
        out.append([Fraction(v, d) if v else _QZERO for v in vals])
    return out


def matvec(a: Matrix, v: Sequence, field: Field) -> list:
    return [r[0] for r in matmul(a, [[x] for x in v], field)]


def vecmat(v: Sequence, a: Matrix, field: Field) -> list:
    return matmul([list(v)], a, field)[0]


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def matscale(a: Matrix, c) -> Matrix:
    return [[c * x for x in r] for r in a]


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


class Subspace:
    """A subspace of k^N kept in fully reduced row-echelon form.

    Rows are sparse dicts ``{column: value}`` with pivot entry 1 and zeros
    in every other pivot column, so two subspaces are equal exactly when
    their echelon rows coincide.
    """

    def __init__(self, field: Field, ambient: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.ambient = ambient
        self._p = _modulus(field)
        self._rows: dict[int, dict] = {}
        for v in vectors:
            self.add(v)

    # sparse helpers work on raw values (ints mod p, or Fractions)
    def _sparse(self, vec: Sequence) -> dict:
        if len(vec) != self.ambient:
            raise ValueError(f"vector of length {len(vec)} in ambient dimension {self.ambient}")
        p = self._p
        out = {}
        for i, x in enumerate(vec):
            if x:
                out[i] = _raw(x, p)
        return out

    def _reduce(self, row: dict) -> dict:
        p = self._p
        for c in [c for c in row if c in self._rows]:
            f = row.get(c)
            if not f:
                continue
            for k, v in self._rows[c].items():
                s = row.get(k, 0) - f * v
                if p is not None:
                    s %= p
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        return row

    def add_sparse(self, row: dict) -> bool:
        row = self._reduce(row)
        if not row:
            return False
        p = self._p
        c0 = min(row)
        inv = pow(row[c0], -1, p) if p is not None else 1 / row[c0]
        if p is not None:
            row = {k: v * inv % p for k, v in row.items()}
        else:
            row = {k: v * inv for k, v in row.items()}
        for prow in self._rows.values():
            f = prow.get(c0)
            if not f:
                continue
            for k, v in row.items():
                s = prow.get(k, 0) - f * v
                if p is not None:
                    s %= p
                if s:
                    prow[k] = s
                else:
                    prow.pop(k, None)
        self._rows[c0] = row
        return True

    @classmethod
    def from_sparse_rows(cls, field: Field, ambient: int, rows: Iterable[dict]) -> "Subspace":
        """Span of many sparse rows ``{column: raw value}`` in one batch.

        Over a prime field the rows are reduced densely with numpy, which is
        much faster than incremental insertion for a few hundred columns; the
        resulting echelon form is the same unique one.
        """
        space = cls(field, ambient)
        p = space._p
        rows = [r for r in rows if r]
        if p is None or ambient < 32 or not rows:
            for r in rows:
                space.add_sparse(dict(r))
            return space
        A = np.zeros((len(rows), ambient), dtype=np.int64)
        for i, r in enumerate(rows):
            for k, v in r.items():
                A[i, k] = v % p
        R, pivots = _rref_mod_p(A, p)
        for c, row in zip(pivots, R):
            nz = np.nonzero(row)[0]
            space._rows[c] = {int(k): int(row[k]) for k in nz}
        return space

    def add_entries(self, entries: dict) -> bool:
        """Add a sparse vector given as ``{column: field element}``."""
        p = self._p
        return self.add_sparse({k: _raw(v, p) for k, v in entries.items() if v})

    def add(self, vec: Sequence) -> bool:
        """Add a vector; return True if it enlarged the subspace."""
        return self.add_sparse(self._sparse(vec))

    def reduce(self, vec: Sequence) -> list:
        row = self._reduce(self._sparse(vec))
        return self._dense(row)

    def contains(self, vec: Sequence) -> bool:
        return not self._reduce(self._sparse(vec))

    __contains__ = contains

    def _dense(self, row: dict) -> list:
        z = self.field.zero
        out = [z] * self.ambient
        for k, v in row.items():
            out[k] = _cook(v, self._p)
        return out

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> list[list]:
        """Reduced row-echelon basis, ordered by pivot column."""
        return [self._dense(self._rows[c]) for c in sorted(self._rows)]

    def sparse_rows(self) -> list[tuple[int, dict]]:
        return [(c, dict(self._rows[c])) for c in sorted(self._rows)]

    def copy(self) -> "Subspace":
        s = Subspace(self.field, self.ambient)
        s._rows = {c: dict(r) for c, r in self._rows.items()}
        return s

    def __le__(self, other: "Subspace") -> bool:
        if self.ambient != other.ambient:
            return False
        return all(not other._reduce(dict(r)) for r in self._rows.values())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.field == other.field
            and self._rows == other._rows
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field!r})"

    def complement_kernel(self) -> list[list]:
        """Basis of {v : r . v = 0 for every row r}, one vector per free column."""
        p = self._p
        pivots = sorted(self._rows)
        pivset = set(pivots)
        free = [c for c in range(self.ambient) if c not in pivset]
        # column view of the echelon rows restricted to free columns
        by_free: dict[int, list] = {f: [] for f in free}
        for c in pivots:
            for k, v in self._rows[c].items():
                if k != c:
                    by_free[k].append((c, v))
        out = []
        z = self.field.zero
        for f in free:
            vec = [z] * self.ambient
            vec[f] = self.field.one
            for c, v in by_free[f]:
                vec[c] = _cook(-v, p)
            out.append(vec)
        return out


def _rref_mod_p(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of an int64 matrix over F_p (p < 2^31)."""
    A = A % p
    nrows, ncols = A.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            A[hit] = (A[hit] - np.outer(col[hit], A[r]) % p) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rowspace(a: Matrix, field: Field, ncols: int | None = None) -> Subspace:
    ncols = len(a[0]) if a else (ncols or 0)
    return Subspace(field, ncols, a)


def rref(a: Matrix, field: Field) -> tuple[Matrix, list[int]]:
    s = rowspace(a, field)
    return s.basis(), s.pivots


def rank(a: Matrix, field: Field) -> int:
    return rowspace(a, field).dim if a else 0


def kernel(a: Matrix, field: Field, ncols: int | None = None) -> list[list]:
    """Basis of the right null space {v : A v = 0}."""
    ncols = len(a[0]) if a else ncols
    if ncols is None:
        raise ValueError("kernel of an empty matrix needs ncols")
    return Subspace(field, ncols, a).complement_kernel()


def span_of_kernel(a: Matrix, field: Field, ncols: int | None = None) -> Subspace:
    ncols = len(a[0]) if a else ncols
    return Subspace(field, ncols, kernel(a, field, ncols))


def solve(a: Matrix, b: Sequence, field: Field) -> list:
    """Unique solution of A x = b for square invertible A."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    s = Subspace(field, n + 1, aug)
    if s.pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n] for row in s.basis()]


def inverse(a: Matrix, field: Field) -> Matrix:
    n = len(a)
    one, zero = field.one, field.zero
    aug = [list(a[i]) + [one if j == i else zero for j in range(n)] for i in range(n)]
    s = Subspace(field, 2 * n, aug)
    if s.pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in s.basis()]


def det(a: Matrix, field: Field):
    """Determinant by Gaussian elimination."""
    n = len(a)
    if n == 0:
        return field.one
    p = _modulus(field)
    m = [[_raw(x, p) for x in row] for row in a]
    result = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return field.zero
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            result = -result
        pk = m[k][k]
        result = result * pk
        inv = pow(pk, -1, p) if p is not None else 1 / pk
        for r in range(k + 1, n):
            f = m[r][k]
            if not f:
                continue
            f = f * inv
            row_k = m[k]
            row_r = m[r]
            if p is not None:
                for j in range(k, n):
                    row_r[j] = (row_r[j] - f * row_k[j]) % p
            else:
                for j in range(k, n):
                    row_r[j] = row_r[j] - f * row_k[j]
        if p is not None:
            result %= p
    return _cook(result, p)
