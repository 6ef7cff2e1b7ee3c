"""The finite algebra B = k[x_1..x_n]/(f_1..f_n) and its tensor square.

Everything after :func:`build_algebra` is matrix work: the Groebner basis
is used once to fill the multiplication matrices, and elements of B and of
B (x) B are coordinate vectors / matrices over the standard monomial basis.
"""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .groebner import GroebnerBasis, buchberger, is_zero_dimensional, normal_form, standard_monomials
from .polyring import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    PolyRing,
    format_monomial,
    format_poly,
    parse_poly,
)
from .scalar import Field


class HypothesisError(ValueError):
    """The presentation does not define a finite complete intersection."""


class NotSquareError(HypothesisError):
    pass


class NotFiniteError(HypothesisError):
    pass


class AlgebraMismatchError(ValueError):
    pass


class QuotientAlgebra:
    """B with its standard-monomial basis and multiplication matrices.

    ``mult[i]`` is the matrix of multiplication by x_i: column j holds the
    coordinates of x_i * b_j.  ``left[j]`` is the matrix of multiplication
    by the basis monomial b_j.
    """

    def __init__(self, ring: PolyRing, polys: Sequence[Polynomial], gb: GroebnerBasis,
                 basis: list[Monomial]):
        self.ring = ring
        self.field: Field = ring.field
        self.variables = ring.variables
        self.nvars = ring.nvars
        self.polys = tuple(polys)
        self.gb = gb
        self.basis = tuple(basis)
        self.dim = len(basis)
        self.index = {m: k for k, m in enumerate(basis)}
        self.mult = [self._mult_matrix_of_var(i) for i in range(self.nvars)]
        self.left = self._basis_left_matrices()
        self._mono_cache: dict[Monomial, list] = {}
        # table[j][k] = coordinates of b_j * b_k
        self.table = [list(map(list, zip(*L))) for L in self.left]

    # --- construction helpers ----------------------------------------------
    def _coords_of_poly(self, p: Polynomial) -> list:
        z = self.field.zero
        out = [z] * self.dim
        for m, c in p.terms.items():
            out[self.index[m]] = c
        return out

    def _mult_matrix_of_var(self, i: int) -> linalg.Matrix:
        cols = []
        for b in self.basis:
            m = list(b)
            m[i] += 1
            m = tuple(m)
            if m in self.index:
                col = [self.field.zero] * self.dim
                col[self.index[m]] = self.field.one
            else:
                col = self._coords_of_poly(normal_form(self.ring.monomial(m), self.gb))
            cols.append(col)
        return linalg.transpose(cols)

    def _basis_left_matrices(self) -> list[linalg.Matrix]:
        mats: list = [None] * self.dim
        mats[0] = linalg.identity(self.dim, self.field)
        for k, b in enumerate(self.basis):
            if k == 0:
                continue
            i = next(i for i, e in enumerate(b) if e)
            parent = list(b)
            parent[i] -= 1
            # standard monomials form an order ideal, so the parent is a basis element
            mats[k] = linalg.matmul(self.mult[i], mats[self.index[tuple(parent)]], self.field)
        return mats

    # --- coordinates -------------------------------------------------------
    def monomial_coords(self, m: Monomial) -> list:
        """Coordinates of the residue of x^m, computed with the multiplication matrices."""
        m = tuple(m)
        hit = self._mono_cache.get(m)
        if hit is not None:
            return hit
        k = self.index.get(m)
        if k is not None:
            out = [self.field.zero] * self.dim
            out[k] = self.field.one
        else:
            i = next(i for i, e in enumerate(m) if e)
            parent = list(m)
            parent[i] -= 1
            out = linalg.matvec(self.mult[i], self.monomial_coords(tuple(parent)), self.field)
        self._mono_cache[m] = out
        return out

    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, [self.field(c) for c in coords])

    def basis_element(self, k: int) -> "AlgebraElement":
        z = [self.field.zero] * self.dim
        z[k] = self.field.one
        return AlgebraElement(self, z)

    def one(self) -> "AlgebraElement":
        return self.basis_element(0)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, [self.field.zero] * self.dim)

    def project(self, p: Polynomial | str) -> "AlgebraElement":
        return project(p, self)

    def eval_on_matrices(self, p: Polynomial) -> linalg.Matrix:
        """p(M_1, ..., M_n): the matrix of multiplication by p."""
        d = self.dim
        total = linalg.zeros(d, d, self.field)
        for m, c in p.terms.items():
            v = self.monomial_coords(m)
            # multiplication by a residue r = sum r_k b_k is sum r_k L_k
            for k, rk in enumerate(v):
                if rk:
                    total = linalg.matadd(total, linalg.matscale(self.left[k], c * rk))
        return total

    def mult_matrix(self, e: "AlgebraElement") -> linalg.Matrix:
        d = self.dim
        total = linalg.zeros(d, d, self.field)
        for k, ek in enumerate(e.coords):
            if ek:
                total = linalg.matadd(total, linalg.matscale(self.left[k], ek))
        return total

    def basis_labels(self) -> list[str]:
        return [format_monomial(m, self.variables) for m in self.basis]

    def check_invariants(self) -> None:
        """Assert the structural invariants; raises AssertionError on failure."""
        F = self.field
        assert self.basis[0] == (0,) * self.nvars, "first basis element must be 1"
        for i in range(self.nvars):
            for j in range(i + 1, self.nvars):
                a = linalg.matmul(self.mult[i], self.mult[j], F)
                b = linalg.matmul(self.mult[j], self.mult[i], F)
                assert a == b, f"multiplication matrices {i},{j} do not commute"
        for k, f in enumerate(self.polys):
            assert linalg.is_zero_matrix(self.eval_on_matrices(f)), f"f_{k + 1}(M) != 0"

    def __repr__(self):
        fs = ", ".join(format_poly(f) for f in self.polys)
        return f"QuotientAlgebra({self.field!r}[{', '.join(self.variables)}]/({fs}), dim={self.dim})"


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: QuotientAlgebra, coords: list):
        if len(coords) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = list(coords)

    def _check(self, other: "AlgebraElement"):
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mult(self, other)
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, [c * a for a in self.coords])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_polynomial(self) -> Polynomial:
        A = self.algebra
        return Polynomial(A.ring, {m: c for m, c in zip(A.basis, self.coords) if c})

    def __repr__(self):
        return f"AlgebraElement({format_poly(self.to_polynomial())})"


class LinearFunctional:
    """phi in Hom_k(B, k), stored as its values on the basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: QuotientAlgebra, coords: list):
        if len(coords) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = list(coords)

    def __call__(self, e: AlgebraElement):
        if e.algebra is not self.algebra:
            raise AlgebraMismatchError("functional and element belong to different algebras")
        total = self.algebra.field.zero
        for a, b in zip(self.coords, e.coords):
            if a and b:
                total = total + a * b
        return total

    def module_action(self, b: AlgebraElement) -> "LinearFunctional":
        """The functional c -> phi(b c)."""
        L = self.algebra.mult_matrix(b)
        return LinearFunctional(self.algebra, linalg.vecmat(self.coords, L, self.algebra.field))

    def __eq__(self, other):
        if not isinstance(other, LinearFunctional):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __repr__(self):
        return f"LinearFunctional({[str(c) for c in self.coords]})"


class TensorElement:
    """An element sum C[i][j] b_i (x) b_j of B (x) B."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: QuotientAlgebra, matrix: linalg.Matrix):
        d = algebra.dim
        if len(matrix) != d or any(len(r) != d for r in matrix):
            raise ValueError(f"tensor coefficient matrix must be {d}x{d}")
        self.algebra = algebra
        self.matrix = [list(r) for r in matrix]

    @classmethod
    def from_vector(cls, algebra: QuotientAlgebra, vec: Sequence) -> "TensorElement":
        d = algebra.dim
        return cls(algebra, [list(vec[i * d:(i + 1) * d]) for i in range(d)])

    @classmethod
    def pure(cls, a: AlgebraElement, b: AlgebraElement) -> "TensorElement":
        return cls(a.algebra, [[x * y for y in b.coords] for x in a.coords])

    def vector(self) -> list:
        return [x for row in self.matrix for x in row]

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError("tensors belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return TensorElement(self.algebra, linalg.matadd(self.matrix, other.matrix))

    def __sub__(self, other):
        self._check(other)
        return TensorElement(self.algebra, linalg.matsub(self.matrix, other.matrix))

    def __neg__(self):
        return TensorElement(self.algebra, [[-x for x in r] for r in self.matrix])

    def scale(self, c) -> "TensorElement":
        return TensorElement(self.algebra, linalg.matscale(self.matrix, self.algebra.field(c)))

    def act(self, left: linalg.Matrix | None, right: linalg.Matrix | None) -> "TensorElement":
        """(a (x) b) * t, given the multiplication matrices of a and b (None = 1)."""
        F = self.algebra.field
        m = self.matrix
        if left is not None:
            m = linalg.matmul(left, m, F)
        if right is not None:
            m = linalg.matmul(m, linalg.transpose(right), F)
        return TensorElement(self.algebra, m)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        self._check(other)
        A = self.algebra
        F = A.field
        d = A.dim
        total = linalg.zeros(d, d, F)
        for i in range(d):
            row = self.matrix[i]
            if not any(row):
                continue
            li = linalg.matmul(A.left[i], other.matrix, F)
            for j, c in enumerate(row):
                if c:
                    prod = linalg.matmul(li, linalg.transpose(A.left[j]), F)
                    total = linalg.matadd(total, linalg.matscale(prod, c))
        return TensorElement(A, total)

    def swap(self) -> "TensorElement":
        return TensorElement(self.algebra, linalg.transpose(self.matrix))

    def is_zero(self) -> bool:
        return linalg.is_zero_matrix(self.matrix)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.algebra is other.algebra and self.matrix == other.matrix

    def terms(self) -> list[tuple[str, str, object]]:
        """Nonzero coefficients as (left label, right label, coefficient)."""
        labels = self.algebra.basis_labels()
        return [
            (labels[i], labels[j], c)
            for i, row in enumerate(self.matrix)
            for j, c in enumerate(row)
            if c
        ]

    def __repr__(self):
        parts = [f"{c}*{a}(x){b}" for a, b, c in self.terms()]
        return "TensorElement(" + (" + ".join(parts) if parts else "0") + ")"


def build_algebra(variables: Sequence[str], polynomials: Sequence[Polynomial | str], field: Field,
                  order: MonomialOrder | str = GREVLEX) -> QuotientAlgebra:
    """Build B = k[variables]/(polynomials) and verify its invariants."""
    ring = PolyRing(field, variables, order)
    polys = [parse_poly(p, ring) if isinstance(p, str) else Polynomial(ring, dict(p.terms)) for p in polynomials]
    if len(polys) != ring.nvars:
        raise NotSquareError(
            f"not square: {len(polys)} polynomial(s) in {ring.nvars} variable(s) "
            f"({', '.join(format_poly(p) for p in polys)})"
        )
    gb = buchberger(polys, ring.order)
    if gb.is_unit():
        raise NotFiniteError(
            "not finite: the ideal is the unit ideal, so B = 0 "
            f"({', '.join(format_poly(p) for p in polys)})"
        )
    if not is_zero_dimensional(gb):
        lms = ", ".join(format_monomial(m, ring.variables) for m in gb.leading_monomials())
        raise NotFiniteError(f"not finite: quotient is infinite-dimensional (leading monomials {lms})")
    basis = standard_monomials(gb)
    B = QuotientAlgebra(ring, polys, gb, basis)
    B.check_invariants()
    return B


def project(p: Polynomial | str, B: QuotientAlgebra) -> AlgebraElement:
    """pi: coordinates of the normal form of p."""
    if isinstance(p, str):
        p = parse_poly(p, B.ring)
    nf = normal_form(p, B.gb)
    return AlgebraElement(B, B._coords_of_poly(nf))


def mult(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    e1._check(e2)
    B = e1.algebra
    F = B.field
    out = [F.zero] * B.dim
    for j, a in enumerate(e1.coords):
        if not a:
            continue
        for k, b in enumerate(e2.coords):
            if not b:
                continue
            ab = a * b
            for r, t in enumerate(B.table[j][k]):
                if t:
                    out[r] = out[r] + ab * t
    return AlgebraElement(B, out)


def tensor_project(p: Polynomial, B: QuotientAlgebra) -> TensorElement:
    """pi (x) pi on the doubled ring k[X, Y] (X = first factor)."""
    n = B.nvars
    if p.ring.nvars != 2 * n:
        raise ValueError(f"expected a polynomial in {2 * n} variables, got {p.ring.nvars}")
    F = B.field
    d = B.dim
    # group by the X-part so each left residue is used once
    grouped: dict[Monomial, list] = {}
    for m, c in p.terms.items():
        mx, my = m[:n], m[n:]
        v = B.monomial_coords(my)
        acc = grouped.get(mx)
        if acc is None:
            grouped[mx] = [c * y for y in v]
        else:
            grouped[mx] = [a + c * y for a, y in zip(acc, v)]
    C = linalg.zeros(d, d, F)
    for mx, right in grouped.items():
        left = B.monomial_coords(mx)
        for i, a in enumerate(left):
            if a:
                row = C[i]
                C[i] = [r + a * y for r, y in zip(row, right)]
    return TensorElement(B, C)


def collapse_m(t: TensorElement) -> AlgebraElement:
    """The multiplication map m: B (x) B -> B."""
    B = t.algebra
    F = B.field
    out = [F.zero] * B.dim
    for i, row in enumerate(t.matrix):
        for j, c in enumerate(row):
            if c:
                for r, s in enumerate(B.table[i][j]):
                    if s:
                        out[r] = out[r] + c * s
    return AlgebraElement(B, out)


def collapse_matrix(B: QuotientAlgebra) -> linalg.Matrix:
    """Matrix of m acting on vectorised tensors (index i*d + j)."""
    d = B.dim
    cols = [B.table[i][j] for i in range(d) for j in range(d)]
    return linalg.transpose(cols)


def ideal_I_span(B: QuotientAlgebra) -> list[TensorElement]:
    """A basis of I = ker m: the elements b_i (x) b_j - 1 (x) b_i b_j with i > 0."""
    d = B.dim
    F = B.field
    out = []
    for i in range(1, d):
        for j in range(d):
            C = linalg.zeros(d, d, F)
            C[i][j] = F.one
            for r, s in enumerate(B.table[i][j]):
                if s:
                    C[0][r] = C[0][r] - s
            out.append(TensorElement(B, C))
    return out


def tensor_subspace(B: QuotientAlgebra, tensors: Sequence[TensorElement]) -> linalg.Subspace:
    return linalg.Subspace(B.field, B.dim * B.dim, [t.vector() for t in tensors])
