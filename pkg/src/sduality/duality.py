"""The canonical self-duality of B = k[x]/(f).

A lifting is an n x n matrix (a_ij) over the doubled ring k[X, Y] with

    f_j(X) - f_j(Y) = sum_i a_ij (X_i - Y_i)        (column j lifts f_j).

Its determinant, pushed into B (x) B, is the element ``delta``.  Read as a
map Hom(B, k) -> B, phi -> sum C[i][j] phi(b_i) b_j, delta is the
isomorphism theta; eta = theta^-1(1) and <b, c> = eta(bc) is the Gram form.

This module also checks the ideal identities satisfied by delta inside
B (x) B: independence from the lifting, (delta) = Fit(I) = Ann(I), and
Ann(delta) = I, where I is the kernel of multiplication.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import linalg
from .algebra import (
    AlgebraElement,
    LinearFunctional,
    QuotientAlgebra,
    TensorElement,
    collapse_m,
    collapse_matrix,
    ideal_I_span,
    project,
    tensor_project,
)
from .forms import BilinearForm
from .polyring import (
    Polynomial,
    PolyRing,
    det_poly,
    divide_exact_linear,
    random_poly,
    to_doubled,
)


class DualityFailure(ArithmeticError):
    """theta is singular; the input violates the hypotheses (or there is a bug)."""


class LiftingError(AssertionError):
    pass


# --- liftings ----------------------------------------------------------------

def _telescope(f: Polynomial, dring: PolyRing, i: int, order: Sequence[int]) -> Polynomial:
    """f with the variables order[:i] read on the Y side and the rest on X."""
    n = f.ring.nvars
    on_y = set(order[:i])

    def place(m):
        out = [0] * (2 * n)
        for k, e in enumerate(m):
            out[n + k if k in on_y else k] = e
        return tuple(out)

    return f.map_monomials(dring, place)


def lift_difference(f: Polynomial, dring: PolyRing | None = None,
                    order: Sequence[int] | None = None) -> list[Polynomial]:
    """One column of the canonical lifting of f.

    Swapping X_k -> Y_k one variable at a time (in ``order``, default
    x_1, ..., x_n) telescopes f(X) - f(Y) into n differences, the k-th of
    which vanishes at X_k = Y_k and is divided exactly by X_k - Y_k.
    """
    n = f.ring.nvars
    dring = dring or f.ring.doubled()
    order = list(range(n)) if order is None else list(order)
    col: list = [None] * n
    for step, k in enumerate(order):
        before = _telescope(f, dring, step, order)
        after = _telescope(f, dring, step + 1, order)
        col[k] = divide_exact_linear(before - after, k)
    diff = to_doubled(f, dring, 0) - to_doubled(f, dring, 1)
    if sum((col[k] * _diag(dring, k) for k in range(n)), dring.zero()) != diff:
        raise LiftingError("telescoping lift does not reproduce f(X) - f(Y)")
    return col


def _diag(dring: PolyRing, k: int) -> Polynomial:
    n = dring.nvars // 2
    return dring.gen(k) - dring.gen(n + k)


@dataclass
class Lifting:
    """Matrix (a_ij) over k[X, Y]; ``entries[i][j]`` is a_ij."""

    ring: PolyRing  # the doubled ring
    polys: tuple
    entries: list

    def __post_init__(self):
        self.verify()

    @property
    def n(self) -> int:
        return len(self.polys)

    def column(self, j: int) -> list[Polynomial]:
        return [self.entries[i][j] for i in range(self.n)]

    def verify(self) -> None:
        for j, f in enumerate(self.polys):
            diff = to_doubled(f, self.ring, 0) - to_doubled(f, self.ring, 1)
            total = self.ring.zero()
            for i in range(self.n):
                total = total + self.entries[i][j] * _diag(self.ring, i)
            if total != diff:
                raise LiftingError(f"column {j + 1} does not lift f_{j + 1}")

    def determinant(self) -> Polynomial:
        return det_poly(self.entries, self.ring)


def canonical_lifting(B: QuotientAlgebra, order: Sequence[int] | None = None) -> Lifting:
    dring = B.ring.doubled()
    cols = [lift_difference(f, dring, order) for f in B.polys]
    n = B.nvars
    entries = [[cols[j][i] for j in range(n)] for i in range(n)]
    return Lifting(dring, B.polys, entries)


def koszul_columns(dring: PolyRing) -> list[list[Polynomial]]:
    """Syzygies (X_l - Y_l) e_k - (X_k - Y_k) e_l, k < l, of the diagonal generators."""
    n = dring.nvars // 2
    cols = []
    for k, l in combinations(range(n), 2):
        col = [dring.zero()] * n
        col[k] = _diag(dring, l)
        col[l] = -_diag(dring, k)
        cols.append(col)
    return cols


def alternate_lifting(L: Lifting, rng: random.Random, max_degree: int = 2, nterms: int = 3) -> Lifting:
    """L + K V with K the Koszul columns and V random multipliers of bounded degree."""
    K = koszul_columns(L.ring)
    n = L.n
    entries = [list(row) for row in L.entries]
    for c, kcol in enumerate(K):
        for j in range(n):
            v = random_poly(L.ring, rng, max_degree, nterms)
            if v.is_zero():
                continue
            for i in range(n):
                if not kcol[i].is_zero():
                    entries[i][j] = entries[i][j] + kcol[i] * v
    return Lifting(L.ring, L.polys, entries)


# --- delta, theta, eta, gram -------------------------------------------------

def delta(B: QuotientAlgebra, L: Lifting) -> TensorElement:
    return tensor_project(L.determinant(), B)


def jacobian_element(B: QuotientAlgebra) -> AlgebraElement:
    """project(det(d f_j / d x_i))."""
    n = B.nvars
    J = [[B.polys[j].derivative(i) for j in range(n)] for i in range(n)]
    return project(det_poly(J, B.ring), B)


@dataclass
class DualityData:
    algebra: QuotientAlgebra
    lifting: Lifting
    delta: TensorElement
    theta_matrix: list
    eta: LinearFunctional
    gram: BilinearForm


def theta_apply(D: DualityData | TensorElement, phi: LinearFunctional) -> AlgebraElement:
    """theta(phi) = sum C[i][j] phi(b_i) b_j, i.e. the row vector phi times C."""
    t = D.delta if isinstance(D, DualityData) else D
    B = t.algebra
    if phi.algebra is not B:
        raise ValueError("functional belongs to a different algebra")
    return AlgebraElement(B, linalg.vecmat(phi.coords, t.matrix, B.field))


def solve_eta(t: TensorElement) -> LinearFunctional:
    B = t.algebra
    one = [B.field.zero] * B.dim
    one[0] = B.field.one
    try:
        coords = linalg.solve(linalg.transpose(t.matrix), one, B.field)
    except linalg.SingularMatrixError as exc:
        raise DualityFailure("duality failure: theta is singular") from exc
    return LinearFunctional(B, coords)


def gram_matrix(B: QuotientAlgebra, eta: LinearFunctional) -> list:
    F = B.field
    d = B.dim
    G = [[F.zero] * d for _ in range(d)]
    # every entry is computed on its own, so the symmetry check is not vacuous
    for k in range(d):
        for l in range(d):
            v = F.zero
            for r, s in enumerate(B.table[k][l]):
                if s and eta.coords[r]:
                    v = v + s * eta.coords[r]
            G[k][l] = v
    return G


def compute_duality(B: QuotientAlgebra, L: Lifting | None = None) -> DualityData:
    L = L or canonical_lifting(B)
    t = delta(B, L)
    e = solve_eta(t)
    G = BilinearForm(gram_matrix(B, e), B.field, B.basis_labels())
    return DualityData(B, L, t, t.matrix, e, G)


def eta(D: DualityData) -> LinearFunctional:
    return D.eta


def gram(D: DualityData) -> BilinearForm:
    return D.gram


# --- ideals inside B (x) B ---------------------------------------------------

def _var_actions(B: QuotientAlgebra):
    """Multiplication by x_k (x) 1 and 1 (x) x_k on coefficient matrices."""
    F = B.field
    acts = []
    for M in B.mult:
        Mt = linalg.transpose(M)
        acts.append(lambda C, M=M: linalg.matmul(M, C, F))
        acts.append(lambda C, Mt=Mt: linalg.matmul(C, Mt, F))
    return acts


def ideal_span(B: QuotientAlgebra, generators: Sequence[TensorElement]) -> linalg.Subspace:
    """The ideal of B (x) B generated by ``generators``, as a subspace.

    Closes the span under multiplication by x_k (x) 1 and 1 (x) x_k; since the
    standard monomials form an order ideal, this equals the span of all
    (b_i (x) b_j) * g.
    """
    d = B.dim
    space = linalg.Subspace(B.field, d * d)
    acts = _var_actions(B)
    queue = [g.matrix for g in generators]
    while queue:
        C = queue.pop()
        vec = [x for row in C for x in row]
        if space.add(vec):
            queue.extend(act(C) for act in acts)
    return space


def principal_ideal_span(B: QuotientAlgebra, t: TensorElement) -> linalg.Subspace:
    return ideal_span(B, [t])


def fitting_generators(B: QuotientAlgebra, L: Lifting) -> list[TensorElement]:
    """Images in B (x) B of the n x n minors of [ (a_ij) | Koszul columns ]."""
    n = B.nvars
    cols = [L.column(j) for j in range(n)] + koszul_columns(L.ring)
    out = []
    for chosen in combinations(range(len(cols)), n):
        minor = [[cols[c][i] for c in chosen] for i in range(n)]
        out.append(tensor_project(det_poly(minor, L.ring), B))
    return out


def fitting_ideal_span(B: QuotientAlgebra, L: Lifting) -> linalg.Subspace:
    return ideal_span(B, fitting_generators(B, L))


def annihilator_of_I(B: QuotientAlgebra) -> linalg.Subspace:
    """Joint kernel of t -> (x_k (x) 1 - 1 (x) x_k) t, i.e. of C -> M_k C - C M_k^T."""
    d = B.dim
    F = B.field
    p = getattr(F, "p", None)
    rows = []
    for M in B.mult:
        raw = [[x.value if p else x for x in r] for r in M]
        for a in range(d):
            for b in range(d):
                row: dict = {}
                # (M C)[a][b] = sum_i M[a][i] C[i][b]
                for i, m in enumerate(raw[a]):
                    if m:
                        k = i * d + b
                        row[k] = row.get(k, 0) + m
                # (C M^T)[a][b] = sum_j C[a][j] M[b][j]
                for j, m in enumerate(raw[b]):
                    if m:
                        k = a * d + j
                        row[k] = row.get(k, 0) - m
                if p:
                    row = {k: v % p for k, v in row.items() if v % p}
                else:
                    row = {k: Fraction(v) for k, v in row.items() if v}
                rows.append(row)
    eqs = linalg.Subspace.from_sparse_rows(F, d * d, rows)
    return linalg.Subspace(F, d * d, eqs.complement_kernel())


def _multiplication_equations(t: TensorElement) -> linalg.Subspace:
    """Row space of the matrix of s -> s * t (rows indexed by output coefficient)."""
    B = t.algebra
    F = B.field
    d = B.dim
    p = getattr(F, "p", None)
    # R[a][i][k] = coefficient of b_a in b_i b_k
    R = [[[B.table[i][k][a] for k in range(d)] for i in range(d)] for a in range(d)]
    RC = [linalg.matmul(R[a], t.matrix, F) for a in range(d)]
    rows = []
    for a in range(d):
        for b in range(d):
            # coefficient (a, b) of (b_i (x) b_j) t, as a function of (i, j)
            coeffs = linalg.matmul(RC[a], linalg.transpose(R[b]), F)
            flat = [x for row in coeffs for x in row]
            rows.append({k: (x.value if p else x) for k, x in enumerate(flat) if x})
    return linalg.Subspace.from_sparse_rows(F, d * d, rows)


def annihilator_of(t: TensorElement) -> linalg.Subspace:
    """Ann(t) = {s : s t = 0} in B (x) B."""
    d = t.algebra.dim
    return linalg.Subspace(t.algebra.field, d * d, _multiplication_equations(t).complement_kernel())


def annihilator_equals_I(t: TensorElement) -> bool:
    """Ann(t) == I, compared through the row spaces of their defining equations."""
    B = t.algebra
    return _multiplication_equations(t) == linalg.rowspace(collapse_matrix(B), B.field)


# --- verification ------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def as_list(self) -> list[dict]:
        return [c.as_dict() for c in self.checks]


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 1_000_003 + trial)


def verify_ideal_identities(B: QuotientAlgebra, L: Lifting | None = None, trials: int = 5, seed: int = 0) -> Report:
    """Lifting independence of delta, (delta) = Fit(I) = Ann(I), Ann(delta) = I."""
    L = L or canonical_lifting(B)
    report = Report()
    t = delta(B, L)

    mismatched = []
    for k in range(trials):
        alt = alternate_lifting(L, _trial_rng(seed, k))
        if delta(B, alt) != t:
            mismatched.append(k)
    report.add("delta_independent_of_lifting", not mismatched,
               f"{trials} alternate liftings" + (f"; mismatched trials {mismatched}" if mismatched else ""))

    principal = principal_ideal_span(B, t)
    fit = fitting_ideal_span(B, L)
    report.add("fitting_ideal_equals_delta_ideal", fit == principal,
               f"dim Fit(I) = {fit.dim}, dim (delta) = {principal.dim}")
    ann_i = annihilator_of_I(B)
    report.add("dim_annihilator_of_I", ann_i.dim == B.dim, f"{ann_i.dim} vs d = {B.dim}")
    report.add("annihilator_of_I_equals_delta_ideal", ann_i == principal,
               f"dim Ann(I) = {ann_i.dim}, dim (delta) = {principal.dim}")
    report.add("annihilator_of_delta_equals_I", annihilator_equals_I(t),
               f"expected dim Ann(delta) = {B.dim * B.dim - B.dim}")
    return report


def theta_linearity_check(D: DualityData, trials: int = 20, seed: int = 0) -> Report:
    """theta(b . phi) = b theta(phi) with (b . phi)(c) = phi(bc); theta invertible."""
    B = D.algebra
    F = B.field
    report = Report()
    bad = []
    for k in range(trials):
        rng = _trial_rng(seed, k)
        b = B.element([F.random(rng) for _ in range(B.dim)])
        if k == 0:
            b = B.one()
        phi = LinearFunctional(B, [F.random(rng) for _ in range(B.dim)])
        if theta_apply(D, phi.module_action(b)) != b * theta_apply(D, phi):
            bad.append(k)
    report.add("theta_B_linear", not bad, f"{trials} random (b, phi)" + (f"; failed {bad}" if bad else ""))
    detv = linalg.det(D.theta_matrix, F)
    report.add("theta_invertible", bool(detv), f"det theta = {F.format(detv)}")
    return report


def structural_checks(D: DualityData) -> Report:
    """Theta(eta) = 1, Gram symmetry and rank, dim Ann(I), Jacobian collapse, lifting identity."""
    B = D.algebra
    F = B.field
    report = Report()
    try:
        D.lifting.verify()
        report.add("lifting_identity", True)
    except LiftingError as exc:
        report.add("lifting_identity", False, str(exc))
    report.add("theta_eta_is_one", theta_apply(D, D.eta) == B.one())
    G = D.gram.matrix
    report.add("gram_symmetric", all(G[i][j] == G[j][i] for i in range(B.dim) for j in range(B.dim)))
    r = linalg.rank(G, F)
    report.add("gram_rank_full", r == B.dim, f"rank {r} of {B.dim}")
    report.add("jacobian_collapse", collapse_m(D.delta) == jacobian_element(B))
    n_i = len(ideal_I_span(B))
    report.add("dim_I", n_i == B.dim * B.dim - B.dim, f"dim I = {n_i}")
    return report


def full_identity_suite(B: QuotientAlgebra, trials: int = 5, seed: int = 0) -> Report:
    D = compute_duality(B)
    report = structural_checks(D)
    report.extend(verify_ideal_identities(B, D.lifting, trials, seed))
    report.extend(theta_linearity_check(D, trials, seed))
    return report
