"""Floating-point cross-check of eta by residue sums over the zeros of f.

For an etale system with simple zeros z, the exact functional satisfies

    eta(b) = sum_z b(z) / det J_f(z).

Zeros are found as joint eigenvectors of the multiplication matrices: the
evaluation functional at z is a common left eigenvector of every M_i.  This
path never touches the exact computation of delta.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import AlgebraElement, NotFiniteError, QuotientAlgebra, build_algebra
from .duality import DualityData, Report, jacobian_element
from .eigen import EigenError, eig
from .polyring import Polynomial

MAX_DIM = 30
NEWTON_STEPS = 10
MERGE_TOL = 1e-8
RESIDUAL_TOL = 1e-9


class OracleUnavailable(RuntimeError):
    pass


@dataclass
class NumericZero:
    point: np.ndarray
    jacobian_det: complex
    residual: float
    # residual relative to the summed term magnitudes of f_i at the point
    relative_residual: float = 0.0


def is_etale(B: QuotientAlgebra) -> bool:
    """Multiplication by the Jacobian determinant is invertible on B."""
    J = B.mult_matrix(jacobian_element(B))
    return bool(linalg.det(J, B.field))


def _to_float(M) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in M], dtype=float)


class _NumericSystem:
    """f and its Jacobian determinant, evaluated in complex double precision."""

    def __init__(self, B: QuotientAlgebra):
        self.n = B.nvars
        self.polys = [self._compile(f) for f in B.polys]
        jac = [[f.derivative(i) for i in range(self.n)] for f in B.polys]
        self.jac = [[self._compile(p) for p in row] for row in jac]

    @staticmethod
    def _compile(p: Polynomial):
        exps = np.array(list(p.terms), dtype=int).reshape(-1, p.ring.nvars)
        coeffs = np.array([float(c) for c in p.terms.values()], dtype=float)
        return exps, coeffs

    @staticmethod
    def evaluate(compiled, z: np.ndarray) -> complex:
        exps, coeffs = compiled
        if not len(coeffs):
            return 0j
        return complex(np.sum(coeffs * np.prod(z[None, :] ** exps, axis=1)))

    def values(self, z):
        return np.array([self.evaluate(f, z) for f in self.polys])

    def magnitudes(self, z):
        out = []
        for exps, coeffs in self.polys:
            out.append(float(np.sum(np.abs(coeffs * np.prod(z[None, :] ** exps, axis=1)))) if len(coeffs) else 0.0)
        return np.array(out)

    def jacobian(self, z):
        # jac[j][i] = d f_j / d x_i
        return np.array([[self.evaluate(p, z) for p in row] for row in self.jac])

    def newton(self, z: np.ndarray, steps: int = NEWTON_STEPS) -> np.ndarray:
        for _ in range(steps):
            fz = self.values(z)
            if np.max(np.abs(fz)) == 0.0:
                break
            try:
                dz = np.linalg.solve(self.jacobian(z), fz)
            except np.linalg.LinAlgError:
                break
            z = z - dz
            if np.max(np.abs(dz)) <= 1e-16 * max(1.0, np.max(np.abs(z))):
                break
        return z


def solve_numeric(B: QuotientAlgebra, seed: int = 0, retries: int = 5) -> list[NumericZero]:
    """Zeros of an etale system from the eigenvectors of a random combination of M_i^T."""
    if B.dim > MAX_DIM:
        raise OracleUnavailable(f"dimension {B.dim} exceeds {MAX_DIM}")
    if not B.field.is_rational:
        raise OracleUnavailable("the numeric oracle needs the rational base field")
    if not is_etale(B):
        raise OracleUnavailable("not etale: the Jacobian is not invertible in B; try perturb()")
    rng = random.Random(seed)
    system = _NumericSystem(B)
    mats = [_to_float(M).T for M in B.mult]
    last = "degenerate spectrum"
    for _ in range(retries):
        r = [Fraction(rng.randint(1, 997), rng.randint(1, 97)) * rng.choice((1, -1)) for _ in mats]
        comb = sum(float(ri) * M for ri, M in zip(r, mats))
        try:
            lam, vecs = eig(comb)
        except EigenError as exc:
            last = str(exc)
            continue
        scale = max(1.0, np.max(np.abs(lam)))
        gaps = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(gaps, np.inf)
        if len(lam) > 1 and gaps.min() < 1e-6 * scale:
            last = "degenerate spectrum"
            continue
        zeros: list[NumericZero] = []
        for k in range(B.dim):
            w = vecs[:, k]
            ww = np.vdot(w, w)
            z = np.array([np.vdot(w, M @ w) / ww for M in mats])
            z = system.newton(z)
            if any(np.max(np.abs(z - o.point)) <= MERGE_TOL * max(1.0, np.max(np.abs(z))) for o in zeros):
                continue
            vals = np.abs(system.values(z))
            rel = float(np.max(vals / np.maximum(system.magnitudes(z), 1.0)))
            zeros.append(NumericZero(z, complex(np.linalg.det(system.jacobian(z))), float(np.max(vals)), rel))
        if len(zeros) != B.dim:
            raise OracleUnavailable(f"zero count mismatch: found {len(zeros)}, expected {B.dim}")
        return zeros
    raise OracleUnavailable(f"{last} after {retries} attempts")


def eta_numeric(B: QuotientAlgebra, zeros: list[NumericZero], b: AlgebraElement) -> complex:
    """sum_z b(z) / det J(z), with b read through its standard-monomial representative."""
    exps = np.array(B.basis, dtype=int).reshape(-1, B.nvars)
    coeffs = np.array([float(c) for c in b.coords])
    terms = []
    for z in zeros:
        bz = np.sum(coeffs * np.prod(z.point[None, :] ** exps, axis=1))
        terms.append(complex(bz / z.jacobian_det))
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def compare_eta(B: QuotientAlgebra, D: DualityData, tolerance: float = 1e-8,
                abs_floor: float = 1e-10, seed: int = 0) -> tuple[Report, dict]:
    """Entrywise comparison of exact eta with the residue sums.

    An entry passes when |numeric - exact| <= max(tolerance * |exact|, abs_floor)
    and the imaginary part is within the same bound.
    """
    zeros = solve_numeric(B, seed)
    report = Report()
    devs = []
    worst = 0.0
    for k in range(B.dim):
        exact = float(D.eta.coords[k])
        num = eta_numeric(B, zeros, B.basis_element(k))
        allowed = max(tolerance * abs(exact), abs_floor)
        dev = abs(num.real - exact)
        worst = max(worst, dev)
        devs.append({"basis": B.basis_labels()[k], "exact": exact, "numeric": num.real,
                     "imag": num.imag, "deviation": dev, "allowed": allowed,
                     "passed": dev <= allowed and abs(num.imag) <= allowed})
    max_res = max(z.residual for z in zeros)
    max_rel = max(z.relative_residual for z in zeros)
    report.add("oracle_eta_agreement", all(d["passed"] for d in devs), f"max deviation {worst:.3e}")
    report.add("oracle_residuals", max_rel <= RESIDUAL_TOL,
               f"max residual {max_res:.3e} (relative {max_rel:.3e})")
    details = {"zeros": len(zeros), "max_deviation": worst, "max_residual": max_res, "entries": devs}
    return report, details


def perturb(B: QuotientAlgebra, seed: int = 0, retries: int = 5, require_etale: bool = True):
    """Subtract random rational constants 1/2 <= |eps_i| <= 3 from each f_i and rebuild.

    Returns (algebra, epsilons).
    """
    rng = random.Random(seed)
    last = None
    for _ in range(retries):
        # |eps| in [1/2, 3]: small shifts leave tight clusters of zeros whose
        # conditioning eats into double precision
        eps = [Fraction(rng.randint(5, 30) * rng.choice((1, -1)), 10) for _ in B.polys]
        polys = [f - e for f, e in zip(B.polys, eps)]
        try:
            P = build_algebra(B.variables, polys, B.field, B.ring.order)
        except NotFiniteError as exc:
            last = exc
            continue
        if require_etale and not is_etale(P):
            last = "perturbed system is not etale"
            continue
        return P, eps
    raise OracleUnavailable(f"could not perturb to a finite etale system: {last}")
