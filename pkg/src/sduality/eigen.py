"""Complex eigen-decomposition for small dense matrices.

Householder reduction to Hessenberg form, then shifted QR iteration with
Wilkinson shifts and Givens rotations to a complex Schur form T = Q^H A Q.
Eigenvectors come from back substitution on T.
"""

from __future__ import annotations

import numpy as np

EPS = np.finfo(float).eps


class EigenError(ArithmeticError):
    pass


def hessenberg(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (H, Q) with H = Q^H A Q upper Hessenberg and Q unitary."""
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        # H <- (I - 2vv^H) H (I - 2vv^H)
        h[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h, q


def _givens(a: complex, b: complex) -> tuple[float, complex]:
    """(c, s) with [[c, s], [-conj(s), c]] @ [a, b] = [r, 0], c real."""
    if b == 0:
        return 1.0, 0j
    if a == 0:
        return 0.0, np.conj(b) / abs(b)
    r = np.hypot(abs(a), abs(b))
    c = abs(a) / r
    s = (a / abs(a)) * np.conj(b) / r
    return c, s


def _wilkinson(h: np.ndarray, hi: int) -> complex:
    a, b = h[hi - 1, hi - 1], h[hi - 1, hi]
    c, d = h[hi, hi - 1], h[hi, hi]
    tr = (a + d) / 2
    disc = np.sqrt(((a - d) / 2) ** 2 + b * c)
    m1, m2 = tr + disc, tr - disc
    return m1 if abs(m1 - d) < abs(m2 - d) else m2


def schur(a: np.ndarray, max_iter_factor: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Complex Schur form: returns (T, Q) with A = Q T Q^H, T upper triangular."""
    h, q = hessenberg(a)
    n = h.shape[0]
    hi = n - 1
    its = 0
    total = 0
    cap = max_iter_factor * max(n, 1)
    while hi > 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if s == 0.0:
                s = np.abs(h).max()
            if abs(h[lo, lo - 1]) <= EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            its = 0
            continue
        total += 1
        its += 1
        if total > cap:
            raise EigenError(f"QR iteration did not converge in {cap} steps")
        if its % 11 == 10:
            # exceptional shift to break cycles
            mu = h[hi, hi] + abs(h[hi, hi - 1]) * (0.75 + 0.5j)
        else:
            mu = _wilkinson(h, hi)
        # rotations from the QR factorisation of the shifted active block
        blk = h[lo:hi + 1, lo:hi + 1] - mu * np.eye(hi - lo + 1)
        rots = []
        for k in range(hi - lo):
            c, s = _givens(blk[k, k], blk[k + 1, k])
            rots.append((c, s))
            r0 = blk[k, k:].copy()
            r1 = blk[k + 1, k:].copy()
            blk[k, k:] = c * r0 + s * r1
            blk[k + 1, k:] = -np.conj(s) * r0 + c * r1
        # similarity on the full matrix: left rotations, then right rotations
        for k, (c, s) in enumerate(rots):
            i = lo + k
            r0 = h[i, :].copy()
            r1 = h[i + 1, :].copy()
            h[i, :] = c * r0 + s * r1
            h[i + 1, :] = -np.conj(s) * r0 + c * r1
        for k, (c, s) in enumerate(rots):
            i = lo + k
            for m in (h, q):
                c0 = m[:, i].copy()
                c1 = m[:, i + 1].copy()
                m[:, i] = c * c0 + np.conj(s) * c1
                m[:, i + 1] = -s * c0 + c * c1
    return np.triu(h), q


def eig(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and unit right eigenvectors (columns) of a square matrix."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0, complex), np.zeros((0, 0), complex)
    t, q = schur(a)
    lam = np.diag(t).copy()
    scale = max(np.abs(t).max(), 1.0)
    y = np.zeros((n, n), dtype=complex)
    for k in range(n):
        y[k, k] = 1.0
        for i in range(k - 1, -1, -1):
            den = t[i, i] - lam[k]
            if abs(den) < EPS * scale:
                den = EPS * scale
            y[i, k] = -(t[i, i + 1:k + 1] @ y[i + 1:k + 1, k]) / den
    v = q @ y
    v /= np.linalg.norm(v, axis=0)
    return lam, v
