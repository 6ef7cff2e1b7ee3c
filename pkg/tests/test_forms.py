import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sduality import linalg
from sduality.forms import (
    BilinearForm,
    CharacteristicTwoError,
    degree_summary,
    diagonalize,
    discriminant_class,
    invariants,
    squarefree_part,
)
from sduality.scalar import GF, QQ, Fp


def sym(F, rng, d, rank=None):
    rank = d if rank is None else rank
    if rank == 0:
        return [[F.zero] * d for _ in range(d)]
    U = [[F.random(rng, 4) for _ in range(rank)] for _ in range(d)]
    S = [[F.zero] * rank for _ in range(rank)]
    for i in range(rank):
        S[i][i] = F(rng.choice((-3, -2, -1, 1, 2, 3)))
    return linalg.matmul(linalg.matmul(U, S, F), linalg.transpose(U), F)


def test_hyperbolic_plane():
    G = BilinearForm([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]], QQ)
    diag, P = diagonalize(G)
    assert diag == [2, Fraction(-1, 2)]
    inv = invariants(G)
    assert (inv.rank, inv.signature, inv.discriminant) == (2, 0, -1)


def test_asymmetric_rejected():
    with pytest.raises(ValueError):
        BilinearForm([[Fraction(0), Fraction(1)], [Fraction(2), Fraction(0)]], QQ)


def test_characteristic_two():
    G = BilinearForm([[Fp(0, 2), Fp(1, 2)], [Fp(1, 2), Fp(0, 2)]], GF(2))
    with pytest.raises(CharacteristicTwoError):
        invariants(G)


@given(st.integers(0, 10**6), st.sampled_from([QQ, GF(7), GF(101)]))
def test_diagonalization_is_a_congruence(seed, F):
    rng = random.Random(seed)
    d = rng.randint(1, 6)
    G = BilinearForm(sym(F, rng, d, rng.randint(0, d)), F)
    diag, P = diagonalize(G)
    D = linalg.matmul(linalg.matmul(linalg.transpose(P), G.matrix, F), P, F)
    assert D == [[diag[i] if i == j else F.zero for j in range(d)] for i in range(d)]
    assert linalg.det(P, F)
    assert invariants(G).rank == linalg.rank(G.matrix, F)


@given(st.integers(0, 10**6))
def test_signature_matches_floating_eigenvalues(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 6)
    M = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            M[i][j] = M[j][i] = Fraction(rng.randint(-5, 5))
    ev = np.linalg.eigvalsh(np.array(M, dtype=float))
    if np.min(np.abs(ev)) < 1e-6:
        return  # singular or nearly so: floating signs unreliable
    inv = invariants(BilinearForm(M, QQ))
    assert inv.signature == int(np.sum(ev > 0) - np.sum(ev < 0))
    # det sign agrees with the parity of negative eigenvalues
    assert (inv.determinant < 0) == (int(np.sum(ev < 0)) % 2 == 1)


@given(st.integers(0, 10**6), st.sampled_from([QQ, GF(7), GF(32003)]))
def test_invariants_are_congruence_invariant(seed, F):
    rng = random.Random(seed)
    d = rng.randint(1, 5)
    G = sym(F, rng, d)
    while True:
        P = [[F.random(rng, 3) for _ in range(d)] for _ in range(d)]
        if linalg.det(P, F):
            break
    H = linalg.matmul(linalg.matmul(linalg.transpose(P), G, F), P, F)
    a, b = invariants(BilinearForm(G, F)), invariants(BilinearForm(H, F))
    assert (a.rank, a.signature, a.discriminant) == (b.rank, b.signature, b.discriminant)


def test_squarefree_part():
    assert squarefree_part(-1) == (-1, True)
    assert squarefree_part(12) == (3, True)
    assert squarefree_part(-18) == (-2, True)
    assert squarefree_part(5 * 1000003**2) == (5, True)
    big = 1000003 * 1000033
    assert squarefree_part(big) == (big, False)
    assert squarefree_part(2**61 - 1) == (2**61 - 1, False)


def test_rational_discriminant_uses_num_times_den():
    assert discriminant_class(Fraction(3, 8), QQ) == (6, True)
    assert discriminant_class(Fraction(-4, 9), QQ) == (-1, True)


@pytest.mark.parametrize("p", [3, 7, 101, 32003])
def test_prime_square_classes_against_enumeration(p):
    squares = {x * x % p for x in range(1, p)}
    nonres = min(a for a in range(2, p) if a not in squares)
    for v in range(1, min(p, 60)):
        cls, ok = discriminant_class(Fp(v, p), GF(p))
        assert ok and cls == (1 if v in squares else nonres)


def test_degree_summary_only_over_q():
    inv = invariants(BilinearForm([[Fraction(1)]], QQ))
    assert degree_summary(inv)["real_degree"] == 1
    with pytest.raises(ValueError):
        degree_summary(invariants(BilinearForm([[Fp(1, 7)]], GF(7))))
