import random
from fractions import Fraction

import pytest

from sduality import linalg
from sduality.algebra import LinearFunctional, TensorElement, build_algebra, collapse_m
from sduality.duality import (
    Lifting,
    LiftingError,
    alternate_lifting,
    annihilator_equals_I,
    annihilator_of,
    annihilator_of_I,
    canonical_lifting,
    compute_duality,
    delta,
    fitting_ideal_span,
    full_identity_suite,
    jacobian_element,
    lift_difference,
    principal_ideal_span,
    theta_apply,
    verify_ideal_identities,
)
from sduality.instances import random_instance
from sduality.polyring import parse_poly
from sduality.scalar import GF, QQ


def labelled(t):
    return {(a, b): c for a, b, c in t.terms()}


def test_point():
    D = compute_duality(build_algebra(["x"], ["x"], QQ))
    assert labelled(D.delta) == {("1", "1"): 1}
    assert D.gram.matrix == [[1]]


def test_double_point():
    D = compute_duality(build_algebra(["x"], ["x^2"], QQ))
    assert labelled(D.delta) == {("1", "x"): 1, ("x", "1"): 1}
    assert D.eta.coords == [0, 1]
    assert D.gram.matrix == [[0, 1], [1, 0]]


def test_three_points():
    D = compute_duality(build_algebra(["x"], ["x^3 - x"], QQ))
    assert D.eta.coords == [0, 0, 1]
    assert D.gram.matrix == [[0, 0, 1], [0, 1, 0], [1, 0, 1]]


def test_univariate_bezoutian():
    # for one variable delta is the divided difference (f(X) - f(Y)) / (X - Y)
    B = build_algebra(["x"], ["2*x^4 - 3*x + 1"], QQ)
    D = compute_duality(B)
    C = D.delta.matrix
    coeffs = [1, -3, 0, 0, 2]
    for i in range(4):
        for j in range(4):
            # X^i Y^j appears with coefficient a_{i+j+1}
            assert C[i][j] == (coeffs[i + j + 1] if i + j + 1 <= 4 else 0)


def test_lift_difference_columns():
    R = build_algebra(["x", "y"], ["x^2*y - 1", "y^2 - x"], QQ).ring
    col = lift_difference(parse_poly("x^2*y - 1", R))
    assert [str(a) for a in col] == ["x_X*y_X + y_X*x_Y", "x_Y^2"]
    L = canonical_lifting(build_algebra(["x", "y"], ["x^2*y - 1", "y^2 - x"], QQ))
    bad = [list(r) for r in L.entries]
    bad[0][0] = bad[0][0] + L.ring.one()
    with pytest.raises(LiftingError):
        Lifting(L.ring, L.polys, bad)


@pytest.mark.parametrize("seed", range(6))
def test_permuted_telescoping_gives_same_delta(seed):
    inst = random_instance(seed, GF(101), 3)
    B = inst.build()
    base = delta(B, canonical_lifting(B))
    for order in ([2, 1, 0], [1, 0, 2]):
        assert delta(B, canonical_lifting(B, order)) == base


@pytest.mark.parametrize("field", [QQ, GF(7)])
@pytest.mark.parametrize("seed", range(4))
def test_alternate_liftings(field, seed):
    B = random_instance(seed, field, 2).build()
    L = canonical_lifting(B)
    base = delta(B, L)
    rng = random.Random(seed)
    for _ in range(3):
        alt = alternate_lifting(L, rng)
        assert alt.entries != L.entries
        assert delta(B, alt) == base


@pytest.mark.parametrize("seed", range(6))
def test_delta_is_symmetric_and_inverse_to_gram(seed):
    B = random_instance(seed, QQ, 2).build()
    D = compute_duality(B)
    assert D.delta.swap() == D.delta
    # the dual basis of b_i under <,> is sum (G^-1)_ij b_j, so C = G^-1
    assert linalg.inverse(D.gram.matrix, B.field) == D.delta.matrix


@pytest.mark.parametrize("seed", range(6))
def test_theta_matches_chi(seed):
    B = random_instance(seed, GF(32003)).build()
    D = compute_duality(B)
    rng = random.Random(seed)
    F = B.field
    phi = LinearFunctional(B, [F.random(rng) for _ in range(B.dim)])
    # chi(sum c_ij b_i (x) b_j)(phi) = sum c_ij phi(b_i) b_j, written out term by term
    acc = B.zero()
    for i in range(B.dim):
        for j in range(B.dim):
            c = D.delta.matrix[i][j]
            if c:
                acc = acc + B.element([c * phi(B.basis_element(i)) * x for x in B.basis_element(j).coords])
    assert theta_apply(D, phi) == acc
    assert theta_apply(D, D.eta) == B.one()


def _direct_principal_span(B, t):
    d = B.dim
    vecs = []
    for i in range(d):
        for j in range(d):
            e = TensorElement.pure(B.basis_element(i), B.basis_element(j))
            vecs.append((e * t).vector())
    return linalg.Subspace(B.field, d * d, vecs)


@pytest.mark.parametrize("seed", range(5))
def test_principal_ideal_by_closure_matches_direct_products(seed):
    B = random_instance(seed, GF(101), 2).build()
    t = delta(B, canonical_lifting(B))
    assert principal_ideal_span(B, t) == _direct_principal_span(B, t)


def test_jacobian_collapse_example():
    B = build_algebra(["x", "y"], ["x^2 + y^2 - 5", "x*y - 2"], QQ)
    D = compute_duality(B)
    assert collapse_m(D.delta) == jacobian_element(B)
    assert jacobian_element(B) == B.project("2*x^2 - 2*y^2")


@pytest.mark.parametrize("field", [QQ, GF(7), GF(101)])
@pytest.mark.parametrize("seed", range(4))
def test_full_suite_passes(field, seed):
    B = random_instance(seed + 40, field).build()
    r = full_identity_suite(B, trials=3, seed=seed)
    assert r.passed, r.failures()


def test_checks_detect_a_wrong_delta():
    B = build_algebra(["x", "y"], ["x^2 - y", "y^2"], QQ)
    t = delta(B, canonical_lifting(B))
    wrong = t.scale(Fraction(2)) + TensorElement.pure(B.one(), B.one())
    assert principal_ideal_span(B, wrong) != annihilator_of_I(B)
    assert not annihilator_equals_I(wrong)
    assert annihilator_equals_I(t)
    assert annihilator_of(t).dim == B.dim ** 2 - B.dim


def test_fitting_ideal_of_dual_numbers_over_f7():
    B = build_algebra(["x"], ["x^2"], GF(7))
    L = canonical_lifting(B)
    assert fitting_ideal_span(B, L) == principal_ideal_span(B, delta(B, L))
    assert verify_ideal_identities(B, L, trials=2).passed
