import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sduality.groebner import (
    NotZeroDimensionalError,
    buchberger,
    is_zero_dimensional,
    normal_form,
    standard_monomials,
)
from sduality.instances import random_instance
from sduality.polyring import LEX, mono_div, mono_lcm, PolyRing, format_poly, parse_poly, random_poly
from sduality.scalar import GF, QQ

R = PolyRing(QQ, ["x", "y"])


def P(*texts, ring=R):
    return [parse_poly(t, ring) for t in texts]


def test_small_basis():
    gb = buchberger(P("x*y", "x + y"))
    assert [format_poly(g) for g in gb] == ["x + y", "y^2"]
    assert standard_monomials(gb) == [(0, 0), (0, 1)]


def test_unit_ideal():
    gb = buchberger(P("x*y - 1", "x"))
    assert gb.is_unit()
    assert standard_monomials(gb) == []


def test_positive_dimensional():
    gb = buchberger(P("x*y", "x^2"))
    assert not is_zero_dimensional(gb)
    with pytest.raises(NotZeroDimensionalError):
        standard_monomials(gb)


def _s_poly(f, g):
    lf, lg = f.leading_monomial(), g.leading_monomial()
    m = mono_lcm(lf, lg)
    return f.mul_term(mono_div(m, lf), 1 / f.leading_coefficient()) - g.mul_term(
        mono_div(m, lg), 1 / g.leading_coefficient()
    )


def _is_groebner(gb):
    # Buchberger's criterion checked directly on all pairs
    gens = list(gb)
    return all(
        normal_form(_s_poly(gens[i], gens[j]), gb).is_zero()
        for j in range(len(gens)) for i in range(j)
    )


def _reduced(gb):
    lms = gb.leading_monomials()
    for g in gb:
        if g.leading_coefficient() != 1:
            return False
        for h, lm in zip(gb, lms):
            if h is not g and any(all(a <= b for a, b in zip(lm, m)) for m in g.terms):
                return False
    return True


@pytest.mark.parametrize("field", [QQ, GF(7), GF(32003)])
@pytest.mark.parametrize("seed", range(6))
def test_random_bases_are_reduced_groebner(field, seed):
    inst = random_instance(seed, field)
    B = inst.build()
    assert _is_groebner(B.gb)
    assert _reduced(B.gb)
    for f in B.polys:
        assert B.gb.contains(f)


@pytest.mark.parametrize("seed", range(8))
def test_uniqueness_under_permutation_and_mixing(seed):
    inst = random_instance(seed, GF(101), 2)
    ring = PolyRing(GF(101), inst.variables)
    gens = [parse_poly(t, ring) for t in inst.polys]
    gb = buchberger(gens)
    rng = random.Random(seed)
    mixed = list(reversed(gens))
    mixed[0] = mixed[0] + mixed[1] * random_poly(ring, rng, 1, 2)
    mixed.append(gens[0] * gens[1])
    assert buchberger(mixed).generators == gb.generators


@pytest.mark.parametrize("seed", range(10))
def test_staircase_count_matches_product_of_degrees(seed):
    # leading terms x_i^e_i pairwise coprime: the count is forced to prod(e_i)
    inst = random_instance(seed, QQ, family="triangular")
    e = inst.tags["degrees"]
    expected = 1
    for k in e:
        expected *= k
    for order in ("grevlex", "lex"):
        assert inst.build(order).dim == expected


def test_dimension_is_order_independent():
    for seed in range(6):
        inst = random_instance(100 + seed, GF(32003))
        assert inst.build("grevlex").dim == inst.build("lex").dim


@given(st.integers(0, 10**6))
def test_normal_form_is_linear_and_idempotent(seed):
    rng = random.Random(seed)
    gb = buchberger(P("x^2 - y", "y^3 - x*y + 1"))
    p, q = random_poly(R, rng, 4, 4), random_poly(R, rng, 4, 4)
    np_, nq = normal_form(p, gb), normal_form(q, gb)
    assert normal_form(np_, gb) == np_
    assert normal_form(p + q, gb) == np_ + nq
    assert normal_form(p * gb.generators[0], gb).is_zero()
    assert gb.contains(p - np_)


def test_lex_basis_is_triangular():
    gb = buchberger(P("x^2 + y^2 - 5", "x*y - 2", ring=R.with_order(LEX)))
    # elimination: the last element lives in y alone
    assert all(m[0] == 0 for m in gb.generators[0].terms)
