"""Seeded random square zero-dimensional systems for testing and benchmarks.

Three families:

``triangular``
    f_i = x_i^e_i + random terms of total degree < e_i.  The leading terms
    are pairwise coprime powers, so d = prod(e_i) under any degree order.
``dense``
    every f_i a random dense polynomial of degree e_i; generic, hence
    usually etale with d = prod(e_i) by Bezout.
``nonreduced``
    f_i = (x_i - a_i)^e_i + c_i (x_{i+1} - a_{i+1})^m_i with m_i < e_i, so
    the point a is a multiple zero whenever some e_i >= 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .algebra import NotFiniteError, QuotientAlgebra, build_algebra
from .polyring import PolyRing, Polynomial, format_poly, iter_monomials_upto
from .scalar import GF, QQ, Field

FAMILIES = ("triangular", "dense", "nonreduced")
SUITE_FIELDS = (QQ, GF(7), GF(101), GF(32003))
VARIABLE_NAMES = ("x", "y", "z")


@dataclass
class Instance:
    field: Field
    variables: list
    polys: list  # canonical strings
    family: str
    seed: int
    expected_dim: int | None = None
    tags: dict = field(default_factory=dict)

    def build(self, order="grevlex") -> QuotientAlgebra:
        return build_algebra(self.variables, self.polys, self.field, order)

    def as_spec(self, order="grevlex") -> dict:
        return {"field": self.field.name, "vars": list(self.variables), "polys": list(self.polys), "order": order}


def _degrees(rng: random.Random, n: int, max_dim: int) -> list[int]:
    while True:
        e = [rng.randint(1, 3) for _ in range(n)]
        d = 1
        for k in e:
            d *= k
        if d <= max_dim:
            return e


def _nonzero(F: Field, rng: random.Random, bound: int = 5):
    while True:
        c = F.random(rng, bound)
        if c:
            return c


def _triangular(ring: PolyRing, rng, e) -> list[Polynomial]:
    F = ring.field
    n = ring.nvars
    out = []
    for i in range(n):
        lead = tuple(e[i] if k == i else 0 for k in range(n))
        terms = {lead: F.one}
        lower = [m for m in iter_monomials_upto(n, e[i] - 1)]
        for m in rng.sample(lower, min(len(lower), rng.randint(1, 4))):
            c = F.random(rng, 5)
            if c:
                terms[m] = c
        out.append(Polynomial(ring, terms))
    return out


def _dense(ring: PolyRing, rng, e) -> list[Polynomial]:
    F = ring.field
    out = []
    for i in range(ring.nvars):
        terms = {}
        for m in iter_monomials_upto(ring.nvars, e[i]):
            # keep every top-degree term so the system stays generic at infinity
            if sum(m) == e[i] or rng.random() < 0.6:
                c = _nonzero(F, rng) if sum(m) == e[i] else F.random(rng, 5)
                if c:
                    terms[m] = c
        out.append(Polynomial(ring, terms))
    return out


def _nonreduced(ring: PolyRing, rng, e) -> list[Polynomial]:
    F = ring.field
    n = ring.nvars
    gens = ring.gens()
    a = [F(rng.randint(-3, 3)) for _ in range(n)]
    shifted = [g - ring.constant(ai) for g, ai in zip(gens, a)]
    out = []
    for i in range(n):
        f = shifted[i] ** e[i]
        if i + 1 < n and e[i] >= 2:
            m = rng.randint(1, e[i] - 1)
            f = f + shifted[i + 1] ** m * ring.constant(_nonzero(F, rng))
        out.append(f)
    return out


_BUILDERS = {"triangular": _triangular, "dense": _dense, "nonreduced": _nonreduced}


def random_instance(seed: int, field: Field = QQ, nvars: int | None = None, family: str | None = None,
                    max_dim: int = 20, attempts: int = 50) -> Instance:
    """A finite square system with 1 <= d <= max_dim, reproducible from ``seed``."""
    rng = random.Random(seed)
    n = nvars or rng.choice((1, 2, 2, 3))
    fam = family or rng.choice(FAMILIES)
    variables = list(VARIABLE_NAMES[:n])
    ring = PolyRing(field, variables)
    for _ in range(attempts):
        e = _degrees(rng, n, max_dim)
        polys = _BUILDERS[fam](ring, rng, e)
        texts = [format_poly(p) for p in polys]
        try:
            B = build_algebra(variables, texts, field)
        except NotFiniteError:
            continue
        if 1 <= B.dim <= max_dim:
            return Instance(field, variables, texts, fam, seed, B.dim, {"degrees": e})
    raise RuntimeError(f"no finite instance found for seed {seed}")


def suite(count: int, seed: int = 0, fields=SUITE_FIELDS, max_dim: int = 20,
          rational_dense_cap: int = 8) -> list[Instance]:
    """``count`` instances cycling through fields, variable counts and families.

    Generic dense systems over Q suffer heavy coefficient growth (d = 18 takes
    minutes), so their dimension is capped at ``rational_dense_cap``.
    """
    out = []
    combos = list(product(fields, (1, 2, 3), FAMILIES))
    for k in range(count):
        F, n, fam = combos[k % len(combos)]
        cap = min(max_dim, rational_dense_cap) if (F.is_rational and fam == "dense") else max_dim
        out.append(random_instance(seed * 100_003 + k, F, n, fam, cap))
    return out


def real_rooted_univariate(seed: int, max_degree: int = 6, attempts: int = 50) -> Instance:
    """A univariate f over Q whose roots are all real and simple.

    f is a product of linear factors x - r and quadratic factors
    (x - p)^2 - q with q > 0, so some roots are irrational.
    """
    from fractions import Fraction

    from .oracle import is_etale

    rng = random.Random(seed)
    ring = PolyRing(QQ, ["x"])
    x = ring.gen(0)
    for _ in range(attempts):
        deg = rng.randint(1, max_degree)
        f = ring.constant(Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 3)))
        left = deg
        while left:
            if left >= 2 and rng.random() < 0.5:
                p = Fraction(rng.randint(-12, 12), rng.randint(1, 3))
                q = Fraction(rng.randint(1, 30), rng.randint(1, 3))
                f = f * ((x - ring.constant(p)) ** 2 - ring.constant(q))
                left -= 2
            else:
                f = f * (x - ring.constant(Fraction(rng.randint(-20, 20), rng.randint(1, 4))))
                left -= 1
        inst = Instance(QQ, ["x"], [format_poly(f)], "real_rooted", seed, deg)
        if is_etale(inst.build()):
            return inst
    raise RuntimeError(f"no square-free real-rooted polynomial for seed {seed}")
