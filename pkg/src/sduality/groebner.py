"""Reduced Groebner bases by Buchberger's algorithm.

Pairs are processed by the normal strategy (smallest lcm first, ties broken
by generator index), with Buchberger's coprime criterion and the chain
criterion.  Everything is deterministic for a given input order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .polyring import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolyRing,
    format_monomial,
    mono_div,
    mono_divides,
    mono_lcm,
)


class NotZeroDimensionalError(ValueError):
    pass


def _reduce_full(p: Polynomial, basis: Sequence[Polynomial], lms: Sequence[Monomial]) -> Polynomial:
    """Remainder of p on division by ``basis`` (complete reduction)."""
    ring = p.ring
    key = ring.order.key
    rem = dict(p.terms)
    out: dict = {}
    lcs = [g.terms[m] for g, m in zip(basis, lms)]
    while rem:
        m = max(rem, key=key)
        c = rem[m]
        for g, lm, lc in zip(basis, lms, lcs):
            if mono_divides(lm, m):
                t = mono_div(m, lm)
                f = c / lc
                for gm, gc in g.terms.items():
                    mm = tuple(a + b for a, b in zip(gm, t))
                    s = rem.get(mm)
                    s = -f * gc if s is None else s - f * gc
                    if s:
                        rem[mm] = s
                    else:
                        rem.pop(mm, None)
                break
        else:
            out[m] = rem.pop(m)
    return Polynomial(ring, out)


def _s_poly(f: Polynomial, g: Polynomial, lf: Monomial, lg: Monomial) -> Polynomial:
    lcm = mono_lcm(lf, lg)
    a = f.mul_term(mono_div(lcm, lf), 1 / f.terms[lf])
    b = g.mul_term(mono_div(lcm, lg), 1 / g.terms[lg])
    return a - b


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    generators: tuple
    original: tuple = field(default=(), compare=False)

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial() for g in self.generators]

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | str | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring.variables != ring.variables or g.ring.field != ring.field:
            raise ValueError("generators live in different rings")
    if order is not None:
        if isinstance(order, str):
            order = MonomialOrder(order)
        ring = ring.with_order(order)
    original = tuple(Polynomial(ring, dict(g.terms)) for g in gens)
    key = ring.order.key

    basis: list[Polynomial] = []
    lms: list[Monomial] = []
    for g in original:
        if g.is_zero():
            continue
        r = _reduce_full(g, basis, lms) if basis else g
        if r.is_zero():
            continue
        if r.is_constant():
            one = ring.one()
            return GroebnerBasis(ring, (one,), original)
        basis.append(r.monic())
        lms.append(basis[-1].leading_monomial())

    pairs: set = {(i, j) for j in range(len(basis)) for i in range(j)}

    def lcm_key(pair):
        i, j = pair
        return (key(mono_lcm(lms[i], lms[j])), j, i)

    while pairs:
        pair = min(pairs, key=lcm_key)
        pairs.discard(pair)
        i, j = pair
        li, lj = lms[i], lms[j]
        lcm = mono_lcm(li, lj)
        # coprime leading monomials: S-polynomial reduces to zero
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(lms[k], lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        s = _reduce_full(_s_poly(basis[i], basis[j], li, lj), basis, lms)
        if s.is_zero():
            continue
        if s.is_constant():
            return GroebnerBasis(ring, (ring.one(),), original)
        s = s.monic()
        n = len(basis)
        basis.append(s)
        lms.append(s.leading_monomial())
        pairs.update((k, n) for k in range(n))

    return GroebnerBasis(ring, tuple(_interreduce(basis, lms)), original)


def _interreduce(basis: list[Polynomial], lms: list[Monomial]) -> list[Polynomial]:
    key = basis[0].ring.order.key if basis else None
    # minimal basis: drop elements whose leading monomial is divisible by another's
    keep = []
    for i, (g, lm) in enumerate(zip(basis, lms)):
        redundant = False
        for j, lm2 in enumerate(lms):
            if j == i or not mono_divides(lm2, lm):
                continue
            if lm2 != lm or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    keep.sort(key=lambda g: key(g.leading_monomial()))
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        olms = [o.leading_monomial() for o in others]
        lm = g.leading_monomial()
        tail = Polynomial(g.ring, {m: c for m, c in g.terms.items() if m != lm})
        r = _reduce_full(tail, others, olms)
        reduced.append(r + Polynomial(g.ring, {lm: g.terms[lm]}))
    return [r.monic() for r in reduced]


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of p modulo the ideal, expressed in gb's ring."""
    if p.ring.variables != gb.ring.variables or p.ring.field != gb.ring.field:
        raise ValueError("polynomial and basis live in different rings")
    if p.ring != gb.ring:
        p = Polynomial(gb.ring, dict(p.terms))
    if not gb.generators:
        return p
    return _reduce_full(p, gb.generators, gb.leading_monomials())


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    """Every variable has a pure power among the leading monomials."""
    n = gb.ring.nvars
    found = [False] * n
    for lm in gb.leading_monomials():
        support = [i for i, e in enumerate(lm) if e]
        if not support:
            return True  # unit ideal: the quotient is zero-dimensional (and trivial)
        if len(support) == 1:
            found[support[0]] = True
    return all(found)


def standard_monomials(gb: GroebnerBasis) -> list[Monomial]:
    """Monomials outside the leading-term ideal, ascending in the order."""
    if not is_zero_dimensional(gb):
        lms = ", ".join(format_monomial(m, gb.ring.variables) for m in gb.leading_monomials())
        raise NotZeroDimensionalError(f"quotient is not finite-dimensional (leading monomials: {lms})")
    if gb.is_unit():
        return []
    lms = gb.leading_monomials()
    n = gb.ring.nvars
    bounds = []
    for i in range(n):
        b = min(lm[i] for lm in lms if lm[i] and sum(lm) == lm[i])
        bounds.append(b)
    out = [
        m
        for m in product(*(range(b) for b in bounds))
        if not any(mono_divides(lm, m) for lm in lms)
    ]
    out.sort(key=gb.ring.order.key)
    return out
