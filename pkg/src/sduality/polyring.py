"""Sparse multivariate polynomials over an exact field, and a small parser.

Monomials are dense exponent tuples.  A :class:`PolyRing` fixes the
coefficient field, the variable names and the monomial order; polynomials
are dictionaries from exponent tuple to nonzero coefficient.

The doubled ring k[X_1..X_n, Y_1..Y_n] used for B (x) B always lists the
X copies (first tensor factor) before the Y copies.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .scalar import QQ, Field, FieldElement

Monomial = tuple


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


class MonomialOrder:
    """A multiplicative well-order on exponent tuples.

    ``key(m)`` maps a monomial to a tuple whose natural ordering agrees with
    the monomial order, so ``max(ms, key=order.key)`` is the leading one.
    """

    def __init__(self, name: str):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name
        if name == "grevlex":
            self.key = _grevlex_key
        else:
            self.key = _lex_key

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _lex_key(m: Monomial):
    return m


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class PolyRing:
    def __init__(self, field: Field, variables: Sequence[str], order: MonomialOrder | str = GREVLEX):
        if isinstance(order, str):
            order = MonomialOrder(order)
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        self.field = field
        self.variables = variables
        self.nvars = len(variables)
        self.order = order
        self._zero_mono = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.variables)}, {self.order})"

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.field, self.variables, order)

    def doubled(self) -> "PolyRing":
        """The ring k[X, Y] carrying B (x) B, with X (first factor) listed first."""
        names = [f"{v}_X" for v in self.variables] + [f"{v}_Y" for v in self.variables]
        return PolyRing(self.field, names, self.order)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self._zero_mono: c} if c else {})

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e))

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def __call__(self, obj) -> "Polynomial":
        if isinstance(obj, Polynomial):
            if obj.ring != self:
                raise ValueError("polynomial belongs to a different ring")
            return obj
        if isinstance(obj, str):
            return parse_poly(obj, self)
        return self.constant(obj)

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)


class Polynomial:
    """An immutable polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # --- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def monomials(self) -> list[Monomial]:
        """Monomials in descending order."""
        return sorted(self.terms, key=self.ring.order.key, reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.order.key)

    def leading_coefficient(self) -> FieldElement:
        return self.terms[self.leading_monomial()]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coefficient(self) -> FieldElement:
        return self.terms.get(self.ring._zero_mono, self.ring.field.zero)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = 1 / self.leading_coefficient()
        return Polynomial(self.ring, {m: c * inv for m, c in self.terms.items()})

    # --- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        try:
            return self.ring.constant(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = self.ring.field(other)
            except (TypeError, ValueError):
                return NotImplemented
            return self.scale(c)
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m)
                terms[m] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, coeff) -> "Polynomial":
        if not coeff:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): coeff * c for m, c in self.terms.items()},
        )

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            other = self.ring.constant(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # --- calculus and evaluation ------------------------------------------
    def derivative(self, i: int) -> "Polynomial":
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                d = c * m[i]
                if d:
                    mm = list(m)
                    mm[i] -= 1
                    terms[tuple(mm)] = d
        return Polynomial(self.ring, terms)

    def evaluate(self, point: Sequence):
        if len(point) != self.ring.nvars:
            raise ValueError(f"expected {self.ring.nvars} coordinates, got {len(point)}")
        total = None
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x**e
            total = v if total is None else total + v
        if total is None:
            return self.ring.field.zero
        return total

    def map_monomials(self, ring: PolyRing, fn) -> "Polynomial":
        """Rebuild in ``ring`` with every exponent tuple sent through ``fn``."""
        terms: dict = {}
        for m, c in self.terms.items():
            mm = fn(m)
            s = terms.get(mm)
            terms[mm] = c if s is None else s + c
        return Polynomial(ring, {m: c for m, c in terms.items() if c})

    # --- formatting ------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for v, e in zip(variables, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: Polynomial) -> str:
    """Canonical text form, terms in descending monomial order."""
    if not p.terms:
        return "0"
    field = p.ring.field
    out = []
    for m in p.monomials():
        c = p.terms[m]
        if field.is_rational:
            neg = c < 0
            mag = -c if neg else c
        else:
            neg, mag = False, c
        mag_s = field.format(mag)
        if any(m):
            body = format_monomial(m, p.ring.variables)
            term = body if mag_s == "1" else f"{mag_s}*{body}"
        else:
            term = mag_s
        if not out:
            out.append(f"-{term}" if neg else term)
        else:
            out.append(f" - {term}" if neg else f" + {term}")
    return "".join(out)


# --- doubled-ring helpers ---------------------------------------------------

class DivisionError(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


def divide_exact_linear(p: Polynomial, i: int) -> Polynomial:
    """Return q with q * (X_i - Y_i) == p in the doubled ring k[X, Y].

    Synthetic division in X_i: each term c X_i^e r (e >= 1) contributes
    c X_i^(e-1) r to the quotient and leaves c X_i^(e-1) Y_i r behind.
    """
    ring = p.ring
    if ring.nvars % 2:
        raise ValueError("divide_exact_linear needs a doubled ring")
    n = ring.nvars // 2
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range")
    xi, yi = i, n + i
    rem = dict(p.terms)
    quot: dict = {}
    while True:
        pending = [m for m in rem if m[xi] > 0]
        if not pending:
            break
        for m in pending:
            c = rem.pop(m, None)
            if c is None:
                continue
            q = list(m)
            q[xi] -= 1
            qm = tuple(q)
            s = quot.get(qm)
            quot[qm] = c if s is None else s + c
            q[yi] += 1
            left = tuple(q)
            s = rem.get(left)
            s = c if s is None else s + c
            if s:
                rem[left] = s
            else:
                rem.pop(left, None)
    if rem:
        raise DivisionError(
            f"{format_poly(p)} is not divisible by {ring.variables[xi]} - {ring.variables[yi]}"
        )
    return Polynomial(ring, {m: c for m, c in quot.items() if c})


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact multivariate division p / q; raises DivisionError on remainder."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = p.ring
    key = ring.order.key
    lm = q.leading_monomial()
    lc_inv = 1 / q.terms[lm]
    rem = p
    quot = ring.zero()
    while rem:
        m = max(rem.terms, key=key)
        if not mono_divides(lm, m):
            raise DivisionError(f"{format_poly(p)} is not divisible by {format_poly(q)}")
        c = rem.terms[m] * lc_inv
        t = mono_div(m, lm)
        quot = quot + ring.monomial(t, c)
        rem = rem - q.mul_term(t, c)
    return quot


def to_doubled(p: Polynomial, dring: PolyRing, side: int) -> Polynomial:
    """Embed p(x) as p(X) (side 0) or p(Y) (side 1) in the doubled ring."""
    n = p.ring.nvars
    pad = (0,) * n
    if side == 0:
        return p.map_monomials(dring, lambda m: tuple(m) + pad)
    return p.map_monomials(dring, lambda m: pad + tuple(m))


# --- parser ------------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        if position >= 0:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariableError(ParseError):
    pass


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass
class _Token:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(_Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(_Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            tokens.append(_Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent for

        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := unary ('*' unary)*
        unary  := '-' unary | power
        power  := atom ['^' INT]
        atom   := INT ['/' INT] | NAME | '(' expr ')'
    """

    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {v: k for k, v in enumerate(ring.variables)}

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: _Token | None = None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok.pos)

    def parse(self) -> Polynomial:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        p = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.error(f"unexpected {tok.value!r}", tok)
        return p

    def expr(self) -> Polynomial:
        tok = self.peek()
        negate = False
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            negate = tok.value == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.take()
                q = self.term()
                p = p + q if tok.value == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value == "*":
                self.take()
                p = p * self.unary()
            elif tok.kind in ("int", "name") or (tok.kind == "op" and tok.value == "("):
                raise self.error("implicit multiplication is not allowed; use '*'", tok)
            else:
                return p

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.take()
            exp_tok = self.peek()
            if exp_tok.kind != "int":
                raise self.error("exponent must be a non-negative integer literal", exp_tok)
            self.take()
            nxt = self.peek()
            if nxt.kind == "op" and nxt.value == "^":
                raise self.error("chained exponents are ambiguous; use parentheses", nxt)
            return base ** int(exp_tok.value)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "int":
            nxt = self.peek()
            if nxt.kind == "op" and nxt.value == "/":
                self.take()
                den = self.take()
                if den.kind != "int":
                    raise self.error("expected integer denominator", den)
                if int(den.value) == 0:
                    raise self.error("zero denominator", den)
                return self.ring.constant(self.ring.field.parse(f"{tok.value}/{den.value}"))
            return self.ring.constant(int(tok.value))
        if tok.kind == "name":
            k = self.index.get(tok.value)
            if k is None:
                raise UnknownVariableError(f"unknown variable {tok.value!r}", self.text, tok.pos)
            return self.ring.gen(k)
        if tok.kind == "op" and tok.value == "(":
            p = self.expr()
            close = self.take()
            if not (close.kind == "op" and close.value == ")"):
                raise self.error("expected ')'", close)
            return p
        if tok.kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {tok.value!r}", tok)


def parse_poly(text: str, ring_or_vars, field: Field | None = None, order=GREVLEX) -> Polynomial:
    """Parse ``text`` into a polynomial.

    ``ring_or_vars`` is either a :class:`PolyRing` or a list of variable
    names, in which case ``field`` (default Q) and ``order`` build the ring.
    """
    if isinstance(ring_or_vars, PolyRing):
        ring = ring_or_vars
    else:
        ring = PolyRing(field or QQ, list(ring_or_vars), order)
    return _Parser(text, ring).parse()


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_scale(p: Polynomial, c) -> Polynomial:
    return p.scale(c)


def poly_eval(p: Polynomial, point: Sequence):
    return p.evaluate(point)


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    return p.derivative(i)


def det_poly(matrix: Sequence[Sequence[Polynomial]], ring: PolyRing) -> Polynomial:
    """Determinant of a square polynomial matrix.

    Cofactor expansion up to 4x4, fraction-free Bareiss elimination beyond.
    """
    n = len(matrix)
    if n == 0:
        return ring.one()
    if n <= 4:
        return _det_cofactor([list(row) for row in matrix], ring)
    return _det_bareiss([list(row) for row in matrix], ring)


def _det_cofactor(m: list, ring: PolyRing) -> Polynomial:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ring.zero()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det_cofactor(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(m: list, ring: PolyRing) -> Polynomial:
    n = len(m)
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = divide_exact(num, prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def random_poly(ring: PolyRing, rng, max_degree: int, nterms: int, coeff_bound: int = 3) -> Polynomial:
    """A random polynomial with up to ``nterms`` terms of degree <= max_degree."""
    from itertools import product

    monos = [m for m in product(range(max_degree + 1), repeat=ring.nvars) if sum(m) <= max_degree]
    terms: dict = {}
    for _ in range(nterms):
        m = rng.choice(monos)
        c = ring.field.random(rng, coeff_bound)
        if c:
            s = terms.get(m)
            terms[m] = c if s is None else s + c
    return Polynomial(ring, {m: c for m, c in terms.items() if c})


def iter_monomials_upto(nvars: int, degree: int) -> Iterable[Monomial]:
    from itertools import product

    for m in product(range(degree + 1), repeat=nvars):
        if sum(m) <= degree:
            yield m
