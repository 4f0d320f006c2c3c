"""Sparse multivariate polynomials over exact fields, monomial orders, ring presentations.

Coefficients are `fractions.Fraction` over the rationals and machine-word
residues over a prime field; there is no floating point anywhere.
Monomials are plain exponent tuples, one entry per ambient variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ExponentOverflow,
    LengthMismatch,
    ParamkitError,
    RingMismatch,
)

MAX_EXPONENT = 2**31 - 1
MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin; bases 2,3,5,7 are exact below 3.2e9
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals, or integers modulo a prime p < 2^31."""

    kind: str  # "rationals" | "prime-field"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None:
                raise ParamkitError("rationals take no modulus")
        elif self.kind == "prime-field":
            if self.p is None or not (2 <= self.p < MAX_PRIME):
                raise ParamkitError(f"modulus {self.p} out of range [2, 2^31)")
            if not _is_prime(self.p):
                raise ParamkitError(f"modulus {self.p} is not prime")
        else:
            raise ParamkitError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls("prime-field", p)

    @property
    def char(self) -> int:
        return 0 if self.kind == "rationals" else self.p

    def from_int(self, n: int):
        if self.p is None:
            return Fraction(n)
        return n % self.p

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("field inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


# -- monomials -------------------------------------------------------------
# A monomial is a tuple of non-negative ints, length = number of variables.

def mono_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))

def mono_divides(m1, m2):
    """True iff m1 divides m2."""
    return all(a <= b for a, b in zip(m1, m2))

def mono_div(m1, m2):
    """m1 / m2; caller guarantees divisibility."""
    return tuple(a - b for a, b in zip(m1, m2))

def mono_lcm(m1, m2):
    return tuple(max(a, b) for a, b in zip(m1, m2))

def mono_deg(m):
    return sum(m)


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative well-order on monomials.

    kinds: "grevlex", "lex", "elimination" (block order with the first
    `block` variables compared first, grevlex within each block).
    """

    kind: str = "grevlex"
    block: int | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elimination"):
            raise ParamkitError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elimination" and (self.block is None or self.block < 1):
            raise ParamkitError("elimination order needs a positive block size")
        if self.kind != "elimination" and self.block is not None:
            raise ParamkitError(f"{self.kind} order takes no block size")

    def key(self, m):
        """Sort key: key(m1) < key(m2) iff m1 < m2 in this order."""
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return m
        b = self.block
        return (_grevlex_key(m[:b]), _grevlex_key(m[b:]))

    def cache_token(self):
        return (self.kind, self.block)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def monomial_compare(order: MonomialOrder, m1, m2) -> str:
    """Compare two monomials; returns "LT", "EQ" or "GT"."""
    if len(m1) != len(m2):
        raise LengthMismatch(
            f"exponent vectors of length {len(m1)} and {len(m2)}"
        )
    k1, k2 = order.key(tuple(m1)), order.key(tuple(m2))
    if k1 == k2:
        return "EQ"
    return "LT" if k1 < k2 else "GT"


# -- ring presentations ----------------------------------------------------

class RingPresentation:
    """Quotient S = k[variables]/J presented by an ordered variable list,
    a coefficient field and a list of quotient generators.

    The maximal ideal is the ideal of all variables.  For homogeneous
    quotient generators the graded computations below agree with the
    localization at that ideal; non-homogeneous presentations are accepted
    but flagged (see is_homogeneous).

    Instances are immutable after construction; internal caches only memoize
    derived data and never change observable behavior.
    """

    __slots__ = (
        "name", "variables", "field", "quotient_gens",
        "_var_index", "_key", "_gb_cache", "_tracked_cache", "_dim_cache",
    )

    def __init__(self, variables, field: FieldSpec, quotient_gens=(), name="R"):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ParamkitError(f"duplicate variable in {variables}")
        self.name = name
        self.variables = variables
        self.field = field
        self._var_index = {v: i for i, v in enumerate(variables)}
        self._gb_cache = {}
        self._tracked_cache = {}
        self._dim_cache = {}
        gens = []
        for g in quotient_gens:
            if not isinstance(g, Polynomial):
                raise ParamkitError("quotient generators must be polynomials")
            if len(g.ring.variables) != len(variables):
                raise RingMismatch("quotient generator from a different ring")
            if g:
                gens.append(Polynomial(self, g.terms))
        self.quotient_gens = tuple(gens)
        self._key = (
            variables, field.kind, field.p,
            tuple(g.key() for g in self.quotient_gens),
        )

    # identity is structural so that re-presented rings stay compatible
    def key(self):
        return self._key

    def compatible(self, other) -> bool:
        return isinstance(other, RingPresentation) and self._key == other._key

    def __repr__(self):
        q = f"/({len(self.quotient_gens)} gens)" if self.quotient_gens else ""
        k = "QQ" if self.field.char == 0 else f"F{self.field.char}"
        return f"<ring {self.name} = {k}[{','.join(self.variables)}]{q}>"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def char(self) -> int:
        return self.field.char

    def var_index(self, name: str) -> int:
        return self._var_index[name]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, n) -> "Polynomial":
        c = self.field.from_int(n) if isinstance(n, int) else Fraction(n)
        if not c:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        i = self._var_index[name]
        m = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {m: self.field.one()})

    def gens_of_maximal_ideal(self):
        return [self.var(v) for v in self.variables]

    def quotient_by(self, polys, name=None) -> "RingPresentation":
        """New presentation over the same variables with these quotient generators."""
        return RingPresentation(
            self.variables, self.field, polys, name=name or self.name
        )

    def ambient(self, name=None) -> "RingPresentation":
        return RingPresentation(self.variables, self.field, (), name=name or self.name)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.quotient_gens)


_RING_REGISTRY = {}


def intern_ring(ring: RingPresentation) -> RingPresentation:
    """Canonicalize structurally equal presentations onto one instance so
    their Groebner caches are shared across call sites."""
    return _RING_REGISTRY.setdefault(ring.key(), ring)


# -- polynomials -----------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial: a map monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_key", "_hash")

    def __init__(self, ring: RingPresentation, terms, _normalized=False):
        self.ring = ring
        if _normalized:
            self.terms = terms
        else:
            self.terms = {m: c for m, c in terms.items() if c}
        self._key = None
        self._hash = None

    # -- structure ---------------------------------------------------------

    def key(self):
        """Canonical hashable form (sorted term items)."""
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms and self.ring.compatible(other.ring)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({render_poly(self)})"

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if not self.ring.compatible(other.ring):
                raise RingMismatch(
                    f"{self.ring!r} vs {other.ring!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        field = self.ring.field
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        res = dict(a)
        for m, c in b.items():
            s = field.add(res.get(m, 0), c) if m in res else c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Polynomial(self.ring, res, _normalized=True)

    __radd__ = __add__

    def __neg__(self):
        field = self.ring.field
        return Polynomial(
            self.ring, {m: field.neg(c) for m, c in self.terms.items()},
            _normalized=True,
        )

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
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        field = self.ring.field
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) < len(b):
            a, b = b, a
        res = {}
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = mono_mul(m1, m2)
                prod = field.mul(c1, c2)
                s = field.add(res[m], prod) if m in res else prod
                if s:
                    res[m] = s
                else:
                    del res[m]
        return Polynomial(self.ring, res, _normalized=True)

    __rmul__ = __mul__

    def mul_term(self, coeff, mono) -> "Polynomial":
        """Multiply by a single term coeff * x^mono."""
        if not coeff:
            return self.ring.zero()
        field = self.ring.field
        return Polynomial(
            self.ring,
            {mono_mul(m, mono): field.mul(c, coeff) for m, c in self.terms.items()},
            _normalized=True,
        )

    def scale(self, coeff) -> "Polynomial":
        return self.mul_term(coeff, (0,) * self.ring.nvars)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ParamkitError(f"polynomial power must be a non-negative int, got {n!r}")
        if n == 0:
            return self.ring.one()
        top = self.max_exponent()
        if top * n > MAX_EXPONENT:
            raise ExponentOverflow(
                f"exponent {top}*{n} exceeds {MAX_EXPONENT}"
            )
        result = None
        base = self
        k = n
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- queries -----------------------------------------------------------

    def max_exponent(self) -> int:
        return max((e for m in self.terms for e in m), default=0)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_deg(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {mono_deg(m) for m in self.terms}
        return len(degs) <= 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def leading_monomial(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            return None
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder = GREVLEX):
        lm = self.leading_monomial(order)
        return self.ring.field.zero() if lm is None else self.terms[lm]

    def sorted_terms(self, order: MonomialOrder = GREVLEX, reverse=True):
        for m in sorted(self.terms, key=order.key, reverse=reverse):
            yield m, self.terms[m]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        lc = self.leading_coeff(order)
        if not lc or lc == self.ring.field.one():
            return self
        inv = self.ring.field.inv(lc)
        return self.scale(inv)


# -- rendering -------------------------------------------------------------

def _render_coeff(c) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _render_monomial(ring: RingPresentation, m) -> str:
    parts = []
    for v, e in zip(ring.variables, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def render_poly(poly: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Render in the CLI expression grammar (largest term first).

    Output re-parses to the same polynomial; negative leading coefficients
    and rational coefficients use the small grammar extension (leading
    sign, `a/b` literals) that the parser accepts.
    """
    if not poly.terms:
        return "0"
    chunks = []
    for m, c in poly.sorted_terms(order):
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        mono = _render_monomial(poly.ring, m)
        coeff = _render_coeff(mag)
        if not mono:
            body = coeff
        elif coeff == "1":
            body = mono
        else:
            body = f"{coeff}*{mono}"
        if not chunks:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f" - {body}" if neg else f" + {body}")
    return "".join(chunks)


def primitive_part(poly: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Rescale to integer coefficients with content 1 and positive leading
    coefficient (rationals only; returned unchanged over a prime field)."""
    if not poly or poly.ring.field.char != 0:
        return poly
    from math import gcd, lcm
    den = lcm(*(c.denominator for c in poly.terms.values()))
    num = gcd(*(abs(c.numerator) for c in poly.terms.values()))
    factor = Fraction(den, num)
    if poly.leading_coeff(order) < 0:
        factor = -factor
    return poly.scale(factor)
