"""Buchberger's algorithm, normal forms, and ideal membership with witnesses.

Every Ideal lives in a quotient presentation S = k[vars]/J; computations run
in the ambient polynomial ring on the generator list (gens + quotient gens),
so membership and equality answers are answers in S.

The engine works on raw term dicts for speed.  Witness tracking (exact
cofactor rows over the generator list) is only carried when requested.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass

from .errors import BudgetExceeded, InvariantViolation, RingMismatch
from .polyring import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    RingPresentation,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_BUDGET = 20_000_000
BUDGET_ENV = "PARAMKIT_BUDGET"


def work_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


class _Meter:
    """Work counter shared across one top-level computation."""

    __slots__ = ("left",)

    def __init__(self, units):
        self.left = units

    def spend(self, units=1):
        self.left -= units
        if self.left < 0:
            raise BudgetExceeded(
                f"work budget exhausted (set {BUDGET_ENV} to raise it)"
            )


# -- raw-dict core ---------------------------------------------------------
# A "poly" here is dict[mono, coeff]; "rows" is an optional list of such
# dicts expressing the element over the original generator list.

def _row_addmul(rows, other_rows, coeff, mono, field):
    if rows is None:
        return
    for k, src in enumerate(other_rows):
        if not src:
            continue
        dst = rows[k]
        for m, c in src.items():
            mm = mono_mul(m, mono)
            s = field.add(dst.get(mm, 0), field.mul(c, coeff)) if mm in dst else field.mul(c, coeff)
            if s:
                dst[mm] = s
            else:
                dst.pop(mm, None)


def _scale(poly, rows, coeff, field):
    for m in list(poly):
        poly[m] = field.mul(poly[m], coeff)
    if rows is not None:
        for dst in rows:
            for m in list(dst):
                dst[m] = field.mul(dst[m], coeff)


class _Elt:
    """Basis element: term dict, leading data, sugar degree, optional rows."""

    __slots__ = ("poly", "lm", "lc", "sugar", "rows")

    def __init__(self, poly, order, sugar=None, rows=None):
        self.poly = poly
        self.lm = max(poly, key=order.key)
        self.lc = poly[self.lm]
        self.sugar = sugar if sugar is not None else max(map(mono_deg, poly))
        self.rows = rows


def _reduce_full(poly, rows, basis, order, field, meter, sugar=None):
    """Fully reduce poly modulo the basis; mutates and returns (rem, rows, sugar).

    Every term of the remainder is reducible by no basis leading monomial.
    """
    rem = {}
    okey = order.key
    while poly:
        lm = max(poly, key=okey)
        lc = poly[lm]
        hit = None
        for g in basis:
            if mono_divides(g.lm, lm):
                hit = g
                break
        if hit is None:
            del poly[lm]
            rem[lm] = lc
            continue
        meter.spend()
        factor = field.neg(field.div(lc, hit.lc))
        shift = mono_div(lm, hit.lm)
        if sugar is not None:
            sugar = max(sugar, hit.sugar + mono_deg(shift))
        for m, c in hit.poly.items():
            mm = mono_mul(m, shift)
            s = field.add(poly.get(mm, 0), field.mul(c, factor)) if mm in poly else field.mul(c, factor)
            if s:
                poly[mm] = s
            else:
                poly.pop(mm, None)
        _row_addmul(rows, hit.rows, factor, shift, field)
    return rem, rows, sugar


def _spair(f, g, order, field, tracked):
    L = mono_lcm(f.lm, g.lm)
    mf, mg = mono_div(L, f.lm), mono_div(L, g.lm)
    poly = {}
    for m, c in f.poly.items():
        poly[mono_mul(m, mf)] = field.div(c, f.lc)
    for m, c in g.poly.items():
        mm = mono_mul(m, mg)
        s = field.sub(poly.get(mm, field.zero()), field.div(c, g.lc))
        if s:
            poly[mm] = s
        else:
            poly.pop(mm, None)
    rows = None
    if tracked:
        n = len(f.rows)
        rows = [{} for _ in range(n)]
        inv_f, inv_g = field.inv(f.lc), field.inv(g.lc)
        _row_addmul(rows, f.rows, inv_f, mf, field)
        _row_addmul(rows, g.rows, field.neg(inv_g), mg, field)
    sugar = max(f.sugar + mono_deg(mf), g.sugar + mono_deg(mg))
    return poly, rows, sugar


def _buchberger_core(gen_dicts, order, field, meter, tracked):
    """Reduced Groebner basis of the ideal generated by gen_dicts.

    Returns a list of _Elt, monic, sorted by leading monomial ascending.
    Pair handling uses the product and chain criteria with sugar selection.
    """
    okey = order.key
    ngens = len(gen_dicts)
    basis = []
    for idx, d in enumerate(gen_dicts):
        if not d:
            continue
        rows = None
        if tracked:
            rows = [{} for _ in range(ngens)]
            rows[idx] = {(0,) * len(next(iter(d))): field.one()}
        poly, rows, sugar = _reduce_full(dict(d), rows, basis, order, field, meter,
                                         sugar=max(map(mono_deg, d)))
        if poly:
            basis.append(_Elt(poly, order, sugar, rows))

    pairs = []
    pending = set()
    counter = 0

    def push_pairs(j):
        nonlocal counter
        gj = basis[j]
        for i in range(j):
            gi = basis[i]
            L = mono_lcm(gi.lm, gj.lm)
            if L == mono_mul(gi.lm, gj.lm):  # product criterion
                continue
            sugar = max(gi.sugar + mono_deg(mono_div(L, gi.lm)),
                        gj.sugar + mono_deg(mono_div(L, gj.lm)))
            counter += 1
            heapq.heappush(pairs, (sugar, okey(L), counter, i, j, L))
            pending.add((i, j))

    for j in range(len(basis)):
        push_pairs(j)
    while pairs:
        meter.spend()
        sugar, _, _, i, j, L = heapq.heappop(pairs)
        pending.discard((i, j))
        gi, gj = basis[i], basis[j]
        if mono_lcm(gi.lm, gj.lm) != L:
            continue
        # chain criterion: a third element dividing the lcm whose pairs with
        # both ends are already settled makes this pair redundant
        skip = False
        for k, gk in enumerate(basis):
            if k in (i, j) or not mono_divides(gk.lm, L):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        poly, rows, sugar = _spair(gi, gj, order, field, tracked)
        rem, rows, sugar = _reduce_full(poly, rows, basis, order, field, meter, sugar)
        if rem:
            basis.append(_Elt(rem, order, sugar, rows))
            push_pairs(len(basis) - 1)

    return _interreduce(basis, order, field, meter, tracked, ngens)


def _interreduce(basis, order, field, meter, tracked, ngens):
    # drop elements whose leading monomial another one divides
    keep = []
    for i, g in enumerate(basis):
        lm = g.lm
        redundant = any(
            mono_divides(h.lm, lm) and (h.lm != lm or j < i)
            for j, h in enumerate(basis)
            if j != i
        )
        if not redundant:
            keep.append(g)
    keep.sort(key=lambda g: order.key(g.lm))
    # full tail reduction of each element against the others
    reduced = []
    for i, g in enumerate(keep):
        others = [h for j, h in enumerate(keep) if j != i]
        rows = None
        if tracked:
            rows = [dict(r) for r in g.rows]
        rem, rows, _ = _reduce_full(dict(g.poly), rows, others, order, field, meter,
                                    sugar=g.sugar)
        if not rem:
            continue
        elt = _Elt(rem, order, g.sugar, rows)
        inv = field.inv(elt.lc)
        _scale(elt.poly, elt.rows, inv, field)
        elt.lc = field.one()
        reduced.append(elt)
    reduced.sort(key=lambda g: order.key(g.lm))
    return reduced


# -- public layer ----------------------------------------------------------

@dataclass
class MembershipWitness:
    """Exact cofactors: element == sum(coefficients[i] * generators[i]) in the
    ambient polynomial ring, generators = ideal gens followed by quotient gens.
    """

    element: Polynomial
    generators: tuple
    coefficients: list

    def verify(self) -> bool:
        acc = self.element.ring.zero()
        for c, g in zip(self.coefficients, self.generators):
            acc = acc + c * g
        return acc == self.element


class Ideal:
    """Finitely generated ideal of a quotient presentation."""

    __slots__ = ("ring", "gens", "_label")

    def __init__(self, ring: RingPresentation, gens, label=None):
        self.ring = ring
        checked = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if not ring.compatible(g.ring):
                raise RingMismatch("generator from a different ring")
            if g:
                checked.append(Polynomial(ring, g.terms, _normalized=True))
        self.gens = tuple(checked)
        self._label = label

    def key(self):
        return (self.ring.key(), tuple(sorted(g.key() for g in self.gens)))

    def __repr__(self):
        name = self._label or "I"
        return f"<ideal {name}: {len(self.gens)} gens in {self.ring.name}>"

    def __add__(self, other):
        if isinstance(other, Ideal):
            if not self.ring.compatible(other.ring):
                raise RingMismatch("ideal sum across rings")
            return Ideal(self.ring, self.gens + other.gens)
        return NotImplemented

    def with_gens(self, extra) -> "Ideal":
        return Ideal(self.ring, self.gens + tuple(extra))

    # -- Groebner data -----------------------------------------------------

    def _all_gen_dicts(self):
        return [dict(g.terms) for g in self.gens] + [
            dict(g.terms) for g in self.ring.quotient_gens
        ]

    def _basis(self, order: MonomialOrder, tracked: bool):
        cache = self.ring._tracked_cache if tracked else self.ring._gb_cache
        ck = (self.key()[1], order.cache_token())
        hit = cache.get(ck)
        if hit is not None:
            return hit
        meter = _Meter(work_budget())
        basis = _buchberger_core(
            self._all_gen_dicts(), order, self.ring.field, meter, tracked
        )
        cache[ck] = basis
        return basis

    def groebner(self, order: MonomialOrder = GREVLEX):
        """The reduced Groebner basis of (gens + quotient gens), ascending."""
        return tuple(
            Polynomial(self.ring, g.poly, _normalized=True)
            for g in self._basis(order, tracked=False)
        )

    def leading_monomials(self, order: MonomialOrder = GREVLEX):
        return tuple(g.lm for g in self._basis(order, tracked=False))

    # -- queries -----------------------------------------------------------

    def normal_form(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self.ring.compatible(f.ring):
            raise RingMismatch("normal form of a foreign polynomial")
        basis = self._basis(order, tracked=False)
        meter = _Meter(work_budget())
        rem, _, _ = _reduce_full(
            dict(f.terms), None, basis, order, self.ring.field, meter
        )
        return Polynomial(self.ring, rem, _normalized=True)

    def contains(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return not self.normal_form(f, order)

    def __contains__(self, f):
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def member_witness(self, f: Polynomial, order: MonomialOrder = GREVLEX):
        """Witness for f in the ideal, or None if f is not a member."""
        if not self.ring.compatible(f.ring):
            raise RingMismatch("membership query from a foreign ring")
        field = self.ring.field
        basis = self._basis(order, tracked=True)
        meter = _Meter(work_budget())
        ngens = len(self.gens) + len(self.ring.quotient_gens)
        rows = [{} for _ in range(ngens)]
        rem, rows, _ = _reduce_full(
            dict(f.terms), rows, basis, order, field, meter
        )
        if rem:
            return None
        coeffs = [
            Polynomial(self.ring, {m: field.neg(c) for m, c in r.items()},
                       _normalized=True)
            for r in rows
        ]
        witness = MembershipWitness(
            element=f,
            generators=self.gens + self.ring.quotient_gens,
            coefficients=coeffs,
        )
        if not witness.verify():
            raise InvariantViolation("membership witness failed to expand")
        return witness


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX):
    return list(I.groebner(order))


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> Polynomial:
    return I.normal_form(f, order)


def ideal_member(f: Polynomial, I: Ideal, want_witness: bool = True):
    """(member?, witness).  The witness is None on a negative answer, and
    only materialized on request (tracking is the expensive part)."""
    if not want_witness:
        return I.contains(f), None
    w = I.member_witness(f)
    return (w is not None), w


def ideal_equal(I: Ideal, J2: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    if not I.ring.compatible(J2.ring):
        raise RingMismatch("equality across rings")
    a = [g.key() for g in I.groebner(order)]
    b = [g.key() for g in J2.groebner(order)]
    return a == b
