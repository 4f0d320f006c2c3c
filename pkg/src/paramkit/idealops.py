"""Ideal-theoretic toolkit: colon, intersection, saturation, bracket powers,
dimension, length, socle, and graded standard-monomial counting.

Quotient semantics: every Ideal of S = k[vars]/J implicitly contains J,
so set-level operations (colon, intersection, saturation) are computed on
the ambient preimages I + J and the answers are answers in S.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    EmptyVariety,
    InvariantViolation,
    NotFiniteLength,
    RingMismatch,
    ZeroDivisorQuery,
)
from .groebner import Ideal
from .polyring import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    RingPresentation,
    intern_ring,
    mono_div,
    mono_divides,
)

LENGTH_CAP = 10**6


# -- element sequences -----------------------------------------------------

class ElementSequence:
    """Ordered tuple of ring elements (the x_1..x_d of a parameter test)."""

    __slots__ = ("ring", "entries", "name")

    def __init__(self, ring: RingPresentation, entries, name=None):
        self.ring = ring
        checked = []
        for e in entries:
            if not isinstance(e, Polynomial):
                e = ring.const(e)
            if not ring.compatible(e.ring):
                raise RingMismatch("sequence entry from a different ring")
            checked.append(Polynomial(ring, e.terms, _normalized=True))
        self.entries = tuple(checked)
        self.name = name

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __repr__(self):
        return f"<seq {self.name or '?'} of length {len(self.entries)}>"

    def key(self):
        return tuple(e.key() for e in self.entries)

    def product(self) -> Polynomial:
        acc = self.ring.one()
        for e in self.entries:
            acc = acc * e
        return acc

    def powers(self, t: int) -> "ElementSequence":
        return ElementSequence(self.ring, [e ** t for e in self.entries],
                               name=self.name and f"{self.name}^[{t}]")

    def as_ideal(self) -> Ideal:
        return Ideal(self.ring, self.entries, label=self.name)

    def is_homogeneous(self) -> bool:
        return all(e.is_homogeneous() for e in self.entries)


def as_sequence(seq, ring=None) -> ElementSequence:
    if isinstance(seq, ElementSequence):
        return seq
    if ring is None:
        for e in seq:
            if isinstance(e, Polynomial):
                ring = e.ring
                break
        else:
            raise RingMismatch("cannot infer the ring of an element sequence")
    return ElementSequence(ring, list(seq))


@dataclass(frozen=True)
class BracketPower:
    """(x)^[t]: the ideal generated by entrywise t-th powers."""

    base: ElementSequence
    exponent: int
    as_ideal: Ideal


def bracket_power(seq, t: int) -> BracketPower:
    seq = as_sequence(seq)
    if t < 1:
        raise InvariantViolation(f"bracket power exponent must be >= 1, got {t}")
    powered = seq.powers(t)
    return BracketPower(base=seq, exponent=t, as_ideal=powered.as_ideal())


# -- tag-variable machinery ------------------------------------------------

def _tag_ring(ring: RingPresentation) -> RingPresentation:
    """Ambient ring with one fresh tag variable prepended."""
    tag = "t"
    while tag in ring.variables:
        tag += "t"
    ext = RingPresentation((tag,) + ring.variables, ring.field, (),
                           name=ring.name + "+tag")
    return intern_ring(ext)


def _lift(poly: Polynomial, ext: RingPresentation, tag_exp=0) -> Polynomial:
    return Polynomial(
        ext, {(tag_exp,) + m: c for m, c in poly.terms.items()},
        _normalized=True,
    )


def _drop_tag(poly: Polynomial, ring: RingPresentation):
    """Map back a tag-free polynomial; None if any monomial uses the tag."""
    terms = {}
    for m, c in poly.terms.items():
        if m[0]:
            return None
        terms[m[1:]] = c
    return Polynomial(ring, terms, _normalized=True)


_ELIM = MonomialOrder("elimination", block=1)


def _eliminate_tag(ext_gens, ring: RingPresentation):
    """Generators of (ideal of ext) ∩ k[vars], by a block-order GB."""
    ext = ext_gens[0].ring
    gb = Ideal(ext, ext_gens).groebner(_ELIM)
    out = []
    for g in gb:
        dropped = _drop_tag(g, ring)
        if dropped is not None and dropped:
            out.append(dropped)
    return out


def _full_gens(I: Ideal):
    return list(I.gens) + list(I.ring.quotient_gens)


# -- colon / intersect / saturate -----------------------------------------

def intersect(I: Ideal, J2: Ideal) -> Ideal:
    """Generators of I ∩ J2 as ideals of S, via t·I + (1−t)·J2 elimination."""
    if not I.ring.compatible(J2.ring):
        raise RingMismatch("intersection across rings")
    ring = I.ring
    ext = _tag_ring(ring)
    one = ext.one()
    t = ext.var(ext.variables[0])
    gens = [_lift(g, ext, tag_exp=1) for g in _full_gens(I)]
    gens += [(one - t) * _lift(g, ext) for g in _full_gens(J2)]
    return Ideal(ring, _eliminate_tag(gens, ring))


def _exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f in the ambient polynomial ring; g must be a multiple of f."""
    field = g.ring.field
    flm = f.leading_monomial(GREVLEX)
    flc = f.terms[flm]
    work = dict(g.terms)
    quot = {}
    while work:
        lm = max(work, key=GREVLEX.key)
        if not mono_divides(flm, lm):
            raise InvariantViolation("exact division left a remainder")
        shift = mono_div(lm, flm)
        c = field.div(work[lm], flc)
        quot[shift] = c
        for m, fc in f.terms.items():
            mm = (tuple(a + b for a, b in zip(m, shift)))
            s = field.sub(work.get(mm, field.zero()), field.mul(fc, c))
            if s:
                work[mm] = s
            else:
                work.pop(mm, None)
    return Polynomial(g.ring, quot, _normalized=True)


def colon(I: Ideal, by) -> Ideal:
    """I : by, for a single element or a finitely generated ideal.

    Element form: (1/f)·((I + J) ∩ (f)) in the ambient ring.
    Ideal form: the intersection of the element colons.
    """
    ring = I.ring
    if isinstance(by, Ideal):
        if not ring.compatible(by.ring):
            raise RingMismatch("colon across rings")
        if not by.gens:
            return Ideal(ring, [ring.one()])
        acc = None
        for f in by.gens:
            c = colon(I, f)
            acc = c if acc is None else intersect(acc, c)
        return acc
    f = by
    if not isinstance(f, Polynomial):
        f = ring.const(f)
    if not ring.compatible(f.ring):
        raise RingMismatch("colon across rings")
    if not f:
        raise ZeroDivisorQuery("colon by the zero element")
    ext = _tag_ring(ring)
    one = ext.one()
    t = ext.var(ext.variables[0])
    gens = [_lift(g, ext, tag_exp=1) for g in _full_gens(I)]
    gens.append((one - t) * _lift(f, ext))
    meet = _eliminate_tag(gens, ring)
    return Ideal(ring, [_exact_divide(g, f) for g in meet])


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^∞ via the Rabinowitsch tag 1 − t·f and elimination."""
    ring = I.ring
    if not isinstance(f, Polynomial):
        f = ring.const(f)
    if not ring.compatible(f.ring):
        raise RingMismatch("saturation across rings")
    if not f:
        raise ZeroDivisorQuery("saturation by the zero element")
    ext = _tag_ring(ring)
    t = ext.var(ext.variables[0])
    gens = [_lift(g, ext) for g in _full_gens(I)]
    gens.append(ext.one() - t * _lift(f, ext))
    return Ideal(ring, _eliminate_tag(gens, ring))


# -- dimension -------------------------------------------------------------

@dataclass(frozen=True)
class DimensionReport:
    dim: int
    witness: tuple  # variable names of a maximal independent set


def _max_independent_set(supports, nvars):
    """Largest variable subset meeting no leading-term support set, DFS in
    declaration order (first maximal found at each size wins)."""
    best = []

    def dfs(start, current, current_set):
        nonlocal best
        if len(current) > len(best):
            best = list(current)
        for v in range(start, nvars):
            if len(current) + (nvars - v) <= len(best):
                break
            current_set.add(v)
            if all(not s <= current_set for s in supports):
                current.append(v)
                dfs(v + 1, current, current_set)
                current.pop()
            current_set.discard(v)

    dfs(0, [], set())
    return best


def dimension(I: Ideal, order: MonomialOrder = GREVLEX) -> DimensionReport:
    """Krull dimension of S/I via maximal independent variable sets modulo
    the leading-term ideal of I + J."""
    ring = I.ring
    lms = I.leading_monomials(order)
    zero = (0,) * ring.nvars
    if zero in lms:
        raise EmptyVariety("the ideal is the whole ring")
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    # dedupe and drop supersets; only minimal supports constrain the search
    minimal = []
    for s in sorted(set(supports), key=len):
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = _max_independent_set(minimal, ring.nvars)
    return DimensionReport(
        dim=len(best),
        witness=tuple(ring.variables[i] for i in best),
    )


def ring_dimension(ring: RingPresentation) -> int:
    cached = ring._dim_cache.get("dim")
    if cached is None:
        cached = dimension(Ideal(ring, [])).dim
        ring._dim_cache["dim"] = cached
    return cached


# -- standard monomials, length, socle ------------------------------------

def standard_monomials(I: Ideal, cap: int = LENGTH_CAP):
    """All monomials outside the leading-term ideal of I + J (grevlex),
    sorted ascending.  Raises BudgetExceeded past the cap."""
    ring = I.ring
    lms = I.leading_monomials(GREVLEX)
    zero = (0,) * ring.nvars
    if zero in lms:
        return []
    found = set()
    frontier = [zero]
    found.add(zero)
    out = []
    while frontier:
        nxt = []
        for m in frontier:
            out.append(m)
            if len(out) > cap:
                raise BudgetExceeded(
                    f"more than {cap} standard monomials; "
                    "is the quotient really finite-dimensional?"
                )
            for i in range(ring.nvars):
                child = m[:i] + (m[i] + 1,) + m[i + 1:]
                if child in found:
                    continue
                found.add(child)
                if not any(mono_divides(lm, child) for lm in lms):
                    nxt.append(child)
        frontier = nxt
    out.sort(key=GREVLEX.key)
    return out


def length(I: Ideal) -> int:
    """Vector-space dimension of S/I over k (the number of standard
    monomials); requires dim S/I = 0."""
    ring = I.ring
    try:
        report = dimension(I)
    except EmptyVariety:
        return 0
    if report.dim != 0:
        raise NotFiniteLength(
            f"S/I has dimension {report.dim} > 0", dim=report.dim
        )
    return len(standard_monomials(I))


def socle(I: Ideal) -> Ideal:
    """I : 𝔪 where 𝔪 is generated by all the variables."""
    m = Ideal(I.ring, I.ring.gens_of_maximal_ideal())
    return colon(I, m)


# -- graded counting -------------------------------------------------------

def graded_standard_counts(I: Ideal, dmax: int):
    """Per-degree counts of standard monomials of I + J for degrees 0..dmax.

    Purely combinatorial on the leading-term ideal, so this is the graded
    Hilbert function of S/I when all data are homogeneous.
    """
    ring = I.ring
    lms = [m for m in I.leading_monomials(GREVLEX)]
    n = ring.nvars
    counts = []
    standard_prev = [((0,) * n)] if not any(sum(m) == 0 for m in lms) else []
    counts.append(len(standard_prev))
    for d in range(1, dmax + 1):
        nxt = set()
        for m in standard_prev:
            for i in range(n):
                child = m[:i] + (m[i] + 1,) + m[i + 1:]
                if not any(mono_divides(lm, child) for lm in lms):
                    nxt.add(child)
        standard_prev = sorted(nxt)
        counts.append(len(standard_prev))
    return counts


def _graded_counts_iter(I: Ideal):
    """Yields per-degree standard-monomial counts of I + J, indefinitely."""
    ring = I.ring
    lms = I.leading_monomials(GREVLEX)
    n = ring.nvars
    standard = [] if any(sum(m) == 0 for m in lms) else [(0,) * n]
    yield len(standard)
    while True:
        nxt = set()
        for m in standard:
            for i in range(n):
                child = m[:i] + (m[i] + 1,) + m[i + 1:]
                if not any(mono_divides(lm, child) for lm in lms):
                    nxt.add(child)
        standard = sorted(nxt)
        yield len(standard)


def module_length(I: Ideal, cap_degree: int = 160) -> int:
    """Length of the image of I in S, i.e. dim_k of the ideal as a submodule.

    Computed as the sum over degrees of H_S(d) − H_{S/I}(d), with all data
    homogeneous.  A window of consecutive zero differences past every
    generator degree declares the sum complete; exceeding cap_degree
    raises NotFiniteLength.
    """
    ring = I.ring
    if not I.gens:
        return 0
    maxdeg = max(
        [g.total_degree() for g in ring.quotient_gens]
        + [g.total_degree() for g in Ideal(ring, []).groebner()]
        + [g.total_degree() for g in I.groebner()]
    )
    window = maxdeg + 2
    total = 0
    zeros = 0
    it_ring = _graded_counts_iter(Ideal(ring, []))
    it_quot = _graded_counts_iter(I)
    for d in range(cap_degree + 1):
        diff = next(it_ring) - next(it_quot)
        if diff < 0:
            raise InvariantViolation("graded counts of an ideal went negative")
        total += diff
        if diff == 0 and d >= maxdeg:
            zeros += 1
            if zeros >= window:
                return total
        else:
            zeros = 0
    raise NotFiniteLength(
        "graded dimension difference did not stabilize; submodule looks infinite"
    )
