"""Decision procedures for parameter questions over a quotient presentation:
sop checks, witness-backed matrix lifting, injectivity tests for the
determinant maps (direct, limit-closure, and stage-wise), the
one-dimensional theorems, a Cohen-Macaulay probe, characteristic-p
certificate checks, and the annihilator-containment probe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    InvariantViolation,
    NoSOPFound,
    NotContained,
    NotParameter,
    NotPrimePower,
    NotSOP,
    WrongCharacteristic,
    WrongDimension,
    ZeroAnnihilator,
)
from .groebner import Ideal, ideal_equal
from .idealops import (
    ElementSequence,
    as_sequence,
    bracket_power,
    colon,
    dimension,
    module_length,
    ring_dimension,
)
from .koszul import CoeffMatrix, _check_lift
from .limitclosure import limit_closure
from .polyring import LEX, GREVLEX, Polynomial, RingPresentation


# -- sop -------------------------------------------------------------------

def sop_diagnostic(seq):
    """(is_sop, reason-or-None): d elements with a zero-dimensional quotient."""
    seq = as_sequence(seq)
    d = ring_dimension(seq.ring)
    if len(seq) != d:
        return False, f"sequence has {len(seq)} entries but dim S = {d}"
    I = seq.as_ideal()
    if I.contains(seq.ring.one()):
        return False, "sequence generates the unit ideal"
    quot = dimension(I)
    if quot.dim != 0:
        return False, (
            f"dim S/(seq) = {quot.dim} with independent variables "
            f"{{{', '.join(quot.witness)}}}"
        )
    return True, None


def is_sop(seq) -> bool:
    verdict, _ = sop_diagnostic(seq)
    return verdict


# -- lifting ---------------------------------------------------------------

def lift_matrix(y, x, order=GREVLEX) -> CoeffMatrix:
    """A with y = A·x in S, rows from membership witnesses; deterministic
    for a fixed monomial order."""
    x, y = as_sequence(x), as_sequence(y)
    ring = x.ring
    I = x.as_ideal()
    rows = []
    for i, yi in enumerate(y, start=1):
        w = I.member_witness(yi, order)
        if w is None:
            raise NotContained(
                f"entry {i} of the lifted sequence is not in the target ideal",
                index=i,
            )
        rows.append(w.coefficients[: len(x)])
    return CoeffMatrix(ring, rows)


@dataclass(frozen=True)
class StageLift:
    """Certificate (y)^[s] ⊆ (x)^[n]: y_i^s = Σ_j B_ij x_j^n in S."""

    n: int
    s: int
    B: CoeffMatrix


def stage_lift(x, y, n: int) -> StageLift:
    """Smallest s, searched upward from n, with every y_i^s in (x)^[n].

    Termination is guaranteed at s = d(n−1)+1 once y ⊆ (x): each monomial
    of a power of d ideal generators carries some generator to exponent n.
    """
    x, y = as_sequence(x), as_sequence(y)
    d = len(x)
    bracket = bracket_power(x, n).as_ideal
    cap = d * (n - 1) + 1
    for s in range(n, max(cap, n) + 1):
        if all(bracket.contains(yi ** s) for yi in y):
            rows = []
            for i, yi in enumerate(y, start=1):
                w = bracket.member_witness(yi ** s)
                if w is None:
                    raise InvariantViolation("stage membership lost its witness")
                rows.append(w.coefficients[: len(x)])
            return StageLift(n=n, s=s, B=CoeffMatrix(x.ring, rows))
    raise NotContained(
        f"no exponent up to {cap} pushes the sequence into the stage-{n} "
        "bracket ideal; is it contained in the base ideal?",
        index=0,
    )


# -- determinant maps ------------------------------------------------------

def map5_test(x, y, A: CoeffMatrix | None = None) -> bool:
    """Injectivity of multiplication by det A from S/(x) to S/(y):
    true iff (y) : det A ⊆ (x).  The reverse containment is Cramer's rule
    and is asserted, not assumed."""
    x, y = as_sequence(x), as_sequence(y)
    if A is None:
        A = lift_matrix(y, x)
    x, y = _check_lift(x, y, A)
    det = A.det()
    Ix = x.as_ideal()
    Iy = y.as_ideal()
    if not det:
        # the zero map: injective only from the zero module
        return Ix.contains(x.ring.one())
    quot = colon(Iy, det)
    for xj in x:
        if not Iy.contains(det * xj):
            raise InvariantViolation(
                "Cramer containment det(A)*(x) in (y) failed"
            )
    return Ix.contains_ideal(quot)


def map1_lim_test(x, y, A: CoeffMatrix | None = None,
                  t_max: int = 16, window: int = 2) -> bool:
    """Injectivity of multiplication by det A from S/(x)^lim to S/(y)^lim:
    true iff (y)^lim : det A ⊆ (x)^lim."""
    x, y = as_sequence(x), as_sequence(y)
    if A is None:
        A = lift_matrix(y, x)
    x, y = _check_lift(x, y, A)
    det = A.det()
    closx = limit_closure(x, t_max=t_max, window=window).closure
    closy = limit_closure(y, t_max=t_max, window=window).closure
    if not det:
        return closx.contains(x.ring.one())
    quot = colon(closy, det)
    return closx.contains_ideal(quot)


def map2_stage_test(x, y, stages: int = 3,
                    t_max: int = 16, window: int = 2):
    """Stage-wise bounded injectivity: for n = 1..stages, lift (y)^[s(n)]
    into (x)^[n] and run the limit-closure test on the powered sequences.
    Returns [(n, StageLift, injective)]."""
    x, y = as_sequence(x), as_sequence(y)
    ok, reason = sop_diagnostic(x)
    if not ok:
        raise NotSOP(f"stage test needs a sop base: {reason}")
    Ix = x.as_ideal()
    for i, yi in enumerate(y, start=1):
        if not Ix.contains(yi):
            raise NotContained(
                f"entry {i} of the lifted sequence is not in the base ideal",
                index=i,
            )
    results = []
    for n in range(1, stages + 1):
        sl = stage_lift(x, y, n)
        injective = map1_lim_test(
            x.powers(n), y.powers(sl.s), sl.B, t_max=t_max, window=window
        )
        results.append((n, sl, injective))
    return results


# -- the 1-dimensional theorems -------------------------------------------

@dataclass(frozen=True)
class OneDimReport:
    x: Polynomial
    u: Polynomial
    y: Polynomial
    map5_via_u: bool          # S/(x) --det=u--> S/(y)
    map5_via_x: bool          # S/(u) --det=x--> S/(y)
    map1_injective: bool
    y_is_sop: bool
    u_is_parameter: bool
    length_identity: tuple | None   # (λ((0:x)/u(0:x)), λ(0:(x,u))) when graded
    checks: tuple               # (name, passed) pairs

    @property
    def all_checks_pass(self) -> bool:
        return all(p for _, p in self.checks)


def one_dim_length_identity(x: Polynomial, u: Polynomial):
    """(λ((0:x)/u(0:x)), λ(0:(x,u))), by graded standard-monomial counts.

    Needs homogeneous data: lengths of graded submodules are summed
    degreewise, which is only the local length in the graded case.
    """
    ring = x.ring
    zero = Ideal(ring, [])
    ann_x = colon(zero, x)
    u_ann_x = Ideal(ring, [u * g for g in ann_x.gens])
    lhs = module_length(ann_x) - module_length(u_ann_x)
    ann_xu = colon(zero, Ideal(ring, [x, u]))
    rhs = module_length(ann_xu)
    return lhs, rhs


def one_dim_theorems(x_param: Polynomial, u: Polynomial) -> OneDimReport:
    """Build y = u·x and exercise the dimension-one statements: the direct
    map implies y is a parameter, the direct map is symmetric in x and u,
    and the limit-closure map is injective exactly when y is a parameter."""
    ring = x_param.ring
    d = ring_dimension(ring)
    if d != 1:
        raise WrongDimension(f"dim S = {d}, these results are dimension-one")
    ok, reason = sop_diagnostic([x_param])
    if not ok:
        raise NotParameter(f"the base element is not a parameter: {reason}")
    y = u * x_param
    xs = ElementSequence(ring, [x_param], name="x")
    us = ElementSequence(ring, [u], name="u")
    ys = ElementSequence(ring, [y], name="y")
    lift_u = CoeffMatrix(ring, [[u]])
    lift_x = CoeffMatrix(ring, [[x_param]])
    map5_via_u = map5_test(xs, ys, lift_u)
    map5_via_x = map5_test(us, ys, lift_x)
    map1 = map1_lim_test(xs, ys, lift_u)
    y_sop = is_sop(ys)
    u_param = is_sop(us)
    homogeneous = (
        ring.is_homogeneous()
        and x_param.is_homogeneous()
        and u.is_homogeneous()
    )
    lengths = one_dim_length_identity(x_param, u) if homogeneous else None
    # The symmetry statement needs u to be a parameter before the roles of
    # x and u can be swapped; only the u-side implication is unconditional.
    # Witness: k[x,z]/(x^2 z, z^2) with u = z has the x-side map injective
    # ((xz):x = (z) ⊆ (z)) while the u-side is not ((xz):z = 𝔪 ⊄ (x)).
    checks = [
        ("direct-map-injective-implies-parameter", (not map5_via_u) or y_sop),
        ("direct-map-implies-reverse", (not map5_via_u) or map5_via_x),
        ("direct-map-symmetry-for-parameters",
         (not u_param) or (map5_via_u == map5_via_x)),
        ("limit-map-iff-parameter", map1 == y_sop),
    ]
    if lengths is not None:
        checks.append(("annihilator-length-identity", lengths[0] == lengths[1]))
    return OneDimReport(
        x=x_param, u=u, y=y,
        map5_via_u=map5_via_u,
        map5_via_x=map5_via_x,
        map1_injective=map1,
        y_is_sop=y_sop,
        u_is_parameter=u_param,
        length_identity=lengths,
        checks=tuple(checks),
    )


# -- sampling --------------------------------------------------------------

def random_element(ring: RingPresentation, rng: random.Random,
                   degree: int = 1) -> Polynomial:
    """Random homogeneous combination of the degree-`degree` monomials with
    small coefficients (all of 𝔽_p for small p, −2..2 over ℚ)."""
    out = ring.zero()
    for m in _degree_monomials(ring, degree):
        if ring.char and ring.char <= 7:
            c = rng.randrange(ring.char)
        else:
            c = rng.randint(-2, 2)
        if c:
            out = out + Polynomial(ring, {m: ring.field.from_int(c)},
                                   _normalized=True)
    return out


def _degree_monomials(ring: RingPresentation, degree: int):
    n = ring.nvars
    if degree == 1:
        for i in range(n):
            yield tuple(1 if j == i else 0 for j in range(n))
        return
    from itertools import combinations_with_replacement
    for picks in combinations_with_replacement(range(n), degree):
        m = [0] * n
        for p in picks:
            m[p] += 1
        yield tuple(m)


def random_sop(ring: RingPresentation, rng: random.Random,
               tries: int = 200) -> ElementSequence:
    """Rejection-sample a system of parameters from random linear forms."""
    d = ring_dimension(ring)
    for _ in range(tries):
        entries = [random_element(ring, rng) for _ in range(d)]
        if any(not e for e in entries):
            continue
        seq = ElementSequence(ring, entries)
        if is_sop(seq):
            return seq
    raise NoSOPFound(
        f"no system of parameters found in {tries} random draws"
    )


# -- CM probe --------------------------------------------------------------

@dataclass(frozen=True)
class CMProbeReport:
    verdict: str                      # "CM-consistent" | "NotCM"
    tested: int
    witness: Polynomial | None = None
    sequence: ElementSequence | None = None

    @property
    def is_consistent(self) -> bool:
        return self.verdict == "CM-consistent"


def cm_probe(ring: RingPresentation, trials: int = 8,
             seed: int = 0, t_max: int = 16, window: int = 2) -> CMProbeReport:
    """Sample sops and compare each ideal with its limit closure.  Any gap
    certifies the ring is not Cohen-Macaulay (with a witness element);
    all-equal is consistency evidence, not a proof."""
    rng = random.Random(seed)
    tested = 0
    while tested < trials:
        seq = random_sop(ring, rng)
        tested += 1
        closure = limit_closure(seq, t_max=t_max, window=window).closure
        I = seq.as_ideal()
        for g in closure.groebner():
            if not I.contains(g):
                return CMProbeReport(
                    verdict="NotCM", tested=tested, witness=g, sequence=seq
                )
    return CMProbeReport(verdict="CM-consistent", tested=tested)


# -- characteristic p ------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusStep:
    q: int
    base_holds: bool          # c·z^q ∈ (x)^[q]
    image_holds: bool | None  # c·(det A)^q·z^q ∈ (y)^[q]; None if base failed


def frobenius_certificate_check(c: Polynomial, z: Polynomial, x, y,
                                A: CoeffMatrix | None = None,
                                q_list=(2, 4)) -> list:
    """Certificate steps for the characteristic-p multiplier argument.

    For each q = p^e: if c·z^q lies in (x)^[q], then c·(det A)^q·z^q must
    lie in (y)^[q]; that implication is a theorem, so its failure raises.
    The Frobenius compatibility (det A)^q = det(A^[q]) is asserted too.
    """
    x, y = as_sequence(x), as_sequence(y)
    ring = x.ring
    p = ring.char
    if p == 0:
        raise WrongCharacteristic("certificate checks need characteristic p > 0")
    if A is None:
        A = lift_matrix(y, x)
    x, y = _check_lift(x, y, A)
    det = A.det()
    steps = []
    for q in q_list:
        e = 0
        qq = q
        while qq > 1 and qq % p == 0:
            qq //= p
            e += 1
        if qq != 1 or e < 1:
            raise NotPrimePower(f"{q} is not a positive power of {p}")
        if det ** q != A.entrywise_power(q).det():
            raise InvariantViolation(
                "(det A)^q differs from det(A^[q]) in characteristic p"
            )
        zq = z ** q
        base = bracket_power(x, q).as_ideal.contains(c * zq)
        image = None
        if base:
            image = bracket_power(y, q).as_ideal.contains(c * det ** q * zq)
            if not image:
                raise InvariantViolation(
                    "certificate implication failed: c*z^q in (x)^[q] but "
                    "c*(det A)^q*z^q not in (y)^[q]"
                )
        steps.append(FrobeniusStep(q=q, base_holds=base, image_holds=image))
    return steps


# -- annihilator containment probe ----------------------------------------

@dataclass(frozen=True)
class ZeroColonReport:
    annihilator: Ideal
    tested: int
    found: ElementSequence | None   # a sampled sop whose ideal contains 0:u

    @property
    def hit(self) -> bool:
        return self.found is not None


def zero_colon_probe(u: Polynomial, trials: int = 20,
                     seed: int = 0) -> ZeroColonReport:
    """Sample sops and test whether (sop) ever contains 0:u.

    The interesting hypothesis (u in a maximal-dimension component) is the
    caller's to assert; this probe only reports raw containment data.
    A hit would be a counterexample candidate, exhaustion is evidence of
    the expected 'no'."""
    ring = u.ring
    ann = colon(Ideal(ring, []), u)
    if all(Ideal(ring, []).contains(g) for g in ann.gens):
        raise ZeroAnnihilator("0:u is zero; the probe is vacuous")
    rng = random.Random(seed)
    tested = 0
    while tested < trials:
        seq = random_sop(ring, rng)
        tested += 1
        if seq.as_ideal().contains_ideal(ann):
            return ZeroColonReport(annihilator=ann, tested=tested, found=seq)
    return ZeroColonReport(annihilator=ann, tested=tested, found=None)


# -- the combined pair report (drtest) ------------------------------------

@dataclass(frozen=True)
class PairReport:
    x: ElementSequence
    y: ElementSequence
    x_is_sop: bool
    y_is_sop: bool
    A: CoeffMatrix
    detA: Polynomial
    map5_injective: bool
    map1_injective: bool
    map2_stage_results: tuple   # (n, s, injective)
    consistent_with_theorems: tuple  # (name, passed)

    @property
    def all_consistent(self) -> bool:
        return all(p for _, p in self.consistent_with_theorems)


def pair_report(x, y, stages: int = 3,
                t_max: int = 16, window: int = 2) -> PairReport:
    """The full battery for a pair of sequences with y ⊆ (x)."""
    x, y = as_sequence(x), as_sequence(y)
    x_sop = is_sop(x)
    y_sop = is_sop(y)
    A = lift_matrix(y, x)
    detA = A.det()
    map5 = map5_test(x, y, A)
    map1 = map1_lim_test(x, y, A, t_max=t_max, window=window)
    stage_rows = []
    if x_sop:
        for n, sl, inj in map2_stage_test(x, y, stages, t_max=t_max,
                                          window=window):
            stage_rows.append((n, sl.s, inj))
    A2 = lift_matrix(y, x, order=LEX)
    map1_again = map1_lim_test(x, y, A2, t_max=t_max, window=window)
    checks = [
        ("sop-implies-limit-map-injective", (not y_sop) or map1),
        ("limit-map-lift-independent", map1 == map1_again),
    ]
    if stage_rows:
        checks.append(
            ("sop-implies-stages-injective",
             (not y_sop) or all(inj for _, _, inj in stage_rows))
        )
    return PairReport(
        x=x, y=y,
        x_is_sop=x_sop, y_is_sop=y_sop,
        A=A, detA=detA,
        map5_injective=map5,
        map1_injective=map1,
        map2_stage_results=tuple(stage_rows),
        consistent_with_theorems=tuple(checks),
    )
