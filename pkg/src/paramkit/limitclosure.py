"""Limit closures, their stabilization stage, and monomial-conjecture checks.

The limit closure of a sequence x_1..x_d is the union over t of the stage
ideals (x_1^t..x_d^t) : (x_1⋯x_d)^{t−1}.  The chain of stages ascends, and
Noetherianity makes it eventually constant; since no effective bound exists,
stabilization is declared only after a verified window of equal stages and
reported alongside the result.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation, NotSOP, Unstabilized
from .groebner import Ideal
from .idealops import (
    ElementSequence,
    as_sequence,
    bracket_power,
    colon,
    dimension,
    ring_dimension,
)
from .polyring import render_poly


@dataclass(frozen=True)
class LimitClosureResult:
    closure: Ideal
    stabilized_at: int     # first stage equal to the reported closure
    stages_checked: int    # total stages computed, = stabilized_at + window
    verified_window: int   # closure == stage t for stabilized_at <= t <= stabilized_at + window


@dataclass(frozen=True)
class MCReport:
    """Monomial-conjecture scan: (x_1⋯x_d)^{t−1} ∉ (x)^[t] up to a bound."""

    holds_up_to: int
    violated_at: int | None
    t_max: int

    @property
    def holds(self) -> bool:
        return self.violated_at is None


def lim_stage(seq, t: int) -> Ideal:
    """Stage ideal (x)^[t] : (x_1⋯x_d)^{t−1}; equals (x) at t = 1."""
    seq = as_sequence(seq)
    if t < 1:
        raise InvariantViolation(f"stage index must be >= 1, got {t}")
    if t == 1:
        return seq.as_ideal()
    prod = seq.product() ** (t - 1)
    bracket = bracket_power(seq, t).as_ideal
    if not prod:
        # a zero entry: everything multiplies into the bracket ideal
        return Ideal(seq.ring, [seq.ring.one()])
    return colon(bracket, prod)


def _gb_key(I: Ideal):
    return tuple(g.key() for g in I.groebner())


def limit_closure(seq, t_max: int = 16, window: int = 2) -> LimitClosureResult:
    """Ascend stages until `window` further stages repeat the same ideal.

    The result's closure equals every stage from stabilized_at through
    stabilized_at + window; an unstable prefix up to t_max raises
    Unstabilized with the last stage's generators attached.
    """
    seq = as_sequence(seq)
    if t_max < 1 + window:
        raise InvariantViolation(
            f"t_max = {t_max} leaves no room for a window of {window}"
        )
    stages = []
    keys = []
    run_start = None
    for t in range(1, t_max + 1):
        stage = lim_stage(seq, t)
        key = _gb_key(stage)
        if stages:
            # ascending chain is folklore, not proved in the source; assert it
            if not stage.contains_ideal(stages[-1]):
                raise InvariantViolation(
                    f"stage {t} does not contain stage {t - 1}"
                )
        if keys and key == keys[-1]:
            if run_start is None:
                run_start = t - 1
        else:
            run_start = None
        stages.append(stage)
        keys.append(key)
        if run_start is not None and t - run_start >= window:
            return LimitClosureResult(
                closure=stages[run_start - 1],
                stabilized_at=run_start,
                stages_checked=t,
                verified_window=window,
            )
    last = stages[-1]
    raise Unstabilized(
        f"no window of {window} equal stages within t_max = {t_max}",
        t_max=t_max,
        window=window,
        last_stage=[render_poly(g) for g in last.groebner()],
    )


def monomial_conjecture_check(seq, t_max: int = 16) -> MCReport:
    """Scan t = 1..t_max for a violation (x_1⋯x_d)^{t−1} ∈ (x)^[t].

    The sequence must be a system of parameters; 1 ∈ (x)^lim and a finite-
    stage violation are the same thing, so any hit is returned with its t.
    """
    seq = as_sequence(seq)
    ring = seq.ring
    d = ring_dimension(ring)
    if len(seq) != d:
        raise NotSOP(
            f"sequence length {len(seq)} differs from ring dimension {d}"
        )
    quot = dimension(seq.as_ideal())
    if quot.dim != 0:
        raise NotSOP(
            f"dim S/(seq) = {quot.dim}, not 0", dim=quot.dim,
            independent_vars=list(quot.witness),
        )
    prod = seq.product()
    power = ring.one()
    for t in range(1, t_max + 1):
        if t > 1:
            power = power * prod
        bracket = bracket_power(seq, t).as_ideal
        if bracket.contains(power):
            return MCReport(holds_up_to=t - 1, violated_at=t, t_max=t_max)
    return MCReport(holds_up_to=t_max, violated_at=None, t_max=t_max)
