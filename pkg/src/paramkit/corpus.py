"""Bundled scenario files and their expectation runner.

A scenario is an input file (see session) whose `expect` lines each carry
an operation, arguments naming sequences or matrices declared above, an
expected value, and a provenance tag.  The files are the single source of
truth for regression values; tests enumerate them instead of re-stating
numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .criteria import (
    is_sop,
    lift_matrix,
    map1_lim_test,
    map2_stage_test,
    map5_test,
    cm_probe,
    one_dim_theorems,
    zero_colon_probe,
)
from .errors import ParamkitError, ParseError, UnknownScenario
from .groebner import Ideal, ideal_equal
from .idealops import colon, length, ring_dimension, socle
from .koszul import is_regular_sequence
from .limitclosure import limit_closure, monomial_conjecture_check
from .parser import parse_poly, parse_poly_list
from .polyring import render_poly
from .session import SessionInput, parse_session


def _render_ideal(I: Ideal) -> str:
    gens = I.groebner()
    if not gens:
        return "0"
    return ", ".join(render_poly(g) for g in gens)


def _expected_ideal(session: SessionInput, text: str) -> Ideal:
    if text.strip() == "0":
        return Ideal(session.ring, [])
    return Ideal(session.ring, parse_poly_list(text, session.ring))


def _ideal_check(session, actual_ideal, expected_text):
    expected = _expected_ideal(session, expected_text)
    return _render_ideal(actual_ideal), ideal_equal(actual_ideal, expected)


def _verdict(flag: bool) -> str:
    return "injective" if flag else "not-injective"


def _op_dim(session, exp):
    actual = ring_dimension(session.ring)
    return str(actual), str(actual) == exp.expected


def _op_sop(session, exp):
    (name,) = exp.args
    actual = "true" if is_sop(session.sequence(name)) else "false"
    return actual, actual == exp.expected


def _op_gb(session, exp):
    (name,) = exp.args
    I = session.sequence(name).as_ideal()
    return _ideal_check(session, I, exp.expected)


def _op_colon(session, exp):
    iname, bname = exp.args
    I = session.sequence(iname).as_ideal()
    by_seq = session.sequence(bname)
    by = by_seq[0] if len(by_seq) == 1 else by_seq.as_ideal()
    return _ideal_check(session, colon(I, by), exp.expected)


def _op_limclose(session, exp):
    (name,) = exp.args
    res = limit_closure(session.sequence(name))
    return _ideal_check(session, res.closure, exp.expected)


def _op_limstab(session, exp):
    (name,) = exp.args
    res = limit_closure(session.sequence(name))
    return str(res.stabilized_at), str(res.stabilized_at) == exp.expected


def _op_map5(session, exp):
    xname, yname = exp.args
    x, y = session.sequence(xname), session.sequence(yname)
    actual = _verdict(map5_test(x, y, lift_matrix(y, x)))
    return actual, actual == exp.expected


def _op_map1(session, exp):
    xname, yname = exp.args
    x, y = session.sequence(xname), session.sequence(yname)
    actual = _verdict(map1_lim_test(x, y, lift_matrix(y, x)))
    return actual, actual == exp.expected


def _op_map2stage(session, exp):
    xname, yname, stage = exp.args
    n = int(stage)
    rows = map2_stage_test(session.sequence(xname), session.sequence(yname),
                           stages=n)
    actual = _verdict(rows[-1][2])
    return actual, actual == exp.expected


def _op_length(session, exp):
    (name,) = exp.args
    actual = length(session.sequence(name).as_ideal())
    return str(actual), str(actual) == exp.expected


def _op_socle(session, exp):
    (name,) = exp.args
    I = session.sequence(name).as_ideal()
    return _ideal_check(session, socle(I), exp.expected)


def _op_mc(session, exp):
    name, tmax = exp.args
    rep = monomial_conjecture_check(session.sequence(name), t_max=int(tmax))
    actual = "holds" if rep.holds else f"violated:{rep.violated_at}"
    return actual, actual == exp.expected


def _op_regseq(session, exp):
    (name,) = exp.args
    ok, first = is_regular_sequence(session.sequence(name))
    actual = "true" if ok else f"false:{first}" if first else "false"
    return actual, actual == exp.expected


def _op_det(session, exp):
    (name,) = exp.args
    det = session.matrix(name).det()
    expected = parse_poly(exp.expected, session.ring)
    return render_poly(det), det == expected


def _op_lift(session, exp):
    yname, xname = exp.args
    A = lift_matrix(session.sequence(yname), session.sequence(xname))
    expected = session.matrix(exp.expected)
    actual = A.render_text()
    return actual, A.render() == expected.render()


def _op_onedim(session, exp):
    xname, uname = exp.args
    x = session.sequence(xname)
    u = session.sequence(uname)
    rep = one_dim_theorems(x[0], u[0])
    actual = "checks-pass" if rep.all_checks_pass else "checks-fail:" + ",".join(
        name for name, ok in rep.checks if not ok
    )
    return actual, actual == exp.expected


def _op_cmprobe(session, exp):
    trials, seed = exp.args
    rep = cm_probe(session.ring, trials=int(trials), seed=int(seed))
    return rep.verdict, rep.verdict == exp.expected


def _op_zerocolon(session, exp):
    uname, trials, seed = exp.args
    u = session.sequence(uname)
    rep = zero_colon_probe(u[0], trials=int(trials), seed=int(seed))
    actual = "hit" if rep.hit else "no-hit"
    return actual, actual == exp.expected


_OPS = {
    "dim": _op_dim,
    "sop": _op_sop,
    "gb": _op_gb,
    "colon": _op_colon,
    "limclose": _op_limclose,
    "limstab": _op_limstab,
    "map5": _op_map5,
    "map1": _op_map1,
    "map2stage": _op_map2stage,
    "length": _op_length,
    "socle": _op_socle,
    "mc": _op_mc,
    "regseq": _op_regseq,
    "det": _op_det,
    "lift": _op_lift,
    "onedim": _op_onedim,
    "cmprobe": _op_cmprobe,
    "zerocolon": _op_zerocolon,
}


@dataclass(frozen=True)
class CheckResult:
    op: str
    args: tuple
    tag: str
    expected: str
    actual: str
    passed: bool
    line: int

    def describe(self) -> str:
        status = "ok" if self.passed else "FAIL"
        head = " ".join((self.op,) + self.args)
        out = f"[{status}] {head} = {self.expected}  [{self.tag}]"
        if not self.passed:
            out += f"\n       actual: {self.actual}"
        return out


@dataclass(frozen=True)
class ScenarioReport:
    name: str
    results: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def counts(self):
        good = sum(1 for r in self.results if r.passed)
        return good, len(self.results)

    def describe(self) -> str:
        good, total = self.counts
        lines = [f"scenario {self.name}: {good}/{total} checks pass"]
        lines.extend("  " + r.describe() for r in self.results)
        return "\n".join(lines)


def run_checks(session: SessionInput, name: str = "<input>") -> ScenarioReport:
    results = []
    for exp in session.expectations:
        handler = _OPS.get(exp.op)
        if handler is None:
            raise ParseError(
                f"unknown expectation operation {exp.op!r}", line=exp.line
            )
        try:
            actual, passed = handler(session, exp)
        except ParamkitError as err:
            actual, passed = f"error {err.code}: {err.message}", False
        results.append(CheckResult(
            op=exp.op, args=exp.args, tag=exp.tag, expected=exp.expected,
            actual=actual, passed=passed, line=exp.line,
        ))
    return ScenarioReport(name=name, results=tuple(results))


def _scenario_dir():
    return resources.files("paramkit") / "scenarios"


def list_scenarios() -> list:
    names = []
    for entry in _scenario_dir().iterdir():
        if entry.name.endswith(".ring"):
            names.append(entry.name[:-len(".ring")])
    return sorted(names)


def scenario_text(name: str) -> str:
    candidate = _scenario_dir() / f"{name}.ring"
    try:
        return candidate.read_text()
    except (FileNotFoundError, NotADirectoryError):
        raise UnknownScenario(
            f"unknown scenario {name!r}; available: {', '.join(list_scenarios())}"
        )


def load_scenario(name: str) -> SessionInput:
    return parse_session(scenario_text(name))


def run_scenario(name: str) -> ScenarioReport:
    return run_checks(load_scenario(name), name=name)
