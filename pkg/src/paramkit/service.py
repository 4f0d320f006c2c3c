"""HTTP service wrapping the library: one POST endpoint executes any
command against an input document sent in the request body, so the
server stays stateless and filesystem-free.  The CLI drives the same
`execute` path through an in-process transport.
"""

from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI
from pydantic import BaseModel, Field

from . import __version__
from .corpus import list_scenarios, run_checks, run_scenario
from .criteria import (
    cm_probe,
    frobenius_certificate_check,
    is_sop,
    lift_matrix,
    map1_lim_test,
    map2_stage_test,
    map5_test,
    one_dim_theorems,
    pair_report,
    sop_diagnostic,
    zero_colon_probe,
)
from .errors import ParamkitError, UnknownCommand, ParseError
from .groebner import Ideal
from .idealops import colon, dimension, intersect, length, ring_dimension, socle
from .koszul import detcor_check, is_regular_sequence, koszul_complex
from .limitclosure import limit_closure, monomial_conjecture_check
from .polyring import render_poly
from .session import parse_session

COMMANDS = (
    "sopcheck", "limclose", "mc", "drtest", "map5", "map1", "map2",
    "koszul", "detcor", "lift", "colon", "intersect", "dim", "length",
    "socle", "regseq", "cmprobe", "frobcert", "zerocolon", "scenario",
)

YES_NO_COMMANDS = {
    "sopcheck", "map5", "map1", "map2", "mc", "detcor", "regseq", "cmprobe",
}


class RunRequest(BaseModel):
    command: str
    input_text: Optional[str] = None
    scenario: Optional[str] = None
    options: dict = Field(default_factory=dict)


class RunError(BaseModel):
    code: str
    message: str
    details: dict = Field(default_factory=dict)


class RunReport(BaseModel):
    command: str
    status: str                      # "ok" | "error"
    verdict: Optional[Any] = None
    data: dict = Field(default_factory=dict)
    warnings: list = Field(default_factory=list)
    error: Optional[RunError] = None
    exit_code: int = 0


def _gens(I: Ideal) -> list:
    return [render_poly(g) for g in I.groebner()]


def _seq_opt(session, options, key):
    name = options.get(key)
    if name is None:
        raise ParseError(f"command needs --{key}")
    return session.sequence(str(name))


def _matrix_opt(session, options, key="matrix"):
    name = options.get(key)
    return session.matrix(str(name)) if name is not None else None


def _int_opt(options, key, default):
    value = options.get(key, default)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ParseError(f"--{key} must be an integer, got {value!r}")


def _closure_kw(options):
    return {
        "t_max": _int_opt(options, "tmax", 16),
        "window": _int_opt(options, "window", 2),
    }


def _stage_rows(rows):
    return [{"n": n, "s": s, "injective": inj} for n, s, inj in rows]


def _run_sopcheck(session, options):
    seq = _seq_opt(session, options, "seq")
    verdict, reason = sop_diagnostic(seq)
    return verdict, {"is_sop": verdict, "diagnostic": reason}


def _run_limclose(session, options):
    seq = _seq_opt(session, options, "seq")
    res = limit_closure(seq, **_closure_kw(options))
    data = {
        "closure": _gens(res.closure),
        "stabilized_at": res.stabilized_at,
        "stages_checked": res.stages_checked,
        "verified_window": res.verified_window,
    }
    return None, data


def _run_mc(session, options):
    seq = _seq_opt(session, options, "seq")
    rep = monomial_conjecture_check(seq, t_max=_int_opt(options, "tmax", 16))
    data = {
        "holds": rep.holds,
        "holds_up_to": rep.holds_up_to,
        "violated_at": rep.violated_at,
    }
    return rep.holds, data


def _run_drtest(session, options):
    x = _seq_opt(session, options, "x")
    y = _seq_opt(session, options, "y")
    rep = pair_report(x, y, stages=_int_opt(options, "stages", 3),
                      **_closure_kw(options))
    data = {
        "x_is_sop": rep.x_is_sop,
        "y_is_sop": rep.y_is_sop,
        "matrix": rep.A.render(),
        "det": render_poly(rep.detA),
        "map5_injective": rep.map5_injective,
        "map1_injective": rep.map1_injective,
        "stages": _stage_rows(rep.map2_stage_results),
        "checks": [{"name": n, "passed": p}
                   for n, p in rep.consistent_with_theorems],
        "all_consistent": rep.all_consistent,
    }
    return None, data


def _run_map5(session, options):
    x = _seq_opt(session, options, "x")
    y = _seq_opt(session, options, "y")
    A = _matrix_opt(session, options) or lift_matrix(y, x)
    verdict = map5_test(x, y, A)
    return verdict, {"injective": verdict, "matrix": A.render(),
                     "det": render_poly(A.det())}


def _run_map1(session, options):
    x = _seq_opt(session, options, "x")
    y = _seq_opt(session, options, "y")
    A = _matrix_opt(session, options) or lift_matrix(y, x)
    verdict = map1_lim_test(x, y, A, **_closure_kw(options))
    return verdict, {"injective": verdict, "matrix": A.render(),
                     "det": render_poly(A.det())}


def _run_map2(session, options):
    x = _seq_opt(session, options, "x")
    y = _seq_opt(session, options, "y")
    rows = map2_stage_test(x, y, stages=_int_opt(options, "stages", 3),
                           **_closure_kw(options))
    verdict = all(inj for _, _, inj in rows)
    return verdict, {"stages": _stage_rows([(n, sl.s, inj)
                                            for n, sl, inj in rows]),
                     "all_injective": verdict}


def _run_koszul(session, options):
    seq = _seq_opt(session, options, "seq")
    complex_ = koszul_complex(seq)
    level = options.get("level")
    if level is not None:
        k = _int_opt(options, "level", None)
        mat = complex_.differential(k)
        levels = [{"k": k, "rows": mat.nrows, "cols": mat.ncols,
                   "matrix": mat.render()}]
    else:
        levels = [
            {"k": k, "rows": m.nrows, "cols": m.ncols, "matrix": m.render()}
            for k, m in enumerate(complex_.differentials, start=1)
        ]
    return None, {"length": len(seq), "differentials": levels}


def _run_detcor(session, options):
    y = _seq_opt(session, options, "y")
    x = _seq_opt(session, options, "x")
    A = _matrix_opt(session, options, "a")
    B = _matrix_opt(session, options, "b")
    if A is None or B is None:
        raise ParseError("detcor needs --a and --b matrices")
    verdict = detcor_check(y, A, B, x)
    return verdict, {"holds": verdict}


def _run_lift(session, options):
    y = _seq_opt(session, options, "y")
    x = _seq_opt(session, options, "x")
    A = lift_matrix(y, x)
    return None, {"matrix": A.render(), "det": render_poly(A.det())}


def _run_colon(session, options):
    I = _seq_opt(session, options, "ideal").as_ideal()
    by_seq = _seq_opt(session, options, "by")
    by = by_seq[0] if len(by_seq) == 1 else by_seq.as_ideal()
    return None, {"generators": _gens(colon(I, by))}


def _run_intersect(session, options):
    I = _seq_opt(session, options, "i").as_ideal()
    J = _seq_opt(session, options, "j").as_ideal()
    return None, {"generators": _gens(intersect(I, J))}


def _run_dim(session, options):
    if options.get("seq") is not None:
        I = _seq_opt(session, options, "seq").as_ideal()
        rep = dimension(I)
        return None, {"dim": rep.dim, "witness": list(rep.witness),
                      "of": "quotient"}
    return None, {"dim": ring_dimension(session.ring), "of": "ring"}


def _run_length(session, options):
    I = _seq_opt(session, options, "seq").as_ideal()
    return None, {"length": length(I)}


def _run_socle(session, options):
    I = _seq_opt(session, options, "seq").as_ideal()
    return None, {"generators": _gens(socle(I))}


def _run_regseq(session, options):
    seq = _seq_opt(session, options, "seq")
    ok, first = is_regular_sequence(seq)
    return ok, {"regular": ok, "first_failure": first}


def _run_cmprobe(session, options):
    rep = cm_probe(
        session.ring,
        trials=_int_opt(options, "trials", 8),
        seed=_int_opt(options, "seed", 0),
        **_closure_kw(options),
    )
    data = {
        "verdict": rep.verdict,
        "tested": rep.tested,
        "witness": render_poly(rep.witness) if rep.witness is not None else None,
        "sequence": [render_poly(e) for e in rep.sequence]
        if rep.sequence is not None else None,
    }
    return rep.is_consistent, data


def _run_frobcert(session, options):
    c = _seq_opt(session, options, "c")
    z = _seq_opt(session, options, "z")
    x = _seq_opt(session, options, "x")
    y = _seq_opt(session, options, "y")
    A = _matrix_opt(session, options) or lift_matrix(y, x)
    q_raw = options.get("q", "2,4")
    if isinstance(q_raw, str):
        q_list = [int(t) for t in q_raw.split(",") if t.strip()]
    else:
        q_list = [int(t) for t in q_raw]
    steps = frobenius_certificate_check(c[0], z[0], x, y, A, q_list)
    return None, {"steps": [
        {"q": s.q, "base_holds": s.base_holds, "image_holds": s.image_holds}
        for s in steps
    ]}


def _run_zerocolon(session, options):
    u = _seq_opt(session, options, "u")
    rep = zero_colon_probe(
        u[0],
        trials=_int_opt(options, "trials", 20),
        seed=_int_opt(options, "seed", 0),
    )
    data = {
        "hit": rep.hit,
        "tested": rep.tested,
        "annihilator": _gens(rep.annihilator),
        "found": [render_poly(e) for e in rep.found]
        if rep.found is not None else None,
    }
    return None, data


_HANDLERS = {
    "sopcheck": _run_sopcheck,
    "limclose": _run_limclose,
    "mc": _run_mc,
    "drtest": _run_drtest,
    "map5": _run_map5,
    "map1": _run_map1,
    "map2": _run_map2,
    "koszul": _run_koszul,
    "detcor": _run_detcor,
    "lift": _run_lift,
    "colon": _run_colon,
    "intersect": _run_intersect,
    "dim": _run_dim,
    "length": _run_length,
    "socle": _run_socle,
    "regseq": _run_regseq,
    "cmprobe": _run_cmprobe,
    "frobcert": _run_frobcert,
    "zerocolon": _run_zerocolon,
}


def _scenario_report(request: RunRequest) -> tuple:
    if request.scenario is not None:
        rep = run_scenario(request.scenario)
    elif request.input_text is not None:
        session = parse_session(request.input_text)
        rep = run_checks(session)
    else:
        return None, {"scenarios": list_scenarios()}, []
    good, total = rep.counts
    data = {
        "name": rep.name,
        "passed": rep.passed,
        "counts": {"pass": good, "total": total},
        "checks": [
            {"op": r.op, "args": list(r.args), "expected": r.expected,
             "actual": r.actual, "passed": r.passed, "tag": r.tag}
            for r in rep.results
        ],
    }
    return rep.passed, data, []


def execute(request: RunRequest) -> RunReport:
    """Run one command and fold the outcome, including errors and the
    exit-code contract (0 ok / 1 negative verdict / 2 error), into a report."""
    command = request.command
    try:
        if command not in COMMANDS:
            raise UnknownCommand(
                f"unknown command {command!r}; expected one of "
                + ", ".join(COMMANDS)
            )
        if command == "scenario":
            verdict, data, warnings = _scenario_report(request)
        else:
            if request.input_text is None:
                raise ParseError("command needs an input document")
            session = parse_session(request.input_text)
            verdict, data = _HANDLERS[command](session, request.options)
            warnings = list(session.warnings)
        exit_code = 0
        if verdict is False and (command in YES_NO_COMMANDS
                                 or command == "scenario"):
            exit_code = 1
        return RunReport(
            command=command, status="ok", verdict=verdict, data=data,
            warnings=warnings, exit_code=exit_code,
        )
    except ParamkitError as err:
        return RunReport(
            command=command, status="error",
            error=RunError(code=err.code, message=err.message,
                           details={k: repr(v)
                                    for k, v in err.details.items()}),
            exit_code=2,
        )


app = FastAPI(title="paramkit", version=__version__)


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.get("/v1/scenarios")
def scenarios():
    return {"scenarios": list_scenarios()}


@app.post("/v1/run", response_model=RunReport)
def run(request: RunRequest) -> RunReport:
    return execute(request)
