"""Command-line front end.  Every command builds a request document,
sends it through the HTTP service layer (in-process by default, or to a
remote server with --server), and renders the structured report.

Exit codes: 0 success, 1 negative mathematical verdict on yes/no
commands, 2 errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx


def _post_run(server, payload: dict) -> dict:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            resp = client.post("/v1/run", json=payload)
            resp.raise_for_status()
            return resp.json()

    async def go():
        from .service import app
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://paramkit.internal",
            timeout=600.0,
        ) as client:
            resp = await client.post("/v1/run", json=payload)
            resp.raise_for_status()
            return resp.json()

    return asyncio.run(go())


def _add_file(sub):
    sub.add_argument("file", help="input document (ring/seq/matrix lines)")


def _add_closure(sub):
    sub.add_argument("--tmax", type=int, default=16,
                     help="stage cap for limit closures (default 16)")
    sub.add_argument("--window", type=int, default=2,
                     help="stabilization window (default 2)")


def _add_common(sub):
    sub.add_argument("--json", action="store_true", dest="as_json",
                     help="emit the machine-readable report")
    sub.add_argument("--server", default=None,
                     help="base URL of a running service; default in-process")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramkit",
        description="Parameter tests, limit closures and Koszul data "
                    "over explicit quotient rings.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    def sub(name, help_, file=True, closure=False):
        s = subs.add_parser(name, help=help_)
        if file:
            _add_file(s)
        if closure:
            _add_closure(s)
        _add_common(s)
        return s

    s = sub("sopcheck", "is the named sequence a system of parameters?")
    s.add_argument("--seq", required=True)

    s = sub("limclose", "limit closure of the named sequence", closure=True)
    s.add_argument("--seq", required=True)

    s = sub("mc", "monomial-conjecture check along the stages")
    s.add_argument("--seq", required=True)
    s.add_argument("--tmax", type=int, default=16)

    s = sub("drtest", "full report for a pair y inside (x)", closure=True)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--stages", type=int, default=3)

    s = sub("map5", "direct-map injectivity test", closure=False)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--matrix", default=None, help="named lift matrix")

    s = sub("map1", "limit-closure map injectivity test", closure=True)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--matrix", default=None)

    s = sub("map2", "stage-wise bounded injectivity test", closure=True)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--stages", type=int, default=3)

    s = sub("koszul", "differentials of the Koszul complex")
    s.add_argument("--seq", required=True)
    s.add_argument("--level", type=int, default=None)

    s = sub("detcor", "determinant-difference membership in (y)^[d+1]")
    s.add_argument("--y", required=True)
    s.add_argument("--a", required=True, help="first lift matrix name")
    s.add_argument("--b", required=True, help="second lift matrix name")
    s.add_argument("--x", required=True)

    s = sub("lift", "matrix writing y in terms of x, from witnesses")
    s.add_argument("--y", required=True)
    s.add_argument("--x", required=True)

    s = sub("colon", "ideal quotient (ideal) : (by)")
    s.add_argument("--ideal", required=True)
    s.add_argument("--by", required=True)

    s = sub("intersect", "intersection of two ideals")
    s.add_argument("--i", required=True)
    s.add_argument("--j", required=True)

    s = sub("dim", "Krull dimension of the ring or of S/(seq)")
    s.add_argument("--seq", default=None)

    s = sub("length", "vector-space length of S/(seq)")
    s.add_argument("--seq", required=True)

    s = sub("socle", "socle (seq) : maximal ideal")
    s.add_argument("--seq", required=True)

    s = sub("regseq", "is the named sequence regular?")
    s.add_argument("--seq", required=True)

    s = sub("cmprobe", "sample sops and compare with limit closures",
            closure=True)
    s.add_argument("--trials", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)

    s = sub("frobcert", "characteristic-p certificate steps")
    s.add_argument("--c", required=True)
    s.add_argument("--z", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--matrix", default=None)
    s.add_argument("--q", default="2,4", help="comma-separated prime powers")

    s = sub("zerocolon", "probe whether 0:u lands in sampled sop ideals")
    s.add_argument("--u", required=True)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)

    s = subs.add_parser("scenario", help="run bundled or file scenarios")
    s.add_argument("name", nargs="?", default=None,
                   help="scenario name, or a path to a .ring file")
    s.add_argument("--list", action="store_true", dest="list_them")
    _add_common(s)

    s = subs.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8421)

    return parser


_OPTION_KEYS = (
    "seq", "x", "y", "u", "c", "z", "matrix", "a", "b", "ideal", "i", "j",
    "by", "tmax", "window", "stages", "level", "trials", "seed", "q",
)


def _request_from_args(args) -> dict:
    options = {}
    for key in _OPTION_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            options[key] = value
    payload = {"command": args.command, "options": options}
    if args.command == "scenario":
        name = args.name
        if getattr(args, "list_them", False) or name is None:
            return payload
        path = Path(name)
        if name.endswith(".ring") or "/" in name:
            payload["input_text"] = path.read_text()
        else:
            payload["scenario"] = name
        return payload
    payload["input_text"] = Path(args.file).read_text()
    return payload


def _fmt_matrix(rows) -> str:
    return "[" + ", ".join("[" + ", ".join(r) + "]" for r in rows) + "]"


def _fmt_bool(b) -> str:
    return "true" if b else "false"


def _format(report: dict) -> str:
    command = report["command"]
    data = report.get("data") or {}
    out = []
    if command == "sopcheck":
        line = f"sop: {_fmt_bool(data['is_sop'])}"
        if data.get("diagnostic"):
            line += f"  ({data['diagnostic']})"
        out.append(line)
    elif command == "limclose":
        out.append("closure: " + ", ".join(data["closure"]))
        out.append(
            f"stabilized at t* = {data['stabilized_at']} "
            f"(checked {data['stages_checked']} stages, "
            f"window {data['verified_window']})"
        )
    elif command == "mc":
        if data["holds"]:
            out.append(f"holds up to t = {data['holds_up_to']}")
        else:
            out.append(f"VIOLATED at t = {data['violated_at']}")
    elif command == "drtest":
        out.append(f"x is sop: {_fmt_bool(data['x_is_sop'])}")
        out.append(f"y is sop: {_fmt_bool(data['y_is_sop'])}")
        out.append(f"lift A: {_fmt_matrix(data['matrix'])}  det = {data['det']}")
        out.append(f"direct map injective: {_fmt_bool(data['map5_injective'])}")
        out.append(f"limit map injective: {_fmt_bool(data['map1_injective'])}")
        for row in data["stages"]:
            out.append(
                f"stage n={row['n']} (s={row['s']}): "
                + ("injective" if row["injective"] else "not-injective")
            )
        for check in data["checks"]:
            mark = "ok" if check["passed"] else "FAIL"
            out.append(f"[{mark}] {check['name']}")
    elif command in ("map5", "map1"):
        out.append(
            f"injective: {_fmt_bool(data['injective'])}  (det = {data['det']})"
        )
    elif command == "map2":
        for row in data["stages"]:
            out.append(
                f"stage n={row['n']} (s={row['s']}): "
                + ("injective" if row["injective"] else "not-injective")
            )
        out.append(f"all stages injective: {_fmt_bool(data['all_injective'])}")
    elif command == "koszul":
        out.append(f"Koszul complex on {data['length']} elements")
        for lvl in data["differentials"]:
            out.append(
                f"d_{lvl['k']} ({lvl['rows']}x{lvl['cols']}): "
                + _fmt_matrix(lvl["matrix"])
            )
    elif command == "detcor":
        out.append(f"holds: {_fmt_bool(data['holds'])}")
    elif command == "lift":
        out.append(f"matrix: {_fmt_matrix(data['matrix'])}")
        out.append(f"det: {data['det']}")
    elif command in ("colon", "intersect", "socle"):
        gens = data["generators"]
        out.append("generators: " + (", ".join(gens) if gens else "0"))
    elif command == "dim":
        line = f"dim = {data['dim']}"
        if data.get("witness"):
            line += "  (independent variables: " + ", ".join(data["witness"]) + ")"
        out.append(line)
    elif command == "length":
        out.append(f"length = {data['length']}")
    elif command == "regseq":
        if data["regular"]:
            out.append("regular: true")
        else:
            pos = data.get("first_failure")
            out.append("regular: false"
                       + (f"  (first failure at position {pos})" if pos else ""))
    elif command == "cmprobe":
        out.append(f"verdict: {data['verdict']}  (tested {data['tested']} sops)")
        if data.get("witness"):
            out.append(f"witness: {data['witness']} lies in the limit closure "
                       f"of ({', '.join(data['sequence'])}) but not the ideal")
    elif command == "frobcert":
        for step in data["steps"]:
            img = ("-" if step["image_holds"] is None
                   else _fmt_bool(step["image_holds"]))
            out.append(
                f"q={step['q']}: base {_fmt_bool(step['base_holds'])}, "
                f"image {img}"
            )
    elif command == "zerocolon":
        out.append("annihilator 0:u = " + ", ".join(data["annihilator"]))
        if data["hit"]:
            out.append(
                f"HIT after {data['tested']} sops: ({', '.join(data['found'])})"
            )
        else:
            out.append(f"no hit in {data['tested']} sampled sops")
    elif command == "scenario":
        if "scenarios" in data:
            out.extend(data["scenarios"])
        else:
            good = data["counts"]["pass"]
            total = data["counts"]["total"]
            out.append(f"scenario {data['name']}: {good}/{total} checks pass")
            for check in data["checks"]:
                mark = "ok" if check["passed"] else "FAIL"
                head = " ".join([check["op"]] + check["args"])
                line = f"  [{mark}] {head} = {check['expected']}  [{check['tag']}]"
                if not check["passed"]:
                    line += f"\n       actual: {check['actual']}"
                out.append(line)
    else:
        out.append(json.dumps(data, indent=2))
    return "\n".join(out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn
        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    try:
        payload = _request_from_args(args)
    except OSError as err:
        print(f"error [IOError]: {err}", file=sys.stderr)
        return 2
    try:
        report = _post_run(args.server, payload)
    except httpx.HTTPError as err:
        print(f"error [Transport]: {err}", file=sys.stderr)
        return 2
    for warning in report.get("warnings", ()):
        print(f"warning: {warning}", file=sys.stderr)
    if args.as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
    elif report["status"] == "error":
        err = report["error"]
        print(f"error [{err['code']}]: {err['message']}", file=sys.stderr)
    else:
        print(_format(report))
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
