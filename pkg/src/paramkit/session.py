"""Line-oriented input files: a ring presentation plus named sequences,
matrices, and optional expectation lines.

    ring <name>
    char <0 | prime>
    vars <ident list, space-separated, order significant>
    quotient <poly>, <poly>, ...        # optional; empty = polynomial ring
    seq <name> = <poly>, <poly>, ...
    matrix <name> = [[<poly>, ...], ...]
    expect <op> <args...> = <value> # [PAPER|TRIVIAL|DERIVED]

Comments start with `#`.  Rendering a parsed session and re-parsing it
yields an equal session.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError
from .idealops import ElementSequence
from .koszul import CoeffMatrix
from .parser import make_ring, parse_matrix, parse_poly_list
from .polyring import RingPresentation, render_poly

RESERVED_NAMES = {"zero"}

_TAGS = ("PAPER", "TRIVIAL", "DERIVED")


@dataclass(frozen=True)
class Expectation:
    op: str
    args: tuple
    expected: str
    tag: str
    line: int = 0

    def render(self) -> str:
        head = " ".join((self.op,) + self.args)
        return f"expect {head} = {self.expected} # [{self.tag}]"


@dataclass
class SessionInput:
    ring: RingPresentation
    sequences: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    expectations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def sequence(self, name: str) -> ElementSequence:
        if name == "zero":
            return ElementSequence(self.ring, [], name="zero")
        if name not in self.sequences:
            raise ParseError(f"undefined sequence {name!r}")
        return self.sequences[name]

    def matrix(self, name: str) -> CoeffMatrix:
        if name not in self.matrices:
            raise ParseError(f"undefined matrix {name!r}")
        return self.matrices[name]

    def key(self):
        return (
            self.ring.key(),
            tuple(sorted((n, s.key()) for n, s in self.sequences.items())),
            tuple(sorted(
                (n, tuple(tuple(e.key() for e in row) for row in m.rows))
                for n, m in self.matrices.items()
            )),
            tuple((e.op, e.args, e.expected, e.tag) for e in self.expectations),
        )


def _split_comment(line: str):
    """Strip a trailing comment, except the provenance tag of expect lines."""
    if line.lstrip().startswith("expect "):
        return line, None
    pos = line.find("#")
    if pos < 0:
        return line, None
    return line[:pos], line[pos:]


def parse_session(text: str) -> SessionInput:
    ring_name = None
    char = None
    variables = None
    quotient_text = ""
    body = []       # (lineno, directive, rest) after the header
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line, _ = _split_comment(raw)
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        directive, rest = parts[0], (parts[1].strip() if len(parts) > 1 else "")
        if directive == "ring":
            if ring_name is not None:
                raise ParseError("duplicate ring directive", line=lineno)
            if not rest:
                raise ParseError("ring directive needs a name", line=lineno)
            ring_name = rest
        elif directive == "char":
            try:
                char = int(rest)
            except ValueError:
                raise ParseError(f"bad characteristic {rest!r}", line=lineno)
        elif directive == "vars":
            variables = rest.split()
            if not variables:
                raise ParseError("vars directive needs identifiers", line=lineno)
        elif directive == "quotient":
            quotient_text = rest
        elif directive in ("seq", "matrix", "expect"):
            body.append((lineno, directive, rest))
        else:
            raise ParseError(f"unknown directive {directive!r}", line=lineno)
    if ring_name is None or char is None or variables is None:
        raise ParseError("input needs ring, char and vars directives")

    quotient = [t.strip() for t in quotient_text.split(",") if t.strip()]
    ring = make_ring(char, variables, quotient, name=ring_name)
    session = SessionInput(ring=ring)
    if not ring.is_homogeneous():
        session.warnings.append(
            "quotient is not homogeneous: local-ring semantics "
            "(dimension, length, parameter tests) are not guaranteed"
        )

    for lineno, directive, rest in body:
        if directive == "expect":
            session.expectations.append(_parse_expect(rest, lineno))
            continue
        if "=" not in rest:
            raise ParseError(f"{directive} needs '<name> = ...'", line=lineno)
        name, _, payload = rest.partition("=")
        name, payload = name.strip(), payload.strip()
        if not name.isidentifier():
            raise ParseError(f"bad {directive} name {name!r}", line=lineno)
        if name in RESERVED_NAMES:
            raise ParseError(f"{name!r} is reserved", line=lineno)
        if name in session.sequences or name in session.matrices:
            raise ParseError(f"duplicate name {name!r}", line=lineno)
        if directive == "seq":
            entries = parse_poly_list(payload, ring)
            seq = ElementSequence(ring, entries, name=name)
            if not seq.is_homogeneous():
                session.warnings.append(
                    f"sequence {name!r} is not homogeneous: local-ring "
                    "semantics are not guaranteed"
                )
            session.sequences[name] = seq
        else:
            session.matrices[name] = CoeffMatrix(ring, parse_matrix(payload, ring))
    return session


def _parse_expect(rest: str, lineno: int) -> Expectation:
    hash_pos = rest.rfind("#")
    if hash_pos < 0:
        raise ParseError(
            "expect line needs a provenance tag comment", line=lineno
        )
    tag = rest[hash_pos + 1:].strip()
    if not (tag.startswith("[") and tag.endswith("]") and tag[1:-1] in _TAGS):
        raise ParseError(
            f"provenance tag must be one of {_TAGS}, got {tag!r}", line=lineno
        )
    head, sep, value = rest[:hash_pos].partition("=")
    if not sep:
        raise ParseError("expect line needs '= <value>'", line=lineno)
    fields = head.split()
    if not fields:
        raise ParseError("expect line needs an operation", line=lineno)
    return Expectation(
        op=fields[0],
        args=tuple(fields[1:]),
        expected=value.strip(),
        tag=tag[1:-1],
        line=lineno,
    )


def render_session(session: SessionInput) -> str:
    ring = session.ring
    lines = [f"ring {ring.name}", f"char {ring.char}",
             "vars " + " ".join(ring.variables)]
    if ring.quotient_gens:
        lines.append(
            "quotient " + ", ".join(render_poly(g) for g in ring.quotient_gens)
        )
    for name, seq in session.sequences.items():
        lines.append(
            f"seq {name} = " + ", ".join(render_poly(e) for e in seq)
        )
    for name, mat in session.matrices.items():
        lines.append(f"matrix {name} = {mat.render_text()}")
    for exp in session.expectations:
        lines.append(exp.render())
    return "\n".join(lines) + "\n"
