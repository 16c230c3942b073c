"""Line-oriented ASCII machine description files.

    # comment
    states: s acc rej
    start: s
    accept: acc
    reject: rej
    input_alphabet: a
    tape_alphabet: a
    delta: s a -> s a R

The end marker ``|-`` and blank ``_`` are implicit tape symbols.  Parsing
checks syntax and references only; :func:`pmturing.turing.validate` checks
the machine itself.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .turing import BLANK, END, LEFT, RIGHT, TuringMachine

TOKEN = re.compile(r"^(?:[A-Za-z0-9]+|\|-|_)$")
DELTA = re.compile(r"^(\S+)\s+(\S+)\s*->\s*(\S+)\s+(\S+)\s+(\S+)$")
SINGLE = ("start", "accept", "reject")
LISTS = ("states", "input_alphabet", "tape_alphabet")
DIRECTIONS = {"L": LEFT, "R": RIGHT}


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"line {self.line}, column {self.column}: {self.message}"


class TMFileError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


def parse_tm_file(text: str) -> TuringMachine:
    diags: list[Diagnostic] = []
    decl: dict[str, tuple[int, list[str]]] = {}
    deltas: list[tuple[int, int, list[str]]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        key, sep, rest = line.strip().partition(":")
        key = key.strip()
        if not sep:
            diags.append(Diagnostic(lineno, indent + 1, f"syntax error: expected 'key: value', got {line.strip()!r}"))
            continue
        col = indent + len(key) + 2
        if key == "delta":
            deltas.append((lineno, col, rest))
            continue
        if key not in SINGLE + LISTS:
            diags.append(Diagnostic(lineno, indent + 1, f"unknown declaration {key!r}"))
            continue
        if key in decl:
            diags.append(Diagnostic(lineno, indent + 1, f"duplicate {key} declaration"))
            continue
        tokens = rest.split()
        for tok in tokens:
            if not TOKEN.match(tok):
                diags.append(Diagnostic(lineno, col + rest.index(tok), f"syntax error: bad token {tok!r}"))
        if key in SINGLE and len(tokens) != 1:
            diags.append(Diagnostic(lineno, col, f"{key} takes exactly one state"))
        decl[key] = (lineno, tokens)

    for key in SINGLE + ("states",):
        if key not in decl:
            diags.append(Diagnostic(0, 0, f"missing {key} declaration"))
    if diags:
        raise TMFileError(diags)

    states = decl["states"][1]
    sigma = decl.get("input_alphabet", (0, []))[1]
    gamma = [END, BLANK] + [b for b in decl.get("tape_alphabet", (0, []))[1] if b not in (END, BLANK)]
    for key in SINGLE:
        lineno, (q,) = decl[key]
        if q not in states:
            diags.append(Diagnostic(lineno, 1, f"unknown state {q!r}"))

    delta = {}
    for lineno, col, rest in deltas:
        m = DELTA.match(rest.strip())
        if not m:
            diags.append(Diagnostic(lineno, col, "syntax error: expected 'q sym -> q2 sym2 L|R'"))
            continue
        q, b, q2, b2, d = m.groups()
        for tok, kind in ((q, "state"), (b, "symbol"), (q2, "state"), (b2, "symbol")):
            known = states if kind == "state" else gamma
            if tok not in known:
                diags.append(Diagnostic(lineno, col + rest.index(tok), f"unknown {kind} {tok!r}"))
        if d not in DIRECTIONS:
            diags.append(Diagnostic(lineno, col + rest.rindex(d), f"syntax error: direction {d!r} is not L or R"))
            continue
        if (q, b) in delta:
            diags.append(Diagnostic(lineno, col, f"duplicate delta entry for ({q},{b})"))
            continue
        delta[(q, b)] = (q2, b2, DIRECTIONS[d])
    if diags:
        raise TMFileError(diags)

    return TuringMachine.build(
        states=states,
        input_alphabet=sigma,
        tape_alphabet=gamma,
        delta=delta,
        start=decl["start"][1][0],
        accept=decl["accept"][1][0],
        reject=decl["reject"][1][0],
    )


def render_tm_file(tm: TuringMachine) -> str:
    """Canonical text: states in rank order, delta in states x tape order."""
    tape = [b for b in tm.tape_alphabet if b not in (END, BLANK)]
    lines = [
        f"states: {' '.join(tm.states)}",
        f"start: {tm.start}",
        f"accept: {tm.accept}",
        f"reject: {tm.reject}",
        f"input_alphabet: {' '.join(tm.input_alphabet)}".rstrip(),
        f"tape_alphabet: {' '.join(tape)}".rstrip(),
    ]
    order = {b: i for i, b in enumerate(tm.tape_alphabet)}
    keys = sorted(tm.delta, key=lambda k: (tm.ranks.get(k[0], len(tm.states)), order.get(k[1], len(order)), k))
    for q, b in keys:
        q2, b2, d = tm.delta[(q, b)]
        lines.append(f"delta: {q} {b} -> {q2} {b2} {'R' if d == RIGHT else 'L'}")
    return "\n".join(lines) + "\n"


def load_tm_file(path) -> TuringMachine:
    with open(path, encoding="ascii") as fh:
        return parse_tm_file(fh.read())
