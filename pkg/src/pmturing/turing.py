"""Deterministic one-tape Turing machines with an end-marked, blank-padded tape."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

END = "|-"
BLANK = "_"
LEFT, RIGHT = -1, 1


class TMError(ValueError):
    pass


class SymbolNotInInputAlphabet(TMError):
    pass


@dataclass(frozen=True, eq=False)
class TuringMachine:
    """The 9-tuple (Q, Sigma, Gamma, |-, _, delta, start, accept, reject).

    ``states`` is stored in rank order; ``start`` always has rank 0 so that the
    max-by-rank accumulators used by the compiled particle methods can use it
    as their neutral element.  ``delta`` maps ``(state, symbol)`` to
    ``(state', symbol', direction)`` with direction in {-1, +1}.
    """

    states: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    tape_alphabet: tuple[str, ...]
    delta: dict = field(repr=False)
    start: str
    accept: str
    reject: str

    @classmethod
    def build(cls, states, input_alphabet, tape_alphabet, delta, start, accept, reject):
        """Order states by declaration with ``start`` forced to rank 0 and make
        the end marker and blank members of the tape alphabet."""
        ordered = [start] + [q for q in states if q != start]
        tape = [END, BLANK] + [b for b in tape_alphabet if b not in (END, BLANK)]
        return cls(
            states=tuple(dict.fromkeys(ordered)),
            input_alphabet=tuple(dict.fromkeys(input_alphabet)),
            tape_alphabet=tuple(dict.fromkeys(tape)),
            delta={tuple(k): tuple(v) for k, v in dict(delta).items()},
            start=start,
            accept=accept,
            reject=reject,
        )

    @cached_property
    def ranks(self) -> dict[str, int]:
        return {q: r for r, q in enumerate(self.states)}

    def rank(self, q: str) -> int:
        return self.ranks[q]

    def max_state(self, a: str, b: str) -> str:
        return a if self.ranks[a] >= self.ranks[b] else b

    def halting(self, q: str) -> bool:
        return q == self.accept or q == self.reject

    def transition(self, q: str, symbol: str) -> tuple[str, str, int]:
        return self.delta[(q, symbol)]

    def __eq__(self, other):
        if not isinstance(other, TuringMachine):
            return NotImplemented
        return (
            self.states == other.states
            and self.input_alphabet == other.input_alphabet
            and set(self.tape_alphabet) == set(other.tape_alphabet)
            and self.delta == other.delta
            and (self.start, self.accept, self.reject)
            == (other.start, other.accept, other.reject)
        )

    __hash__ = None


def canonical_tape(tape: Iterable[str]) -> tuple[str, ...]:
    """Trim trailing blanks; the end marker in cell 1 is never trimmed."""
    cells = list(tape)
    while len(cells) > 1 and cells[-1] == BLANK:
        cells.pop()
    return tuple(cells)


class Configuration(NamedTuple):
    """(state, tape prefix starting with the end marker, 1-based head position).

    Build through :func:`make_config` to get the canonical tape form; equality
    of canonical configurations is equality of the semi-infinite tapes.
    """

    state: str
    tape: tuple[str, ...]
    head: int

    def symbol_under_head(self) -> str:
        return self.tape[self.head - 1] if self.head <= len(self.tape) else BLANK

    def render_tape(self) -> str:
        return "".join(self.tape)


def make_config(state: str, tape: Iterable[str], head: int) -> Configuration:
    return Configuration(state, canonical_tape(tape), head)


def validate(tm: TuringMachine) -> list[str]:
    """Return every violated machine invariant; an empty list means valid."""
    problems = []
    states, gamma, sigma = set(tm.states), set(tm.tape_alphabet), set(tm.input_alphabet)
    for name, q in (("start", tm.start), ("accept", tm.accept), ("reject", tm.reject)):
        if q not in states:
            problems.append(f"{name} state {q} not in states")
    if tm.accept == tm.reject:
        problems.append("accept equals reject")
    if END in sigma:
        problems.append("end marker in input alphabet")
    if BLANK in sigma:
        problems.append("blank in input alphabet")
    if END not in gamma:
        problems.append("end marker not in tape alphabet")
    if BLANK not in gamma:
        problems.append("blank not in tape alphabet")
    for b in tm.input_alphabet:
        if b not in gamma:
            problems.append(f"input symbol {b} not in tape alphabet")

    for q in tm.states:
        for b in tm.tape_alphabet:
            at = f"({q},{b})"
            if (q, b) not in tm.delta:
                problems.append(f"missing delta entry at {at}")
                continue
            q2, b2, d = tm.delta[(q, b)]
            if q2 not in states:
                problems.append(f"unknown target state {q2} at {at}")
            if b2 not in gamma:
                problems.append(f"unknown written symbol {b2} at {at}")
            if d not in (LEFT, RIGHT):
                problems.append(f"bad direction {d} at {at}")
            if b == END:
                if d != RIGHT:
                    problems.append(f"left move on end marker at {at}")
                if b2 != END:
                    problems.append(f"end marker overwritten at {at}")
            if q == tm.accept and q2 != tm.accept:
                problems.append(f"accept not absorbing at {at}")
            if q == tm.reject and q2 != tm.reject:
                problems.append(f"reject not absorbing at {at}")
    for (q, b) in tm.delta:
        if q not in states or b not in gamma:
            problems.append(f"delta entry outside states x tape alphabet at ({q},{b})")
    return problems


def start_config(tm: TuringMachine, word: Sequence[str]) -> Configuration:
    for b in word:
        if b not in tm.input_alphabet:
            raise SymbolNotInInputAlphabet(f"symbol {b!r} not in input alphabet")
    return make_config(tm.start, (END, *word), 1)


def tm_step(tm: TuringMachine, c: Configuration) -> Configuration:
    q2, b, d = tm.transition(c.state, c.symbol_under_head())
    tape = list(c.tape)
    if c.head > len(tape):
        tape.extend([BLANK] * (c.head - len(tape)))
    tape[c.head - 1] = b
    head = c.head + d
    if head < 1:
        raise TMError(f"head left the tape from {c}")
    return make_config(q2, tape, head)


class Verdict(str, enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    RUNNING = "running"


class TMRun(NamedTuple):
    verdict: Verdict
    trace: list[Configuration]


def tm_run(tm: TuringMachine, word: Sequence[str], max_steps: int = 10_000) -> TMRun:
    c = start_config(tm, word)
    trace = [c]
    while not tm.halting(c.state) and len(trace) <= max_steps:
        c = tm_step(tm, c)
        trace.append(c)
    if c.state == tm.accept:
        return TMRun(Verdict.ACCEPTED, trace)
    if c.state == tm.reject:
        return TMRun(Verdict.REJECTED, trace)
    return TMRun(Verdict.RUNNING, trace)


def render_config(t: int, c: Configuration) -> str:
    return f"t={t} q={c.state} n={c.head} tape={c.render_tape()}"


def split_word(text: str, alphabet: Iterable[str]) -> tuple[str, ...]:
    """Split an input string into alphabet tokens, longest match first."""
    tokens = sorted(alphabet, key=len, reverse=True)
    out, i = [], 0
    while i < len(text):
        for tok in tokens:
            if tok and text.startswith(tok, i):
                out.append(tok)
                i += len(tok)
                break
        else:
            raise SymbolNotInInputAlphabet(f"symbol {text[i]!r} not in input alphabet")
    return tuple(out)
