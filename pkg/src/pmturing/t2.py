"""Constant-size particle method emulating a Turing machine.

No particle stores a cell index.  The head is a marker ``h = 1`` on one
particle; the previous head position carries ``h = -1`` and the head particle's
``o`` says which side that is.  Interactions are pull-only between direct
neighbors: the particle the head moves to raises ``dh`` and records the move in
``do_``; the head particle raises ``a`` when some neighbor can take the head.
A head with ``a = 0`` after the sweep sits at the right end of the tape and
appends a fresh blank cell that takes over the head.
"""

from __future__ import annotations

from typing import NamedTuple

from .cosim import CosimReport, EmulationError, cosimulate
from .engine import Field, ParticleMethod, PMState, Space
from .t1 import InvalidMachine
from .turing import BLANK, LEFT, RIGHT, Configuration, TuringMachine, make_config, validate

CRITERIA = (
    "psi_inv_mismatch",
    "head_marker",
    "trail_marker",
    "stray_marker",
    "dh_not_zero",
    "do_not_reset",
    "a_not_zero",
    "dq_not_start",
    "stop_mismatch",
)


class T2Particle(NamedTuple):
    z: str
    h: int
    dh: int
    o: int
    do_: int
    a: int


class T2Global(NamedTuple):
    q: str
    dq: str


class UntranslatableHeadPosition(ValueError):
    pass


def compile_t2(tm: TuringMachine) -> ParticleMethod:
    problems = validate(tm)
    if problems:
        raise InvalidMachine("; ".join(problems))
    delta, start, top = tm.delta, tm.start, tm.max_state

    def neighborhood(state, j):
        n = len(state.particles)
        return tuple(k for k in (j - 1, j + 1) if 1 <= k <= n)

    def stop(g):
        return g.q == tm.accept or g.q == tm.reject

    def interact(g, pj, pk):
        if pk.h == 1:
            dk = delta[(g.q, pk.z)][2]
            if (pj.h == -1 and dk != pk.o) or (pj.h == 0 and dk == pk.o):
                return pj._replace(dh=1, do_=max(pj.do_, dk)), pk
        if pj.h == 1:
            dj = delta[(g.q, pj.z)][2]
            if (pk.h == -1 and dj != pj.o) or (pk.h == 0 and dj == pj.o):
                return pj._replace(a=1), pk
        return pj, pk

    def evolve(g, p):
        if p.dh == 1:
            return g, (T2Particle(p.z, 1, 0, p.do_, LEFT, 0),)
        if p.h == -1:
            return g, (T2Particle(p.z, 0, 0, LEFT, LEFT, 0),)
        if p.h == 1:
            q2, z2, d2 = delta[(g.q, p.z)]
            g2 = T2Global(g.q, top(g.dq, q2))
            left_behind = T2Particle(z2, -1, 0, LEFT, LEFT, 0)
            if p.a == 1:
                return g2, (left_behind,)
            # fresh cell: do_ = -1 keeps it inside the declared {-1, 1} domain
            return g2, (left_behind, T2Particle(BLANK, 1, 0, d2, LEFT, 0))
        return g, (p,)

    def evolve_global(g):
        return T2Global(g.dq, start)

    return ParticleMethod(
        neighborhood=neighborhood,
        stop=stop,
        interact=interact,
        evolve=evolve,
        evolve_global=evolve_global,
        particle_space=particle_space(tm),
        global_space=Space(
            (Field.finite("q", tm.states), Field.finite("dq", tm.states)), T2Global
        ),
        may_create_particles=True,
        may_destroy_particles=False,
        name="t2",
    )


def particle_space(tm: TuringMachine) -> Space:
    return Space(
        (
            Field.finite("z", tm.tape_alphabet),
            Field.finite("h", (-1, 0, 1)),
            Field.finite("dh", (0, 1)),
            Field.finite("o", (LEFT, RIGHT)),
            Field.finite("do_", (LEFT, RIGHT)),
            Field.finite("a", (0, 1)),
        ),
        T2Particle,
    )


def reachable_globals(tm: TuringMachine) -> list[T2Global]:
    """Global values seen at step boundaries: the accumulator is reset."""
    return [T2Global(q, tm.start) for q in tm.states]


def psi_t2(tm: TuringMachine, c: Configuration) -> PMState:
    """Head particle gets h = 1, the next cell h = -1, all o and do_ = -1.

    A head on the last materialized cell gets no h = -1 partner; that only
    arises for the start configuration of the empty input.
    """
    x, n = c.tape, c.head
    if not 1 <= n <= len(x):
        raise UntranslatableHeadPosition(f"head {n} outside materialized tape of {len(x)} cells")
    particles = []
    for j, z in enumerate(x, 1):
        h = 1 if j == n else -1 if j == n + 1 else 0
        particles.append(T2Particle(z, h, 0, LEFT, LEFT, 0))
    return PMState(T2Global(c.state, tm.start), tuple(particles))


def psi_inv_t2(state: PMState) -> Configuration:
    heads = [j for j, p in enumerate(state.particles, 1) if p.h == 1]
    if len(heads) != 1:
        raise EmulationError("head_marker", f"{len(heads)} particles carry h=1")
    return make_config(state.g.q, (p.z for p in state.particles), heads[0])


def _criteria(tm, alpha, state, t):
    g, particles = state
    n = alpha.head
    head = particles[n - 1]
    if head.h != 1:
        yield "head_marker", f"particle {n} has h={head.h}"
        return
    trail = n - head.o
    if 1 <= trail <= len(particles):
        if particles[trail - 1].h != -1:
            yield "trail_marker", f"particle {trail} has h={particles[trail - 1].h}"
    elif t > 1:
        yield "trail_marker", f"previous head position {trail} outside 1..{len(particles)}"
    for j, p in enumerate(particles, 1):
        if j not in (n, trail) and p.h != 0:
            yield "stray_marker", f"particle {j} has h={p.h}"
        if p.dh != 0:
            yield "dh_not_zero", f"particle {j} has dh={p.dh}"
        if p.do_ != LEFT:
            yield "do_not_reset", f"particle {j} has do_={p.do_}"
        if p.a != 0:
            yield "a_not_zero", f"particle {j} has a={p.a}"
    if g.dq != tm.start:
        yield "dq_not_start", f"dq={g.dq}"


def cosim_t2(tm: TuringMachine, word, max_steps: int = 10_000, pm=None) -> CosimReport:
    pm = pm if pm is not None else compile_t2(tm)
    return cosimulate(
        "t2", tm, pm, psi_t2, psi_inv_t2, _criteria, CRITERIA, word, max_steps
    )
