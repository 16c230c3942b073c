"""Index-addressed particle method emulating a Turing machine.

Each particle is one tape cell ``(k, z)``.  The neighborhood is empty and the
interaction is the identity; all work happens in the evolve functions.  The
global variable ``(q, dq, d, m, M)`` holds the machine state, a max-by-rank
accumulator for the next state, a max accumulator for the head move, the head
index and the particle count.
"""

from __future__ import annotations

from typing import NamedTuple

from .cosim import CosimReport, EmulationError, cosimulate
from .engine import Field, ParticleMethod, PMState, Space
from .turing import BLANK, LEFT, RIGHT, Configuration, TuringMachine, TMError, make_config, validate

CRITERIA = (
    "psi_inv_mismatch",
    "count_mismatch",
    "head_beyond_count",
    "direction_not_reset",
    "dq_not_start",
    "index_integrity",
    "stop_mismatch",
)


class T1Particle(NamedTuple):
    k: int
    z: str


class T1Global(NamedTuple):
    q: str
    dq: str
    d: int
    m: int
    M: int


class InvalidMachine(TMError):
    pass


def compile_t1(tm: TuringMachine) -> ParticleMethod:
    problems = validate(tm)
    if problems:
        raise InvalidMachine("; ".join(problems))
    delta, start, top = tm.delta, tm.start, tm.max_state

    def neighborhood(state, j):
        return ()

    def stop(g):
        return g.q == tm.accept or g.q == tm.reject

    def interact(g, pj, pk):
        return pj, pk

    def evolve(g, p):
        if p.k != g.m:
            return g, (p,)
        q2, z2, d2 = delta[(g.q, p.z)]
        g2 = T1Global(g.q, top(g.dq, q2), max(g.d, d2), g.m, g.M)
        if g.m + d2 <= g.M:
            return g2, (T1Particle(p.k, z2),)
        return g2, (T1Particle(p.k, z2), T1Particle(p.k + 1, BLANK))

    def evolve_global(g):
        if g.m + g.d > g.M:
            return T1Global(g.dq, start, LEFT, g.m + g.d, g.M + 1)
        return T1Global(g.dq, start, LEFT, max(1, g.m + g.d), g.M)

    states = tm.states
    return ParticleMethod(
        neighborhood=neighborhood,
        stop=stop,
        interact=interact,
        evolve=evolve,
        evolve_global=evolve_global,
        particle_space=Space(
            (Field.integers("k", 1), Field.finite("z", tm.tape_alphabet)), T1Particle
        ),
        global_space=Space(
            (
                Field.finite("q", states),
                Field.finite("dq", states),
                Field.finite("d", (LEFT, RIGHT)),
                Field.integers("m", 1),
                Field.integers("M", 1),
            ),
            T1Global,
        ),
        may_create_particles=True,
        may_destroy_particles=False,
        name="t1",
    )


def psi_t1(tm: TuringMachine, c: Configuration) -> PMState:
    x = c.tape
    g = T1Global(c.state, tm.start, LEFT, c.head, len(x))
    return PMState(g, tuple(T1Particle(j, z) for j, z in enumerate(x, 1)))


def psi_inv_t1(state: PMState) -> Configuration:
    g, particles = state
    if not particles:
        raise EmulationError("index_integrity", "no particles")
    for j, p in enumerate(particles, 1):
        if p.k != j:
            raise EmulationError("index_integrity", f"particle {j} carries index {p.k}")
    return make_config(g.q, (p.z for p in particles), g.m)


def _criteria(tm, alpha, state, t):
    g, particles = state
    if g.M != len(particles):
        yield "count_mismatch", f"M={g.M} but {len(particles)} particles"
    if g.m > g.M:
        yield "head_beyond_count", f"m={g.m} > M={g.M}"
    if g.d != LEFT:
        yield "direction_not_reset", f"d={g.d}"
    if g.dq != tm.start:
        yield "dq_not_start", f"dq={g.dq}"


def cosim_t1(tm: TuringMachine, word, max_steps: int = 10_000, pm=None) -> CosimReport:
    """Run machine and compiled method side by side, checking every step.

    ``pm`` overrides the compiled bundle (used to exercise corrupted methods).
    """
    pm = pm if pm is not None else compile_t1(tm)
    return cosimulate(
        "t1", tm, pm, psi_t1, psi_inv_t1, _criteria, CRITERIA, word, max_steps
    )


def reachable_pools(tm: TuringMachine, bound: int) -> tuple[list, list]:
    """Step-boundary globals and cells with indices up to ``bound``.

    At a step boundary dq = start and d = -1; m and M range over 1..bound.
    """
    globals_ = [
        T1Global(q, tm.start, LEFT, m, M)
        for q in tm.states
        for m in range(1, bound + 1)
        for M in range(1, bound + 1)
    ]
    particles = [T1Particle(k, z) for k in range(1, bound + 1) for z in tm.tape_alphabet]
    return globals_, particles
