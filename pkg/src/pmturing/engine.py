"""Particle method abstract machine.

A particle method is the 7-tuple (P, G, u, f, i, e, ge): a particle space, a
global variable space, a neighborhood function, a stop condition, a pairwise
interact function, a per-particle evolve function and an evolve function for
the global variable.  One transition step runs the interaction sweep, then the
evolution sweep, then the global evolve.

Particle indices are 1-based throughout, as in the formal definition: ``u``
returns 1-based indices and ``interact_pair`` takes 1-based positions.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Iterator, NamedTuple, Optional, Sequence

BEHAVIORS = ("f", "u", "i", "e", "ge")
DEFAULT_MAX_STEPS = 10_000


class PMError(Exception):
    pass


class IndexOutOfRange(PMError, IndexError):
    pass


class MalformedNeighborhood(PMError):
    pass


# -- value domains -----------------------------------------------------------


@dataclass(frozen=True)
class Field:
    """One component domain: a finite enumeration or an integer range."""

    name: str
    values: Optional[tuple] = None
    low: Optional[int] = None
    high: Optional[int] = None

    @classmethod
    def finite(cls, name, values):
        return cls(name, values=tuple(values))

    @classmethod
    def integers(cls, name, low, high=None):
        return cls(name, low=low, high=high)

    @property
    def is_finite(self) -> bool:
        return self.values is not None or self.high is not None

    def size(self) -> Optional[int]:
        if self.values is not None:
            return len(self.values)
        if self.high is not None:
            return max(0, self.high - self.low + 1)
        return None

    def enumerate(self) -> tuple:
        if self.values is not None:
            return self.values
        if self.high is None:
            raise PMError(f"field {self.name} is unbounded")
        return tuple(range(self.low, self.high + 1))

    def contains(self, v) -> bool:
        if self.values is not None:
            return v in self.values
        if not isinstance(v, int) or isinstance(v, bool):
            return False
        return v >= self.low and (self.high is None or v <= self.high)

    def sample(self, rng: random.Random, bound: int):
        if self.values is not None:
            return rng.choice(self.values)
        high = self.high if self.high is not None else max(self.low, bound)
        return rng.randint(self.low, high)


@dataclass(frozen=True)
class Space:
    """Finite product of named component domains.

    ``factory`` builds a value from its components (a NamedTuple class, or
    ``tuple`` by default).
    """

    fields: tuple[Field, ...]
    factory: Callable = tuple

    def make(self, components):
        if self.factory is tuple:
            return tuple(components)
        return self.factory(*components)

    @property
    def is_finite(self) -> bool:
        return all(f.is_finite for f in self.fields)

    def unbounded_fields(self) -> list[str]:
        return [f.name for f in self.fields if not f.is_finite]

    def size(self) -> Optional[int]:
        total = 1
        for f in self.fields:
            n = f.size()
            if n is None:
                return None
            total *= n
        return total

    def enumerate(self) -> Iterator:
        for combo in itertools.product(*(f.enumerate() for f in self.fields)):
            yield self.make(combo)

    def contains(self, value) -> bool:
        return (
            isinstance(value, tuple)
            and len(value) == len(self.fields)
            and all(f.contains(v) for f, v in zip(self.fields, value))
        )

    def sample(self, rng: random.Random, bound: int = 16):
        return self.make([f.sample(rng, bound) for f in self.fields])


# -- algorithm and state -----------------------------------------------------


class PMState(NamedTuple):
    g: Any
    particles: tuple


@dataclass(frozen=True)
class ParticleMethod:
    """Behavior bundle plus domain metadata.

    neighborhood(state, j) -> indices; stop(g) -> bool;
    interact(g, pj, pk) -> (pj', pk'); evolve(g, pj) -> (g', particles);
    evolve_global(g) -> g'.  Behaviors must be deterministic.
    """

    neighborhood: Callable[[PMState, int], Sequence[int]]
    stop: Callable[[Any], bool]
    interact: Callable[[Any, Any, Any], tuple]
    evolve: Callable[[Any, Any], tuple]
    evolve_global: Callable[[Any], Any]
    particle_space: Optional[Space] = None
    global_space: Optional[Space] = None
    may_create_particles: bool = True
    may_destroy_particles: bool = True
    computable: bool = True
    name: str = "pm"


# -- rendering ---------------------------------------------------------------


def render_field(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, tuple):
        return render_value(v)
    return str(v)


def render_value(v) -> str:
    if not isinstance(v, tuple):
        v = (v,)
    return "(" + ",".join(render_field(x) for x in v) + ")"


def render_state(state: PMState) -> str:
    ps = ";".join(render_value(p) for p in state.particles)
    return f"g={render_value(state.g)} p=[{ps}]"


def encoded_bits(value) -> int:
    """Size of a value as the bit length of its ASCII rendering."""
    return 8 * len(render_value(value))


# -- counters ----------------------------------------------------------------


@dataclass
class StepCounters:
    """Behavior invocation counts and encoded sizes.

    ``per_step[t]`` holds the calls made while computing step t -> t+1 (the
    stop check of state t is counted there too).  ``sizes[t]`` is
    ``(particle count, bits of g, bits of the largest particle)`` for state t.
    ``neighborhood_queries[t]`` lists the j passed to ``u`` during that step.
    """

    totals: Counter = field(default_factory=Counter)
    per_step: list = field(default_factory=list)
    sizes: list = field(default_factory=list)
    neighborhood_queries: list = field(default_factory=list)

    def open_step(self, state: PMState):
        self.per_step.append(Counter())
        self.neighborhood_queries.append([])
        biggest = max((encoded_bits(p) for p in state.particles), default=0)
        self.sizes.append((len(state.particles), encoded_bits(state.g), biggest))

    def tick(self, behavior: str, n: int = 1):
        self.totals[behavior] += n
        if self.per_step:
            self.per_step[-1][behavior] += n


class _Calls:
    """Counting shims around the behaviors of one method."""

    def __init__(self, pm: ParticleMethod, counters: Optional[StepCounters]):
        self.pm, self.c = pm, counters

    def u(self, state, j):
        if self.c is not None:
            self.c.tick("u")
            if self.c.neighborhood_queries:
                self.c.neighborhood_queries[-1].append(j)
        return self.pm.neighborhood(state, j)

    def i(self, g, pj, pk):
        if self.c is not None:
            self.c.tick("i")
        return self.pm.interact(g, pj, pk)

    def e(self, g, p):
        if self.c is not None:
            self.c.tick("e")
        return self.pm.evolve(g, p)

    def ge(self, g):
        if self.c is not None:
            self.c.tick("ge")
        return self.pm.evolve_global(g)

    def f(self, g):
        if self.c is not None:
            self.c.tick("f")
        return bool(self.pm.stop(g))


# -- state transition --------------------------------------------------------


def compose(h, a, bs):
    """The composition operator: ``a *_h (b1, ..., bn) = h(...h(h(a, b1), b2)..., bn)``."""
    return reduce(h, bs, a)


def _interact_pair(calls: _Calls, state: PMState, j: int, k: int) -> tuple:
    p = state.particles
    n = len(p)
    if not (1 <= j <= n and 1 <= k <= n):
        raise IndexOutOfRange(f"interaction ({j},{k}) outside 1..{n}")
    if j == k:
        raise IndexOutOfRange(f"particle {j} cannot interact with itself")
    pj, pk = calls.i(state.g, p[j - 1], p[k - 1])
    out = list(p)
    out[j - 1], out[k - 1] = pj, pk
    return tuple(out)


def _interact_one(calls: _Calls, g, particles: tuple, j: int) -> tuple:
    ks = tuple(calls.u(PMState(g, particles), j))
    n = len(particles)
    for k in ks:
        if not isinstance(k, int) or not 1 <= k <= n or k == j:
            raise MalformedNeighborhood(f"u returned {ks} for particle {j} of {n}")
    return compose(lambda p, k: _interact_pair(calls, PMState(g, p), j, k), particles, ks)


def _interact_all(calls: _Calls, state: PMState) -> tuple:
    g = state.g
    return compose(
        lambda p, j: _interact_one(calls, g, p, j),
        state.particles,
        range(1, len(state.particles) + 1),
    )


def _evolve_all(calls: _Calls, state: PMState) -> PMState:
    p = state.particles

    def evolve_one(acc, j):
        g, q = acc
        g2, emitted = calls.e(g, p[j - 1])
        return g2, q + tuple(emitted)

    g, q = compose(evolve_one, (state.g, ()), range(1, len(p) + 1))
    return PMState(g, q)


def _step(calls: _Calls, state: PMState) -> PMState:
    interacted = _interact_all(calls, state)
    g, p = _evolve_all(calls, PMState(state.g, interacted))
    return PMState(calls.ge(g), p)


def interact_pair(pm: ParticleMethod, state: PMState, j: int, k: int) -> tuple:
    """Replace positions j and k by ``i(g, p_j, p_k)``."""
    return _interact_pair(_Calls(pm, None), state, j, k)


def interact_all(pm: ParticleMethod, state: PMState) -> tuple:
    return _interact_all(_Calls(pm, None), state)


def evolve_all(pm: ParticleMethod, state: PMState) -> PMState:
    return _evolve_all(_Calls(pm, None), state)


def transition_step(pm: ParticleMethod, state: PMState) -> PMState:
    return _step(_Calls(pm, None), state)


@dataclass
class PMRun:
    halted: bool
    trace: list
    counters: StepCounters

    @property
    def final(self) -> Optional[PMState]:
        return self.trace[-1] if self.halted else None

    @property
    def steps(self) -> int:
        return len(self.trace) - 1


def run(pm: ParticleMethod, instance: PMState, max_steps: int = DEFAULT_MAX_STEPS) -> PMRun:
    """Iterate transition steps until the stop condition holds on g.

    The stop condition is checked before every step, so an instance whose g
    already satisfies it is final after zero steps.  Hitting ``max_steps``
    returns ``halted=False`` rather than raising.
    """
    counters = StepCounters()
    calls = _Calls(pm, counters)
    state = instance
    trace = [state]
    while True:
        counters.open_step(state)
        if calls.f(state.g):
            return PMRun(True, trace, counters)
        if len(trace) > max_steps:
            return PMRun(False, trace, counters)
        state = _step(calls, state)
        trace.append(state)


def render_trace_lines(trace: Sequence[PMState], start: int = 1) -> list[str]:
    return [f"t={t} {render_state(s)}" for t, s in enumerate(trace, start)]
