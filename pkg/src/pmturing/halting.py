"""Halting decision for particle methods with finite domains and non-producing evolve.

Such a method only ever visits states with at most as many particles as the
instance, so it either stops or revisits a state within ``bound_M`` steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .engine import ParticleMethod, PMState, render_state, transition_step
from .restrictions import DomainSampler, check_t3

INT64_MAX = 2**63 - 1


class BoundOverflow(OverflowError):
    pass


class PreconditionViolation(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__("restrictions violated:\n" + report.render())


@dataclass(frozen=True)
class StateBound:
    m: int
    size_p: int
    size_g: int
    M: int


def bound_M(size_g: int, size_p: int, m: int, limit: int = INT64_MAX) -> StateBound:
    """|G| * sum_{j=0..m} |P|^j, refusing values beyond a signed 64-bit word."""
    if size_g < 1 or size_p < 1 or m < 0:
        raise ValueError("need size_g, size_p >= 1 and m >= 0")
    total, power = 0, 1
    for _ in range(m + 1):
        total += power
        if size_g * total > limit:
            raise BoundOverflow(f"bound exceeds {limit}")
        power *= size_p
    return StateBound(m, size_p, size_g, size_g * total)


@dataclass(frozen=True)
class Halts:
    steps: int
    overridden: bool = False

    def render(self):
        return f"verdict=halts t={self.steps}"


@dataclass(frozen=True)
class Loops:
    mu: int
    lam: int
    visited: int
    overridden: bool = False

    def render(self):
        return f"verdict=loops mu={self.mu} lambda={self.lam}"


@dataclass(frozen=True)
class Exhausted:
    visited: int
    cap: int
    overridden: bool = False

    def render(self):
        return f"verdict=exhausted visited={self.visited}"


HaltingVerdict = Union[Halts, Loops, Exhausted]


def decide(
    pm: ParticleMethod,
    instance: PMState,
    cap: Optional[int] = None,
    override: bool = False,
) -> HaltingVerdict:
    """Run until the stop condition holds or a rendered state repeats.

    Step indices start at 0 for the instance.  Without an explicit ``cap`` the
    budget is ``bound_M``; when that overflows and no cap is given the run is
    unbounded (the visited set still guarantees termination).
    """
    report = check_t3(pm, DomainSampler.exhaustive())
    if not report.ok and not override:
        raise PreconditionViolation(report)
    overridden = override and not report.ok

    if cap is None and report.ok:
        try:
            cap = bound_M(pm.global_space.size(), pm.particle_space.size(), len(instance.particles)).M
        except BoundOverflow:
            cap = None

    seen: dict[str, int] = {}
    state, t = instance, 0
    count = len(state.particles)
    while True:
        if pm.stop(state.g):
            return Halts(t, overridden)
        key = render_state(state)
        if key in seen:
            mu = seen[key]
            return Loops(mu, t - mu, len(seen), overridden)
        if cap is not None and len(seen) >= cap:
            return Exhausted(len(seen), cap, overridden)
        seen[key] = t
        state = transition_step(pm, state)
        if not overridden and len(state.particles) > count:
            raise AssertionError(f"particle count grew at step {t + 1}")
        count = len(state.particles)
        t += 1
