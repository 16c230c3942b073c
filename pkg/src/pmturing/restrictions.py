"""Check the restriction sets t1, t2 and t3 on a particle method.

t1 and t2 are the conditions the two Turing-machine constructions satisfy;
t3 is the condition under which halting becomes decidable.

Every equation is evaluated on concrete tuples, either by enumerating finite
pools of global and particle values or by seeded random sampling.  Complexity
restrictions are asymptotic and get measurements only, never a verdict.
"""

from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .engine import (
    ParticleMethod,
    PMState,
    encoded_bits,
    interact_pair,
    render_state,
    run,
)

PASS, FAIL, NOT_CHECKABLE, MEASURED = "pass", "fail", "not-checkable", "measured"
_SEVERITY = {MEASURED: 0, PASS: 1, NOT_CHECKABLE: 2, FAIL: 3}

# full enumeration of states of one length is used up to this many states
FULL_STATE_LIMIT = 200_000


class NotCheckable(Exception):
    pass


# -- equations ---------------------------------------------------------------
# Each returns (holds, lhs, rhs) so that a stored counterexample replays.


def _e1(pm, g, p):
    return pm.evolve(g, p)[0]


def _e2(pm, g, p):
    return tuple(pm.evolve(g, p)[1])


def _i1(pm, g, pj, pk):
    return pm.interact(g, pj, pk)[0]


def _eq(lhs, rhs):
    return lhs == rhs, lhs, rhs


def empty_neighborhood(pm, state, j):
    return _eq(tuple(pm.neighborhood(state, j)), ())


def identity_interact(pm, g, pj, pk):
    return _eq(tuple(pm.interact(g, pj, pk)), (pj, pk))


def evolve_order(pm, g, p1, p2):
    return _eq(_e1(pm, _e1(pm, g, p1), p2), _e1(pm, _e1(pm, g, p2), p1))


def evolve_previous(pm, g, p1, p2):
    return _eq(_e2(pm, g, p1), _e2(pm, _e1(pm, g, p2), p1))


def pull(pm, g, pj, pk):
    return _eq(pm.interact(g, pj, pk)[1], pk)


def interact_previous(pm, g, pj, pk, pk2):
    return _eq(_i1(pm, g, pj, _i1(pm, g, pk, pk2)), _i1(pm, g, pj, pk))


def interact_order(pm, g, pj, pk, pk2):
    return _eq(
        _i1(pm, g, _i1(pm, g, pj, pk), pk2), _i1(pm, g, _i1(pm, g, pj, pk2), pk)
    )


def neighborhood_form(pm, state, j):
    """u(state, j) must be an ordered subtuple of (1, ..., |p|)."""
    ks = tuple(pm.neighborhood(state, j))
    n = len(state.particles)
    ok = all(1 <= k <= n for k in ks) and all(a < b for a, b in zip(ks, ks[1:]))
    return ok, ks, f"ordered subtuple of 1..{n}"


def neighborhood_value_independence(pm, state_a, state_b, j):
    return _eq(tuple(pm.neighborhood(state_a, j)), tuple(pm.neighborhood(state_b, j)))


def neighborhood_interaction_invariance(pm, state, j, k1, k2):
    after = PMState(state.g, interact_pair(pm, state, k1, k2))
    return _eq(tuple(pm.neighborhood(state, j)), tuple(pm.neighborhood(after, j)))


def no_production(pm, g, p):
    n = len(_e2(pm, g, p))
    return n <= 1, n, "<= 1"


def finite_field(pm, which, name):
    space = pm.particle_space if which == "P" else pm.global_space
    fld = next(f for f in space.fields if f.name == name)
    return fld.is_finite, f"{which}.{name} finite={fld.is_finite}", "finite"


def declared_computable(pm):
    return bool(pm.computable), pm.computable, True


EQUATIONS: dict[str, Callable] = {
    f.__name__: f
    for f in (
        empty_neighborhood,
        identity_interact,
        evolve_order,
        evolve_previous,
        pull,
        interact_previous,
        interact_order,
        neighborhood_form,
        neighborhood_value_independence,
        neighborhood_interaction_invariance,
        no_production,
        finite_field,
        declared_computable,
    )
}


def replay(pm: ParticleMethod, counterexample) -> bool:
    """True when the stored counterexample still violates its equation."""
    name, args = counterexample
    return not EQUATIONS[name](pm, *args)[0]


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    number: int
    title: str
    status: str
    evaluated: int = 0
    counterexample: Optional[tuple] = None
    reason: str = ""

    def merge(self, other: "Verdict") -> "Verdict":
        status = max(self.status, other.status, key=_SEVERITY.__getitem__)
        ce = self.counterexample if self.counterexample is not None else other.counterexample
        reason = self.reason if _SEVERITY[self.status] >= _SEVERITY[other.status] else other.reason
        return replace(
            self, status=status, evaluated=self.evaluated + other.evaluated,
            counterexample=ce, reason=reason,
        )


@dataclass
class RestrictionReport:
    restriction_set: int
    scope: str
    verdicts: list
    measurements: list = field(default_factory=list)

    def verdict(self, number: int) -> Verdict:
        return next(v for v in self.verdicts if v.number == number)

    @property
    def failures(self) -> list:
        return [v for v in self.verdicts if v.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def total_evaluated(self) -> int:
        return sum(v.evaluated for v in self.verdicts)

    def merge(self, other: "RestrictionReport") -> "RestrictionReport":
        """Combine reports over disjoint sample partitions."""
        if self.restriction_set != other.restriction_set:
            raise ValueError("cannot merge reports of different restriction sets")
        theirs = {v.number: v for v in other.verdicts}
        merged = [v.merge(theirs[v.number]) if v.number in theirs else v for v in self.verdicts]
        return RestrictionReport(
            self.restriction_set, self.scope, merged, self.measurements + other.measurements
        )

    def render(self) -> str:
        lines = [f"restriction set t{self.restriction_set}; scope: {self.scope}"]
        lines.append(f"{'#':>3}  {'restriction':<44} {'verdict':<14} {'evaluated':>10}  note")
        for v in self.verdicts:
            note = v.reason
            if v.counterexample is not None:
                name, args = v.counterexample
                note = f"counterexample {name}{_render_args(args)}"
            lines.append(f"{v.number:>3}  {v.title:<44} {v.status:<14} {v.evaluated:>10}  {note}".rstrip())
        lines.append(f"total evaluated: {self.total_evaluated}")
        lines.append(f"counterexamples: {len(self.failures)}")
        return "\n".join(lines)


def _render_args(args) -> str:
    parts = []
    for a in args:
        parts.append(render_state(a) if isinstance(a, PMState) else str(a))
    return "(" + ", ".join(parts) + ")"


# -- sampling ----------------------------------------------------------------


@dataclass(frozen=True)
class DomainSampler:
    """Where restriction tuples come from.

    ``exhaustive`` enumerates finite pools: the explicit ``globals`` /
    ``particles`` when given (e.g. a reachable sub-domain), otherwise the
    method's declared spaces.  ``randomized`` draws ``samples`` tuples per
    restriction from a generator seeded by ``seed``; unbounded integer fields
    are drawn from ``low..int_bound``.
    """

    mode: str = "exhaustive"
    seed: int = 0
    samples: int = 10_000
    int_bound: int = 16
    globals: Optional[tuple] = None
    particles: Optional[tuple] = None
    max_length: int = 4
    product_cap: int = 10**7
    label: str = ""

    @classmethod
    def exhaustive(cls, globals=None, particles=None, **kw):
        return cls(
            "exhaustive",
            globals=None if globals is None else tuple(globals),
            particles=None if particles is None else tuple(particles),
            **kw,
        )

    @classmethod
    def randomized(cls, seed: int, samples: int, **kw):
        return cls("randomized", seed=seed, samples=samples, **kw)

    def describe(self) -> str:
        if self.mode == "exhaustive":
            text = "exhaustive"
            if self.globals is not None or self.particles is not None:
                text += " (restricted pools)"
        else:
            text = f"randomized seed={self.seed} samples={self.samples} int_bound={self.int_bound}"
        return f"{text} {self.label}".strip()

    def rng(self, tag) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(str(tag).encode())])

    # pools are only defined for exhaustive mode
    def global_pool(self, pm) -> tuple:
        if self.globals is not None:
            return self.globals
        return self._space_pool(pm.global_space, "global")

    def particle_pool(self, pm) -> tuple:
        if self.particles is not None:
            return self.particles
        return self._space_pool(pm.particle_space, "particle")

    @staticmethod
    def _space_pool(space, what) -> tuple:
        if space is None:
            raise NotCheckable(f"no declared {what} space")
        if not space.is_finite:
            raise NotCheckable(
                f"{what} space has unbounded fields {', '.join(space.unbounded_fields())}"
            )
        return tuple(space.enumerate())

    def draw_globals(self, pm, rng, n: int) -> list:
        return self._draw(self.globals, pm.global_space, "global", rng, n)

    def draw_particles(self, pm, rng, n: int) -> list:
        return self._draw(self.particles, pm.particle_space, "particle", rng, n)

    def _draw(self, pool, space, what, rng, n) -> list:
        """n values drawn column by column; unbounded integers stop at int_bound."""
        if pool is not None:
            return [pool[i] for i in rng.integers(0, len(pool), n)]
        if space is None:
            raise NotCheckable(f"no declared {what} space")
        columns = []
        for f in space.fields:
            if f.values is not None:
                columns.append([f.values[i] for i in rng.integers(0, len(f.values), n)])
            else:
                high = f.high if f.high is not None else max(f.low, self.int_bound)
                columns.append(rng.integers(f.low, high + 1, n).tolist())
        return [space.make(c) for c in zip(*columns)]

    def value_tuples(self, pm, n_particles: int, tag):
        """(g, p_1, ..., p_n) tuples for value-level equations."""
        if self.mode == "exhaustive":
            G, P = self.global_pool(pm), self.particle_pool(pm)
            size = len(G) * len(P) ** n_particles
            if size > self.product_cap:
                raise NotCheckable(f"{size} tuples exceed the cap of {self.product_cap}")
            return itertools.product(G, *([P] * n_particles))
        rng = self.rng(tag)
        gs = self.draw_globals(pm, rng, self.samples)
        ps = [self.draw_particles(pm, rng, self.samples) for _ in range(n_particles)]
        return zip(gs, *ps)

    def state_families(self, pm, tag):
        """Yield ``(length, states)`` groups of states with equal particle count.

        Exhaustive mode enumerates every state of a length while that stays
        under ``FULL_STATE_LIMIT``; beyond it, every single-position (and g)
        substitution into a reference state.
        """
        if self.mode == "exhaustive":
            G, P = self.global_pool(pm), self.particle_pool(pm)
            for L in range(self.max_length + 1):
                if len(G) * len(P) ** L <= FULL_STATE_LIMIT:
                    states = [
                        PMState(g, ps) for g in G for ps in itertools.product(P, repeat=L)
                    ]
                else:
                    base = (P[0],) * L
                    states = [
                        PMState(g, base[:pos] + (v,) + base[pos + 1:])
                        for g in G for pos in range(L) for v in P
                    ]
                yield L, states
            return
        rng = self.rng(tag)
        per_length = max(2, self.samples // (self.max_length + 1))
        for L in range(self.max_length + 1):
            gs = self.draw_globals(pm, rng, per_length)
            ps = self.draw_particles(pm, rng, per_length * L)
            states = [
                PMState(g, tuple(ps[n * L:(n + 1) * L])) for n, g in enumerate(gs)
            ]
            yield L, states


# -- generic evaluation ------------------------------------------------------


def _evaluate(number, title, name, pm, tuples_factory) -> Verdict:
    try:
        tuples = tuples_factory()
        evaluated = 0
        for args in tuples:
            evaluated += 1
            if not EQUATIONS[name](pm, *args)[0]:
                return Verdict(number, title, FAIL, evaluated, (name, tuple(args)))
    except NotCheckable as exc:
        return Verdict(number, title, NOT_CHECKABLE, reason=str(exc))
    return Verdict(number, title, PASS, evaluated)


def _neighborhood_checks(pm, sampler, tag):
    """Tuples for the value-independence equation plus the subtuple-form check."""
    for L, states in sampler.state_families(pm, tag):
        if L == 0:
            continue
        ref = states[0]
        for s in states:
            for j in range(1, L + 1):
                yield "neighborhood_form", (s, j)
                yield "neighborhood_value_independence", (ref, s, j)


def _interaction_invariance_tuples(pm, sampler, tag):
    for L, states in sampler.state_families(pm, tag):
        for s in states:
            for k1 in range(1, L + 1):
                for k2 in range(1, L + 1):
                    if k1 == k2:
                        continue
                    for j in range(1, L + 1):
                        yield s, j, k1, k2


def _evaluate_mixed(number, title, pm, pairs_factory) -> Verdict:
    try:
        evaluated = 0
        for name, args in pairs_factory():
            evaluated += 1
            if not EQUATIONS[name](pm, *args)[0]:
                return Verdict(number, title, FAIL, evaluated, (name, tuple(args)))
    except NotCheckable as exc:
        return Verdict(number, title, NOT_CHECKABLE, reason=str(exc))
    return Verdict(number, title, PASS, evaluated)


def _finiteness(number, title, pm) -> Verdict:
    checked = 0
    for which, space in (("P", pm.particle_space), ("G", pm.global_space)):
        if space is None:
            return Verdict(number, title, NOT_CHECKABLE, reason=f"no declared {which} space")
        for f in space.fields:
            checked += 1
            if not f.is_finite:
                return Verdict(number, title, FAIL, checked, ("finite_field", (which, f.name)))
    return Verdict(number, title, PASS, checked)


# -- tabulated interaction checks --------------------------------------------


class _TableNotClosed(Exception):
    pass


def _interact_table(pm, G, P):
    index = {p: n for n, p in enumerate(P)}
    table = np.empty((len(G), len(P), len(P)), dtype=np.int64)
    pull_ce = None
    for gi, g in enumerate(G):
        for a, pj in enumerate(P):
            row = table[gi, a]
            for b, pk in enumerate(P):
                r1, r2 = pm.interact(g, pj, pk)
                if pull_ce is None and r2 != pk:
                    pull_ce = (g, pj, pk)
                n = index.get(r1)
                if n is None:
                    raise _TableNotClosed(r1)
                row[b] = n
    return table, pull_ce


def _first_mismatch(mask):
    hits = np.argwhere(mask)
    return tuple(int(x) for x in hits[0]) if len(hits) else None


def _tabulated_interaction_checks(pm, G, P, cap):
    """Restrictions 2-4 of set t2 over G x P^k via a lookup table."""
    nP = len(P)
    if len(G) * nP**3 > cap:
        raise NotCheckable(f"{len(G) * nP ** 3} tuples exceed the cap of {cap}")
    table, pull_ce = _interact_table(pm, G, P)
    pair_count, triple_count = len(G) * nP**2, len(G) * nP**3
    previous_ce = order_ce = None
    ks = np.arange(nP)
    chunk = max(1, 4_000_000 // max(1, nP * nP))
    for gi, g in enumerate(G):
        t = table[gi]
        for lo in range(0, nP, chunk):
            hi = min(nP, lo + chunk)
            if previous_ce is None:
                # [j, k, k'] -> i1(p_j, i1(p_k, p_k')) vs i1(p_j, p_k)
                lhs = t[lo:hi][:, t]
                hit = _first_mismatch(lhs != t[lo:hi][:, :, None])
                if hit:
                    j, k, k2 = hit
                    previous_ce = (g, P[lo + j], P[k], P[k2])
            if order_ce is None:
                # [j, k, k'] -> i1(i1(p_j, p_k), p_k')
                nested = t[t[lo:hi][:, :, None], ks[None, None, :]]
                hit = _first_mismatch(nested != nested.transpose(0, 2, 1))
                if hit:
                    j, k, k2 = hit
                    order_ce = (g, P[lo + j], P[k], P[k2])
    return (
        (pair_count, pull_ce),
        (triple_count, previous_ce),
        (triple_count, order_ce),
    )


def _interaction_verdicts(pm, sampler, titles) -> list:
    """Verdicts for pull, previous-interaction and order independence."""
    (n2, t2), (n3, t3), (n4, t4) = titles
    if sampler.mode == "exhaustive":
        try:
            G, P = sampler.global_pool(pm), sampler.particle_pool(pm)
            results = _tabulated_interaction_checks(pm, G, P, sampler.product_cap)
        except NotCheckable as exc:
            return [Verdict(n, t, NOT_CHECKABLE, reason=str(exc)) for n, t in titles]
        except _TableNotClosed:
            results = None
        if results is not None:
            out = []
            for (n, t), name, (count, ce) in zip(
                titles, ("pull", "interact_previous", "interact_order"), results
            ):
                if ce is None:
                    out.append(Verdict(n, t, PASS, count))
                else:
                    out.append(Verdict(n, t, FAIL, count, (name, ce)))
            return out
    return [
        _evaluate(n2, t2, "pull", pm, lambda: sampler.value_tuples(pm, 2, "pull")),
        _evaluate(n3, t3, "interact_previous", pm, lambda: sampler.value_tuples(pm, 3, "iprev")),
        _evaluate(n4, t4, "interact_order", pm, lambda: sampler.value_tuples(pm, 3, "iorder")),
    ]


# -- resources ---------------------------------------------------------------


@dataclass(frozen=True)
class ResourceRow:
    t: int
    particles: int
    g_bits: int
    max_particle_bits: int
    f: int
    u: int
    i: int
    e: int
    ge: int

    FIELDS = ("t", "particles", "g_bits", "max_particle_bits", "f", "u", "i", "e", "ge")


def measure_resources(pm: ParticleMethod, instance: PMState, max_steps: int = 10_000) -> list:
    """Per-state table of sizes and of behavior calls made in the following step."""
    result = run(pm, instance, max_steps)
    rows = []
    for t, (state, calls) in enumerate(zip(result.trace, result.counters.per_step), 1):
        rows.append(
            ResourceRow(
                t=t,
                particles=len(state.particles),
                g_bits=encoded_bits(state.g),
                max_particle_bits=max((encoded_bits(p) for p in state.particles), default=0),
                f=calls["f"], u=calls["u"], i=calls["i"], e=calls["e"], ge=calls["ge"],
            )
        )
    return rows


def _measured(number, title, pm, instance, max_steps, note) -> tuple:
    if instance is None:
        return Verdict(number, title, MEASURED, reason=f"{note}; no instance supplied"), []
    rows = measure_resources(pm, instance, max_steps)
    peak_g = max(r.g_bits for r in rows)
    peak_p = max(r.max_particle_bits for r in rows)
    reason = (
        f"{note}; {len(rows)} states, |p| up to {max(r.particles for r in rows)}, "
        f"g up to {peak_g} bits, particle up to {peak_p} bits"
    )
    return Verdict(number, title, MEASURED, reason=reason), rows


# -- restriction sets --------------------------------------------------------


def check_t1(pm, sampler: DomainSampler, instance=None, max_steps=10_000) -> RestrictionReport:
    verdicts = [
        _evaluate_mixed(
            1, "neighborhood is empty", pm,
            lambda: (
                ("empty_neighborhood", (s, j))
                for L, states in sampler.state_families(pm, "t1r1")
                for s in states
                for j in range(1, L + 1)
            ),
        ),
        _evaluate(2, "interact is the identity", "identity_interact", pm,
                  lambda: sampler.value_tuples(pm, 2, "t1r2")),
        _evaluate(3, "evolve order-independent w.r.t. g", "evolve_order", pm,
                  lambda: sampler.value_tuples(pm, 2, "t1r3")),
        _evaluate(4, "evolve independent of previous evolutions", "evolve_previous", pm,
                  lambda: sampler.value_tuples(pm, 2, "t1r4")),
    ]
    v5, rows = _measured(
        5, "sizes and f, e, ge times in O(log |p|)", pm, instance, max_steps,
        "asymptotic; measured only (g and particle sizes)",
    )
    verdicts.append(v5)
    return RestrictionReport(1, sampler.describe(), verdicts, rows)


def check_t2(pm, sampler: DomainSampler, instance=None, max_steps=10_000) -> RestrictionReport:
    verdicts = [_finiteness(1, "P and G finite", pm)]
    verdicts += _interaction_verdicts(
        pm, sampler,
        (
            (2, "interact is a pull interaction"),
            (3, "interact independent of previous interactions"),
            (4, "interact order-independent"),
        ),
    )
    verdicts += [
        _evaluate(5, "evolve order-independent w.r.t. g", "evolve_order", pm,
                  lambda: sampler.value_tuples(pm, 2, "t2r5")),
        _evaluate(6, "evolve independent of previous evolutions", "evolve_previous", pm,
                  lambda: sampler.value_tuples(pm, 2, "t2r6")),
        _evaluate_mixed(7, "neighborhood depends only on (j, |p|)", pm,
                        lambda: _neighborhood_checks(pm, sampler, "t2r7")),
        _evaluate(8, "neighborhood independent of interactions",
                  "neighborhood_interaction_invariance", pm,
                  lambda: _interaction_invariance_tuples(pm, sampler, "t2r8")),
    ]
    v9, rows = _measured(
        9, "e, i, f, ge time bounded by a constant", pm, instance, max_steps,
        "asymptotic; call counts per step measured; u exempt (needs |p|)",
    )
    v10 = Verdict(10, "e, i, u, f, ge space bounded by a constant", MEASURED,
                  reason="asymptotic; see per-step g and particle sizes" if rows else
                  "asymptotic; no instance supplied")
    verdicts += [v9, v10]
    return RestrictionReport(2, sampler.describe(), verdicts, rows)


def check_t3(pm, sampler: DomainSampler) -> RestrictionReport:
    if pm.computable:
        v2 = Verdict(2, "behaviors computable", PASS,
                     reason="declared; not testable, behaviors terminate by construction")
    else:
        v2 = Verdict(2, "behaviors computable", FAIL, 1, ("declared_computable", ()))
    verdicts = [
        _finiteness(1, "P and G finite", pm),
        v2,
        _evaluate(3, "evolve produces at most one particle", "no_production", pm,
                  lambda: sampler.value_tuples(pm, 1, "t3r3")),
    ]
    return RestrictionReport(3, sampler.describe(), verdicts)


CHECKS = {1: check_t1, 2: check_t2, 3: check_t3}
