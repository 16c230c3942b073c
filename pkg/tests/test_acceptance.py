"""Acceptance criteria, one test each, with their time budgets."""

import dataclasses
import time

from oracles import brute_force_halting, first_repeat, loop_run, random_pm
from pmturing.engine import PMState, encoded_bits, render_trace_lines, run
from pmturing.fixtures import CORPUS_INPUTS, machine, pm_fixture
from pmturing.halting import Halts, Loops, bound_M, decide
from pmturing.restrictions import PASS, DomainSampler, check_t1, check_t2, measure_resources
from pmturing.t1 import T1Global, T1Particle, compile_t1, cosim_t1, psi_t1
from pmturing.t2 import compile_t2, cosim_t2, psi_t2, reachable_globals
from pmturing.turing import END, start_config, validate


def corpus_cosim(cosim):
    failures = []
    for name, words in CORPUS_INPUTS.items():
        tm = machine(name)
        assert len(words) >= 5 and all(len(w) <= 8 for w in words)
        for word in words:
            report = cosim(tm, list(word), 10_000)
            if not (report.ok and report.halted):
                failures.append((name, word, report.summary()))
    return failures


def test_criterion_1_cosim_t1(record_criterion):
    record_criterion(1, "co-simulation, first construction, corpus x inputs, < 5 s")
    start = time.perf_counter()
    assert corpus_cosim(cosim_t1) == []
    assert time.perf_counter() - start < 5


def test_criterion_2_cosim_t2(record_criterion):
    record_criterion(2, "co-simulation, second construction, corpus x inputs, < 5 s")
    start = time.perf_counter()
    assert corpus_cosim(cosim_t2) == []
    assert time.perf_counter() - start < 5


def test_criterion_3_t2_restrictions_exhaustive(record_criterion):
    record_criterion(3, "second-construction restrictions 2-8 exhaustive on M0, > 1e4 tuples, < 30 s")
    tm = machine("m0")
    start = time.perf_counter()
    report = check_t2(compile_t2(tm), DomainSampler.exhaustive(globals=reachable_globals(tm)))
    elapsed = time.perf_counter() - start
    print(report.render())
    for n in range(2, 9):
        assert report.verdict(n).status == PASS, report.verdict(n)
    assert report.total_evaluated > 10**4
    assert elapsed < 30


def test_criterion_4_t1_restrictions_randomized(record_criterion):
    record_criterion(4, "first-construction restrictions 1-4 randomized seed 1, 1e5 samples, < 10 s")
    start = time.perf_counter()
    sampler = DomainSampler.randomized(1, 10**5, int_bound=16)
    report = check_t1(compile_t1(machine("m0")), sampler)
    elapsed = time.perf_counter() - start
    print(report.render())
    for n in range(1, 5):
        v = report.verdict(n)
        assert v.status == PASS and v.evaluated >= 10**5, v
    assert elapsed < 10


def test_criterion_5_halting(record_criterion):
    record_criterion(5, "halting decider on counter3 and counter3 with stop, matches brute force, < 1 s")
    start = time.perf_counter()
    pm, instance = pm_fixture("counter3")
    M = bound_M(pm.global_space.size(), pm.particle_space.size(), 0).M
    verdict = decide(pm, instance)
    assert verdict == Loops(mu=0, lam=3, visited=3) and M == 3
    kind, seen = brute_force_halting(pm, instance, M + 1)
    assert kind == "running" and first_repeat(seen) == (0, 3)

    pm, instance = pm_fixture("counter3-stop")
    assert decide(pm, instance) == Halts(2)
    assert brute_force_halting(pm, instance, M + 1) == ("halts", 2)
    assert time.perf_counter() - start < 1


def test_criterion_6_engine_fidelity(record_criterion):
    record_criterion(6, "fold engine vs nested loops on 100 random methods, < 10 s")
    start = time.perf_counter()
    divergences = []
    for seed in range(100):
        pm, instance = random_pm(seed)
        assert pm.global_space.size() <= 4 and pm.particle_space.size() <= 4
        assert len(instance.particles) <= 5
        ours = render_trace_lines(run(pm, instance, 20).trace)
        theirs = render_trace_lines(loop_run(pm, instance.g, instance.particles, 20))
        if ours != theirs:
            divergences.append(seed)
    assert divergences == []
    assert time.perf_counter() - start < 10


def test_criterion_7_validator(record_criterion):
    record_criterion(7, "validator names both M0 mutations and accepts M0, < 1 s")
    start = time.perf_counter()
    tm = machine("m0")
    assert validate(tm) == []
    left = dict(tm.delta)
    left[("s", END)] = ("s", END, -1)
    assert "left move on end marker at (s,|-)" in validate(dataclasses.replace(tm, delta=left))
    leaky = dict(tm.delta)
    leaky[("acc", "a")] = ("rej", "a", 1)
    assert "accept not absorbing at (acc,a)" in validate(dataclasses.replace(tm, delta=leaky))
    assert time.perf_counter() - start < 1


def width(n: int) -> int:
    return len(str(n))


def test_criterion_8_resource_sizes(record_criterion):
    record_criterion(8, "sizes bounded by a constant (second) and by decimal widths of m, M (first), < 2 s")
    start = time.perf_counter()

    # second construction: a run of at least 50 steps
    tm = machine("palindrome")
    pm = compile_t2(tm)
    rows = measure_resources(pm, psi_t2(tm, start_config(tm, list("abbaaaabba"))))
    trace = cosim_t2(tm, list("abbaaaabba")).pm_trace
    assert len(trace) - 1 >= 50
    g_cap = max(encoded_bits(g) for g in pm.global_space.enumerate())
    p_cap = max(encoded_bits(p) for p in pm.particle_space.enumerate())
    assert all(r.g_bits <= g_cap and r.max_particle_bits <= p_cap for r in rows)
    for a, b in zip(trace, trace[1:]):
        if a.g.q == b.g.q:
            assert encoded_bits(a.g) == encoded_bits(b.g)

    # first construction: growth only through the digits of m and M
    tm = machine("m0")
    pm = compile_t1(tm)
    trace = run(pm, psi_t1(tm, start_config(tm, ["a"] * 12))).trace
    fixed = {
        q: encoded_bits(T1Global(q, tm.start, -1, 1, 1)) - 16 for q in tm.states
    }
    cell = max(encoded_bits(T1Particle(1, z)) for z in tm.tape_alphabet) - 8
    widths_seen = set()
    for state in trace:
        g = state.g
        widths_seen.add((width(g.m), width(g.M)))
        assert encoded_bits(g) == fixed[g.q] + 8 * (width(g.m) + width(g.M))
        assert all(encoded_bits(p) <= cell + 8 * width(p.k) for p in state.particles)
    assert len(widths_seen) > 1
    assert time.perf_counter() - start < 2
