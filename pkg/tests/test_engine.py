import dataclasses
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracles import loop_run, random_pm
from pmturing.engine import (
    IndexOutOfRange,
    MalformedNeighborhood,
    PMState,
    evolve_all,
    interact_all,
    interact_pair,
    render_state,
    render_trace_lines,
    run,
    transition_step,
)
from pmturing.fixtures import counter3, machine, pm_fixture
from pmturing.t1 import T1Global, T1Particle, compile_t1, psi_t1
from pmturing.t2 import T2Global, T2Particle, compile_t2, psi_t2
from pmturing.turing import make_config, start_config


@pytest.fixture(scope="module")
def m0():
    return machine("m0")


def t2p(z, h, dh=0, o=-1, do_=-1, a=0):
    return T2Particle(z, h, dh, o, do_, a)


def test_render_examples():
    state = PMState(T1Global("s", "s", -1, 1, 2), (T1Particle(1, "|-"), T1Particle(2, "a")))
    assert render_state(state) == "g=(s,s,-1,1,2) p=[(1,|-);(2,a)]"
    assert render_state(PMState((0,), ())) == "g=(0) p=[]"
    assert render_trace_lines([state])[0] == "t=1 g=(s,s,-1,1,2) p=[(1,|-);(2,a)]"


def test_render_injective_on_small_domains():
    pm = counter3()
    states = [PMState(g, ps) for g in pm.global_space.enumerate()
              for n in range(3) for ps in itertools.product(pm.particle_space.enumerate(), repeat=n)]
    assert len({render_state(s) for s in states}) == len(states)
    pm2 = compile_t2(machine("m0"))
    values = list(pm2.particle_space.enumerate())
    assert len({render_state(PMState(T2Global("s", "s"), (p,))) for p in values}) == len(values)


def test_interact_pair_t1_identity(m0):
    state = psi_t1(m0, start_config(m0, ["a"]))
    assert interact_pair(compile_t1(m0), state, 1, 2) == state.particles


def test_interact_pair_t2(m0):
    pm = compile_t2(m0)
    state = psi_t2(m0, make_config("s", ["|-", "a", "a"], 1))
    # j=3 has h=0 and is not next to the head: nothing happens
    assert interact_pair(pm, state, 3, 2) == state.particles
    # j=2 sits on the trailing marker next to a right-moving head: it receives the head
    assert interact_pair(pm, state, 2, 1)[1] == t2p("a", -1, dh=1, do_=1)


def test_interact_pair_pull_toy():
    pm = dataclasses.replace(counter3(), interact=lambda g, pj, pk: ((pj[0] + pk[0],), pk))
    state = PMState((0,), ((1,), (5,)))
    assert interact_pair(pm, state, 1, 2) == ((6,), (5,))


def test_interact_pair_bounds():
    pm = counter3()
    state = PMState((0,), ((0,), (0,)))
    for j, k in ((0, 1), (1, 3), (1, 1)):
        with pytest.raises(IndexOutOfRange):
            interact_pair(pm, state, j, k)


def test_interact_all_head_on_first_cell(m0):
    pm = compile_t2(m0)
    state = psi_t2(m0, start_config(m0, ["a"]))
    assert interact_all(pm, state) == (t2p("|-", 1, a=1), t2p("a", -1, dh=1, do_=1))


def test_interact_all_trivial(m0):
    state = psi_t1(m0, start_config(m0, ["a", "a"]))
    assert interact_all(compile_t1(m0), state) == state.particles
    single = PMState(T2Global("s", "s"), (t2p("|-", 1),))
    assert interact_all(compile_t2(m0), single) == single.particles


def test_malformed_neighborhood():
    pm = dataclasses.replace(counter3(), neighborhood=lambda s, j: (7,))
    with pytest.raises(MalformedNeighborhood):
        interact_all(pm, PMState((0,), ((0,),)))


def test_evolve_all_examples(m0):
    pm = compile_t1(m0)
    state = psi_t1(m0, make_config("s", ["|-", "a"], 2))
    after = evolve_all(pm, state)
    assert after.particles == (T1Particle(1, "|-"), T1Particle(2, "a"), T1Particle(3, "_"))
    assert after.g.dq == "s"
    ident = counter3()
    st0 = PMState((1,), ((0,), (0,)))
    assert evolve_all(ident, st0) == st0
    gone = dataclasses.replace(ident, evolve=lambda g, p: (g, ()))
    assert evolve_all(gone, st0).particles == ()


def test_transition_step_examples(m0):
    pm1 = compile_t1(m0)
    alpha1 = start_config(m0, ["a"])
    assert transition_step(pm1, psi_t1(m0, alpha1)) == PMState(
        T1Global("s", "s", -1, 2, 2), (T1Particle(1, "|-"), T1Particle(2, "a"))
    )
    assert transition_step(counter3(), PMState((0,), ())) == PMState((1,), ())
    after = transition_step(compile_t2(m0), psi_t2(m0, alpha1))
    assert after == PMState(T2Global("s", "s"), (t2p("|-", -1), t2p("a", 1, o=1)))


def test_run_examples(m0):
    pm1 = compile_t1(m0)
    done = psi_t1(m0, make_config("acc", ["|-"], 1))
    result = run(pm1, done)
    assert result.halted and result.steps == 0 and result.final == done

    pm, instance = pm_fixture("counter3-stop")
    result = run(pm, instance)
    assert result.final == PMState((2,), ()) and result.steps == 2

    result = run(pm1, psi_t1(m0, start_config(m0, ["a"])), 100)
    assert result.steps == 3
    assert result.final.g == T1Global("acc", "s", -1, 4, 4)


def test_run_cap_is_a_verdict():
    result = run(counter3(), PMState((0,), ()), max_steps=5)
    assert not result.halted and result.final is None and len(result.trace) == 6


def test_counters_one_neighborhood_call_per_particle(m0):
    pm = compile_t2(machine("palindrome"))
    tm = machine("palindrome")
    result = run(pm, psi_t2(tm, start_config(tm, list("abba"))))
    for (n, _, _), queries in zip(result.counters.sizes, result.counters.neighborhood_queries):
        assert queries == list(range(1, n + 1)) or queries == []
    last = result.counters.per_step[-1]
    assert last["f"] == 1 and last["u"] == 0


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_fold_matches_loop(seed):
    pm, instance = random_pm(seed)
    ours = run(pm, instance, 12).trace
    theirs = loop_run(pm, instance.g, instance.particles, 12)
    assert render_trace_lines(ours) == render_trace_lines(theirs)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_interaction_keeps_count_and_runs_repeat(seed):
    pm, instance = random_pm(seed)
    assert len(interact_all(pm, instance)) == len(instance.particles)
    a = render_trace_lines(run(pm, instance, 8).trace)
    b = render_trace_lines(run(pm, instance, 8).trace)
    assert a == b
