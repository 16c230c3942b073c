import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from pmturing.cosim import EmulationError
from pmturing.engine import PMState
from pmturing.fixtures import CORPUS_INPUTS, machine
from pmturing.t2 import (
    T2Global,
    T2Particle,
    UntranslatableHeadPosition,
    compile_t2,
    cosim_t2,
    psi_inv_t2,
    psi_t2,
)
from pmturing.turing import END, make_config, start_config


def t2p(z, h, dh=0, o=-1, do_=-1, a=0):
    return T2Particle(z, h, dh, o, do_, a)


@pytest.fixture(scope="module")
def m0():
    return machine("m0")


@pytest.fixture(scope="module")
def pm(m0):
    return compile_t2(m0)


def test_neighborhood_is_clipped(pm):
    state = PMState(T2Global("s", "s"), (t2p(END, 1), t2p("a", -1), t2p("a", 0)))
    assert [pm.neighborhood(state, j) for j in (1, 2, 3)] == [(2,), (1, 3), (2,)]


def test_evolve_cases(pm):
    g = T2Global("s", "s")
    assert pm.evolve(g, t2p("a", -1, dh=1, do_=1)) == (g, (t2p("a", 1, o=1),))
    assert pm.evolve(g, t2p("a", 0)) == (g, (t2p("a", 0),))
    assert pm.evolve(g, t2p("a", -1)) == (g, (t2p("a", 0),))
    # head with a neighbor that takes over
    assert pm.evolve(g, t2p(END, 1, a=1)) == (g, (t2p(END, -1),))
    # head on the last cell: appends a fresh blank carrying the head
    g2, out = pm.evolve(g, t2p("_", 1))
    assert g2 == T2Global("s", "acc")
    assert out == (t2p("_", -1), t2p("_", 1, o=1))


def test_global_evolve_resets(pm):
    assert pm.evolve_global(T2Global("s", "acc")) == T2Global("acc", "s")


def test_psi_examples(m0):
    assert psi_t2(m0, make_config("s", [END, "a"], 1)) == PMState(
        T2Global("s", "s"), (t2p(END, 1), t2p("a", -1))
    )
    tm = machine("palindrome")
    state = psi_t2(tm, make_config("s", [END, "a", "b"], 2))
    assert [p.h for p in state.particles] == [0, 1, -1]
    assert [p.h for p in psi_t2(m0, start_config(m0, [])).particles] == [1]
    with pytest.raises(UntranslatableHeadPosition):
        psi_t2(m0, make_config("s", [END, "a"], 3))


def test_psi_inv_examples():
    state = PMState(T2Global("s", "s"), (t2p(END, -1), t2p("a", 1, o=1)))
    assert psi_inv_t2(state) == make_config("s", [END, "a"], 2)
    for hs in ((0, -1), (1, 1)):
        bad = PMState(T2Global("s", "s"), tuple(t2p("a", h) for h in hs))
        with pytest.raises(EmulationError) as exc:
            psi_inv_t2(bad)
        assert exc.value.criterion == "head_marker"


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(["a", "b", "_"]), min_size=1, max_size=6), st.data())
def test_round_trip(cells, data):
    tm = machine("palindrome")
    tape = [END] + cells
    while tape[-1] == "_":
        tape.pop()
    head = data.draw(st.integers(1, len(tape)))
    c = make_config("q0", tape, head)
    assert psi_inv_t2(psi_t2(tm, c)) == c


def test_cosim_examples(m0):
    r = cosim_t2(m0, ["a"], 100)
    assert r.ok and r.halted and len(r.pm_trace) == 4
    # the head walks onto fresh blanks: the particle count grows
    assert [len(s.particles) for s in r.pm_trace] == [2, 2, 3, 4]
    r = cosim_t2(m0, [], 100)
    assert r.ok and [len(s.particles) for s in r.pm_trace] == [1, 2, 3]


def test_corrupted_reset_is_caught(m0, pm):
    def no_reset(g):
        return T2Global(g.dq, g.dq)

    r = cosim_t2(m0, ["a"], 100, pm=dataclasses.replace(pm, evolve_global=no_reset))
    assert r.summary() == "COSIM divergence t=4 criterion=dq_not_start"


def test_push_interaction_is_caught(m0, pm):
    def push(g, pj, pk):
        a, b = pm.interact(g, pj, pk)
        return a, b._replace(a=1) if pj.h == -1 else b

    r = cosim_t2(m0, ["a", "a"], 100, pm=dataclasses.replace(pm, interact=push))
    assert not r.ok


@pytest.mark.parametrize("name", sorted(CORPUS_INPUTS))
def test_size_invariants_on_corpus(name):
    tm = machine(name)
    for word in CORPUS_INPUTS[name]:
        r = cosim_t2(tm, list(word))
        assert r.ok, (word, r.summary())
        sizes = [len(s.particles) for s in r.pm_trace]
        assert all(0 <= b - a <= 1 for a, b in zip(sizes, sizes[1:]))
