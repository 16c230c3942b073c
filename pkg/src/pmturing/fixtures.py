"""Embedded machines and small particle methods used by the CLI and tests."""

from __future__ import annotations

from .engine import Field, ParticleMethod, PMState, Space
from .tmfile import parse_tm_file

M0 = """\
# seek-blank: walk right over a's, accept on the first blank
states: s acc rej
start: s
accept: acc
reject: rej
input_alphabet: a
tape_alphabet: a
delta: s |- -> s |- R
delta: s a -> s a R
delta: s _ -> acc _ R
delta: acc |- -> acc |- R
delta: acc _ -> acc _ R
delta: acc a -> acc a R
delta: rej |- -> rej |- R
delta: rej _ -> rej _ R
delta: rej a -> rej a R
"""

SUCCESSOR = """\
# unary successor: append one 1 to a block of 1s, then accept
states: s scan acc rej
start: s
accept: acc
reject: rej
input_alphabet: 1
tape_alphabet: 1
delta: s |- -> scan |- R
delta: s _ -> rej _ R
delta: s 1 -> rej 1 R
delta: scan |- -> scan |- R
delta: scan 1 -> scan 1 R
delta: scan _ -> acc 1 R
delta: acc |- -> acc |- R
delta: acc _ -> acc _ R
delta: acc 1 -> acc 1 R
delta: rej |- -> rej |- R
delta: rej _ -> rej _ R
delta: rej 1 -> rej 1 R
"""

PALINDROME = """\
# even-length palindromes over {a,b}: erase matching outer symbols pairwise
states: s q0 ca cb ka kb back acc rej
start: s
accept: acc
reject: rej
input_alphabet: a b
tape_alphabet: a b
delta: s |- -> q0 |- R
delta: s _ -> rej _ R
delta: s a -> rej a R
delta: s b -> rej b R
delta: q0 |- -> q0 |- R
delta: q0 _ -> acc _ R
delta: q0 a -> ca _ R
delta: q0 b -> cb _ R
delta: ca |- -> ca |- R
delta: ca _ -> ka _ L
delta: ca a -> ca a R
delta: ca b -> ca b R
delta: cb |- -> cb |- R
delta: cb _ -> kb _ L
delta: cb a -> cb a R
delta: cb b -> cb b R
delta: ka |- -> ka |- R
delta: ka _ -> rej _ R
delta: ka a -> back _ L
delta: ka b -> rej b R
delta: kb |- -> kb |- R
delta: kb _ -> rej _ R
delta: kb a -> rej a R
delta: kb b -> back _ L
delta: back |- -> q0 |- R
delta: back _ -> q0 _ R
delta: back a -> back a L
delta: back b -> back b L
delta: acc |- -> acc |- R
delta: acc _ -> acc _ R
delta: acc a -> acc a R
delta: acc b -> acc b R
delta: rej |- -> rej |- R
delta: rej _ -> rej _ R
delta: rej a -> rej a R
delta: rej b -> rej b R
"""

MACHINE_TEXT = {"m0": M0, "successor": SUCCESSOR, "palindrome": PALINDROME}

# at least five inputs per machine, lengths 0 to 8
CORPUS_INPUTS = {
    "m0": ["", "a", "aa", "aaaa", "aaaaaaaa"],
    "successor": ["", "1", "11", "111", "11111111"],
    "palindrome": ["", "ab", "aa", "abba", "abab", "aabb", "abbaabba", "abbbbbba", "a"],
}


def machine(name: str):
    return parse_tm_file(MACHINE_TEXT[name])


def _unit_particles():
    return Space((Field.finite("x", (0,)),))


def counter3(stop_at=None) -> ParticleMethod:
    """No particles; the global counter cycles 0 -> 1 -> 2 -> 0."""
    return ParticleMethod(
        neighborhood=lambda state, j: (),
        stop=(lambda g: False) if stop_at is None else (lambda g: g[0] == stop_at),
        interact=lambda g, pj, pk: (pj, pk),
        evolve=lambda g, p: (g, (p,)),
        evolve_global=lambda g: ((g[0] + 1) % 3,),
        particle_space=_unit_particles(),
        global_space=Space((Field.finite("c", (0, 1, 2)),)),
        may_create_particles=False,
        may_destroy_particles=False,
        name="counter3" if stop_at is None else "counter3-stop",
    )


def fade() -> ParticleMethod:
    """Particles count down and vanish at zero; stops once a step leaves none alive.

    g = (alive, previous alive): evolve raises ``alive`` for every surviving
    particle, the global evolve shifts it into ``previous``.
    """

    def evolve(g, p):
        if p[0] == 0:
            return g, ()
        return (1, g[1]), ((p[0] - 1,),)

    return ParticleMethod(
        neighborhood=lambda state, j: (),
        stop=lambda g: g[1] == 0,
        interact=lambda g, pj, pk: (pj, pk),
        evolve=evolve,
        evolve_global=lambda g: (0, g[0]),
        particle_space=Space((Field.finite("v", (0, 1, 2)),)),
        global_space=Space((Field.finite("alive", (0, 1)), Field.finite("prev", (0, 1)))),
        may_create_particles=False,
        may_destroy_particles=True,
        name="fade",
    )


def blinker() -> ParticleMethod:
    """Each particle pulls the bit of its right neighbor and flips it."""
    def neighborhood(state, j):
        return (j + 1,) if j < len(state.particles) else ()

    def interact(g, pj, pk):
        return (pk[0], pj[1]), pk

    def evolve(g, p):
        return g, ((1 - p[0], p[1]),)

    return ParticleMethod(
        neighborhood=neighborhood,
        stop=lambda g: False,
        interact=interact,
        evolve=evolve,
        evolve_global=lambda g: g,
        particle_space=Space((Field.finite("bit", (0, 1)), Field.finite("tag", (0, 1)))),
        global_space=Space((Field.finite("unit", (0,)),)),
        may_create_particles=False,
        may_destroy_particles=False,
        name="blinker",
    )


PM_FIXTURES = {
    "counter3": (lambda: counter3(), PMState((0,), ())),
    "counter3-stop": (lambda: counter3(stop_at=2), PMState((0,), ())),
    "fade": (fade, PMState((0, 1), ((2,), (0,), (1,)))),
    "blinker": (blinker, PMState((0,), ((0, 0), (1, 0), (1, 1)))),
}


def pm_fixture(name: str):
    factory, instance = PM_FIXTURES[name]
    return factory(), instance
