import pytest
from hypothesis import given, settings, strategies as st

from pmturing.fixtures import MACHINE_TEXT, machine
from pmturing.tmfile import TMFileError, parse_tm_file, render_tm_file


def normalize(text):
    return [" ".join(line.split()) for line in text.splitlines() if line.strip() and not line.startswith("#")]


@pytest.mark.parametrize("name", sorted(MACHINE_TEXT))
def test_round_trip(name):
    tm = parse_tm_file(MACHINE_TEXT[name])
    text = render_tm_file(tm)
    assert parse_tm_file(text) == tm
    assert render_tm_file(parse_tm_file(text)) == text


def test_m0_text_is_canonical():
    assert sorted(normalize(render_tm_file(machine("m0")))) == sorted(normalize(MACHINE_TEXT["m0"]))


def test_duplicate_delta():
    text = MACHINE_TEXT["m0"] + "delta: s a -> acc a R\n"
    with pytest.raises(TMFileError) as exc:
        parse_tm_file(text)
    assert "duplicate delta entry for (s,a)" in str(exc.value)
    assert exc.value.diagnostics[0].line == 17


def test_missing_start():
    text = "\n".join(l for l in MACHINE_TEXT["m0"].splitlines() if not l.startswith("start:"))
    with pytest.raises(TMFileError, match="missing start declaration"):
        parse_tm_file(text)


def test_unknown_tokens():
    with pytest.raises(TMFileError, match="unknown state 'zz'"):
        parse_tm_file(MACHINE_TEXT["m0"] + "delta: zz a -> s a R\n")
    with pytest.raises(TMFileError, match="unknown symbol 'b'"):
        parse_tm_file(MACHINE_TEXT["m0"].replace("delta: s a -> s a R", "delta: s b -> s a R"))


def test_bad_direction_has_column():
    with pytest.raises(TMFileError) as exc:
        parse_tm_file(MACHINE_TEXT["m0"].replace("s a -> s a R", "s a -> s a X"))
    d = exc.value.diagnostics[0]
    assert d.line == 9 and d.column > 1 and "direction" in d.message


def test_start_forced_to_rank_zero():
    text = MACHINE_TEXT["m0"].replace("states: s acc rej", "states: acc rej s")
    tm = parse_tm_file(text)
    assert tm.states[0] == "s" and tm.rank("acc") < tm.rank("rej")


@settings(max_examples=40, deadline=None)
@given(st.permutations(MACHINE_TEXT["palindrome"].splitlines()[1:]))
def test_parse_is_order_insensitive(lines):
    tm = parse_tm_file("\n".join(lines))
    assert tm.delta == machine("palindrome").delta
    assert render_tm_file(parse_tm_file(render_tm_file(tm))) == render_tm_file(tm)
