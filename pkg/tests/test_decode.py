import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import bfs_edit_ball
from twoedit.balls import mixed_ball
from twoedit.bitseq import all_words, flip
from twoedit.codes import CodeSpec, class_specs
from twoedit.decode import (
    AMBIGUOUS, LIST, NONE, UNIQUE, c2s_residues, decode_by_search, decode_single_edit,
    decode_two_edit, decode_two_substitutions, list_decode_two_edit, substitution_deltas,
)
from twoedit.verify import verify_edit_correcting


def c2s_class(x):
    return CodeSpec("C2S", len(x)).anchored(x)


def residues(spec):
    return tuple(spec.residues.values())


def test_zero_errors_is_the_zero_branch():
    x = "1011001110"
    out = decode_two_substitutions(x, 10, *residues(c2s_class(x)))
    assert out.kind == UNIQUE and out.codeword == x
    assert out.info["positions"] == [] and out.info["deltas"] == [0, 0, 0]


def test_two_flips_recovered():
    x = "1011001110"
    b = residues(c2s_class(x))
    out = decode_two_substitutions(flip(x, 3, 7), 10, *b)
    assert out.codeword == x and out.info["positions"] == [3, 7]
    search = decode_by_search(flip(x, 3, 7), 10, (0, 0, 2), c2s_class(x))
    assert search.candidates == (x,)


@pytest.mark.parametrize("pos", range(1, 11))
def test_single_flip_recovered(pos):
    x = "0110010111"
    out = decode_two_substitutions(flip(x, pos), 10, *residues(c2s_class(x)))
    assert out.codeword == x and out.info["positions"] == [pos]
    assert abs(out.info["deltas"][0]) == 1


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="01", min_size=3, max_size=14), st.data())
def test_every_two_flip_pattern(x, data):
    n = len(x)
    i = data.draw(st.integers(0, n))
    j = data.draw(st.integers(0, n))
    z = flip(x, *{i, j})
    out = decode_two_substitutions(z, n, *residues(c2s_class(x)))
    assert out.kind == UNIQUE and out.codeword == x


def test_out_of_model_words_give_none():
    n = 10
    x = "0" * n
    b = (0, 0, 0)
    assert decode_two_substitutions("1110000000", n, *b).kind == NONE
    rng = random.Random(1)
    for _ in range(300):
        z = "".join(rng.choice("01") for _ in range(n))
        b = tuple(rng.randrange(4 * n ** k + 1) for k in range(3))
        spec = CodeSpec("C2S", n, dict(zip(("b0", "b1", "b2"), b)))
        out = decode_two_substitutions(z, n, *b)
        assert out.candidates == decode_by_search(z, n, (0, 0, 2), spec).candidates
    with pytest.raises(ValueError):
        decode_two_substitutions("0101", 5, 0, 0, 0)


def test_deltas_track_position_moments():
    x = "0000000000"
    z = flip(x, 2, 9)  # repairs are 1 -> 0 at 2 and 9
    assert substitution_deltas(z, 0, 0, 0) == (-2, -11, -(4 + 81))


def test_search_decoder_contracts():
    x = "0110100110"
    spec = CodeSpec("LEV", 10).anchored(x)
    assert x in decode_by_search(x, 10, (1, 1, 0), spec)
    with pytest.raises(ValueError):
        decode_by_search(x, 10, (0, 1, 0), spec)
    for b in [(0, 1, 0), (1, 0, 0), (0, 0, 1)]:
        for z in mixed_ball(x, b):
            out = decode_by_search(z, 10, b, spec)
            assert out.kind == UNIQUE and out.codeword == x
            assert decode_single_edit(z, spec).codeword == x


def test_search_reports_ambiguity_and_lists():
    out = decode_by_search("0000", 6, (0, 2, 0), lambda w: True)
    assert out.kind == AMBIGUOUS and len(out.candidates) > 2
    listed = decode_by_search("10100", 6, (0, 1, 0), lambda w: True, list_size=50)
    assert listed.kind == LIST


def test_c2s_residue_lookup():
    assert c2s_residues(CodeSpec("C2E", 8, ell=12, P=3).anchored("01101001")) == residues(c2s_class("01101001"))
    assert c2s_residues(CodeSpec("CDS_L", 8).anchored("01101001")) is None
    assert c2s_residues(CodeSpec("C2S", 8)) is None


def certified_classes(code, n, **kw):
    out = []
    for spec, members in class_specs(CodeSpec(code, n, **kw)):
        if verify_edit_correcting(members, 2).certified:
            out.append((spec, members))
    return out


def test_two_edit_round_trip_small():
    n = 6
    classes = certified_classes("C2E", n, ell=n + 2, eps=Fraction(1, 18), P=3)
    assert classes
    for spec, members in classes[:150]:
        for x in members:
            for y in bfs_edit_ball(x, 2):
                out = decode_two_edit(y, spec)
                assert out.kind == UNIQUE and out.codeword == x, (spec, x, y)


def test_two_edit_dispatch_examples():
    x = "01101001"
    spec = CodeSpec("C2E", 8).anchored(x)
    assert spec.mode == "asymptotic"
    out = decode_two_edit(x, spec)
    assert out.codeword == x and out.info["stage"] == "1,1,0"
    assert decode_two_edit(x[:3] + x[5:], spec).info["stage"] == "0,2,0"
    assert decode_two_edit("1" + x + "0", spec).info["stage"] == "2,0,0"
    with pytest.raises(ValueError):
        decode_two_edit(x[:5], spec)
    with pytest.raises(ValueError):
        list_decode_two_edit(x + "000", spec)


def test_substitution_stage_without_c2s_residues_uses_search():
    x = "0110"
    spec = CodeSpec("CDS_L", 4).anchored(x)
    out = decode_two_edit(flip(x, 1, 4), spec)
    assert out.info["stage"] in ("1,1,0", "0,0,2")


def test_list_decoder_examples():
    n = 7
    spec = CodeSpec("C2E_L", n, ell=n + 2, P=3).anchored("0110100")
    x = "0110100"
    assert x in list_decode_two_edit(x, spec)
    out = list_decode_two_edit(x[1:6], spec)
    assert out.kind == LIST and x in out
    y = "1" + x[:2] + x[3:]
    out = list_decode_two_edit(y, spec)
    assert x in out and len(out.candidates) <= 2


def test_none_outcome():
    spec = CodeSpec("C2S", 6, {"b0": 0, "b1": 0, "b2": 0})
    out = decode_two_edit("111111", spec)
    assert out.kind == NONE and out.to_dict()["candidates"] == []
