from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import vt_naive
from twoedit.bitseq import all_words, complement, differential, reverse, run_sequence, weight
from twoedit.syndromes import SyndromeSpec, coefficients, syndrome_vector, vt, vt_coefficient


def test_coefficient_examples():
    assert vt_coefficient(5, 0) == 1
    assert vt_coefficient(4, 2) == 10
    assert vt_coefficient(3, 3) == 14
    assert vt_coefficient(3, 5) == 1 + 16 + 81
    with pytest.raises(ValueError):
        vt_coefficient(0, 1)


@pytest.mark.parametrize("k", range(6))
def test_coefficients_are_running_sums(k):
    expect = [1 if k == 0 else sum(j ** (k - 1) for j in range(1, i + 1)) for i in range(1, 21)]
    assert list(coefficients(20, k)) == expect


def test_vt_examples():
    assert all(vt("0000", k) == 0 for k in range(5))
    assert vt("1011", 1) == 8
    assert vt("1111", 2) == 20
    assert vt((1, 2, 3), 1) == 14


def test_syndrome_vector_examples():
    assert syndrome_vector("1011", [SyndromeSpec("identity", 0, 2)]) == (1,)
    assert syndrome_vector("1011", [SyndromeSpec("differential", 0, 5)]) == (4,)
    assert syndrome_vector("1011", []) == ()
    with pytest.raises(ValueError):
        SyndromeSpec("nope", 0, 2)
    with pytest.raises(ValueError):
        SyndromeSpec("identity", 0, 0)
    with pytest.raises(ValueError):
        syndrome_vector("1", [SyndromeSpec("ind01", 0, 2)])


@given(st.text(alphabet="01", max_size=30), st.integers(0, 4))
def test_vt_matches_definition(x, k):
    assert vt(x, k) == vt_naive(x, k)


@pytest.mark.parametrize("n", range(1, 13))
def test_reverse_and_complement_identities(n):
    c = [sum(coefficients(n, k)) for k in range(3)]
    for x in all_words(n):
        v = [vt(x, k) for k in range(3)]
        r = reverse(x)
        assert v[0] == weight(x)
        # position i moves to n + 1 - i
        assert vt(r, 1) == (n + 1) * v[0] - v[1]
        assert vt(r, 2) == comb(n + 2, 2) * v[0] - (n + 2) * v[1] + v[2]
        xc = complement(x)
        assert all(vt(xc, k) == c[k] - v[k] for k in range(3))


@pytest.mark.parametrize("n", range(1, 13))
def test_run_sum_identity(n):
    for x in all_words(n):
        p = differential(x)
        m = vt(p, 0)
        assert sum(run_sequence(x)) == m * (n + 2) - vt(p, 1)
        assert SyndromeSpec("run", 0, 10 ** 9).residue(x) == sum(run_sequence(x))
