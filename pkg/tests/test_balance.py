import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import d_regular_naive, locally_balanced_naive, psi_naive, strong_naive, words
from twoedit.balance import (
    BalanceParams, count_balanced_pair, is_balanced_pair, is_d_regular, is_locally_balanced,
    is_strong_locally_balanced, link_condition,
)
from twoedit.bitseq import all_words, complement, differential, reverse

EPS = Fraction(1, 18)
bits = st.text(alphabet="01", min_size=1, max_size=24)


def test_params_validation():
    with pytest.raises(ValueError):
        BalanceParams(0, EPS)
    with pytest.raises(ValueError):
        BalanceParams(3, Fraction(1, 2))
    with pytest.raises(ValueError):
        BalanceParams(3, 0)
    assert BalanceParams(3, 0.25).eps == Fraction(1, 4)


def test_locally_balanced_examples():
    # window weight 1 lies inside [8/9, 10/9]
    assert is_locally_balanced("0101", 2, EPS) is True
    assert is_locally_balanced("0011", 2, EPS) is False
    assert all(is_locally_balanced(x, 7, EPS) for x in all_words(6))
    assert not any(is_locally_balanced("1" * n, ell, Fraction(49, 100)) for n in range(1, 9) for ell in range(1, n + 1))


def test_boundary_weights_are_inclusive():
    # ell = 9, eps = 1/18: interval is exactly [4, 5]
    assert is_locally_balanced("111100000", 9, EPS)
    assert is_locally_balanced("111110000", 9, EPS)
    assert not is_locally_balanced("111000000", 9, EPS)


def test_strong_examples():
    assert all(is_strong_locally_balanced(x, 9, EPS) for x in all_words(8))
    assert not any(is_strong_locally_balanced("0" * n, ell, EPS) for n in range(1, 9) for ell in range(1, n + 1))


def test_d_regular_examples():
    assert not is_d_regular("01010101", 4)
    assert is_d_regular("11001100", 8)
    assert is_d_regular("1100" * 4, 8)
    assert is_d_regular("0101", 5)
    with pytest.raises(ValueError):
        is_d_regular("0011", 3)


def test_link_condition_examples():
    assert link_condition(0.0371, 13.4752, EPS)
    assert not link_condition(EPS, 1, EPS)
    # large s: only eps_tilde <= eps matters (up to a vanishing slack)
    assert link_condition(Fraction(1, 20), 10 ** 9, EPS)
    assert not link_condition(Fraction(1, 17), 10 ** 9, EPS)
    assert not link_condition(Fraction(1, 20), 2, Fraction(1, 2))


def test_count_balanced_pair_values():
    # frozen from the definition-level oracle
    assert count_balanced_pair(4, 2, EPS) == 0
    assert count_balanced_pair(10, 9, EPS) == 24
    assert count_balanced_pair(12, 12, EPS) == 100
    assert count_balanced_pair(6, 8, EPS) == 64
    with pytest.raises(ValueError):
        count_balanced_pair(21, 30, EPS)


@pytest.mark.parametrize("n", [4, 10])
def test_count_matches_oracle(n):
    for ell in range(2, n + 2):
        expect = sum(1 for x in words(n) if strong_naive(x, ell, EPS) and strong_naive(psi_naive(x), ell, EPS))
        assert count_balanced_pair(n, ell, EPS) == expect


@settings(max_examples=300)
@given(bits, st.integers(1, 12), st.sampled_from([EPS, Fraction(1, 10), Fraction(1, 4), Fraction(2, 5)]))
def test_predicates_match_oracle(x, ell, eps):
    assert is_locally_balanced(x, ell, eps) == locally_balanced_naive(x, ell, eps)
    assert is_strong_locally_balanced(x, ell, eps) == strong_naive(x, ell, eps)
    if ell >= 4:
        assert is_d_regular(x, ell) == d_regular_naive(x, ell)


@pytest.mark.parametrize("n", range(1, 13))
def test_strong_closed_under_complement_and_reverse(n):
    for ell in (4, 6, 9):
        for eps in (EPS, Fraction(1, 6)):
            for x in all_words(n):
                s = is_strong_locally_balanced(x, ell, eps)
                assert is_strong_locally_balanced(reverse(x), ell, eps) == s
                if s:
                    assert is_strong_locally_balanced(complement(x), ell, eps)


@pytest.mark.parametrize("ell", range(4, 15))
def test_balanced_pair_is_d_regular(ell):
    # the implication is stated for eps = 1/18; larger eps has counterexamples
    for n in range(ell, 15):
        for x in all_words(n):
            if is_balanced_pair(x, ell, EPS):
                assert is_d_regular(x, ell), x


def test_d_regular_implication_needs_small_eps():
    x = "0110"
    assert is_balanced_pair(x, 4, Fraction(1, 10)) and not is_d_regular(x, 4)


LINK_CASES = [
    (lt, et, s)
    for et in (Fraction(1, 10), Fraction(1, 4))
    for s in (Fraction(3, 2), Fraction(3))
    for lt in (2, 3, 5)
]


@pytest.mark.parametrize("lt,et,s", LINK_CASES)
def test_local_balance_links_to_strong(lt, et, s):
    eps = et + (1 - 4 * et * et) / (4 * s)
    assert link_condition(et, s, eps)
    target = math.ceil(s * lt)
    for n in range(1, 15):
        for x in all_words(n):
            if is_locally_balanced(x, lt, et):
                assert is_strong_locally_balanced(x, target, eps), x


def test_balanced_pair_checks_both():
    x = "0011"
    assert is_balanced_pair(x, 4, Fraction(1, 4)) == (
        is_strong_locally_balanced(x, 4, Fraction(1, 4)) and is_strong_locally_balanced(differential(x), 4, Fraction(1, 4))
    )
