"""Locally-balanced, strong-locally-balanced and d-regular predicates.

Interval bounds are compared in exact rational arithmetic; the interval
[(1/2 - eps) * ell, (1/2 + eps) * ell] is closed on both ends.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from .bitseq import BitSeq, all_words, differential

HALF = Fraction(1, 2)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10 ** 9)
    return Fraction(value)


@dataclass(frozen=True)
class BalanceParams:
    ell: int
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", as_fraction(self.eps))
        if self.ell < 1:
            raise ValueError("window length ell must be positive")
        if not 0 < self.eps < HALF:
            raise ValueError("eps must lie strictly between 0 and 1/2")


def _prefix(x: BitSeq) -> list[int]:
    return [0, *accumulate(1 if c == "1" else 0 for c in x)]


def _window_ok(weight: int, length: int, eps: Fraction) -> bool:
    return (HALF - eps) * length <= weight <= (HALF + eps) * length


def is_locally_balanced(x: BitSeq, ell: int, eps) -> bool:
    """Every window of length exactly ``ell`` has weight in the closed interval."""
    p = BalanceParams(ell, eps)
    n = len(x)
    if p.ell > n:
        return True
    lo, hi = (HALF - p.eps) * p.ell, (HALF + p.eps) * p.ell
    w = x.count("1", 0, p.ell)
    if not lo <= w <= hi:
        return False
    for i in range(p.ell, n):
        w += (x[i] == "1") - (x[i - p.ell] == "1")
        if not lo <= w <= hi:
            return False
    return True


def is_strong_locally_balanced(x: BitSeq, ell: int, eps) -> bool:
    """Locally balanced for every window length in [ell, n]; O(n^2) via prefix sums."""
    p = BalanceParams(ell, eps)
    n = len(x)
    if p.ell > n:
        return True
    pre = _prefix(x)
    for length in range(p.ell, n + 1):
        lo, hi = (HALF - p.eps) * length, (HALF + p.eps) * length
        for start in range(0, n - length + 1):
            if not lo <= pre[start + length] - pre[start] <= hi:
                return False
    return True


def is_d_regular(x: BitSeq, window: int) -> bool:
    """Every window of length ``window`` contains both "11" and "00".

    Windows longer than ``window`` contain one of length ``window``, so
    checking exact-length windows is enough.
    """
    if window < 4:
        raise ValueError("window must be at least 4")
    n = len(x)
    if window > n:
        return True
    # last start index (<= i) of each pattern, -1 if none yet
    last11 = last00 = -1
    starts11 = [-1] * n
    starts00 = [-1] * n
    for i in range(n - 1):
        pair = x[i:i + 2]
        if pair == "11":
            last11 = i
        elif pair == "00":
            last00 = i
        starts11[i] = last11
        starts00[i] = last00
    for start in range(0, n - window + 1):
        end_pair = start + window - 2  # last admissible pair start in the window
        if starts11[end_pair] < start or starts00[end_pair] < start:
            return False
    return True


def link_condition(eps_tilde, s, eps) -> bool:
    """eps_tilde + (1 - 4 eps_tilde^2) / (4 s) <= eps < 1/2."""
    et, s, e = as_fraction(eps_tilde), as_fraction(s), as_fraction(eps)
    if not 0 < et < HALF:
        raise ValueError("eps_tilde must lie in (0, 1/2)")
    if s < 1:
        raise ValueError("s must be at least 1")
    return et + (1 - 4 * et * et) / (4 * s) <= e < HALF


def is_balanced_pair(x: BitSeq, ell: int, eps) -> bool:
    """Both x and its differential are strong-(ell, eps)-locally-balanced."""
    return is_strong_locally_balanced(x, ell, eps) and is_strong_locally_balanced(differential(x), ell, eps)


def count_balanced_pair(n: int, ell: int, eps, limit: int = 20) -> int:
    if n > limit:
        raise ValueError(f"n = {n} exceeds the exhaustive limit {limit}")
    BalanceParams(ell, eps)
    if ell > n + 1:
        return 1 << n
    return sum(1 for x in all_words(n) if is_balanced_pair(x, ell, eps))
