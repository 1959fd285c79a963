"""Error balls for insertion/deletion/substitution budgets and a seeded channel.

Balls are generated in canonical order: deletions, then up to ``t3``
substitutions at distinct positions, then insertions.  Any interleaving of
the same operations reaches the same set (a substitution later deleted is a
wasted substitution, a substituted inserted symbol is an insertion of the
other symbol), so the canonical order is exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .bitseq import BitSeq

DEFAULT_BUDGET_LIMIT = 4


@dataclass(frozen=True)
class ChannelBudget:
    """Exactly ``t1`` insertions, exactly ``t2`` deletions, up to ``t3`` substitutions."""

    t1: int = 0
    t2: int = 0
    t3: int = 0
    limit: int = DEFAULT_BUDGET_LIMIT

    def __post_init__(self):
        if min(self.t1, self.t2, self.t3) < 0:
            raise ValueError("budget entries must be non-negative")
        if self.t1 + self.t2 + self.t3 > self.limit:
            raise ValueError(f"total budget {self.total} exceeds limit {self.limit}")

    @property
    def total(self) -> int:
        return self.t1 + self.t2 + self.t3

    def inverse(self) -> "ChannelBudget":
        """Budget that maps received words back to transmitted ones."""
        return ChannelBudget(self.t2, self.t1, self.t3, self.limit)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.t1, self.t2, self.t3)

    def __str__(self):
        return f"{self.t1},{self.t2},{self.t3}"

    @classmethod
    def parse(cls, text: str) -> "ChannelBudget":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"channel must be 't1,t2,t3', got {text!r}")
        return cls(*(int(p) for p in parts))


def budget(b) -> ChannelBudget:
    if isinstance(b, ChannelBudget):
        return b
    return ChannelBudget(*b)


# -- single-step generators on raw strings ---------------------------------

def single_deletions(s: str) -> Iterator[str]:
    """Distinct results of one deletion: only the first symbol of each run."""
    for i in range(len(s)):
        if i == 0 or s[i] != s[i - 1]:
            yield s[:i] + s[i + 1:]


def single_insertions(s: str) -> Iterator[str]:
    """Distinct results of one insertion (n + 2 of them).

    Inserting c right after a c is the same as inserting it one place
    earlier, so c goes only at the start or after a symbol different from c.
    """
    yield "0" + s
    yield "1" + s
    for i in range(1, len(s) + 1):
        c = "1" if s[i - 1] == "0" else "0"
        yield s[:i] + c + s[i:]


def _flip_at(s: str, positions: Iterable[int]) -> str:
    chars = list(s)
    for p in positions:
        chars[p] = "1" if chars[p] == "0" else "0"
    return "".join(chars)


def hamming_ball(s: str, radius: int) -> Iterator[str]:
    """Words within Hamming distance ``radius`` (each produced once)."""
    yield s
    for r in range(1, min(radius, len(s)) + 1):
        for combo in combinations(range(len(s)), r):
            yield _flip_at(s, combo)


def _deletion_layer(words: set, t2: int) -> set:
    for _ in range(t2):
        words = {d for w in words for d in single_deletions(w)}
    return words


def _insertion_layer(words: set, t1: int) -> set:
    for _ in range(t1):
        words = {d for w in words for d in single_insertions(w)}
    return words


def ball_set(x: str, t1: int, t2: int, t3: int) -> set:
    """Raw-string ball B_{t1,t2,t3}(x) as a set (no validation)."""
    words = _deletion_layer({x}, t2)
    if t3:
        words = {h for w in words for h in hamming_ball(w, t3)}
    return _insertion_layer(words, t1)


def iter_ball(x: str, t1: int, t2: int, t3: int) -> Iterator[str]:
    """Lazy ball members; the final stage streams and may repeat members."""
    words = _deletion_layer({x}, t2)
    if t1 == 0:
        for w in words:
            yield from hamming_ball(w, t3)
        return
    if t3:
        words = {h for w in words for h in hamming_ball(w, t3)}
    words = _insertion_layer(words, t1 - 1)
    for w in words:
        yield from single_insertions(w)


def edit_ball_set(x: str, t: int) -> set:
    out = set()
    for t1 in range(t + 1):
        for t2 in range(t + 1 - t1):
            if t2 <= len(x):
                out |= ball_set(x, t1, t2, t - t1 - t2)
    return out


# -- public API -------------------------------------------------------------

def _check_deletions(x: str, t2: int):
    if t2 > len(x):
        raise ValueError(f"cannot delete {t2} symbols from a length-{len(x)} sequence")


def mixed_ball(x: BitSeq, b) -> frozenset:
    """B_{t1,t2,t3}(x): all words reachable with the budget, any order."""
    b = budget(b)
    _check_deletions(x, b.t2)
    return frozenset(ball_set(x, b.t1, b.t2, b.t3))


def edit_ball(x: BitSeq, t: int) -> frozenset:
    """B_t(x): all words within ``t`` edits."""
    if t < 0:
        raise ValueError("edit budget must be non-negative")
    if t > len(x):
        raise ValueError(f"edit budget {t} exceeds sequence length {len(x)}")
    return frozenset(edit_ball_set(x, t))


def sort_words(words: Iterable[str]) -> list[str]:
    """Canonical order: by length, then lexicographically."""
    return sorted(words, key=lambda w: (len(w), w))


def balls_intersect(x: BitSeq, y: BitSeq, b) -> bool:
    """Whether B(x) and B(y) share a member; y's ball is streamed, not stored."""
    if len(x) != len(y):
        raise ValueError("balls_intersect needs equal-length sequences")
    b = budget(b)
    _check_deletions(x, b.t2)
    left = ball_set(x, b.t1, b.t2, b.t3)
    return any(w in left for w in iter_ball(y, b.t1, b.t2, b.t3))


def common_members(x: BitSeq, y: BitSeq, b) -> list[str]:
    b = budget(b)
    return sort_words(ball_set(x, *b.as_tuple()) & ball_set(y, *b.as_tuple()))


def apply_del_sub(x: BitSeq, d: int, e: int) -> BitSeq:
    """x(d, e): substitute x_e first, then delete x_d (1-based).

    ``e = 0`` or ``e = d`` means the deletion alone.
    """
    n = len(x)
    if not 1 <= d <= n:
        raise ValueError(f"deletion index {d} outside [1, {n}]")
    if not 0 <= e <= n:
        raise ValueError(f"substitution index {e} outside [0, {n}]")
    if e and e != d:
        x = _flip_at(x, (e - 1,))
    return x[:d - 1] + x[d:]


# -- channel ----------------------------------------------------------------

def _traced_ball(x: str, b: ChannelBudget) -> dict:
    """Ball members mapped to the first canonical error list reaching them.

    Error entries are ``("D", i)``, ``("S", i)`` and ``("I", i, c)`` with
    1-based positions in the word the operation acts on.
    """
    layer = {x: ()}
    for _ in range(b.t2):
        nxt = {}
        for w, ops in layer.items():
            for i in range(len(w)):
                nxt.setdefault(w[:i] + w[i + 1:], ops + (("D", i + 1),))
        layer = nxt
    if b.t3:
        nxt = {}
        for w, ops in layer.items():
            for r in range(0, min(b.t3, len(w)) + 1):
                for combo in combinations(range(len(w)), r):
                    nxt.setdefault(_flip_at(w, combo), ops + tuple(("S", p + 1) for p in combo))
        layer = nxt
    for _ in range(b.t1):
        nxt = {}
        for w, ops in layer.items():
            for i in range(len(w) + 1):
                for c in "01":
                    nxt.setdefault(w[:i] + c + w[i:], ops + (("I", i + 1, c),))
        layer = nxt
    return layer


def simulate_channel(x: BitSeq, b, seed: int) -> tuple[BitSeq, tuple]:
    """Draw one member of B_{t1,t2,t3}(x) uniformly, deterministic in ``seed``.

    Returns the received word and one error list that produces it.  The
    whole ball is materialised, so this is meant for desk-scale lengths.
    """
    b = budget(b)
    _check_deletions(x, b.t2)
    traced = _traced_ball(x, b)
    members = sort_words(traced)
    word = random.Random(seed).choice(members)
    return word, traced[word]


def apply_errors(x: BitSeq, ops: Iterable[tuple]) -> BitSeq:
    """Replay an error list produced by :func:`simulate_channel`."""
    for op in ops:
        kind, pos = op[0], op[1]
        if kind == "D":
            x = x[:pos - 1] + x[pos:]
        elif kind == "S":
            x = _flip_at(x, (pos - 1,))
        elif kind == "I":
            x = x[:pos - 1] + op[2] + x[pos - 1:]
        else:
            raise ValueError(f"unknown error kind {kind!r}")
    return x


def trace_errors(x: BitSeq, y: BitSeq, b) -> Optional[tuple]:
    """One canonical error list taking x to y within the budget, or None."""
    b = budget(b)
    _check_deletions(x, b.t2)
    return _traced_ball(x, b).get(y)


def simulate_edits(x: BitSeq, t: int, seed: int) -> tuple[BitSeq, tuple]:
    """Draw one member of B_t(x) uniformly, with an error list reaching it."""
    members = sort_words(edit_ball(x, t))
    word = random.Random(seed).choice(members)
    for t1 in range(t + 1):
        for t2 in range(min(t - t1, len(x)) + 1):
            ops = trace_errors(x, word, ChannelBudget(t1, t2, t - t1 - t2, limit=max(t, DEFAULT_BUDGET_LIMIT)))
            if ops is not None:
                return word, ops
    raise AssertionError("edit ball member without an error trace")
