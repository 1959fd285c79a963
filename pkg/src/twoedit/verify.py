"""Exhaustive certification of ball-disjointness properties.

Pairwise checks use a cover map: every ball member remembers the first
codeword (in sorted order) whose ball produced it.  A later codeword
hitting an owned member is a collision, and the smallest such
(owner, codeword) pair is exactly the lexicographically first colliding
pair, so the witness does not depend on scan order.
"""
from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .balls import ball_set, budget, edit_ball_set, sort_words
from .bitseq import BitSeq, all_words, differential, weight
from .codes import CodeSpec, class_specs

CERTIFIED, REFUTED = "certified", "refuted"


@dataclass
class VerifyReport:
    property: str
    config: dict
    verdict: str
    witness: Optional[dict] = None
    counts: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_dict(self) -> dict:
        out = {"config": {"property": self.property, **self.config}, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        out["counts"] = self.counts
        out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def _ms_since(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000


def _prepare(codewords: Iterable[BitSeq]) -> list[BitSeq]:
    words = sorted(set(codewords))
    if words and len({len(w) for w in words}) > 1:
        raise ValueError("all codewords must have the same length")
    return words


def first_collision(words: Sequence[BitSeq], ball: Callable[[str], set]) -> tuple[Optional[tuple[int, int]], int]:
    """Lexicographically first pair of indices with intersecting balls, and
    the total number of ball members generated."""
    owner: dict = {}
    best = None
    generated = 0
    for i, w in enumerate(words):
        hit = None
        members = ball(w)
        generated += len(members)
        for m in members:
            j = owner.setdefault(m, i)
            if j != i and (hit is None or j < hit):
                hit = j
        if hit is not None and (best is None or hit < best[0]):
            best = (hit, i)
    return best, generated


def _pairwise(prop, words, ball, config, t0) -> VerifyReport:
    best, generated = first_collision(words, ball)
    n = len(words)
    counts = {"codewords": n, "pairs": n * (n - 1) // 2, "ball_members": generated}
    witness = None
    if best is not None:
        x, y = words[best[0]], words[best[1]]
        common = sort_words(ball(x) & ball(y))
        witness = {"x": x, "y": y, "common": common[0]}
    return VerifyReport(prop, config, REFUTED if witness else CERTIFIED, witness, counts, _ms_since(t0))


def verify_correcting(codewords: Iterable[BitSeq], b) -> VerifyReport:
    """Certified iff the B_{t1,t2,t3} balls of all codewords are pairwise disjoint."""
    t0 = time.perf_counter()
    b = budget(b)
    words = _prepare(codewords)
    if words and b.t2 > len(words[0]):
        raise ValueError(f"cannot delete {b.t2} symbols from length-{len(words[0])} codewords")
    t = b.as_tuple()
    return _pairwise("correcting", words, lambda w: ball_set(w, *t), {"channel": str(b)}, t0)


def verify_edit_correcting(codewords: Iterable[BitSeq], t: int) -> VerifyReport:
    """Certified iff the B_t edit balls are pairwise disjoint."""
    t0 = time.perf_counter()
    words = _prepare(codewords)
    if words and t > len(words[0]):
        raise ValueError(f"edit budget {t} exceeds codeword length {len(words[0])}")
    return _pairwise("edit_correcting", words, lambda w: edit_ball_set(w, t), {"edits": t}, t0)


def cover_counts(words: Sequence[BitSeq], ball: Callable[[str], set]) -> Counter:
    counts = Counter()
    for w in words:
        counts.update(ball(w))
    return counts


def verify_list(codewords: Iterable[BitSeq], b, L: int) -> VerifyReport:
    """Certified iff no word lies in the balls of more than L codewords."""
    t0 = time.perf_counter()
    if L < 1:
        raise ValueError("list size L must be at least 1")
    b = budget(b)
    words = _prepare(codewords)
    t = b.as_tuple()
    counts = cover_counts(words, lambda w: ball_set(w, *t))
    worst = max(counts.values(), default=0)
    witness = None
    if worst > L:
        heavy = sort_words(m for m, c in counts.items() if c > L)[0]
        covering = [w for w in words if heavy in ball_set(w, *t)]
        witness = {"received": heavy, "codewords": covering}
    return VerifyReport(
        "list", {"channel": str(b), "L": L}, REFUTED if witness else CERTIFIED, witness,
        {"codewords": len(words), "ball_members": sum(counts.values()), "max_cover": worst},
        _ms_since(t0),
    )


def verify_edit_list(codewords: Iterable[BitSeq], t: int, L: int) -> VerifyReport:
    """Certified iff no word lies in the B_t edit balls of more than L codewords."""
    t0 = time.perf_counter()
    if L < 1:
        raise ValueError("list size L must be at least 1")
    words = _prepare(codewords)
    if words and t > len(words[0]):
        raise ValueError(f"edit budget {t} exceeds codeword length {len(words[0])}")
    counts = cover_counts(words, lambda w: edit_ball_set(w, t))
    worst = max(counts.values(), default=0)
    witness = None
    if worst > L:
        heavy = sort_words(m for m, c in counts.items() if c > L)[0]
        witness = {"received": heavy, "codewords": [w for w in words if heavy in edit_ball_set(w, t)]}
    return VerifyReport(
        "edit_list", {"edits": t, "L": L}, REFUTED if witness else CERTIFIED, witness,
        {"codewords": len(words), "ball_members": sum(counts.values()), "max_cover": worst},
        _ms_since(t0),
    )


def differing_window(x: str, y: str) -> tuple[int, int]:
    """0-based inclusive [a, b] after stripping the longest common prefix and suffix."""
    a = 0
    while x[a] == y[a]:
        a += 1
    b = len(x) - 1
    while x[b] == y[b]:
        b -= 1
    return a, b


def _near_pairs(words: Sequence[str], P: int) -> list[tuple[str, str]]:
    """Codeword pairs (x < y) whose differing window has length <= P."""
    pool = set(words)
    n = len(words[0]) if words else 0
    width = min(P, n)
    pairs = set()
    fmt = f"0{width}b"
    patterns = [format(v, fmt) for v in range(1 << width)]
    for x in words:
        for s in range(n - width + 1):
            head, tail = x[:s], x[s + width:]
            for pat in patterns:
                y = head + pat + tail
                if y > x and y in pool:
                    pairs.add((x, y))
    return sorted(pairs)


def verify_p_bounded(codewords: Iterable[BitSeq], P: int, b, windows: str = "all") -> VerifyReport:
    """P-bounded correcting check.

    For every codeword pair x = u x' v, y = u y' v with |x'| = |y'| <= P the
    balls of x' and y' must be disjoint.  Intersection persists when the same
    context is added on both sides, so with ``windows="all"`` it suffices to
    test every length-min(P, n) window covering the differing region;
    ``windows="minimal"`` tests only the differing region itself.
    """
    t0 = time.perf_counter()
    if P < 1:
        raise ValueError("P must be positive")
    if windows not in ("all", "minimal"):
        raise ValueError("windows must be 'all' or 'minimal'")
    b = budget(b)
    t = b.as_tuple()
    words = _prepare(codewords)
    n = len(words[0]) if words else 0
    if words and P > n:
        raise ValueError(f"P = {P} exceeds the code length {n}")
    pairs = _near_pairs(words, P)
    checked = 0
    witness = None
    for x, y in pairs:
        a, e = differing_window(x, y)
        if windows == "minimal":
            spans = [(a, e + 1)]
        else:
            width = min(P, n)
            spans = [(s, s + width) for s in range(max(0, e - width + 1), min(a, n - width) + 1)]
        for lo, hi in spans:
            checked += 1
            common = ball_set(x[lo:hi], *t) & ball_set(y[lo:hi], *t)
            if common:
                witness = {"x": x, "y": y, "window": [lo + 1, hi], "common": sort_words(common)[0]}
                break
        if witness:
            break
    return VerifyReport(
        "p_bounded", {"channel": str(b), "P": P, "windows": windows},
        REFUTED if witness else CERTIFIED, witness,
        {"codewords": len(words), "near_pairs": len(pairs), "windows_checked": checked},
        _ms_since(t0),
    )


# -- two-edit equivalence -----------------------------------------------------

COMPONENTS = {"two_deletion": (0, 2, 0), "two_substitution": (0, 0, 2), "deletion_substitution": (0, 1, 1)}


def verify_equivalence(codewords: Iterable[BitSeq]) -> VerifyReport:
    """Check: two-edit correcting <=> two-deletion, two-substitution and
    single-deletion single-substitution correcting.  A refutation here is a
    bug in the harness, not a property of the code."""
    t0 = time.perf_counter()
    words = _prepare(codewords)
    parts = {name: verify_correcting(words, b).certified for name, b in COMPONENTS.items()}
    edit = verify_edit_correcting(words, 2).certified
    holds = edit == all(parts.values())
    return VerifyReport(
        "two_edit_equivalence", {}, CERTIFIED if holds else REFUTED,
        None if holds else {"codewords": words, "two_edit": edit, **parts},
        {"codewords": len(words), "two_edit": edit, **parts},
        _ms_since(t0),
    )


# -- lemma suite --------------------------------------------------------------

LEMMAS = ("indel_equivalence", "ds_is_equivalence", "mixed_implication", "two_edit_equivalence")


def _observations(n: int) -> Optional[dict]:
    """Weight changes of psi under one deletion, two adjacent deletions and one
    substitution; returns the first violation."""
    for x in all_words(n):
        w0 = weight(differential(x))
        for i in range(n):
            d = weight(differential(x[:i] + x[i + 1:])) - w0
            if d not in (0, -2):
                return {"lemma": "deletion_weight", "n": n, "x": x, "position": i + 1, "change": d}
            if i + 1 < n:
                d = weight(differential(x[:i] + x[i + 2:])) - w0
                if d not in (0, -2):
                    return {"lemma": "adjacent_deletions_weight", "n": n, "x": x, "position": i + 1, "change": d}
            flipped = x[:i] + ("1" if x[i] == "0" else "0") + x[i + 1:]
            d = weight(differential(flipped)) - w0
            if d not in (-2, 0, 2):
                return {"lemma": "substitution_weight", "n": n, "x": x, "position": i + 1, "change": d}
    return None


_BUDGETS = ((0, 2, 0), (2, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1), (0, 0, 2))
_BALL_CACHE: dict = {}


def _balls_for(n, ball):
    key = (n, ball)
    if key not in _BALL_CACHE:
        _BALL_CACHE.clear()
        _BALL_CACHE[key] = [{bt: frozenset(ball(x, *bt)) for bt in _BUDGETS} for x in all_words(n)]
    return _BALL_CACHE[key]


def _pair_chunk(args):
    """Check all pairs (i, j), lo <= i < hi, i < j; returns (pairs, first violation)."""
    n, lo, hi, ball = args
    balls = _balls_for(n, ball)
    words = list(all_words(n))
    pairs = 0
    for i in range(lo, hi):
        bx = balls[i]
        for j in range(i + 1, len(words)):
            by = balls[j]
            pairs += 1
            meet = {bt: not bx[bt].isdisjoint(by[bt]) for bt in _BUDGETS}
            found = None
            if meet[(0, 2, 0)] != (meet[(2, 0, 0)] or meet[(1, 1, 0)]):
                found = "indel_equivalence"
            elif meet[(0, 1, 1)] != meet[(1, 0, 1)]:
                found = "ds_is_equivalence"
            elif ((not bx[(0, 0, 2)].isdisjoint(by[(1, 1, 0)]) or not by[(0, 0, 2)].isdisjoint(bx[(1, 1, 0)]))
                  and not meet[(0, 1, 1)]):
                found = "mixed_implication"
            else:
                edit = any(meet.values())
                if edit != (meet[(0, 2, 0)] or meet[(0, 0, 2)] or meet[(0, 1, 1)]):
                    found = "two_edit_equivalence"
            if found:
                return pairs, {"lemma": found, "n": n, "x": words[i], "y": words[j],
                               "intersects": {f"{a},{b},{c}": v for (a, b, c), v in meet.items()}}
    return pairs, None


def verify_lemma_suite(n_max: int, ball: Callable = ball_set, jobs: int = 1) -> VerifyReport:
    """Exhaustive pairwise ball lemmas and the differential weight observations
    for every length 1..n_max.  ``ball(x, t1, t2, t3)`` is injectable so a
    deliberately broken generator can be shown to be caught."""
    t0 = time.perf_counter()
    if not 1 <= n_max <= 10:
        raise ValueError("n_max must lie in [1, 10]")
    witness = None
    pairs = 0
    words = 0
    for n in range(1, n_max + 1):
        words += 1 << n
        witness = _observations(n)
        if witness:
            break
        if n < 2:
            continue
        total = 1 << n
        if jobs > 1 and n >= 7:
            step = max(1, total // (jobs * 8))
            tasks = [(n, lo, min(total, lo + step), ball) for lo in range(0, total, step)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_pair_chunk, tasks))
        else:
            results = [_pair_chunk((n, 0, total, ball))]
        for p, w in results:
            pairs += p
            if w and witness is None:
                witness = w
        if witness:
            break
    return VerifyReport(
        "lemma_suite", {"n_max": n_max, "lemmas": list(LEMMAS) + ["weight_observations"]},
        REFUTED if witness else CERTIFIED, witness, {"words": words, "pairs": pairs}, _ms_since(t0),
    )


# -- class sweeps ---------------------------------------------------------------

def check_words(words: list[str], check: tuple) -> VerifyReport:
    """Dispatch a check described as a picklable tuple."""
    kind = check[0]
    if kind == "correcting":
        return verify_correcting(words, check[1])
    if kind == "edit":
        return verify_edit_correcting(words, check[1])
    if kind == "list":
        return verify_list(words, check[1], check[2])
    if kind == "edit_list":
        return verify_edit_list(words, check[1], check[2])
    if kind == "p_bounded":
        return verify_p_bounded(words, check[1], check[2], *check[3:])
    if kind == "equivalence":
        return verify_equivalence(words)
    raise ValueError(f"unknown check {kind!r}")


def _class_chunk(args):
    items, check = args
    out = []
    for key, words in items:
        rep = check_words(words, check)
        out.append((key, rep.verdict, rep.witness, rep.counts))
    return out


def verify_classes(spec: CodeSpec, check: tuple, jobs: int = 1) -> VerifyReport:
    """Run ``check`` on every non-empty class of the construction."""
    t0 = time.perf_counter()
    classes = [(s.residues, words) for s, words in class_specs(spec, jobs=jobs)]
    if jobs > 1 and len(classes) > 1:
        size = max(1, len(classes) // (jobs * 4))
        tasks = [(classes[i:i + size], check) for i in range(0, len(classes), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for part in pool.map(_class_chunk, tasks) for r in part]
    else:
        results = _class_chunk((classes, check))
    refuted = [(key, w) for key, verdict, w, _ in results if verdict == REFUTED]
    largest = max((len(words) for _, words in classes), default=0)
    witness = None
    if refuted:
        witness = {"residues": refuted[0][0], **refuted[0][1]}
    return VerifyReport(
        f"classes:{check[0]}", {**spec.params(), "check": [str(c) for c in check]},
        REFUTED if refuted else CERTIFIED, witness,
        {"classes": len(classes), "refuted_classes": len(refuted), "largest_class": largest,
         "codewords": sum(len(w) for _, w in classes)},
        _ms_since(t0),
    )
