"""Decoders: an explicit two-substitution syndrome decoder, ball-search
decoders for any budget, and the length-dispatched two-edit decoders."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Callable, Optional

from .balls import ChannelBudget, budget, mixed_ball
from .bitseq import BitSeq, flip
from .codes import CodeSpec
from .syndromes import vt

UNIQUE, LIST, NONE, AMBIGUOUS = "unique", "list", "none", "ambiguous"


@dataclass(frozen=True)
class DecodeOutcome:
    """``kind`` is unique, list, none or ambiguous; candidates are sorted."""

    kind: str
    candidates: tuple = ()
    info: dict = field(default_factory=dict)

    @property
    def codeword(self) -> Optional[BitSeq]:
        return self.candidates[0] if self.kind == UNIQUE else None

    def __contains__(self, x):
        return x in self.candidates

    def to_dict(self) -> dict:
        return {"kind": self.kind, "candidates": list(self.candidates), **self.info}


def _outcome(candidates, list_size=1, **info) -> DecodeOutcome:
    cands = tuple(sorted(set(candidates)))
    if not cands:
        kind = NONE
    elif list_size > 1:
        kind = LIST if len(cands) <= list_size else AMBIGUOUS
    else:
        kind = UNIQUE if len(cands) == 1 else AMBIGUOUS
    return DecodeOutcome(kind, cands, info)


# -- two substitutions ------------------------------------------------------

def _lift(r: int, modulus: int) -> int:
    """Centre a residue of an odd modulus 2h+1 into [-h, h]."""
    r %= modulus
    return r - modulus if r > modulus // 2 else r


def substitution_deltas(z: BitSeq, b0: int, b1: int, b2: int) -> tuple[int, int, int]:
    """(D0, D1, D2) with D0 = sum s_p, D1 = sum p s_p, D2 = sum p^2 s_p over
    the flipped positions p, where s_p = +1 for a 0 -> 1 repair."""
    n = len(z)
    d = [_lift(b - vt(z, k), 4 * n ** k + 1) for k, b in enumerate((b0, b1, b2))]
    return d[0], d[1], 2 * d[2] - d[1]


def _split(total: int, diff: int) -> Optional[tuple[int, int]]:
    """(p, q) with p + q = total and p - q = diff, if integral."""
    if (total + diff) % 2:
        return None
    return (total + diff) // 2, (total - diff) // 2


def _two_same_sign(d1: int, d2: int) -> Optional[tuple[int, int]]:
    """i < j with i + j = d1 and i^2 + j^2 = d2."""
    disc = 2 * d2 - d1 * d1
    if disc <= 0:
        return None
    root = isqrt(disc)
    if root * root != disc:
        return None
    pair = _split(d1, root)
    return None if pair is None else (pair[1], pair[0])


def _flip_positions(z: str, d0: int, d1: int, d2: int) -> Optional[tuple[int, ...]]:
    n = len(z)

    def ok(p, symbol):
        return 1 <= p <= n and z[p - 1] == symbol

    if d0 == 2:
        pair = _two_same_sign(d1, d2)
        if pair and ok(pair[0], "0") and ok(pair[1], "0"):
            return pair
    elif d0 == -2:
        pair = _two_same_sign(-d1, -d2)
        if pair and ok(pair[0], "1") and ok(pair[1], "1"):
            return pair
    elif d0 == 1:
        if d2 == d1 * d1 and ok(d1, "0"):
            return (d1,)
    elif d0 == -1:
        if d2 == -d1 * d1 and ok(-d1, "1"):
            return (-d1,)
    elif d0 == 0:
        if d1 == 0:
            return () if d2 == 0 else None
        if d2 % d1:
            return None
        # p repaired 0 -> 1, q repaired 1 -> 0: p - q = d1, p + q = d2 / d1
        pq = _split(d2 // d1, d1)
        if pq and ok(pq[0], "0") and ok(pq[1], "1"):
            return tuple(sorted(pq))
    return None


def decode_two_substitutions(z: BitSeq, n: int, b0: int, b1: int, b2: int) -> DecodeOutcome:
    """Recover x from z = x with up to two flips, given x's three VT residues
    modulo 4n^k+1.  Out-of-model words give ``none``."""
    if len(z) != n:
        raise ValueError(f"received word has length {len(z)}, expected {n}")
    d = substitution_deltas(z, b0, b1, b2)
    positions = _flip_positions(z, *d)
    info = {"deltas": list(d)}
    if positions is None:
        return DecodeOutcome(NONE, (), info)
    x = flip(z, *positions)
    if any(vt(x, k) % (4 * n ** k + 1) != b % (4 * n ** k + 1) for k, b in enumerate((b0, b1, b2))):
        return DecodeOutcome(NONE, (), info)
    info["positions"] = list(positions)
    return DecodeOutcome(UNIQUE, (x,), info)


def c2s_residues(spec: CodeSpec) -> Optional[tuple[int, int, int]]:
    """The residues of VT^(k)(x) mod 4n^k+1 (k = 0, 1, 2) if the spec fixes them."""
    if spec.residues is None:
        return None
    want = {(k, 4 * spec.n ** k + 1): None for k in range(3)}
    for c in spec.conditions:
        if c.source == "x" and (c.k, c.modulus) in want:
            want[(c.k, c.modulus)] = spec.residues[c.key]
    vals = tuple(want.values())
    return None if None in vals else vals


# -- search -------------------------------------------------------------------

def decode_by_search(z: BitSeq, n: int, b, member: Callable[[BitSeq], bool],
                     list_size: int = 1) -> DecodeOutcome:
    """Every length-n x with member(x) and z in B_b(x), found by walking the
    inverse ball of z."""
    b = budget(b)
    if len(z) != n + b.t1 - b.t2:
        raise ValueError(f"received length {len(z)} does not match n + t1 - t2 = {n + b.t1 - b.t2}")
    found = [w for w in mixed_ball(z, b.inverse()) if len(w) == n and member(w)]
    return _outcome(found, list_size, channel=str(b))


# -- two edits ----------------------------------------------------------------

_BY_OFFSET = {-2: (0, 2, 0), 2: (2, 0, 0), -1: (0, 1, 1), 1: (1, 0, 1)}


def _check_length(y, n):
    if abs(len(y) - n) > 2:
        raise ValueError(f"received length {len(y)} is outside [n-2, n+2] = [{n - 2}, {n + 2}]")


def _substitution_stage(y: BitSeq, spec: CodeSpec, list_size: int) -> DecodeOutcome:
    res = c2s_residues(spec)
    if res is None:
        return decode_by_search(y, spec.n, (0, 0, 2), spec, list_size)
    out = decode_two_substitutions(y, spec.n, *res)
    if out.kind == UNIQUE and not spec.member(out.codeword):
        return DecodeOutcome(NONE, (), out.info)
    return out


def decode_two_edit(y: BitSeq, spec: CodeSpec) -> DecodeOutcome:
    """Decode up to two edits, choosing the error pattern from |y| alone.

    At |y| = n the single-insertion single-deletion search runs first and
    the two-substitution stage only when it finds nothing.
    """
    n = spec.n
    _check_length(y, n)
    off = len(y) - n
    if off:
        out = decode_by_search(y, n, _BY_OFFSET[off], spec)
        out.info["stage"] = str(budget(_BY_OFFSET[off]))
        return out
    out = decode_by_search(y, n, (1, 1, 0), spec)
    if out.kind != NONE:
        out.info["stage"] = "1,1,0"
        return out
    out = _substitution_stage(y, spec, 1)
    out.info["stage"] = "0,0,2"
    return out


def list_decode_two_edit(y: BitSeq, spec: CodeSpec, list_size: int = 2) -> DecodeOutcome:
    """List-decode up to two edits.  At |y| = n both stages run and their
    results are merged."""
    n = spec.n
    _check_length(y, n)
    off = len(y) - n
    if off:
        out = decode_by_search(y, n, _BY_OFFSET[off], spec, list_size)
        out.info["stage"] = str(budget(_BY_OFFSET[off]))
        return out
    first = decode_by_search(y, n, (1, 1, 0), spec, list_size)
    second = _substitution_stage(y, spec, list_size)
    return _outcome(first.candidates + second.candidates, list_size, stage="1,1,0+0,0,2")


def decode_single_edit(y: BitSeq, spec: CodeSpec) -> DecodeOutcome:
    """Up to one edit, by |y|: deletion, insertion or at most one substitution."""
    n = spec.n
    off = len(y) - n
    if abs(off) > 1:
        raise ValueError(f"received length {len(y)} is outside [n-1, n+1]")
    b = {-1: (0, 1, 0), 0: (0, 0, 1), 1: (1, 0, 0)}[off]
    return decode_by_search(y, n, b, spec)


__all__ = [
    "DecodeOutcome", "UNIQUE", "LIST", "NONE", "AMBIGUOUS", "ChannelBudget",
    "substitution_deltas", "decode_two_substitutions", "c2s_residues", "decode_by_search",
    "decode_two_edit", "list_decode_two_edit", "decode_single_edit",
]
