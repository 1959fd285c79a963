"""Binary sequences and the deterministic transforms built on them.

A sequence is carried as a plain ``str`` over ``'0'``/``'1'`` with ``x_1``
first.  Strings hash, compare lexicographically, index in O(1) and count
ones over a range with ``str.count``, which is all the ball and syndrome
machinery needs.  Positions in docstrings are 1-based to match the usual
coding-theory notation; Python indexing stays 0-based.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence, Union

BitSeq = str
IntSeq = tuple

_FLIP = str.maketrans("01", "10")
_BITS = frozenset("01")


class BitSeqParseError(ValueError):
    """Bad character in a bitstring; ``line``/``column`` are 1-based."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def as_bitseq(x: Union[str, Sequence[int], Iterable[int]]) -> BitSeq:
    """Coerce ``x`` to a validated bitstring.

    Accepts a ``'0'``/``'1'`` string or any iterable of 0/1 integers.
    """
    if isinstance(x, str):
        if not _BITS.issuperset(x):
            for col, ch in enumerate(x, 1):
                if ch not in _BITS:
                    raise BitSeqParseError(f"invalid symbol {ch!r}", 1, col)
        return x
    out = []
    for col, b in enumerate(x, 1):
        if b not in (0, 1):
            raise BitSeqParseError(f"invalid symbol {b!r}", 1, col)
        out.append("1" if b else "0")
    return "".join(out)


def parse_lines(lines: Iterable[str]) -> list[BitSeq]:
    """Parse newline-delimited bitstrings; blank lines are skipped."""
    words = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        for col, ch in enumerate(line, 1):
            if ch not in _BITS:
                raise BitSeqParseError(f"invalid symbol {ch!r}", lineno, col)
        words.append(line)
    return words


def read_words(path) -> list[BitSeq]:
    with open(path, encoding="ascii", errors="replace") as fh:
        return parse_lines(fh)


def to_bits(x: BitSeq) -> list[int]:
    return [1 if c == "1" else 0 for c in x]


def weight(x: BitSeq) -> int:
    return x.count("1")


def all_words(n: int) -> Iterator[BitSeq]:
    """All of Σ^n in lexicographic order."""
    if n == 0:
        yield ""
        return
    fmt = f"0{n}b"
    for v in range(1 << n):
        yield format(v, fmt)


def complement(x: BitSeq) -> BitSeq:
    return x.translate(_FLIP)


def reverse(x: BitSeq) -> BitSeq:
    return x[::-1]


def flip(x: BitSeq, *positions: int) -> BitSeq:
    """Flip the given 1-based positions (0 is ignored, meaning "no error")."""
    chars = list(x)
    for p in positions:
        if p:
            chars[p - 1] = "1" if chars[p - 1] == "0" else "0"
    return "".join(chars)


def differential(x: BitSeq) -> BitSeq:
    """psi(x) of length n+1 with x_0 = x_{n+1} = 0 padding."""
    padded = "0" + x + "0"
    return "".join("1" if padded[i] != padded[i - 1] else "0" for i in range(1, len(padded)))


def inverse_differential(p: BitSeq) -> BitSeq:
    """Invert :func:`differential`; ``p`` must have even weight."""
    if not p:
        raise ValueError("a differential sequence has length n+1 >= 1")
    if p.count("1") % 2:
        raise ValueError(f"{p!r} has odd weight and is not the differential of any sequence")
    out = []
    prev = 0
    for c in p[:-1]:
        prev ^= c == "1"
        out.append("1" if prev else "0")
    return "".join(out)


def run_sequence(x: BitSeq) -> tuple[int, ...]:
    """r^x of length n+1; r_1 = x_1 and each symbol change adds one (x_{n+1} = 0)."""
    if not x:
        raise ValueError("run sequence needs n >= 1")
    r = [1 if x[0] == "1" else 0]
    padded = x + "0"
    for i in range(1, len(padded)):
        r.append(r[-1] + (padded[i] != padded[i - 1]))
    return tuple(r)


def indicator(x: BitSeq, a: int | str, b: int | str) -> BitSeq:
    """The ab-indicator: position i is 1 iff x_i x_{i+1} = ab."""
    if len(x) < 2:
        raise ValueError("indicator sequence needs n >= 2")
    pair = f"{a}{b}"
    return "".join("1" if x[i:i + 2] == pair else "0" for i in range(len(x) - 1))


def block(x: BitSeq, P: int, i: int) -> BitSeq:
    """The i-th length-P block x^{(P,i)}; block n'+1 is the (possibly empty) tail.

    ``P`` larger than ``len(x)`` is allowed and gives n' = 0, so block 1 is
    the whole sequence.
    """
    if P < 1:
        raise ValueError("block length P must be positive")
    nblocks = len(x) // P
    if not 1 <= i <= nblocks + 1:
        raise ValueError(f"block index {i} outside [1, {nblocks + 1}]")
    if i <= nblocks:
        return x[(i - 1) * P:i * P]
    return x[nblocks * P:]


def blocks(x: BitSeq, P: int) -> list[BitSeq]:
    """Blocks 1..n'+1 in order; concatenating them gives back ``x``."""
    return [block(x, P, i) for i in range(1, len(x) // P + 2)]
