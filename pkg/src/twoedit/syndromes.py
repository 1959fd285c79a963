"""High-order VT syndromes and composed syndrome vectors."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, Union

from . import bitseq
from .bitseq import BitSeq

TRANSFORMS: dict[str, Callable] = {
    "identity": lambda x: x,
    "differential": bitseq.differential,
    "run": bitseq.run_sequence,
    "ind00": lambda x: bitseq.indicator(x, 0, 0),
    "ind01": lambda x: bitseq.indicator(x, 0, 1),
    "ind10": lambda x: bitseq.indicator(x, 1, 0),
    "ind11": lambda x: bitseq.indicator(x, 1, 1),
}


def vt_coefficient(i: int, k: int) -> int:
    """c_i^{(k)} = sum_{j<=i} j^{k-1}, and 1 for k = 0."""
    if i < 1:
        raise ValueError("coefficient index starts at 1")
    if k < 0:
        raise ValueError("order k must be non-negative")
    if k == 0:
        return 1
    if k == 1:
        return i
    if k == 2:
        return i * (i + 1) // 2
    if k == 3:
        return i * (i + 1) * (2 * i + 1) // 6
    return sum(j ** (k - 1) for j in range(1, i + 1))


@lru_cache(maxsize=None)
def coefficients(n: int, k: int) -> tuple[int, ...]:
    """(c_1^{(k)}, ..., c_n^{(k)})."""
    if k <= 3:
        return tuple(vt_coefficient(i, k) for i in range(1, n + 1))
    out, acc = [], 0
    for j in range(1, n + 1):
        acc += j ** (k - 1)
        out.append(acc)
    return tuple(out)


def vt(x: Union[BitSeq, Sequence[int]], k: int) -> int:
    """Unreduced k-th order VT syndrome.

    ``x`` is a bitstring or an integer sequence (run sequences are weighted
    the same way).
    """
    c = coefficients(len(x), k)
    if isinstance(x, str):
        if k == 0:
            return x.count("1")
        total = 0
        i = x.find("1")
        while i >= 0:
            total += c[i]
            i = x.find("1", i + 1)
        return total
    return sum(ci * xi for ci, xi in zip(c, x))


@dataclass(frozen=True)
class SyndromeSpec:
    transform: str = "identity"
    k: int = 0
    modulus: int = 1

    def __post_init__(self):
        if self.transform not in TRANSFORMS:
            raise ValueError(f"unknown transform {self.transform!r}; choose from {sorted(TRANSFORMS)}")
        if self.k < 0:
            raise ValueError("order k must be non-negative")
        if self.modulus < 1:
            raise ValueError("modulus must be positive")

    def residue(self, x: BitSeq) -> int:
        return vt(TRANSFORMS[self.transform](x), self.k) % self.modulus


def syndrome_vector(x: BitSeq, specs: Sequence[SyndromeSpec]) -> tuple[int, ...]:
    return tuple(s.residue(x) for s in specs)
