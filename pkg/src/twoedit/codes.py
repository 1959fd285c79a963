"""Code constructions as parameterised membership predicates.

Each construction is a list of congruences ``value(x) = residue (mod m)``
plus optional eligibility filters (balance of x and psi(x); exclusion of
the two constant words).  A residue assignment selects one class of the
partition of the eligible words; :meth:`CodeSpec.class_key` returns the
class a word falls in, which is how enumeration and statistics work.

Residue key names used in ``key=value`` specs:

========  ==============================================================
LEV       ``a`` (with ``m``, default 2n)
C2S       ``b0 b1 b2``            VT^(k)(x) mod 4n^k+1
CDS_L     ``b0 b1 b2``            VT^(0)(x) mod 4, VT^(k)(x) mod 2n^k
C2D_P     ``d1..d5 d1p..d5p``     indicator sums over odd / even block pairs
CDS_P     ``c1 c2 c3 c1p c2p c3p`` VT sums over odd / even block pairs
C2D       ``a0 a1`` (psi) ``b0 b1 b2`` (x) + C2D_P keys
CDS       ``a0 a1`` (x) ``b0 b1 b2`` (psi) + CDS_P keys
C2E       ``a0 a1 a2`` (x) ``b0 b1 b2`` (psi) + C2D_P and CDS_P keys
C2E_L     ``a0 a1 a2`` (x) ``b0 b1`` (psi) + C2D_P keys
========  ==============================================================
"""
from __future__ import annotations

import math
import warnings
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional

from .balance import BalanceParams, as_fraction, is_balanced_pair
from .bitseq import BitSeq, all_words, as_bitseq, blocks, differential, indicator
from .syndromes import vt

CONSTRUCTIONS = ("LEV", "C2D_P", "CDS_P", "C2S", "C2D", "CDS", "CDS_L", "C2E", "C2E_L")
BALANCED = frozenset({"C2D", "CDS", "C2E", "C2E_L"})
BOUNDARIES = ("inclusive", "strict")

DEFAULT_EPS = Fraction(1, 18)
ENUMERATE_LIMIT = 24
ENUMERATE_WARN = 20


def asymptotic_ell(n: int) -> int:
    """ceil(1296 log2 n), at least 1."""
    return max(1, math.ceil(1296 * math.log2(n))) if n > 1 else 1


def asymptotic_P(ell: int) -> int:
    return 6 * (ell + 3)


@dataclass(frozen=True)
class Condition:
    """``vt(source(x), k) = residue[key] (mod modulus)``.

    ``source`` is ``"x"``, ``"psi"`` or ``"pair:<odd|even>:<ind>"`` where
    ``ind`` is ``01``/``10`` for the indicator sequence of each block pair
    and ``-`` for the block pair itself.
    """

    key: str
    source: str
    k: int
    modulus: int

    @property
    def signature(self) -> tuple:
        return (self.source, self.k, self.modulus)


def _x_conditions(prefix, ks, modulus_of):
    return [Condition(f"{prefix}{k}", "x", k, modulus_of(k)) for k in ks]


def _psi_conditions(prefix, ks, modulus_of):
    return [Condition(f"{prefix}{k}", "psi", k, modulus_of(k)) for k in ks]


def bounded_2d_conditions(P: int) -> list[Condition]:
    out = []
    for parity, suffix in (("odd", ""), ("even", "p")):
        out += [
            Condition(f"d1{suffix}", f"pair:{parity}:01", 1, 4 * P),
            Condition(f"d2{suffix}", f"pair:{parity}:01", 2, 4 * P ** 2),
            Condition(f"d3{suffix}", f"pair:{parity}:01", 3, 8 * P ** 3),
            Condition(f"d4{suffix}", f"pair:{parity}:10", 0, 3),
            Condition(f"d5{suffix}", f"pair:{parity}:10", 2, 4 * P),
        ]
    return out


def bounded_ds_conditions(P: int) -> list[Condition]:
    out = []
    for parity, suffix in (("odd", ""), ("even", "p")):
        out += [Condition(f"c{k}{suffix}", f"pair:{parity}:-", k, 3 * (2 * P) ** k) for k in (1, 2, 3)]
    return out


def pairing_terms(x: BitSeq, P: int, parity: str, boundary: str = "inclusive") -> list[BitSeq]:
    """Concatenated block pairs x^{(P,t)} x^{(P,t+1)} for odd or even t.

    ``inclusive``: a term for every first index t <= n'+1, a missing second
    block counting as empty.  ``strict``: only terms whose second block
    exists (the tail block, possibly empty, counts as existing).
    """
    bl = blocks(x, P)
    last = len(bl)
    out = []
    for t in range(1 if parity == "odd" else 2, last + 1, 2):
        if t + 1 <= last:
            out.append(bl[t - 1] + bl[t])
        elif boundary == "inclusive":
            out.append(bl[t - 1])
    return out


def _ind(s: str, pattern: str) -> str:
    return indicator(s, pattern[0], pattern[1]) if len(s) >= 2 else ""


class _Evaluator:
    """Computes condition values for one word, sharing psi and block pairs."""

    __slots__ = ("x", "P", "boundary", "_psi", "_pairs")

    def __init__(self, x, P, boundary):
        self.x = x
        self.P = P
        self.boundary = boundary
        self._psi = None
        self._pairs = {}

    def value(self, c: Condition) -> int:
        if c.source == "x":
            return vt(self.x, c.k)
        if c.source == "psi":
            if self._psi is None:
                self._psi = differential(self.x)
            return vt(self._psi, c.k)
        _, parity, ind = c.source.split(":")
        terms = self._pairs.get(parity)
        if terms is None:
            terms = self._pairs[parity] = pairing_terms(self.x, self.P, parity, self.boundary)
        if ind == "-":
            return sum(vt(t, c.k) for t in terms)
        return sum(vt(_ind(t, ind), c.k) for t in terms)


@dataclass(frozen=True)
class CodeSpec:
    """A construction, its length, parameters and (optionally) a residue class."""

    code: str
    n: int
    residues: Optional[dict] = None
    ell: Optional[int] = None
    eps: Optional[Fraction] = None
    P: Optional[int] = None
    m: Optional[int] = None
    boundary: str = "inclusive"
    conditions: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        code = self.code.upper()
        if code not in CONSTRUCTIONS:
            raise ValueError(f"unknown construction {self.code!r}; choose from {', '.join(CONSTRUCTIONS)}")
        object.__setattr__(self, "code", code)
        n = self.n
        if n < 1:
            raise ValueError("code length n must be positive")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")
        if code in BALANCED:
            ell = self.ell if self.ell is not None else asymptotic_ell(n)
            eps = as_fraction(self.eps) if self.eps is not None else DEFAULT_EPS
            BalanceParams(ell, eps)
            object.__setattr__(self, "ell", ell)
            object.__setattr__(self, "eps", eps)
            if self.P is None:
                object.__setattr__(self, "P", asymptotic_P(ell))
        elif self.ell is not None or self.eps is not None:
            raise ValueError(f"{code} takes no balance parameters")
        if code in ("C2D_P", "CDS_P"):
            if self.P is None:
                raise ValueError(f"{code} needs the block length P")
            if self.P > n or (code == "C2D_P" and self.P == n):
                rel = "P < n" if code == "C2D_P" else "P <= n"
                raise ValueError(f"{code} needs {rel} (got P={self.P}, n={n})")
        if code in ("C2D_P", "CDS_P") or code in BALANCED:
            if self.P < 1:
                raise ValueError("block length P must be positive")
        elif self.P is not None:
            raise ValueError(f"{code} takes no block length P")
        if code == "LEV":
            m = self.m if self.m is not None else 2 * n
            if m < 2 * n:
                raise ValueError(f"LEV needs modulus m >= 2n = {2 * n} (got {m})")
            object.__setattr__(self, "m", m)
        elif self.m is not None:
            raise ValueError(f"{code} takes no modulus m")
        object.__setattr__(self, "conditions", tuple(_build_conditions(self)))
        if self.residues is not None:
            object.__setattr__(self, "residues", self._checked_residues(self.residues))

    # -- parameters ---------------------------------------------------------

    def _checked_residues(self, residues: dict) -> dict:
        keys = [c.key for c in self.conditions]
        unknown = sorted(set(residues) - set(keys))
        if unknown:
            raise ValueError(f"{self.code} has no residue(s) {', '.join(unknown)}")
        missing = [k for k in keys if k not in residues]
        if missing:
            raise ValueError(f"{self.code} is missing residue(s) {', '.join(missing)}")
        out = {}
        for c in self.conditions:
            r = int(residues[c.key])
            if not 0 <= r < c.modulus:
                raise ValueError(f"residue {c.key}={r} outside [0, {c.modulus})")
            out[c.key] = r
        return out

    @property
    def mode(self) -> str:
        """``asymptotic`` when the balance and block parameters are the ones that
        guarantee correctness for large n, else ``relaxed``.  Constructions
        without balance parameters are ``exact``."""
        if self.code not in BALANCED:
            return "exact"
        ell0 = asymptotic_ell(self.n)
        if self.ell != ell0 or self.eps != DEFAULT_EPS:
            return "relaxed"
        P0 = asymptotic_P(ell0)
        ok = self.P >= P0 if self.code == "C2D" else self.P == P0
        return "asymptotic" if ok else "relaxed"

    @property
    def balanced(self) -> bool:
        return self.code in BALANCED

    def with_residues(self, residues: dict) -> "CodeSpec":
        return replace(self, residues=dict(residues))

    def anchored(self, x: BitSeq) -> "CodeSpec":
        """The class containing ``x`` (residues set to x's own syndromes)."""
        x = as_bitseq(x)
        self._check_length(x)
        return self.with_residues(dict(zip((c.key for c in self.conditions), self.class_key(x))))

    def moduli(self) -> dict:
        return {c.key: c.modulus for c in self.conditions}

    def class_count(self) -> int:
        return math.prod(c.modulus for c in self.conditions)

    # -- evaluation ---------------------------------------------------------

    def _check_length(self, x):
        if len(x) != self.n:
            raise ValueError(f"expected a length-{self.n} word, got length {len(x)}")

    def eligible(self, x: BitSeq) -> bool:
        if self.code == "CDS_L" and x.count(x[0]) == len(x):
            return False
        if self.code in BALANCED:
            return is_balanced_pair(x, self.ell, self.eps)
        return True

    def class_key(self, x: BitSeq) -> tuple:
        ev = _Evaluator(x, self.P, self.boundary)
        return tuple(ev.value(c) % c.modulus for c in self.conditions)

    def member(self, x: BitSeq) -> bool:
        if self.residues is None:
            raise ValueError("membership needs a residue assignment")
        if len(x) != self.n:
            return False
        ev = _Evaluator(x, self.P, self.boundary)
        res = self.residues
        for c in self.conditions:
            if ev.value(c) % c.modulus != res[c.key]:
                return False
        return self.eligible(x)

    __call__ = member

    def breakdown(self, x: BitSeq) -> list[dict]:
        """Per-condition verdicts for reporting."""
        x = as_bitseq(x)
        self._check_length(x)
        ev = _Evaluator(x, self.P, self.boundary)
        rows = []
        if self.code == "CDS_L":
            rows.append({"condition": "non-constant", "ok": self.eligible(x)})
        if self.code in BALANCED:
            rows.append({"condition": f"balanced(ell={self.ell}, eps={self.eps})", "ok": self.eligible(x)})
        for c in self.conditions:
            v = ev.value(c) % c.modulus
            want = None if self.residues is None else self.residues[c.key]
            rows.append({
                "condition": f"{c.key}: VT{c.k}[{c.source}] mod {c.modulus}",
                "value": v,
                "residue": want,
                "ok": want is None or v == want,
            })
        return rows

    # -- serialisation ------------------------------------------------------

    def params(self) -> dict:
        out = {"code": self.code, "n": self.n}
        if self.code == "LEV":
            out["m"] = self.m
        if self.code in BALANCED:
            out["ell"] = self.ell
            out["eps"] = str(self.eps)
        if self.P is not None:
            out["P"] = self.P
            out["boundary"] = self.boundary
        return out

    def to_dict(self) -> dict:
        out = self.params()
        if self.code in BALANCED:
            out["mode"] = self.mode
        if self.residues is not None:
            out.update(self.residues)
        return out

    def __str__(self):
        return " ".join(f"{k}={v}" for k, v in self.to_dict().items() if k != "mode")

    @classmethod
    def from_pairs(cls, pairs: dict) -> "CodeSpec":
        """Build from a ``key -> str`` mapping (as parsed from ``key=value``)."""
        pairs = dict(pairs)
        try:
            code = pairs.pop("code")
            n = int(pairs.pop("n"))
        except KeyError as exc:
            raise ValueError(f"code spec needs {exc.args[0]}=") from None
        kw = {}
        for name, conv in (("ell", int), ("P", int), ("m", int), ("eps", Fraction), ("boundary", str)):
            if name in pairs:
                kw[name] = conv(pairs.pop(name))
        pairs.pop("mode", None)
        residues = {k: int(v) for k, v in pairs.items()} if pairs else None
        return cls(code, n, residues, **kw)

    @classmethod
    def parse(cls, text: str | Iterable[str]) -> "CodeSpec":
        tokens = text.split() if isinstance(text, str) else list(text)
        return cls.from_pairs(parse_pairs(tokens))


def parse_pairs(tokens: Iterable[str]) -> dict:
    out = {}
    for tok in tokens:
        for part in tok.split():
            if "=" not in part:
                raise ValueError(f"expected key=value, got {part!r}")
            k, v = part.split("=", 1)
            if k in out:
                raise ValueError(f"duplicate key {k!r}")
            out[k] = v
    return out


def _build_conditions(spec: CodeSpec) -> list[Condition]:
    n, code = spec.n, spec.code
    if code == "LEV":
        return [Condition("a", "x", 1, spec.m)]
    if code == "C2S":
        return _x_conditions("b", (0, 1, 2), lambda k: 4 * n ** k + 1)
    if code == "CDS_L":
        return _x_conditions("b", (0, 1, 2), lambda k: 4 if k == 0 else 2 * n ** k)
    if code == "C2D_P":
        return bounded_2d_conditions(spec.P)
    if code == "CDS_P":
        return bounded_ds_conditions(spec.P)
    if code == "C2D":
        return (_x_conditions("b", (0, 1, 2), lambda k: 2 * n ** k + 1)
                + _psi_conditions("a", (0, 1), lambda k: 4 * (n + 1) ** k + 1)
                + bounded_2d_conditions(spec.P))
    if code == "CDS":
        return (_x_conditions("a", (0, 1), lambda k: 3 * n ** k + 1)
                + _psi_conditions("b", (0, 1, 2), lambda k: 6 * (n + 1) ** k + 1)
                + bounded_ds_conditions(spec.P))
    if code == "C2E":
        return (_x_conditions("a", (0, 1, 2), lambda k: 4 * n ** k + 1)
                + _psi_conditions("b", (0, 1, 2), lambda k: 6 * (n + 1) ** k + 1)
                + bounded_2d_conditions(spec.P)
                + bounded_ds_conditions(spec.P))
    if code == "C2E_L":
        return (_x_conditions("a", (0, 1, 2), lambda k: 4 * n ** k + 1)
                + _psi_conditions("b", (0, 1), lambda k: 4 * (n + 1) ** k + 1)
                + bounded_2d_conditions(spec.P))
    raise AssertionError(code)


# -- convenience predicates ---------------------------------------------------

def lev_member(x: BitSeq, m: int, a: int) -> bool:
    return CodeSpec("LEV", len(x), {"a": a}, m=m).member(x)


def c2s_member(x: BitSeq, b0: int, b1: int, b2: int) -> bool:
    return CodeSpec("C2S", len(x), {"b0": b0, "b1": b1, "b2": b2}).member(x)


def cds_list_member(x: BitSeq, b0: int, b1: int, b2: int) -> bool:
    return CodeSpec("CDS_L", len(x), {"b0": b0, "b1": b1, "b2": b2}).member(x)


def c2d_bounded_member(x: BitSeq, P: int, boundary: str = "inclusive", **residues) -> bool:
    return CodeSpec("C2D_P", len(x), residues, P=P, boundary=boundary).member(x)


def cds_bounded_member(x: BitSeq, P: int, boundary: str = "inclusive", **residues) -> bool:
    return CodeSpec("CDS_P", len(x), residues, P=P, boundary=boundary).member(x)


def _balanced_member(code, x, ell, eps, P, boundary, residues):
    return CodeSpec(code, len(x), residues, ell=ell, eps=eps, P=P, boundary=boundary).member(x)


def c2d_member(x, ell=None, eps=None, P=None, boundary="inclusive", **residues) -> bool:
    return _balanced_member("C2D", x, ell, eps, P, boundary, residues)


def cds_member(x, ell=None, eps=None, P=None, boundary="inclusive", **residues) -> bool:
    return _balanced_member("CDS", x, ell, eps, P, boundary, residues)


def c2e_member(x, ell=None, eps=None, P=None, boundary="inclusive", **residues) -> bool:
    return _balanced_member("C2E", x, ell, eps, P, boundary, residues)


def c2e_list_member(x, ell=None, eps=None, P=None, boundary="inclusive", **residues) -> bool:
    return _balanced_member("C2E_L", x, ell, eps, P, boundary, residues)


# -- enumeration and partitions ---------------------------------------------

def _word_range(n, lo, hi):
    fmt = f"0{n}b"
    return [format(v, fmt) for v in range(lo, hi)]


def _enumerate_chunk(args):
    spec, lo, hi = args
    return [w for w in _word_range(spec.n, lo, hi) if spec.member(w)]


def _chunks(n: int, jobs: int):
    total = 1 << n
    step = max(1, -(-total // (jobs * 4)))
    return [(lo, min(total, lo + step)) for lo in range(0, total, step)]


def _check_limit(n: int, limit: int):
    if n > limit:
        raise ValueError(f"n = {n} exceeds the exhaustive limit {limit}")
    if n > ENUMERATE_WARN:
        warnings.warn(f"exhaustive sweep over 2^{n} words", RuntimeWarning, stacklevel=3)


def enumerate_code(spec: CodeSpec, jobs: int = 1, limit: int = ENUMERATE_LIMIT) -> list[BitSeq]:
    """All members of the class, lexicographic order."""
    _check_limit(spec.n, limit)
    if spec.residues is None:
        raise ValueError("enumeration needs a residue assignment")
    if jobs <= 1:
        return [w for w in all_words(spec.n) if spec.member(w)]
    tasks = [(spec, lo, hi) for lo, hi in _chunks(spec.n, jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return [w for part in pool.map(_enumerate_chunk, tasks) for w in part]


def _partition_chunk(args):
    spec, lo, hi = args
    out = defaultdict(list)
    for w in _word_range(spec.n, lo, hi):
        if spec.eligible(w):
            out[spec.class_key(w)].append(w)
    return dict(out)


def partition(spec: CodeSpec, jobs: int = 1, limit: int = ENUMERATE_LIMIT) -> dict[tuple, list[BitSeq]]:
    """Eligible words of length n grouped by class key (residues in condition order)."""
    _check_limit(spec.n, limit)
    spec = replace(spec, residues=None)
    if jobs <= 1:
        return _partition_chunk((spec, 0, 1 << spec.n))
    merged = defaultdict(list)
    tasks = [(spec, lo, hi) for lo, hi in _chunks(spec.n, jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_partition_chunk, tasks):
            for key, words in part.items():
                merged[key].extend(words)
    return dict(merged)


def class_specs(spec: CodeSpec, jobs: int = 1) -> list[tuple[CodeSpec, list[BitSeq]]]:
    """Every non-empty class as (spec with residues, members), by key order."""
    keys = [c.key for c in spec.conditions]
    parts = partition(spec, jobs=jobs)
    return [(spec.with_residues(dict(zip(keys, key))), parts[key]) for key in sorted(parts)]


# asymptotic redundancy statements, reported next to desk-scale numbers
ASYMPTOTIC_TARGETS = {
    "C2D": "4 log n + O(log log n)",
    "CDS": "4 log n + 12 log log n + O(1)",
    "C2E": "6 log n + O(log log n)",
    "C2E_L": "4 log n + O(log log n)",
}


def partition_stats(spec: CodeSpec, jobs: int = 1, limit: int = ENUMERATE_LIMIT) -> dict:
    """Class-size histogram over all residue tuples and the best-class redundancy."""
    parts = partition(spec, jobs=jobs, limit=limit)
    sizes = Counter(len(v) for v in parts.values())
    total = spec.class_count()
    sizes[0] = total - len(parts)
    eligible = sum(len(v) for v in parts.values())
    best = max(parts, key=lambda k: (len(parts[k]), [-v for v in k])) if parts else None
    max_size = len(parts[best]) if best is not None else 0
    n = spec.n
    out = {
        "classes": total,
        "nonempty_classes": len(parts),
        "eligible": eligible,
        "max_size": max_size,
        "redundancy_bits": n - math.log2(max_size) if max_size else None,
        "histogram": {str(k): sizes[k] for k in sorted(sizes)},
        "best_residues": dict(zip((c.key for c in spec.conditions), best)) if best is not None else None,
    }
    if spec.code in ASYMPTOTIC_TARGETS:
        log_n = math.log2(n)
        out["asymptotic_target"] = ASYMPTOTIC_TARGETS[spec.code]
        lead = 6 if spec.code == "C2E" else 4
        out["leading_term_bits"] = lead * log_n
    return out
