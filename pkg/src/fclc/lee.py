"""Arithmetic over Z_q and the Lee metric."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DEFAULT_CAP, CapExceededError, DomainError, ShapeError


@dataclass(frozen=True)
class ZqVector:
    """A vector over Z_q. Symbols are reduced to canonical residues on construction."""

    q: int
    symbols: tuple[int, ...]

    def __init__(self, q: int, symbols: Iterable[int]):
        if q < 2:
            raise DomainError(f"modulus must be >= 2, got {q}")
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "symbols", tuple(int(s) % q for s in symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __add__(self, other: ZqVector) -> ZqVector:
        _check_pair(self, other)
        return ZqVector(self.q, (a + b for a, b in zip(self.symbols, other.symbols)))

    def __sub__(self, other: ZqVector) -> ZqVector:
        _check_pair(self, other)
        return ZqVector(self.q, (a - b for a, b in zip(self.symbols, other.symbols)))

    def concat(self, other: ZqVector) -> ZqVector:
        if self.q != other.q:
            raise ShapeError(f"modulus mismatch: {self.q} vs {other.q}")
        return ZqVector(self.q, self.symbols + other.symbols)

    @classmethod
    def zeros(cls, q: int, n: int) -> ZqVector:
        return cls(q, (0,) * n)

    @classmethod
    def parse(cls, q: int, text: str) -> ZqVector:
        """Parse ``"0,4,3"`` (or ``"043"`` when every symbol is a single digit)."""
        text = text.strip()
        if not text:
            return cls(q, ())
        parts = text.split(",") if "," in text else list(text)
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise DomainError(f"cannot parse vector {text!r}") from None
        for v in vals:
            if not 0 <= v < q:
                raise DomainError(f"symbol {v} out of range for q={q}")
        return cls(q, vals)

    def __str__(self) -> str:
        return ",".join(map(str, self.symbols))


def _check_pair(v: ZqVector, w: ZqVector) -> None:
    if v.q != w.q:
        raise ShapeError(f"modulus mismatch: {v.q} vs {w.q}")
    if len(v) != len(w):
        raise ShapeError(f"length mismatch: {len(v)} vs {len(w)}")


@lru_cache(maxsize=None)
def symbol_weights(q: int) -> tuple[int, ...]:
    """Lee weight of every residue of Z_q, indexed by residue."""
    return tuple(min(x, q - x) for x in range(q))


@lru_cache(maxsize=None)
def symbol_distance_table(q: int) -> tuple[tuple[int, ...], ...]:
    w = symbol_weights(q)
    return tuple(tuple(w[(a - b) % q] for b in range(q)) for a in range(q))


def lee_symbol_weight(x: int, q: int) -> int:
    if q < 2:
        raise DomainError(f"modulus must be >= 2, got {q}")
    if not 0 <= x < q:
        raise DomainError(f"symbol {x} out of range for q={q}")
    return min(x, q - x)


def lee_weight(v: ZqVector) -> int:
    w = symbol_weights(v.q)
    return sum(w[s] for s in v.symbols)


def lee_distance(v: ZqVector, w: ZqVector) -> int:
    _check_pair(v, w)
    return _lee_dist(v.symbols, w.symbols, v.q)


def hamming_distance(v: ZqVector, w: ZqVector) -> int:
    _check_pair(v, w)
    return sum(a != b for a, b in zip(v.symbols, w.symbols))


def _lee_dist(a: Sequence[int], b: Sequence[int], q: int) -> int:
    # hot path: raw residue tuples, no validation
    w = symbol_weights(q)
    return sum(w[(x - y) % q] for x, y in zip(a, b))


def _tuple_weight(a: Sequence[int], q: int) -> int:
    w = symbol_weights(q)
    return sum(w[x] for x in a)


def lee_sphere_volume(n: int, t: int, q: int) -> int:
    """Number of vectors of Z_q^n within Lee distance ``t`` of a fixed center.

    Uses ``sum_i C(n,i) 2^i C(t,i)`` while ``t <= (q-1)/2``; beyond that the
    per-coordinate weight enumerator is convolved exactly.
    """
    if n < 0 or q < 2:
        raise DomainError(f"invalid parameters n={n}, q={q}")
    if t < 0:
        return 0
    if 2 * t <= q - 1:
        return sum(math.comb(n, i) * 2**i * math.comb(t, i) for i in range(min(n, t) + 1))
    return sum(lee_weight_enumerator(n, q)[: t + 1])


@lru_cache(maxsize=None)
def lee_weight_enumerator(n: int, q: int) -> tuple[int, ...]:
    """Counts of vectors in Z_q^n by Lee weight, index = weight."""
    per_symbol = [0] * (q // 2 + 1)
    for x in range(q):
        per_symbol[min(x, q - x)] += 1
    counts = [1]
    for _ in range(n):
        nxt = [0] * (len(counts) + len(per_symbol) - 1)
        for i, a in enumerate(counts):
            for j, b in enumerate(per_symbol):
                nxt[i + j] += a * b
        counts = nxt
    return tuple(counts)


def symbol_distance_sum(q: int) -> int:
    """Sum of Lee distances from any symbol to all of Z_q."""
    if q < 2:
        raise DomainError(f"modulus must be >= 2, got {q}")
    return q * q // 4 if q % 2 == 0 else (q * q - 1) // 4


def multiset_pairwise_distance_sum(m: Iterable[int], q: int) -> int:
    """Sum of symbol Lee distances over unordered pairs of a multiset (a single code column)."""
    syms = list(m)
    for s in syms:
        if not 0 <= s < q:
            raise DomainError(f"symbol {s} out of range for q={q}")
    # count-based: O(q^2) instead of O(M^2)
    counts = [0] * q
    for s in syms:
        counts[s] += 1
    dist = symbol_distance_table(q)
    total = 0
    for a in range(q):
        if counts[a]:
            for b in range(a + 1, q):
                total += counts[a] * counts[b] * dist[a][b]
    return total


def ball_offsets(n: int, radius: int, q: int) -> Iterator[tuple[int, ...]]:
    """Yield every e in Z_q^n with Lee weight <= radius, in lexicographic order."""
    radius = min(radius, n * (q // 2))
    if radius < 0:
        return
    w = symbol_weights(q)

    def rec(prefix: tuple[int, ...], budget: int, left: int) -> Iterator[tuple[int, ...]]:
        if left == 0:
            yield prefix
            return
        for x in range(q):
            if w[x] <= budget:
                yield from rec(prefix + (x,), budget - w[x], left - 1)

    yield from rec((), radius, n)


def all_vectors(q: int, n: int, cap: int = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    """Lexicographic enumeration of Z_q^n as tuples, guarded by ``cap``."""
    if q**n > cap:
        raise CapExceededError(f"q^n = {q}^{n} exceeds enumeration cap {cap}")
    return itertools.product(range(q), repeat=n)


def check_symbols(symbols: Sequence[int], q: int) -> tuple[int, ...]:
    for s in symbols:
        if not 0 <= s < q:
            raise DomainError(f"symbol {s} out of range for q={q}")
    return tuple(symbols)
