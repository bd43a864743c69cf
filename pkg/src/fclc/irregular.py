"""Irregular-Lee-distance codes: verification, exact N_L(D) search and bounds."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DEFAULT_CAP, CapExceededError, DomainError, ShapeError
from .lee import ZqVector, _lee_dist, lee_sphere_volume, symbol_distance_table
from .matrices import DistanceMatrix


@dataclass(frozen=True)
class IrregularCode:
    q: int
    codewords: tuple[tuple[int, ...], ...]

    def __init__(self, q: int, codewords: Sequence[Sequence[int]]):
        words = tuple(tuple(int(s) % q for s in (w.symbols if isinstance(w, ZqVector) else w))
                      for w in codewords)
        if len({len(w) for w in words}) > 1:
            raise ShapeError("codewords must share one length")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "codewords", words)

    @property
    def length(self) -> int:
        return len(self.codewords[0]) if self.codewords else 0

    @property
    def size(self) -> int:
        return len(self.codewords)

    def shifted(self, shift: Sequence[int]) -> IrregularCode:
        return IrregularCode(self.q, [[(a + b) % self.q for a, b in zip(w, shift)] for w in self.codewords])


def verify_d_code(code: IrregularCode, D: DistanceMatrix) -> bool:
    """True iff d_L(p_i, p_j) >= D[i][j] for every pair, in the given order."""
    if code.size != D.size:
        raise ShapeError(f"{code.size} codewords for a {D.size}x{D.size} matrix")
    if D.q is not None and D.q != code.q:
        raise ShapeError(f"modulus mismatch: code over Z_{code.q}, matrix for Z_{D.q}")
    words, q = code.codewords, code.q
    return all(
        _lee_dist(words[i], words[j], q) >= D.entries[i][j]
        for i in range(code.size) for j in range(i + 1, code.size)
    )


class SearchResult(NamedTuple):
    length: int | None
    witness: IrregularCode | None


def search_min_length(D: DistanceMatrix, q: int, r_max: int = 8, cap: int = DEFAULT_CAP) -> SearchResult:
    """Exact N_L(D) for lengths up to ``r_max``.

    A length-r code is a multiset of r columns in Z_q^M, and pairwise distances
    add up column by column. Columns are normalised to start with 0 (translation
    invariance), each is reduced to its vector of pairwise distances capped at
    the requirement, and dominated vectors are discarded. The search then picks
    columns in nonincreasing order, pruning when a remaining deficit cannot be
    covered by the columns left.
    """
    m = D.size
    if r_max < 0:
        raise DomainError(f"r_max must be >= 0, got {r_max}")
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m) if D.entries[i][j] > 0]
    if not pairs:
        return SearchResult(0, IrregularCode(q, [()] * m))
    if q ** (m - 1) > cap:
        raise CapExceededError(f"q^(M-1) = {q}^{m - 1} column types exceed cap {cap}")
    need = np.array([D.entries[i][j] for i, j in pairs], dtype=np.int64)
    profiles, columns = _column_profiles(q, m, pairs, need)
    per_pair_max = profiles.max(axis=0)
    if np.any(per_pair_max == 0):
        return SearchResult(None, None)
    prof_rows = [tuple(int(x) for x in p) for p in profiles]
    sums = [sum(p) for p in prof_rows]
    max_sum = max(sums)
    ppm = tuple(int(x) for x in per_pair_max)
    npairs = len(pairs)

    for r in range(r_max + 1):
        failed: set = set()
        chosen: list[int] = []

        def dfs(start: int, left: int, deficit: tuple[int, ...]) -> bool:
            if not any(deficit):
                return True
            if left == 0:
                return False
            if sum(deficit) > left * max_sum:
                return False
            for a in range(npairs):
                if deficit[a] > left * ppm[a]:
                    return False
            key = (start, left, deficit)
            if key in failed:
                return False
            for idx in range(start, len(prof_rows)):
                p = prof_rows[idx]
                nd = tuple(max(0, d - x) for d, x in zip(deficit, p))
                chosen.append(idx)
                if dfs(idx, left - 1, nd):
                    return True
                chosen.pop()
            failed.add(key)
            return False

        if dfs(0, r, tuple(int(x) for x in need)):
            cols = [columns[i] for i in chosen] + [(0,) * m] * (r - len(chosen))
            words = [tuple(col[i] for col in cols) for i in range(m)]
            return SearchResult(r, IrregularCode(q, words))
    return SearchResult(None, None)


def _column_profiles(q: int, m: int, pairs, need):
    """Pareto-maximal capped distance profiles of columns (first symbol fixed to 0)."""
    dist = symbol_distance_table(q)
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for rest in itertools.product(range(q), repeat=m - 1):
        col = (0,) + rest
        prof = tuple(min(dist[col[i]][col[j]], int(c)) for (i, j), c in zip(pairs, need))
        if prof not in seen:
            seen[prof] = col
    items = sorted(seen.items(), key=lambda kv: (-sum(kv[0]), kv[0]))
    keep_p: list[tuple[int, ...]] = []
    keep_c: list[tuple[int, ...]] = []
    arr = np.empty((0, len(pairs)), dtype=np.int64)
    for prof, col in items:
        p = np.array(prof, dtype=np.int64)
        # sorted by descending sum, so only earlier (kept) profiles can dominate
        if len(keep_p) and np.any(np.all(arr >= p, axis=1)):
            continue
        keep_p.append(prof)
        keep_c.append(col)
        arr = np.vstack([arr, p])
    return arr, keep_c


class PlotkinBound(NamedTuple):
    value: Fraction
    ceiling: int


def plotkin_lower_bound(D: DistanceMatrix, q: int) -> PlotkinBound:
    """Average-distance lower bound on N_L(D), exact."""
    m = D.size
    if m < 2:
        raise DomainError("the bound needs M >= 2")
    s = D.upper_sum()
    if q % 2 == 0:
        value = Fraction(8 * s, m * m * q)
    else:
        value = Fraction(8 * q * s, m * m * (q * q - 1))
    return PlotkinBound(value, math.ceil(value))


def _gv_length(D: DistanceMatrix, q: int, perm: Sequence[int], r_limit: int = 10_000) -> int:
    m = D.size
    radii = [[D.entries[perm[i]][perm[j]] - 1 for i in range(j)] for j in range(m)]
    for r in range(r_limit):
        worst = max((sum(lee_sphere_volume(r, t, q) for t in col) for col in radii), default=0)
        if q**r > worst:
            return r
    raise DomainError("GV search did not terminate")


def gv_upper_bound(D: DistanceMatrix, q: int, policy: str = "identity") -> int:
    """Greedy (Gilbert-Varshamov type) upper bound on N_L(D).

    ``policy`` is ``identity`` or ``all`` (minimum over every row permutation, M <= 8).
    """
    m = D.size
    if policy == "identity":
        return _gv_length(D, q, range(m))
    if policy == "all":
        if m > 8:
            raise DomainError("the all-permutations policy is limited to M <= 8")
        return min(_gv_length(D, q, p) for p in itertools.permutations(range(m)))
    raise DomainError(f"unknown permutation policy {policy!r}")


def binary_redundancy_floor(q: int, t: int) -> int:
    """N_L(2, 2t) = ceil(2t / floor(q/2)): a floor for any function with E >= 2."""
    if q < 2 or t < 1:
        raise DomainError(f"need q >= 2 and t >= 1, got q={q}, t={t}")
    return -(-2 * t // (q // 2))
