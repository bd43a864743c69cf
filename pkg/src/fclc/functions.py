"""Target functions f: Z_q^k -> Im(f), function balls, local bounds and Col_f."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .errors import DEFAULT_CAP, CapExceededError, ColoringError, DomainError, UnsupportedParametersError
from .lee import ZqVector, _tuple_weight, all_vectors, ball_offsets, lee_sphere_volume, symbol_weights

KINDS = ("lee-weight", "weight-distribution", "modular-sum", "projection", "table")


@dataclass(frozen=True, eq=False)
class TargetFunction:
    q: int
    k: int
    kind: str
    param: int | None = None
    table: Mapping[tuple[int, ...], int] | None = field(default=None, repr=False)
    label_names: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.q < 2 or self.k < 1:
            raise DomainError(f"need q >= 2 and k >= 1, got q={self.q}, k={self.k}")
        if self.kind not in KINDS:
            raise DomainError(f"unknown function kind {self.kind!r}")

    # constructors -------------------------------------------------------

    @classmethod
    def lee_weight(cls, q: int, k: int) -> TargetFunction:
        return cls(q, k, "lee-weight")

    @classmethod
    def weight_distribution(cls, q: int, k: int, T: int, strict: bool = True) -> TargetFunction:
        """floor(wt_L(u) / T). With ``strict`` the block size must divide k*floor(q/2)+1."""
        if T < 1:
            raise UnsupportedParametersError(f"T must be >= 1, got {T}")
        if strict and (k * (q // 2) + 1) % T:
            raise UnsupportedParametersError(
                f"T={T} does not divide k*floor(q/2)+1 = {k * (q // 2) + 1}"
            )
        return cls(q, k, "weight-distribution", param=T)

    @classmethod
    def modular_sum(cls, q: int, k: int) -> TargetFunction:
        return cls(q, k, "modular-sum")

    @classmethod
    def projection(cls, q: int, k: int, index: int) -> TargetFunction:
        """f(u) = u_index, 1-based."""
        if not 1 <= index <= k:
            raise DomainError(f"projection index {index} outside 1..{k}")
        return cls(q, k, "projection", param=index)

    @classmethod
    def from_table(cls, q: int, k: int, mapping: Mapping[Sequence[int], object],
                   cap: int = DEFAULT_CAP) -> TargetFunction:
        """Tabulated function; user labels are re-indexed to 0..E-1 in sorted order."""
        table = {tuple(int(s) for s in u): lab for u, lab in mapping.items()}
        missing = [u for u in all_vectors(q, k, cap) if u not in table]
        if missing:
            raise DomainError(f"table is not total: {len(missing)} vectors missing, e.g. {missing[0]}")
        if len(table) != q**k:
            raise DomainError("table contains vectors outside Z_q^k")
        names = tuple(sorted(set(table.values())))
        index = {name: i for i, name in enumerate(names)}
        return cls(q, k, "table", table={u: index[lab] for u, lab in table.items()}, label_names=names)

    @classmethod
    def from_callable(cls, q: int, k: int, fn, cap: int = DEFAULT_CAP) -> TargetFunction:
        return cls.from_table(q, k, {u: fn(u) for u in all_vectors(q, k, cap)}, cap)

    # evaluation ---------------------------------------------------------

    def _eval(self, u: Sequence[int]) -> int:
        kind = self.kind
        if kind == "lee-weight":
            return _tuple_weight(u, self.q)
        if kind == "weight-distribution":
            return _tuple_weight(u, self.q) // self.param
        if kind == "modular-sum":
            return sum(u) % self.q
        if kind == "projection":
            return u[self.param - 1]
        return self.table[tuple(u)]

    def __call__(self, u) -> int:
        return evaluate(self, u)

    @property
    def spec(self) -> str:
        if self.kind == "lee-weight":
            return "lee-weight"
        if self.kind == "weight-distribution":
            return f"wdist:T={self.param}"
        if self.kind == "modular-sum":
            return "modsum"
        if self.kind == "projection":
            return f"proj:{self.param}"
        return "table"

    @cached_property
    def _labels(self) -> tuple[int, ...]:
        # labels of Z_q^k in lexicographic order; built lazily, guarded by the caller's cap
        return tuple(self._eval(u) for u in all_vectors(self.q, self.k, math.inf))

    def labels(self, cap: int = DEFAULT_CAP) -> tuple[int, ...]:
        if self.q**self.k > cap:
            raise CapExceededError(f"q^k = {self.q}^{self.k} exceeds enumeration cap {cap}")
        return self._labels


def vector_index(u: Sequence[int], q: int) -> int:
    idx = 0
    for s in u:
        idx = idx * q + s
    return idx


def _as_tuple(f: TargetFunction, u) -> tuple[int, ...]:
    if isinstance(u, ZqVector):
        if u.q != f.q:
            raise DomainError(f"vector over Z_{u.q} given to function over Z_{f.q}")
        u = u.symbols
    u = tuple(u)
    if len(u) != f.k:
        raise DomainError(f"expected length {f.k}, got {len(u)}")
    for s in u:
        if not 0 <= s < f.q:
            raise DomainError(f"symbol {s} out of range for q={f.q}")
    return u


def evaluate(f: TargetFunction, u) -> int:
    return f._eval(_as_tuple(f, u))


def image(f: TargetFunction, cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Exact image in ascending label order (analytic for the named classes)."""
    q, k = f.q, f.k
    if f.kind == "lee-weight":
        return tuple(range(k * (q // 2) + 1))
    if f.kind == "weight-distribution":
        return tuple(range(k * (q // 2) // f.param + 1))
    if f.kind in ("modular-sum", "projection"):
        return tuple(range(q))
    return tuple(range(len(f.label_names)))


def expressiveness(f: TargetFunction, cap: int = DEFAULT_CAP) -> int:
    return len(image(f, cap))


def parse_function_spec(spec: str, q: int, k: int, table_path: str | None = None,
                        cap: int = DEFAULT_CAP) -> TargetFunction:
    """Parse CLI strings such as ``lee-weight``, ``wdist:T=2``, ``modsum``, ``proj:2``, ``table``."""
    s = spec.strip().lower()
    if s in ("lee-weight", "leeweight", "wt"):
        return TargetFunction.lee_weight(q, k)
    if s in ("modsum", "modular-sum"):
        return TargetFunction.modular_sum(q, k)
    if s.startswith("wdist"):
        _, _, rest = s.partition(":")
        key, _, val = rest.partition("=")
        if key.strip() != "t" or not val:
            raise DomainError(f"expected wdist:T=<int>, got {spec!r}")
        return TargetFunction.weight_distribution(q, k, int(val))
    if s.startswith("proj"):
        _, _, rest = s.partition(":")
        return TargetFunction.projection(q, k, int(rest))
    if s == "table" or s.startswith("table:"):
        path = table_path or s.partition(":")[2]
        if not path:
            raise DomainError("table function needs a CSV path")
        return load_table_csv(path, q, k, cap)
    raise DomainError(f"unknown function spec {spec!r}")


def load_table_csv(path: str, q: int, k: int, cap: int = DEFAULT_CAP) -> TargetFunction:
    """Rows of ``u,label`` where u is written as its comma-joined symbols (quoted) or a digit string."""
    mapping = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            if len(row) == 2:
                u_text, lab = row
            else:
                *syms, lab = row
                u_text = ",".join(syms)
            if u_text.strip().lower() == "u":
                continue
            u = ZqVector.parse(q, u_text).symbols
            if len(u) != k:
                raise DomainError(f"row {row!r}: expected {k} symbols")
            mapping[u] = int(lab)
    return TargetFunction.from_table(q, k, mapping, cap)


def function_ball(f: TargetFunction, u, rho: int, cap: int = DEFAULT_CAP) -> frozenset[int]:
    """{f(v) : d_L(u, v) <= rho} by enumerating the Lee ball around u."""
    if rho < 0:
        raise DomainError(f"radius must be >= 0, got {rho}")
    u = _as_tuple(f, u)
    q = f.q
    if lee_sphere_volume(f.k, rho, q) > cap:
        raise CapExceededError(f"Lee ball of radius {rho} in Z_{q}^{f.k} exceeds cap {cap}")
    out = set()
    for e in ball_offsets(f.k, rho, q):
        out.add(f._eval(tuple((a + b) % q for a, b in zip(u, e))))
    return frozenset(out)


def local_bound(f: TargetFunction, rho: int, cap: int = DEFAULT_CAP) -> int:
    """Smallest lambda such that f is locally (rho, lambda)-bounded in the Lee metric."""
    if rho < 0:
        raise DomainError(f"radius must be >= 0, got {rho}")
    q, k = f.q, f.k
    labels = f.labels(cap)
    offsets = list(ball_offsets(k, rho, q))
    best = 0
    for u in all_vectors(q, k, cap):
        seen = {labels[_shift_index(u, e, q)] for e in offsets}
        best = max(best, len(seen))
    return best


def _shift_index(u, e, q) -> int:
    idx = 0
    for a, b in zip(u, e):
        idx = idx * q + (a + b) % q
    return idx


def conflict_graph(f: TargetFunction, rho: int, cap: int = DEFAULT_CAP) -> list[list[int]]:
    """Adjacency lists over lexicographic vertex indices: u ~ v iff f(u) != f(v) and d_L(u,v) <= rho."""
    q, k = f.q, f.k
    labels = f.labels(cap)
    offsets = [e for e in ball_offsets(k, rho, q) if any(e)]
    adj = []
    for i, u in enumerate(all_vectors(q, k, cap)):
        nb = {j for j in (_shift_index(u, e, q) for e in offsets) if labels[j] != labels[i]}
        adj.append(sorted(nb))
    return adj


def color_function(f: TargetFunction, rho: int, lam: int, cap: int = DEFAULT_CAP,
                   node_cap: int = 2_000_000) -> dict[tuple[int, ...], int]:
    """A coloring Col_f: Z_q^k -> {1..lam} separating conflicting messages.

    Greedy in lexicographic order with lowest available color; when greedy needs
    more than ``lam`` colors an exact backtracking search is run.
    """
    if lam < 1:
        raise DomainError(f"color budget must be >= 1, got {lam}")
    adj = conflict_graph(f, rho, cap)
    n = len(adj)
    colors = [0] * n
    for v in range(n):
        used = {colors[w] for w in adj[v] if colors[w]}
        c = 1
        while c in used:
            c += 1
        colors[v] = c
    if max(colors, default=1) > lam:
        colors = _exact_coloring(adj, lam, node_cap)
    vecs = list(all_vectors(f.q, f.k, cap))
    return {vecs[i]: colors[i] for i in range(n)}


def _exact_coloring(adj: list[list[int]], lam: int, node_cap: int) -> list[int]:
    # DSATUR-ordered backtracking; colors introduced in increasing order to break symmetry
    n = len(adj)
    colors = [0] * n
    nodes = 0

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if colors[v]:
                continue
            sat = len({colors[w] for w in adj[v] if colors[w]})
            cand = (sat, len(adj[v]), -v)
            if key is None or cand > key:
                best, key = v, cand
        return best

    def solve(depth: int, max_used: int) -> bool:
        nonlocal nodes
        if depth == n:
            return True
        nodes += 1
        if nodes > node_cap:
            raise ColoringError(f"exact coloring search exceeded {node_cap} nodes")
        v = pick()
        used = {colors[w] for w in adj[v] if colors[w]}
        for c in range(1, min(lam, max_used + 1) + 1):
            if c in used:
                continue
            colors[v] = c
            if solve(depth + 1, max(max_used, c)):
                return True
            colors[v] = 0
        return False

    if not solve(0, 0):
        raise ColoringError(f"no coloring with {lam} colors exists")
    return colors


def is_valid_coloring(f: TargetFunction, rho: int, coloring: Mapping[tuple[int, ...], int],
                      cap: int = DEFAULT_CAP) -> bool:
    q, k = f.q, f.k
    labels = f.labels(cap)
    vecs = list(all_vectors(q, k, cap))
    dist_w = symbol_weights(q)
    for i, u in enumerate(vecs):
        for j in range(i + 1, len(vecs)):
            v = vecs[j]
            if labels[i] != labels[j] and coloring[u] == coloring[v]:
                if sum(dist_w[(a - b) % q] for a, b in zip(u, v)) <= rho:
                    return False
    return True
