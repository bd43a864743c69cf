"""Distance-requirement and function-distance matrices."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DEFAULT_CAP, DomainError, ShapeError
from .functions import TargetFunction, _as_tuple, image
from .lee import _lee_dist


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric, zero-diagonal, nonnegative integer matrix with optional metadata.

    ``rows`` holds one entry per row: an information vector (tuple) or a label (int).
    """

    entries: tuple[tuple[int, ...], ...]
    q: int | None = None
    t: int | None = None
    rows: tuple | None = None

    def __post_init__(self):
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        m = len(ent)
        for i, row in enumerate(ent):
            if len(row) != m:
                raise ShapeError(f"row {i} has length {len(row)}, expected {m}")
            if row[i] != 0:
                raise DomainError(f"diagonal entry ({i},{i}) is {row[i]}, expected 0")
            for j, x in enumerate(row):
                if x < 0:
                    raise DomainError(f"negative entry at ({i},{j})")
                if x != ent[j][i]:
                    raise DomainError(f"matrix not symmetric at ({i},{j})")
        if self.t is not None:
            cap = 2 * self.t + 1
            if any(x > cap for row in ent for x in row):
                raise DomainError(f"entry exceeds 2t+1 = {cap}")
        if self.rows is not None:
            rows = tuple(tuple(r) if isinstance(r, (list, tuple)) else r for r in self.rows)
            if len(rows) != m:
                raise ShapeError(f"{len(rows)} row labels for a {m}x{m} matrix")
            object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def upper_sum(self) -> int:
        m = self.size
        return sum(self.entries[i][j] for i in range(m) for j in range(i + 1, m))

    def permuted(self, perm: Sequence[int]) -> DistanceMatrix:
        ent = [[self.entries[a][b] for b in perm] for a in perm]
        rows = None if self.rows is None else [self.rows[a] for a in perm]
        return DistanceMatrix(ent, self.q, self.t, rows)

    def to_dict(self) -> dict:
        rows = None if self.rows is None else [list(r) if isinstance(r, tuple) else r for r in self.rows]
        return {"q": self.q, "t": self.t, "rows": rows, "entries": [list(r) for r in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> DistanceMatrix:
        if "entries" not in d:
            raise DomainError("matrix JSON needs an 'entries' field")
        return cls(d["entries"], d.get("q"), d.get("t"), d.get("rows"))

    @classmethod
    def uniform(cls, m: int, d: int, q: int | None = None) -> DistanceMatrix:
        return cls([[0 if i == j else d for j in range(m)] for i in range(m)], q)


def load_matrix(path: str) -> DistanceMatrix:
    with open(path) as fh:
        return DistanceMatrix.from_dict(json.load(fh))


def distance_requirement_matrix(f: TargetFunction, t: int, vectors: Sequence) -> DistanceMatrix:
    """[2t+1 - d_L(u_i, u_j)]^+ for pairs with different function values, else 0."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    vecs = [_as_tuple(f, v) for v in vectors]
    if len(set(vecs)) != len(vecs):
        raise DomainError("information vectors must be pairwise distinct")
    labels = [f._eval(v) for v in vecs]
    m = len(vecs)
    ent = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if labels[i] != labels[j]:
                ent[i][j] = ent[j][i] = max(0, 2 * t + 1 - _lee_dist(vecs[i], vecs[j], f.q))
    return DistanceMatrix(ent, f.q, t, vecs)


def label_distances(f: TargetFunction, cap: int = DEFAULT_CAP) -> dict[int, dict[int, int]]:
    """All function distances d_L^f(a, b) at once.

    Lee distance on Z_q^k is the shortest-path distance of the torus grid graph
    (steps of +-1 in one coordinate), so a multi-source BFS from the preimage of
    each label gives exact minima without pairwise enumeration.
    """
    q, k = f.q, f.k
    labels = f.labels(cap)
    n = len(labels)
    img = sorted(set(labels))
    powers = [q ** (k - 1 - i) for i in range(k)]
    out: dict[int, dict[int, int]] = {}
    for a in img:
        dist = [-1] * n
        dq = deque()
        for idx, lab in enumerate(labels):
            if lab == a:
                dist[idx] = 0
                dq.append(idx)
        best = {a: 0}
        while dq and len(best) < len(img):
            idx = dq.popleft()
            d = dist[idx]
            for p in powers:
                digit = (idx // p) % q
                for step in (1, q - 1):
                    nidx = idx + (((digit + step) % q) - digit) * p
                    if dist[nidx] < 0:
                        dist[nidx] = d + 1
                        lab = labels[nidx]
                        if lab not in best:
                            best[lab] = d + 1
                        dq.append(nidx)
        out[a] = best
    return out


def function_distance(f: TargetFunction, a: int, b: int, cap: int = DEFAULT_CAP) -> int:
    img = image(f, cap)
    for lab in (a, b):
        if lab not in img:
            raise DomainError(f"label {lab} is not in the image of {f.spec}")
    if a == b:
        return 0
    return label_distances(f, cap)[a][b]


def function_distance_matrix(f: TargetFunction, t: int, cap: int = DEFAULT_CAP) -> DistanceMatrix:
    """E x E matrix [2t+1 - d_L^f(f_i, f_j)]^+ over the image in ascending order."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    img = image(f, cap)
    dist = label_distances(f, cap)
    ent = [[0 if a == b else max(0, 2 * t + 1 - dist[a][b]) for b in img] for a in img]
    return DistanceMatrix(ent, f.q, t, img)


def representatives_match(f: TargetFunction, t: int, reps: Sequence, cap: int = DEFAULT_CAP) -> bool:
    """True iff the requirement matrix of ``reps`` equals the function-distance matrix
    (rows of the latter ordered by the labels of ``reps``).

    Returns False when the representatives' labels do not cover the image.
    """
    img = image(f, cap)
    if len(reps) != len(img):
        raise DomainError(f"need exactly E = {len(img)} representatives, got {len(reps)}")
    vecs = [_as_tuple(f, v) for v in reps]
    labs = [f._eval(v) for v in vecs]
    if sorted(labs) != list(img):
        return False
    drm = distance_requirement_matrix(f, t, vecs)
    fdm = function_distance_matrix(f, t, cap)
    pos = {lab: i for i, lab in enumerate(img)}
    return drm.entries == fdm.permuted([pos[lab] for lab in labs]).entries
