"""Explicit systematic FCLC encoders, their redundancies, and codebook verification."""
from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from .errors import DEFAULT_CAP, DomainError, UnsupportedParametersError
from .functions import TargetFunction, color_function, image, local_bound
from .lee import _lee_dist, all_vectors, ball_offsets, symbol_weights

CONSTRUCTIONS = ("lee-weight", "wdist", "modsum", "local")


class Record(NamedTuple):
    u: tuple[int, ...]
    f: int
    c: tuple[int, ...]


@dataclass
class Codebook:
    q: int
    k: int
    t: int
    r: int
    construction: str
    parity_map: dict = field(default_factory=dict)
    records: list[Record] = field(default_factory=list)

    def __post_init__(self):
        self.records = sorted(
            (Record(tuple(u), int(f), tuple(c)) for u, f, c in self.records), key=lambda rec: rec.u
        )
        self._by_u = {rec.u: rec for rec in self.records}

    def encode(self, u: Sequence[int]) -> tuple[int, ...]:
        try:
            return self._by_u[tuple(u)].c
        except KeyError:
            raise DomainError(f"message {tuple(u)} is not in the codebook") from None

    def label(self, u: Sequence[int]) -> int:
        return self._by_u[tuple(u)].f

    @property
    def n(self) -> int:
        return self.k + self.r

    def is_systematic(self) -> bool:
        return all(rec.c[: self.k] == rec.u and len(rec.c) == self.n for rec in self.records)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "t": self.t,
            "r": self.r,
            "construction": self.construction,
            "parity_map": {str(key): val for key, val in sorted(self.parity_map.items())},
            "records": [{"u": list(rec.u), "f": rec.f, "c": list(rec.c)} for rec in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("u;f;c\n")
        for rec in self.records:
            buf.write(f"{','.join(map(str, rec.u))};{rec.f};{','.join(map(str, rec.c))}\n")
        return buf.getvalue()

    @classmethod
    def from_dict(cls, d: Mapping) -> Codebook:
        try:
            recs = [(r["u"], r["f"], r["c"]) for r in d["records"]]
            return cls(int(d["q"]), int(d["k"]), int(d["t"]), int(d["r"]), d.get("construction", "custom"),
                       {int(key): int(val) for key, val in d.get("parity_map", {}).items()}, recs)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed codebook: {exc}") from None

    @classmethod
    def load(cls, path: str) -> Codebook:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def with_parity_removed(self) -> Codebook:
        """The same messages and labels with every parity symbol stripped (r = 0)."""
        return Codebook(self.q, self.k, self.t, 0, self.construction + "-stripped", {},
                        [(rec.u, rec.f, rec.u) for rec in self.records])


def _systematic(q: int, k: int, t: int, r: int, tag: str, labels_of, parity_of, pmap, cap) -> Codebook:
    recs = []
    for u in all_vectors(q, k, cap):
        lab = labels_of(u)
        recs.append((u, lab, u + (parity_of(u),) * r))
    return Codebook(q, k, t, r, tag, pmap, recs)


# parity maps --------------------------------------------------------------

def lee_weight_parity(w: int, q: int) -> int:
    """Parity symbol for weight (or block index) ``w`` under the doubling map with period q."""
    w %= q
    if q % 2 == 1 or w < q // 2:
        return 2 * w % q
    return (2 * w + 1) % q


def parity_map_lee_weight(q: int, w_max: int) -> dict[int, int]:
    if q < 5:
        raise UnsupportedParametersError(f"the weight parity map needs q >= 5, got {q}")
    return {w: lee_weight_parity(w, q) for w in range(w_max + 1)}


def modsum_parity(s: int, q: int) -> int:
    if q % 2 == 1 or s < q // 2:
        return 2 * s % q
    if s == q - 2:
        return (2 * (q - 1) + 1) % q
    if s == q - 1:
        return (2 * (q - 2) + 1) % q
    return (2 * s + 1) % q


def parity_map_modsum(q: int) -> dict[int, int]:
    if q < 5:
        raise UnsupportedParametersError(f"the modular-sum construction needs q >= 5, got {q}")
    return {s: modsum_parity(s, q) for s in range(q)}


def local_parity(color: int, q: int, lam: int) -> int:
    return 2 * (color - 1) * (q // (2 * lam))


# redundancies -------------------------------------------------------------

def redundancy_of(construction: str, q: int, k: int, t: int, T: int | None = None,
                  lam: int | None = None) -> int:
    """Redundancy delivered by a construction in a given parameter regime."""
    if t < 0:
        raise UnsupportedParametersError(f"t must be >= 0, got {t}")
    h = q // 2
    if construction == "lee-weight":
        if q < 5:
            raise UnsupportedParametersError(f"lee-weight construction needs q >= 5, got {q}")
        if 2 * t <= q - 3:
            return t
        return 2 * t + 1 - h if q % 2 else 2 * t + 2 - h
    if construction == "wdist":
        if q < 5:
            raise UnsupportedParametersError(f"wdist construction needs q >= 5, got {q}")
        if T is None:
            raise UnsupportedParametersError("wdist construction needs T")
        if (k * h + 1) % T:
            raise UnsupportedParametersError(f"T={T} does not divide k*floor(q/2)+1 = {k * h + 1}")
        if t > T:
            raise UnsupportedParametersError(f"wdist construction needs t <= T, got t={t}, T={T}")
        return 0 if (k * h + 1) // T == 1 else t
    if construction == "modsum":
        if q < 5:
            raise UnsupportedParametersError(f"modular-sum construction needs q >= 5, got {q}")
        if q % 2:
            return t if 2 * t <= q - 3 else 2 * t + 1 - h
        return max(0, 2 * t - 1)
    if construction == "local":
        if lam is None or lam < 1:
            raise UnsupportedParametersError("local construction needs lambda >= 1")
        if 2 * lam > q:
            raise UnsupportedParametersError(f"local construction needs lambda <= q/2, got {lam}")
        step = q // (2 * lam)
        return -(-t // step)
    raise UnsupportedParametersError(f"unknown construction {construction!r}")


# constructions ------------------------------------------------------------

def construct_lee_weight_fclc(q: int, k: int, t: int, cap: int = DEFAULT_CAP) -> Codebook:
    r = redundancy_of("lee-weight", q, k, t)
    f = TargetFunction.lee_weight(q, k)
    pmap = parity_map_lee_weight(q, k * (q // 2))
    return _systematic(q, k, t, r, "lee-weight", f._eval, lambda u: pmap[f._eval(u)], pmap, cap)


def construct_wdist_fclc(q: int, k: int, t: int, T: int, cap: int = DEFAULT_CAP) -> Codebook:
    """Weight-distribution encoder: the doubling parity map indexed by the block floor(wt/T)."""
    r = redundancy_of("wdist", q, k, t, T=T)
    f = TargetFunction.weight_distribution(q, k, T)
    pmap = {m: lee_weight_parity(m, q) for m in image(f)}
    return _systematic(q, k, t, r, "wdist", f._eval, lambda u: pmap[f._eval(u)], pmap, cap)


def construct_modsum_fclc(q: int, k: int, t: int, cap: int = DEFAULT_CAP) -> Codebook:
    r = redundancy_of("modsum", q, k, t)
    pmap = parity_map_modsum(q)
    return _systematic(q, k, t, r, "modsum", lambda u: sum(u) % q, lambda u: pmap[sum(u) % q], pmap, cap)


def construct_local_fclc(f: TargetFunction, t: int, lam: int, cap: int = DEFAULT_CAP) -> Codebook:
    """Color-based encoder for a locally (2t, lam)-bounded function."""
    q, k = f.q, f.k
    r = redundancy_of("local", q, k, t, lam=lam)
    bound = local_bound(f, 2 * t, cap)
    if bound > lam:
        raise DomainError(f"{f.spec} is only locally (2t, {bound})-bounded, not (2t, {lam})")
    col = color_function(f, 2 * t, lam, cap)
    pmap = {i: local_parity(i, q, lam) for i in range(1, lam + 1)}
    return _systematic(q, k, t, r, "local", f._eval, lambda u: pmap[col[u]], pmap, cap)


def construct(construction: str, q: int, k: int, t: int, T: int | None = None, lam: int | None = None,
              function: TargetFunction | None = None, cap: int = DEFAULT_CAP) -> Codebook:
    if construction == "lee-weight":
        return construct_lee_weight_fclc(q, k, t, cap)
    if construction == "wdist":
        if T is None:
            raise UnsupportedParametersError("wdist construction needs T")
        return construct_wdist_fclc(q, k, t, T, cap)
    if construction == "modsum":
        return construct_modsum_fclc(q, k, t, cap)
    if construction == "local":
        if function is None or lam is None:
            raise UnsupportedParametersError("local construction needs a function and lambda")
        return construct_local_fclc(function, t, lam, cap)
    raise UnsupportedParametersError(f"unknown construction {construction!r}")


# verification -------------------------------------------------------------

class Verification(NamedTuple):
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_fclc(cb: Codebook, t: int | None = None) -> Verification:
    """Check d_L(Enc(u1), Enc(u2)) >= 2t+1 for every pair with different labels.

    On failure the witness is the lexicographically first violating message pair.
    """
    t = cb.t if t is None else t
    q, need = cb.q, 2 * t + 1
    recs = cb.records
    if not cb.is_systematic():
        for i, a in enumerate(recs):
            for b in recs[i + 1:]:
                if a.f != b.f and _lee_dist(a.c, b.c, q) < need:
                    return Verification(False, (a.u, b.u))
        return Verification(True)
    # a violating pair has message distance <= 2t, so only the message ball is scanned
    w = symbol_weights(q)
    offsets = [e for e in ball_offsets(cb.k, 2 * t, q) if any(e)]
    by_u = cb._by_u
    for a in recs:
        first = None
        for e in offsets:
            v = tuple((x + y) % q for x, y in zip(a.u, e))
            if v <= a.u:
                continue
            b = by_u.get(v)
            if b is None or b.f == a.f:
                continue
            if sum(w[y] for y in e) + _lee_dist(a.c[cb.k:], b.c[cb.k:], q) < need:
                if first is None or v < first:
                    first = v
        if first is not None:
            return Verification(False, (a.u, first))
    return Verification(True)
