"""Lee-error generation, the symmetric Lee channel, and nearest-codeword function decoding."""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constructions import Codebook, Verification
from .errors import DEFAULT_CAP, CapExceededError, DomainError
from .lee import ZqVector, _lee_dist, ball_offsets, lee_sphere_volume

RNG_NAME = "numpy.random.PCG64"
PROB_TOL = 1e-9


@dataclass(frozen=True)
class LeeChannelModel:
    """Memoryless channel whose shift by +-i has probability p[i], i = 0..floor(q/2).

    For even q the antipodal shift q/2 is a single symbol and carries p[q/2] once.
    Trailing probabilities may be omitted and are then zero.
    """

    q: int
    p: tuple[float, ...]
    seed: int = 0

    def __post_init__(self):
        if self.q < 2:
            raise DomainError(f"modulus must be >= 2, got {self.q}")
        half = self.q // 2
        p = tuple(float(x) for x in self.p)
        if not p or len(p) > half + 1:
            raise DomainError(f"need 1..{half + 1} shift probabilities for q={self.q}, got {len(p)}")
        if any(x < 0 for x in p):
            raise DomainError("shift probabilities must be nonnegative")
        p = p + (0.0,) * (half + 1 - len(p))
        object.__setattr__(self, "p", p)
        if abs(self.shift_distribution().sum() - 1.0) > PROB_TOL:
            raise DomainError(f"shift probabilities sum to {self.shift_distribution().sum()}, not 1")

    def shift_distribution(self) -> np.ndarray:
        """Probability of each additive shift s in Z_q."""
        q = self.q
        return np.array([self.p[min(s, q - s)] for s in range(q)], dtype=float)

    def to_dict(self) -> dict:
        return {"q": self.q, "p": list(self.p), "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> LeeChannelModel:
        try:
            return cls(int(d["q"]), tuple(d["p"]), int(d.get("seed", 0)))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed channel model: {exc}") from None

    @classmethod
    def load(cls, path: str) -> LeeChannelModel:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def rng(self, *stream: int) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.seed, *stream])))


def enumerate_errors(n: int, t: int, q: int, cap: int = DEFAULT_CAP) -> list[ZqVector]:
    """Every e in Z_q^n with Lee weight at most t, in lexicographic order."""
    if t < 0 or n < 0:
        raise DomainError(f"need n, t >= 0, got n={n}, t={t}")
    if lee_sphere_volume(n, t, q) > cap:
        raise CapExceededError(f"Lee ball V_{t}^({n}) over Z_{q} exceeds cap {cap}")
    return [ZqVector(q, e) for e in ball_offsets(n, t, q)]


def sample_channel(c, model: LeeChannelModel, rng: np.random.Generator | None = None) -> ZqVector:
    """Pass ``c`` through the channel; without ``rng`` the model's seed fixes the draw."""
    syms = c.symbols if isinstance(c, ZqVector) else tuple(c)
    if isinstance(c, ZqVector) and c.q != model.q:
        raise DomainError(f"vector over Z_{c.q} sent over a Z_{model.q} channel")
    rng = model.rng() if rng is None else rng
    shifts = rng.choice(model.q, size=len(syms), p=model.shift_distribution())
    return ZqVector(model.q, (a + int(s) for a, s in zip(syms, shifts)))


def decode_function(cb: Codebook, y) -> int:
    """Label of the nearest codeword; ties go to the lexicographically smallest codeword."""
    if not cb.records:
        raise DomainError("empty codebook")
    ys = y.symbols if isinstance(y, ZqVector) else tuple(y)
    if len(ys) != cb.n:
        raise DomainError(f"received word has length {len(ys)}, expected {cb.n}")
    return _decode(_sorted_codewords(cb), ys, cb.q)


def _sorted_codewords(cb: Codebook) -> list[tuple[tuple[int, ...], int]]:
    return sorted((rec.c, rec.f) for rec in cb.records)


def _decode(words: list[tuple[tuple[int, ...], int]], y: Sequence[int], q: int) -> int:
    best, label = None, None
    for c, f in words:
        d = _lee_dist(c, y, q)
        if best is None or d < best:
            best, label = d, f
            if d == 0:
                break
    return label


def exhaustive_decode_check(cb: Codebook, t: int | None = None, cap: int = DEFAULT_CAP,
                            threads: int = 1) -> Verification:
    """Decode Enc(u) + e for every message u and every e with wt_L(e) <= t.

    On failure the witness is ``(u, e, decoded_label)`` for the first failing
    message in lexicographic order.
    """
    t = cb.t if t is None else t
    q = cb.q
    volume = lee_sphere_volume(cb.n, t, q)
    if volume * len(cb.records) > cap:
        raise CapExceededError(f"{len(cb.records)} messages x {volume} errors exceeds cap {cap}")
    errors = list(ball_offsets(cb.n, t, q))
    words = _sorted_codewords(cb)

    def check(rec):
        for e in errors:
            y = tuple((a + b) % q for a, b in zip(rec.c, e))
            got = _decode(words, y, q)
            if got != rec.f:
                return (rec.u, e, got)
        return None

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(check, cb.records))
    else:
        results = []
        for rec in cb.records:
            results.append(check(rec))
            if results[-1] is not None:
                break
    for res in results:
        if res is not None:
            return Verification(False, res)
    return Verification(True)


def simulate(cb: Codebook, model: LeeChannelModel, trials: int) -> dict:
    """Monte Carlo function-error rate of nearest-codeword decoding over the channel.

    Message i uses its own stream seeded by (seed, i), so results do not depend on scheduling.
    """
    if model.q != cb.q:
        raise DomainError(f"channel over Z_{model.q} for a codebook over Z_{cb.q}")
    if trials < 1:
        raise DomainError("need at least one trial")
    words = _sorted_codewords(cb)
    q, n = cb.q, cb.n
    dist = model.shift_distribution()
    errors = symbol_errors = beyond_t = 0
    total = 0
    per_msg = -(-trials // len(cb.records))
    for i, rec in enumerate(cb.records):
        rng = model.rng(i)
        shifts = rng.choice(q, size=(per_msg, n), p=dist)
        for row in shifts:
            if total == trials:
                break
            total += 1
            y = tuple((a + int(s)) % q for a, s in zip(rec.c, row))
            symbol_errors += int(np.count_nonzero(row))
            if _lee_dist(y, rec.c, q) > cb.t:
                beyond_t += 1
            if _decode(words, y, q) != rec.f:
                errors += 1
    rate = errors / total
    return {
        "trials": total,
        "function_errors": errors,
        "function_error_rate": rate,
        "half_width_95": 1.96 * math.sqrt(rate * (1 - rate) / total),
        "symbol_error_rate": symbol_errors / (total * n),
        "beyond_t_rate": beyond_t / total,
        "model": model.to_dict(),
        "rng": {"generator": RNG_NAME, "numpy": np.__version__},
    }
