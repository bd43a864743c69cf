"""Closed-form redundancy lower bounds and the FCLC / ECC-on-data / ECC-on-function-values comparison."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import construct, redundancy_of, verify_fclc
from .errors import DEFAULT_CAP, CapExceededError, DomainError, UnsupportedParametersError
from .functions import TargetFunction, expressiveness, parse_function_spec
from .irregular import binary_redundancy_floor, plotkin_lower_bound
from .lee import lee_sphere_volume
from .matrices import function_distance_matrix


def _lee_weight_regime(q: int, t: int) -> bool:
    if q % 2:
        return q >= 5 and 2 * t == q - 3
    return q >= 6 and t == (q - 3) // 2


def bound_lee_weight(q: int, k: int, t: int) -> Fraction:
    """Plotkin-type lower bound on lee-weight FCLC redundancy at t = floor((q-3)/2)."""
    if not _lee_weight_regime(q, t) or k < 1:
        raise UnsupportedParametersError(
            f"lee-weight closed form needs q >= 5 and t = floor((q-3)/2), got q={q}, k={k}, t={t}")
    E = k * (q // 2) + 1
    core = t * (2 * t + 1) * (E - Fraction(2 * (t + 1), 3))
    if q % 2:
        return Fraction(8 * q, E * E * (q * q - 1)) * core
    return Fraction(8, E * E * q) * core


def bound_wdist_binary(q: int, t: int) -> Fraction:
    """Lower bound for a two-valued weight-distribution function."""
    if q < 6 or t < 1:
        raise UnsupportedParametersError(f"binary closed form needs q >= 6 and t >= 1, got q={q}, t={t}")
    if q % 2:
        return Fraction(4 * q * t, q * q - 1)
    return Fraction(4 * t, q)


def _modsum_regime(q: int, t: int) -> bool:
    if q % 2:
        return q >= 5 and 2 * t == q - 3
    return q >= 6 and 4 * t >= q - 2


def bound_modsum(q: int, t: int) -> Fraction:
    """Lower bound on modular-sum FCLC redundancy (odd q at t = (q-3)/2, even q at 4t >= q-2)."""
    if not _modsum_regime(q, t):
        raise UnsupportedParametersError(f"modular-sum closed form not defined at q={q}, t={t}")
    h = q // 2
    if q % 2:
        return Fraction(2, q * (q + 1)) * (4 * t + 1 - h) * (2 * q - 2 * h - 1)
    A = sum((q - r) * (2 * t + 1 - r) for r in range(1, h + 1))
    B = sum((q - (h + s)) * (2 * t + 1 - (h - s)) for s in range(1, h))
    return Fraction(4, q * q * h) * (A + B)


def sphere_packing_data_redundancy(q: int, k: int, t: int) -> int:
    """Smallest r with q^r >= V_t^(k+r)."""
    if q < 2 or k < 0 or t < 0:
        raise DomainError(f"need q >= 2, k >= 0, t >= 0, got q={q}, k={k}, t={t}")
    r = 0
    while q**r < lee_sphere_volume(k + r, t, q):
        r += 1
    return r


def sphere_packing_function_redundancy(q: int, E: int, t: int) -> int:
    """Smallest n with q^n >= E * V_t^(n)."""
    if E < 1:
        raise DomainError(f"expressiveness must be >= 1, got {E}")
    if q < 2 or t < 0:
        raise DomainError(f"need q >= 2, t >= 0, got q={q}, t={t}")
    n = 0
    while q**n < E * lee_sphere_volume(n, t, q):
        n += 1
    return n


@dataclass
class BoundReport:
    function: str
    q: int
    k: int
    t: int
    T: int | None
    lam: int | None
    E: int
    fclc: int
    fclc_upper_bound: bool
    lower: Fraction
    lower_source: str
    data: int
    fn_values: int
    optimal: bool
    construction_verified: bool | None = None
    notes: list[str] = field(default_factory=list)

    COLUMNS = ("function", "q", "k", "t", "T", "lambda", "E", "data", "fn_values", "fclc",
               "fclc_upper_bound", "lower", "lower_decimal", "lower_source", "optimal",
               "construction_verified", "notes")

    def row(self) -> dict:
        return {
            "function": self.function, "q": self.q, "k": self.k, "t": self.t, "T": self.T,
            "lambda": self.lam, "E": self.E, "data": self.data, "fn_values": self.fn_values,
            "fclc": self.fclc, "fclc_upper_bound": self.fclc_upper_bound,
            "lower": str(self.lower), "lower_decimal": f"{float(self.lower):.3f}",
            "lower_source": self.lower_source, "optimal": self.optimal,
            "construction_verified": self.construction_verified, "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.row(), sort_keys=False)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BoundReport.COLUMNS)
    for rep in reports:
        row = rep.row()
        row["notes"] = " | ".join(row["notes"])
        w.writerow(["" if row[c] is None else row[c] for c in BoundReport.COLUMNS])
    return buf.getvalue()


def reports_to_json(reports) -> str:
    return json.dumps([rep.row() for rep in reports], indent=2)


def _construction_for(f: TargetFunction, lam: int | None) -> str:
    if f.kind == "lee-weight":
        return "lee-weight"
    if f.kind == "weight-distribution":
        return "wdist"
    if f.kind == "modular-sum":
        return "modsum"
    if lam is None:
        raise UnsupportedParametersError(f"{f.spec} has no dedicated construction; pass lambda for the local one")
    return "local"


def _lower_bound(f: TargetFunction, t: int, E: int, cap: int) -> tuple[Fraction, str]:
    q, k = f.q, f.k
    if E < 2 or t == 0:
        return Fraction(0), "trivial"
    if f.kind == "lee-weight" and _lee_weight_regime(q, t):
        return bound_lee_weight(q, k, t), "closed-form"
    if f.kind == "weight-distribution" and E == 2 and q >= 6:
        return bound_wdist_binary(q, t), "closed-form"
    if f.kind == "modular-sum" and _modsum_regime(q, t):
        return bound_modsum(q, t), "closed-form"
    try:
        return plotkin_lower_bound(function_distance_matrix(f, t, cap), q).value, "plotkin-fdm"
    except CapExceededError:
        return Fraction(binary_redundancy_floor(q, t)), "binary-floor"


def comparison_report(function: str | TargetFunction, q: int, k: int, t: int, T: int | None = None,
                      lam: int | None = None, verify: bool = False, cap: int = DEFAULT_CAP,
                      table_path: str | None = None) -> BoundReport:
    """One comparison row. ``function`` is a spec string (``lee-weight``, ``wdist``, ``modsum``,
    ``proj:i``, ``table:path``) or a TargetFunction; ``wdist`` takes T from the argument."""
    if isinstance(function, TargetFunction):
        f = function
    elif function.strip().lower() == "wdist":
        if T is None:
            raise UnsupportedParametersError("wdist needs T")
        f = TargetFunction.weight_distribution(q, k, T)
    else:
        f = parse_function_spec(function, q, k, table_path, cap)
    if f.kind == "weight-distribution":
        T = f.param
    cons = _construction_for(f, lam)
    E = expressiveness(f, cap)
    # the local row counts decoding regions by lambda rather than by |Im f|
    regions = lam if cons == "local" else E
    r = redundancy_of(cons, q, k, t, T=T, lam=lam)
    upper = cons == "wdist" and E > 2
    lower, source = _lower_bound(f, t, E, cap)
    notes = []
    n_fn = sphere_packing_function_redundancy(q, regions, t)
    if n_fn > 0 and q**n_fn == regions * lee_sphere_volume(n_fn, t, q):
        notes.append(f"function-value sphere-packing bound met with equality at n={n_fn} "
                     f"(q^n = E*V_t^(n) = {q**n_fn}); a strict-inequality reading gives {n_fn + 1}")
    if lower > r:
        notes.append(f"lower bound {lower} exceeds the construction redundancy {r}")
    verified = None
    if verify:
        cb = construct(cons, q, k, t, T=T, lam=lam, function=f, cap=cap)
        res = verify_fclc(cb)
        verified = res.ok
        if not res.ok:
            a, b = res.witness
            notes.append(f"constructed codebook violates 2t+1 separation, e.g. messages {a} and {b}")
    return BoundReport(
        function=f.spec if cons != "local" else f"local:{f.spec}", q=q, k=k, t=t, T=T, lam=lam, E=E,
        fclc=r, fclc_upper_bound=upper, lower=lower, lower_source=source,
        data=sphere_packing_data_redundancy(q, k, t), fn_values=n_fn,
        optimal=math.ceil(lower) == r, construction_verified=verified, notes=notes)
