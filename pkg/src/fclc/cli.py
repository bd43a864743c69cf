"""Command-line front end. Output is JSON (default) or CSV on stdout or --out."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .channel import LeeChannelModel, decode_function, exhaustive_decode_check, simulate
from .constructions import CONSTRUCTIONS, Codebook, construct, verify_fclc
from .errors import DEFAULT_CAP, CapExceededError, FCLCError, UnsupportedParametersError
from .functions import parse_function_spec
from .irregular import gv_upper_bound, plotkin_lower_bound, search_min_length
from .lee import ZqVector, lee_distance, lee_weight
from .matrices import DistanceMatrix, distance_requirement_matrix, function_distance_matrix, load_matrix
from .report import comparison_report, reports_to_csv

EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _vec_list(text: str, q: int) -> list[tuple[int, ...]]:
    return [ZqVector.parse(q, part).symbols for part in text.split(";") if part.strip()]


def _frac(x: Fraction) -> str:
    return str(x)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("FCLC_THREADS", "1"))


def _function(args):
    return parse_function_spec(args.function, args.q, args.k, args.table, args.cap)


def _matrix_csv(D: DistanceMatrix) -> str:
    lines = [",".join(str(x) for x in row) for row in D.entries]
    return "\n".join(lines) + "\n"


def cmd_dist(args):
    return lee_distance(ZqVector.parse(args.q, args.x), ZqVector.parse(args.q, args.y))


def cmd_weight(args):
    return lee_weight(ZqVector.parse(args.q, args.vector))


def cmd_matrix_drm(args):
    return distance_requirement_matrix(_function(args), args.t, _vec_list(args.vectors, args.q))


def cmd_matrix_fdm(args):
    return function_distance_matrix(_function(args), args.t, args.cap)


def _matrix_q(args, D: DistanceMatrix) -> int:
    q = args.q if args.q is not None else D.q
    if q is None:
        raise UnsupportedParametersError("modulus not given by --q or the matrix file")
    return q


def cmd_nl_search(args):
    D = load_matrix(args.matrix)
    q = _matrix_q(args, D)
    res = search_min_length(D, q, args.r_max, args.cap)
    out = {"N_L": res.length,
           "witness": None if res.witness is None else [list(w) for w in res.witness.codewords]}
    if D.size >= 2:
        out["plotkin"] = _frac(plotkin_lower_bound(D, q).value)
        out["gv"] = gv_upper_bound(D, q, args.gv_policy)
    return out


def cmd_nl_bounds(args):
    D = load_matrix(args.matrix)
    q = _matrix_q(args, D)
    p = plotkin_lower_bound(D, q)
    return {"plotkin": _frac(p.value), "plotkin_ceiling": p.ceiling, "gv": gv_upper_bound(D, q, args.gv_policy)}


def cmd_encode(args):
    f = _function(args) if args.construction == "local" else None
    return construct(args.construction, args.q, args.k, args.t, T=args.T, lam=args.lam, function=f, cap=args.cap)


def _verification(res) -> dict:
    return {"ok": res.ok, "witness": None if res.witness is None else [list(x) if isinstance(x, tuple) else x
                                                                      for x in res.witness]}


def cmd_verify(args):
    return _verification(verify_fclc(Codebook.load(args.codebook), args.t))


def cmd_decode(args):
    cb = Codebook.load(args.codebook)
    return decode_function(cb, ZqVector.parse(cb.q, args.y))


def cmd_check_exhaustive(args):
    cb = Codebook.load(args.codebook)
    return _verification(exhaustive_decode_check(cb, args.t, args.cap, _threads(args)))


def cmd_simulate(args):
    cb = Codebook.load(args.codebook)
    if args.model:
        model = LeeChannelModel.load(args.model)
    elif args.p:
        model = LeeChannelModel(cb.q, tuple(float(x) for x in args.p.split(",")), args.seed)
    else:
        raise UnsupportedParametersError("simulate needs --model or --p")
    if args.seed is not None and args.model:
        model = LeeChannelModel(model.q, model.p, args.seed)
    return simulate(cb, model, args.trials)


def cmd_compare(args):
    reps = []
    for t in args.t_list:
        reps.append(comparison_report(args.function, args.q, args.k, t, T=args.T, lam=args.lam,
                                      verify=args.verify, cap=args.cap, table_path=args.table))
    return reps


def _render(result, fmt: str) -> str:
    if isinstance(result, Codebook):
        return result.to_csv() if fmt == "csv" else result.to_json() + "\n"
    if isinstance(result, DistanceMatrix):
        return _matrix_csv(result) if fmt == "csv" else result.to_json() + "\n"
    if isinstance(result, list) and result and hasattr(result[0], "row"):
        if fmt == "csv":
            return reports_to_csv(result)
        rows = [r.row() for r in result]
        return json.dumps(rows[0] if len(rows) == 1 else rows, indent=2) + "\n"
    if fmt == "csv" and isinstance(result, dict):
        keys = list(result)
        vals = [json.dumps(v) if isinstance(v, (list, dict)) else ("" if v is None else str(v))
                for v in result.values()]
        return ",".join(keys) + "\n" + ",".join(f'"{v}"' if "," in v else v for v in vals) + "\n"
    if fmt == "csv":
        return f"{result}\n"
    return json.dumps(result, indent=2 if isinstance(result, dict) else None) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fclc", description="Function-correcting codes in the Lee metric.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, *flags):
        sp = sub.add_parser(name)
        sp.set_defaults(func=fn)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
        for flag in flags:
            flag(sp)
        return sp

    q_req = lambda sp: sp.add_argument("--q", type=int, required=True)
    q_opt = lambda sp: sp.add_argument("--q", type=int)
    k_req = lambda sp: sp.add_argument("--k", type=int, required=True)
    t_req = lambda sp: sp.add_argument("--t", type=int, required=True)
    t_opt = lambda sp: sp.add_argument("--t", type=int)
    big_t = lambda sp: sp.add_argument("--T", type=int)
    lam = lambda sp: sp.add_argument("--lambda", dest="lam", type=int)

    def fn_flag(required):
        def f(sp):
            sp.add_argument("--function", required=required, default=None if required else "lee-weight")
            sp.add_argument("--table")
        return f

    matrix = lambda sp: sp.add_argument("--matrix", required=True)
    gv = lambda sp: sp.add_argument("--gv-policy", choices=("identity", "all"), default="identity")
    codebook = lambda sp: sp.add_argument("--codebook", required=True)
    threads = lambda sp: sp.add_argument("--threads", type=int)

    def xy(sp):
        sp.add_argument("--x", required=True)
        sp.add_argument("--y", required=True)

    add("dist", cmd_dist, q_req, xy)
    add("weight", cmd_weight, q_req, lambda sp: sp.add_argument("--vector", required=True))
    add("matrix-drm", cmd_matrix_drm, q_req, k_req, t_req, fn_flag(True),
        lambda sp: sp.add_argument("--vectors", required=True, help="semicolon-separated, e.g. 0,0;1,2"))
    add("matrix-fdm", cmd_matrix_fdm, q_req, k_req, t_req, fn_flag(True))
    add("nl-search", cmd_nl_search, q_opt, matrix, gv, lambda sp: sp.add_argument("--r-max", type=int, default=8))
    add("nl-bounds", cmd_nl_bounds, q_opt, matrix, gv)
    add("encode", cmd_encode, q_req, k_req, t_req, big_t, lam, fn_flag(False),
        lambda sp: sp.add_argument("--construction", choices=CONSTRUCTIONS, required=True))
    add("verify", cmd_verify, codebook, t_opt)
    add("decode", cmd_decode, codebook, lambda sp: sp.add_argument("--y", required=True))
    add("check-exhaustive", cmd_check_exhaustive, codebook, t_opt, threads)

    def sim(sp):
        sp.add_argument("--model")
        sp.add_argument("--p", help="comma-separated p_0..p_M")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--trials", type=int, default=10_000)

    add("simulate", cmd_simulate, codebook, sim, threads)

    def cmp_flags(sp):
        sp.add_argument("--t", dest="t_list", type=int, nargs="+", required=True)
        sp.add_argument("--verify", action="store_true")

    add("compare", cmd_compare, q_req, k_req, big_t, lam, fn_flag(True), cmp_flags, threads)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "simulate" and args.seed is None and not args.model:
        args.seed = 0
    try:
        result = args.func(args)
        text = _render(result, args.format)
    except CapExceededError as exc:
        print(f"fclc: cap exceeded: {exc}", file=sys.stderr)
        return exc.exit_code
    except FCLCError as exc:
        print(f"fclc: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError, KeyError) as exc:
        print(f"fclc: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
