"""JSON command-line front end.

Exit status: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from typing import Optional, Sequence

from .eisenstein import (
    EisSymbol,
    eisenstein_qexp,
    lattice_sum_extrapolated,
    lattice_sum_numeric,
    terms_for,
)
from .levelstruct import sweep_diagram
from .modgroup import ResMat, UniMat, matrix_to_json, parse_matrix, reduce_mod, sl2_lift
from .qexpansion import qexp_from_json, qexp_to_json, series_galois
from .shimura import (
    DEFAULT_PREC,
    FormExpr,
    expand,
    form_from_json,
    form_galois,
    form_slash,
    sweep_theorem,
    verify_theorem,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMMANDS = ("eisenstein", "slash", "galois", "lift", "verify-theorem",
            "verify-diagram", "oracle", "sweep")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _matrix(text: str) -> tuple[int, int, int, int]:
    try:
        return parse_matrix(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _complex(text: str) -> complex:
    try:
        re, im = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im got {text!r}")
    return complex(re, im)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _add_symbol_args(p: argparse.ArgumentParser, need_prec: bool = True) -> None:
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--c1", type=int, default=0)
    p.add_argument("--c2", type=int, default=0)
    p.add_argument("--form", help="FormExpr JSON file ('-' for stdin) instead of a single symbol")
    if need_prec:
        p.add_argument("--prec", type=int, default=DEFAULT_PREC)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shimura-kit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_symbol_args(sub.add_parser("eisenstein", help="exact q-expansion of E_k^(c1,c2)"))

    p = sub.add_parser("slash", help="q-expansion of f|g")
    _add_symbol_args(p)
    p.add_argument("--g", type=_matrix, required=True)

    p = sub.add_parser("galois", help="q-expansion of f^sigma_lambda")
    _add_symbol_args(p)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--qexp", help="apply to a QExpansion JSON file ('-' for stdin)")

    p = sub.add_parser("lift", help="lift a matrix mod N to SL2(Z)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--g", type=_matrix, required=True)

    p = sub.add_parser("verify-theorem", help="check (f|g)^sigma = f^sigma | g_lambda")
    _add_symbol_args(p)
    p.add_argument("--g", type=_matrix, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--lift", type=_matrix, help="explicit lift to use for g_lambda")

    p = sub.add_parser("verify-diagram", help="exhaustive finite check of the level-structure diagram")
    p.add_argument("--N", type=int)
    p.add_argument("--max-N", dest="max_n", type=int)
    p.add_argument("--samples", type=int, default=0,
                   help="extra random level structures per matrix")

    p = sub.add_parser("oracle", help="compare series evaluation with the lattice sum")
    _add_symbol_args(p, need_prec=False)
    p.add_argument("--tau", type=_complex, required=True)
    p.add_argument("--cutoff", type=int, default=400)
    p.add_argument("--rtol", type=float, default=1e-6)

    p = sub.add_parser("sweep", help="theorem sweep over the Eisenstein corpus")
    p.add_argument("--levels", type=_int_list, default=[3, 4, 5, 7])
    p.add_argument("--prec", type=int, default=DEFAULT_PREC)
    p.add_argument("--random", dest="n_random", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _form(args) -> FormExpr:
    if args.form:
        f = form_from_json(_read_json(args.form))
        if f.level != args.N:
            raise ValueError(f"form has level {f.level}, expected {args.N}")
        return f
    if args.k is None:
        raise UsageError("either --k (with --c1/--c2) or --form is required")
    return FormExpr.symbol(EisSymbol(args.N, args.k, args.c1, args.c2))


def _unit(lam: int, N: int) -> int:
    if math.gcd(lam, N) != 1:
        raise ValueError(f"lambda={lam} is not a unit modulo {N}")
    return lam


def _report(command: str, inputs: dict, status: str, payload, certified_range=None) -> dict:
    out = {"command": command, "inputs": inputs, "status": status, "payload": payload}
    if certified_range is not None:
        out["certified_range"] = list(certified_range)
    return out


def _inputs(args) -> dict:
    skip = {"command"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        if isinstance(v, complex):
            v = [v.real, v.imag]
        elif isinstance(v, tuple):
            v = list(v)
        out[k] = v
    return out


def _cmd_eisenstein(args) -> tuple[dict, int]:
    f = expand(_form(args), args.prec)
    return _report("eisenstein", _inputs(args), "value", qexp_to_json(f),
                   (f.order_min, f.prec)), EXIT_OK


def _cmd_slash(args) -> tuple[dict, int]:
    g = UniMat(*args.g)
    f = expand(form_slash(_form(args), g), args.prec)
    return _report("slash", _inputs(args), "value", qexp_to_json(f),
                   (f.order_min, f.prec)), EXIT_OK


def _cmd_galois(args) -> tuple[dict, int]:
    lam = _unit(args.lam, args.N)
    if args.qexp:
        series = qexp_from_json(_read_json(args.qexp))
        if series.level != args.N:
            raise ValueError(f"series has level {series.level}, expected {args.N}")
        f = series_galois(lam, series)
    else:
        f = expand(form_galois(_form(args), lam), args.prec)
    return _report("galois", _inputs(args), "value", qexp_to_json(f),
                   (f.order_min, f.prec)), EXIT_OK


def _cmd_lift(args) -> tuple[dict, int]:
    gbar = ResMat(args.N, *args.g)
    g = sl2_lift(gbar)
    payload = {"lift": matrix_to_json(g), "residue": list(reduce_mod(g, args.N).entries)}
    return _report("lift", _inputs(args), "value", payload), EXIT_OK


def _cmd_verify_theorem(args) -> tuple[dict, int]:
    lam = _unit(args.lam, args.N)
    lift = UniMat(*args.lift) if args.lift else None
    rep = verify_theorem(_form(args), UniMat(*args.g), lam, args.prec, lift=lift)
    payload = {
        "equal": rep.equal,
        "g_lambda": matrix_to_json(rep.g_lam),
        "lhs": qexp_to_json(rep.lhs),
        "rhs": qexp_to_json(rep.rhs),
        "certified_range": list(rep.comparison.certified_range),
        "witness": rep.witness(),
    }
    status = "pass" if rep.equal else "fail"
    return (_report("verify-theorem", _inputs(args), status, payload,
                    rep.comparison.certified_range),
            EXIT_OK if rep.equal else EXIT_FAIL)


def _cmd_verify_diagram(args) -> tuple[dict, int]:
    if args.max_n is not None:
        levels = range(2, args.max_n + 1)
    elif args.N is not None:
        levels = [args.N]
    else:
        raise UsageError("verify-diagram needs --N or --max-N")
    if min(levels, default=2) < 1:
        raise ValueError("levels must be positive")
    rep = sweep_diagram(levels, samples=args.samples)
    return (_report("verify-diagram", _inputs(args), "pass" if rep.ok else "fail", rep.to_json()),
            EXIT_OK if rep.ok else EXIT_FAIL)


def _cmd_oracle(args) -> tuple[dict, int]:
    if args.k is None:
        raise UsageError("oracle needs --k")
    sym = EisSymbol(args.N, args.k, args.c1, args.c2)
    tau = args.tau
    series_value = eisenstein_qexp(sym, terms_for(tau, sym.level, sym.weight)).eval_numeric(tau)
    plain = lattice_sum_numeric(sym, tau, args.cutoff)
    extrap = lattice_sum_extrapolated(sym, tau, args.cutoff)
    ok = cmath.isclose(series_value, extrap, rel_tol=args.rtol, abs_tol=1e-12)
    scale = max(abs(series_value), abs(extrap), 1e-300)
    payload = {
        "series": [series_value.real, series_value.imag],
        "lattice_box": [plain.real, plain.imag],
        "lattice_extrapolated": [extrap.real, extrap.imag],
        "rel_error_box": abs(series_value - plain) / scale,
        "rel_error_extrapolated": abs(series_value - extrap) / scale,
    }
    return (_report("oracle", _inputs(args), "pass" if ok else "fail", payload),
            EXIT_OK if ok else EXIT_FAIL)


def _cmd_sweep(args) -> tuple[dict, int]:
    rep = sweep_theorem(args.levels, args.prec, args.n_random, args.seed)
    return (_report("sweep", _inputs(args), "pass" if rep.ok else "fail", rep.to_json(),
                    (0, args.prec)),
            EXIT_OK if rep.ok else EXIT_FAIL)


_DISPATCH = {
    "eisenstein": _cmd_eisenstein,
    "slash": _cmd_slash,
    "galois": _cmd_galois,
    "lift": _cmd_lift,
    "verify-theorem": _cmd_verify_theorem,
    "verify-diagram": _cmd_verify_diagram,
    "oracle": _cmd_oracle,
    "sweep": _cmd_sweep,
}


def run(argv: Sequence[str]) -> tuple[Optional[dict], int]:
    """Parse and execute; returns (report, exit status).  Report is None on usage errors."""
    try:
        args = build_parser().parse_args(list(argv))
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"shimura-kit: usage error: {exc}", file=sys.stderr)
        return None, EXIT_USAGE
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"shimura-kit: input error: {exc}", file=sys.stderr)
        return None, EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    report, status = run(sys.argv[1:] if argv is None else argv)
    if report is not None:
        json.dump(report, sys.stdout, sort_keys=True)
        sys.stdout.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
