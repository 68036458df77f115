"""Command-line front end: deterministic text, JSON, and LaTeX emitters."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .arith import CohPoly, as_prime
from .closedform import series_H
from .complexes import build_C, duality_witness, homology_poly
from .hooks import hook_poly
from .koszul import export_K, import_K, koszul_dims, predicted_tail, sample_generic_K, verified_dims
from .ranks import BudgetExceeded
from .schur import RouteMismatchError, parse_shape, stable_cohomology


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"ERROR 2: {message}", file=sys.stderr)
        raise SystemExit(2)


def _build_parser() -> _Parser:
    parser = _Parser(prog="stablecoh",
                     description="Stable cohomology polynomials of Schur functor bundles mod p")
    sub = parser.add_subparsers(dest="verb", required=True)

    coh = sub.add_parser("coh", help="cohomology polynomial of a shape")
    coh.add_argument("shape", help="sym:6 | wedge:5 | trunc:6 | hook:4,3 | twocol:6,3 | ribbon:3,1,1,2 | weight:-7,4,1,1,1")
    coh.add_argument("--p", required=True, type=int, help="prime characteristic")
    cross = coh.add_mutually_exclusive_group()
    cross.add_argument("--cross", dest="cross", action="store_true", default=True,
                       help="cross-validate all applicable routes (default)")
    cross.add_argument("--no-cross", dest="cross", action="store_false")
    coh.add_argument("--format", choices=("text", "json", "latex"), default="text")

    ser = sub.add_parser("series", help="hook polynomials packaged as a truncated series")
    ser.add_argument("--b", required=True, type=int)
    ser.add_argument("--p", required=True, type=int)
    ser.add_argument("--umax", type=int, default=30)
    ser.add_argument("--format", choices=("text", "json"), default="text")

    cpx = sub.add_parser("complex", help="build a weighted-path complex and print its homology")
    cpx.add_argument("--w", required=True, help="comma-separated vertex weights, e.g. 2,1,1 or 1,1,1,-10")
    cpx.add_argument("--p", required=True, type=int)
    cpx.add_argument("--dump", help="write the nonzero differential entries to this file")
    cpx.add_argument("--format", choices=("text", "json"), default="text")

    dua = sub.add_parser("duality", help="entry-for-entry duality witness between the two complex families")
    dua.add_argument("--m", required=True, type=int)
    dua.add_argument("--d", required=True, type=int)
    dua.add_argument("--p", required=True, type=int)

    koz = sub.add_parser("koszul", help="Hilbert function of a random Koszul module")
    koz.add_argument("--n", required=True, type=int)
    koz.add_argument("--m", type=int, help="dim K (default 2n-3)")
    koz.add_argument("--p", required=True, type=int)
    koz.add_argument("--seed", type=int, default=0)
    koz.add_argument("--jmax", type=int)
    koz.add_argument("--resample", action="store_true",
                     help="resample until the vanishing certificate holds")
    koz.add_argument("--export-k", metavar="FILE", help="write the K matrix as plain text")
    koz.add_argument("--import-k", metavar="FILE", help="read the K matrix instead of sampling")
    koz.add_argument("--format", choices=("text", "json"), default="text")

    tab = sub.add_parser("table", help="tables of stable polynomials")
    tab.add_argument("kind", choices=("hsym",))
    tab.add_argument("--amax", required=True, type=int)
    tab.add_argument("--primes", required=True, help="comma-separated primes, e.g. 2,3,5,7")
    tab.add_argument("--format", choices=("text", "json", "latex"), default="text")
    return parser


def _poly_out(poly: CohPoly, fmt: str) -> str:
    return poly.latex() if fmt == "latex" else poly.text()


def _run_coh(args) -> int:
    shape = parse_shape(args.shape)
    poly, report = stable_cohomology(shape, args.p, cross_validate=args.cross)
    if args.format == "json":
        doc = {
            "query": str(shape),
            "prime": report.prime,
            "polynomial": poly.pairs(),
            "routes": [
                {"name": r.name, "polynomial": r.poly.pairs(), "millis": round(r.millis, 3)}
                for r in report.routes
            ],
            "match": report.match,
        }
        print(json.dumps(doc))
    else:
        print(_poly_out(poly, args.format))
    return 0


def _run_series(args) -> int:
    if args.umax < 1:
        raise ValueError("--umax must be >= 1")
    series = series_H(args.b, args.p, args.umax)
    polys = []
    for a in range(1, args.umax + 1):
        coeff = series.u_coeff(a)
        if any(v < 0 for v in coeff.values()):
            raise AssertionError(f"negative coefficient at u^{a}")
        polys.append((a, CohPoly(coeff)))
    if args.format == "json":
        doc = {"b": args.b, "prime": as_prime(args.p), "umax": args.umax,
               "coefficients": [[a, poly.pairs()] for a, poly in polys]}
        print(json.dumps(doc))
    else:
        for a, poly in polys:
            print(f"u^{a}: {poly.text()}")
    return 0


def _run_complex(args) -> int:
    weights = tuple(int(tok) for tok in args.w.split(","))
    cpx = build_C(weights, args.p)
    prof = homology_poly(cpx)
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write("\n".join(cpx.dump_lines()) + "\n")
    if args.format == "json":
        doc = {"w": list(weights), "prime": cpx.p, "h": list(prof.ranks),
               "polynomial": prof.poly.pairs()}
        print(json.dumps(doc))
    else:
        print(f"P = {prof.poly.text()}")
        print("h =", " ".join(str(h) for h in prof.ranks))
    return 0


def _run_duality(args) -> int:
    witness = duality_witness(args.m, args.d, args.p)
    if not witness:
        print(f"ERROR 3: duality witness failed for (m,d)=({args.m},{args.d}) mod {args.p}: "
              f"{witness.detail}", file=sys.stderr)
        return 3
    print(f"duality witness holds for (m,d)=({args.m},{args.d}) mod {as_prime(args.p)}")
    return 0


def _run_koszul(args) -> int:
    n = args.n
    m = args.m if args.m is not None else 2 * n - 3
    if args.import_k:
        if args.resample:
            raise ValueError("--import-k and --resample are mutually exclusive")
        with open(args.import_k) as fh:
            inst = import_K(fh.read(), seed=args.seed)
        n, m = inst.n, inst.m
        tail = koszul_dims(inst, j_max=args.jmax)
    elif args.resample:
        inst, tail = verified_dims(n, m, args.p, args.seed, j_max=args.jmax)
    else:
        inst = sample_generic_K(n, m, args.p, args.seed)
        tail = koszul_dims(inst, j_max=args.jmax)
    if args.export_k:
        with open(args.export_k, "w") as fh:
            fh.write(export_K(inst))
    bound = 2 * n - 7
    generic = bound < 0 or bound >= len(tail.dims) or tail.dims[bound] == 0
    pred = predicted_tail(n, inst.p) if n >= 4 else None
    if args.format == "json":
        doc = {"n": n, "m": m, "prime": inst.p, "seed": inst.seed,
               "dims": list(tail.dims), "generic": generic}
        if pred:
            doc["predicted"] = {"j": pred.j_star, "dim": pred.dim,
                                "vanishing_bound": pred.vanishing_bound}
        print(json.dumps(doc))
    else:
        print(f"n={n} m={m} p={inst.p} seed={inst.seed}")
        print("dims:", " ".join(str(v) for v in tail.dims))
        print(f"generic: {'true' if generic else 'false'} (certificate: dim W_{bound} = 0)")
        if pred:
            observed = tail.dims[pred.j_star] if pred.j_star < len(tail.dims) else 0
            print(f"predicted tail: dim W_{pred.j_star} = {pred.dim} (observed {observed})")
    return 0


def _run_table(args) -> int:
    primes = [as_prime(int(tok)) for tok in args.primes.split(",")]
    amax = args.amax
    if amax < 1:
        raise ValueError("--amax must be >= 1")
    rows = [(a, [hook_poly(a, 0, p) for p in primes]) for a in range(1, amax + 1)]
    if args.format == "json":
        doc = {"amax": amax, "primes": primes,
               "rows": [{"a": a, "polynomials": [poly.pairs() for poly in polys]}
                        for a, polys in rows]}
        print(json.dumps(doc))
    elif args.format == "latex":
        cols = "|c" * (len(primes) + 1) + "|"
        print(f"\\begin{{tabular}}{{{cols}}}")
        print("\\hline")
        print(" & " + " & ".join(f"$p={p}$" for p in primes) + " \\\\ \\hline")
        for a, polys in rows:
            cells = " & ".join(f"${poly.latex()}$" for poly in polys)
            print(f"$H_{{{a},0}}$ & {cells} \\\\ \\hline")
        print("\\end{tabular}")
    else:
        print("a | " + " | ".join(f"p={p}" for p in primes))
        for a, polys in rows:
            print(f"{a} | " + " | ".join(poly.text() for poly in polys))
    return 0


_RUNNERS = {
    "coh": _run_coh,
    "series": _run_series,
    "complex": _run_complex,
    "duality": _run_duality,
    "koszul": _run_koszul,
    "table": _run_table,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _RUNNERS[args.verb](args)
    except RouteMismatchError as exc:
        print(f"ERROR 3: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError, BudgetExceeded, RuntimeError, OSError) as exc:
        print(f"ERROR 2: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
