"""Command line interface: ``fareycorona <subcommand> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or bad input.
JSON output writes big integers as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import suites
from .corona import CoronaError, Dna, dna_decode, dna_encode, enumerate_coronas, is_corona
from .equidistribution import local_spacing_check, s_n, totient_identity_table, trend_csv, trend_table
from .norms import Linear, Max, Norm, Power, build_corona
from .paths import FareyPath, PathError, enumerate_paths
from .zeckendorf import (
    bin_add,
    bin_bits,
    bin_decode,
    bin_encode,
    bin_mul,
    star_pattern_report,
    zeck_add,
    zeck_bits,
    zeck_decode,
    zeck_encode,
    zeck_mul,
    zeck_render,
)


class UsageError(Exception):
    pass


def parse_norm(text: str) -> Norm:
    """``linear:A,B`` (rationals allowed), ``power:P`` or ``max``."""
    kind, _, args = text.partition(":")
    try:
        if kind == "linear":
            a, b = (Fraction(s) for s in args.split(",")) if args else (1, 1)
            return Linear(a, b)
        if kind == "power":
            return Power(int(args or 2))
        if kind == "max" and not args:
            return Max()
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad norm {text!r}: {exc}") from exc
    raise UsageError(f"unknown norm {text!r}; use linear:A,B, power:P or max")


def _jsonable(x):
    return suites._jsonable(x)


def _emit(obj, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps(_jsonable(obj), indent=2))
    else:
        print(text if text is not None else json.dumps(_jsonable(obj)))


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _pts(vs) -> str:
    return " ".join(f"{v.y}/{v.x}" for v in vs)


# -- subcommands ---------------------------------------------------------------

def _norm_from_args(args) -> Norm:
    picked = [
        args.norm is not None,
        args.alpha is not None or args.beta is not None,
        args.p is not None,
        args.max,
    ]
    if sum(picked) > 1:
        raise UsageError("give one of --norm, --alpha/--beta, --p or --max")
    if args.alpha is not None or args.beta is not None:
        a = args.alpha if args.alpha is not None else Fraction(1)
        b = args.beta if args.beta is not None else Fraction(1)
        if a <= 0 or b <= 0:
            raise UsageError("--alpha and --beta must be positive")
        return Linear(a, b)
    if args.p is not None:
        if args.p < 1:
            raise UsageError("--p must be >= 1")
        return Power(args.p)
    if args.max:
        return Max()
    return parse_norm(args.norm or "linear:1,1")


def cmd_build(args) -> int:
    norm = _norm_from_args(args)
    if args.R <= 0:
        raise UsageError("--r must be positive")
    c = build_corona(norm, Fraction(args.R), max_size=args.max_size)
    dna = dna_encode(c)
    out = {
        "norm": str(norm),
        "R": str(args.R),
        "vertices": len(c.interior),
        "degree": c.degree,
        "height": c.height,
        "level_degrees": [lv.degree for lv in c.tower],
        "path": c.path.to_json(),
        "dna": dna.to_json(),
    }
    if args.format == "text":
        lines = [f"{norm}  R={args.R}  vertices={len(c.interior)}  degree={c.degree}  height={c.height}"]
        for n, lv in enumerate(c.tower):
            lines.append(f"level {n} (degree {lv.degree}): {_pts(lv.interior)}")
        lines.append(f"dna: {[list(layer) for layer in dna.layers]}")
        _emit(out, "text", "\n".join(lines))
    else:
        _emit(out, "json")
    return 0


def cmd_verify(args) -> int:
    names = list(suites.SUITES) if not args.suite or "all" in args.suite else args.suite
    unknown = [n for n in names if n not in suites.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {list(suites.SUITES)}")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    overrides = {}
    for flag in ("r_max", "n_max", "limit"):
        val = getattr(args, flag)
        if val is not None:
            if val < 1:
                raise UsageError(f"--{flag.replace('_', '-')} must be >= 1")
            overrides[flag] = val
    if args.alpha is not None or args.beta is not None:
        ab = (args.alpha or Fraction(1), args.beta or Fraction(1))
        if min(ab) <= 0:
            raise UsageError("--alpha and --beta must be positive")
        overrides["grid"] = [ab]
    results = []
    for name in names:
        kw = dict(suites.QUICK.get(name, {})) if args.quick else {}
        kw.update(overrides)
        r = suites.SUITES[name](jobs=args.jobs, seed=args.seed, **kw)
        results.append(r)
        if args.format == "text":
            print(r.line(args.timings), flush=True)
    if args.format == "json":
        print(json.dumps([r.to_json(args.timings) for r in results], indent=2))
    return 0 if all(r.passed for r in results) else 1


def parse_r_range(items, step: int | None) -> list[int] | None:
    """``--r 30 60`` lists values; ``--r 100..1000`` is a range stepped by ``--step``."""
    if not items:
        return None
    out: list[int] = []
    try:
        for item in items:
            if ".." in item:
                lo, hi = (int(t) for t in item.split(".."))
                if lo > hi:
                    raise UsageError(f"empty range {item}")
                out.extend(range(lo, hi + 1, step or 1))
            else:
                out.append(int(item))
    except ValueError as exc:
        raise UsageError(f"bad --r value: {exc}") from exc
    if step is not None and step < 1:
        raise UsageError("--step must be >= 1")
    if any(R < 1 for R in out):
        raise UsageError("--r values must be positive")
    return out


def cmd_stats(args) -> int:
    Rs_arg = parse_r_range(args.R, args.step)
    if args.r_max is not None:
        if args.r_max < 1:
            raise UsageError("--r-max must be >= 1")
        Rs_arg = (Rs_arg or []) + [args.r_max]
    if args.n is not None and args.n < 1:
        raise UsageError("--n-max must be >= 1")
    args.R = Rs_arg
    if args.kind in ("trends", "delta"):
        Rs = args.R or list(range(100, 2001, 100))
        rows = trend_table(Rs)
        if args.format == "csv":
            sys.stdout.write(trend_csv(rows))
        elif args.format == "json":
            _emit(rows, "json")
        else:
            for r in rows:
                print(f"R={r['R']:5d}  delta1={float(r['delta1']):.6f}  delta2={float(r['delta2']):.3e}"
                      f"  delta2*R/logR={r['delta2_R_over_logR']:.4f}")
    elif args.kind == "sn":
        rows = [{"n": n, "S": s_n(n)} for n in range(1, (args.n or 8) + 1)]
        if args.format == "csv":
            print("n,num,den,decimal")
            for r in rows:
                print(f"{r['n']},{r['S'].numerator},{r['S'].denominator},{float(r['S']):.12g}")
        elif args.format == "json":
            _emit(rows, "json")
        else:
            for r in rows:
                print(f"S_{r['n']} = {r['S']}  ({float(r['S']):.6g})")
    elif args.kind == "totient":
        R = max(args.R) if args.R else 1000
        rows = totient_identity_table(R)
        if args.format == "csv":
            print("R,totient_sum,corona_count_plus_one,equal")
            for row in rows:
                print(",".join(str(v) for v in row))
            return 0 if all(row[3] for row in rows) else 1
        elif args.format == "json":
            _emit([dict(zip(("R", "totient_sum", "count_plus_one", "equal"), row)) for row in rows], "json")
            return 0 if all(row[3] for row in rows) else 1
        else:
            bad = [row[0] for row in rows if not row[3]]
            print(f"checked R=1..{R}: " + ("all equal" if not bad else f"mismatch at {bad}"))
            return 1 if bad else 0
    elif args.kind == "spacing":
        Rs = args.R or [10, 50, 100]
        rows = [dict(R=R, **local_spacing_check(R)) for R in Rs]
        if args.format == "text":
            for r in rows:
                print(f"R={r['R']}: shifted ok={r['shifted']['ok']}  literal ok={r['literal']['ok']}")
        else:
            _emit(rows, "json")
    return 0


def cmd_zeck(args) -> int:
    if args.op in ("star", "star-report"):
        n, m = sorted(args.values)
        rep = star_pattern_report(n, m)
        if args.format == "json":
            _emit(rep, "json")
        else:
            print(f"phi^{n} * phi^{m} = {rep['product']} = {zeck_render(rep['zeckendorf'])}")
            for conv in rep["conventions"]:
                verdict = "match" if conv["match"] else "differs"
                print(f"  offset {conv['offset']}, {conv['tail']}: {conv['value']} vs {conv['product']}  {verdict}")
            print("matching readings: " + (", ".join(f"offset {o}, {t}" for o, t in rep["matching"]) or "none"))
        return 0
    if any(v < 1 for v in args.values):
        raise UsageError("operands must be positive integers")
    binary = args.base == "binary"
    enc, dec = (bin_encode, bin_decode) if binary else (zeck_encode, zeck_decode)
    bits = bin_bits if binary else zeck_bits
    ops = {"add": bin_add if binary else zeck_add, "mul": bin_mul if binary else zeck_mul}
    if args.op in ("encode", "expand"):
        if len(args.values) != 1:
            raise UsageError("encode takes one integer")
        res = enc(args.values[0])
    else:
        if len(args.values) != 2:
            raise UsageError(f"{args.op} takes two integers")
        res = ops[args.op](enc(args.values[0]), enc(args.values[1]))
    render = "+".join(f"2^{k}" for k in res) if binary else zeck_render(res)
    out = {"base": args.base, "exponents": res, "bits": bits(res), "render": render, "value": dec(res)}
    if args.format == "json":
        _emit(out, "json")
    else:
        print(f"{out['value']} = {bits(res)} = {render} (exponents {res})")
    return 0


def cmd_enumerate(args) -> int:
    if args.max_degree < 1:
        raise UsageError("--max-degree must be >= 1")
    if args.kind == "coronas":
        levels = enumerate_coronas(args.max_degree, with_edges=False).levels
    else:
        levels = enumerate_paths(args.max_degree)
    if args.format == "json":
        out = {"kind": args.kind, "counts": {m: len(v) for m, v in levels.items()}}
        if args.list:
            out["items"] = {m: [p.to_json()["interior"] for p in v] for m, v in levels.items()}
        _emit(out, "json")
    elif args.format == "csv":
        print("degree,count")
        for m, v in levels.items():
            print(f"{m},{len(v)}")
    else:
        for m, v in levels.items():
            print(f"degree {m}: {len(v)}")
            if args.list:
                for p in v:
                    print("  " + _pts(p.interior))
    return 0


def cmd_dna(args) -> int:
    data = _read_json(args.input)
    try:
        if args.op == "encode":
            p = FareyPath.from_json(data)
            if not is_corona(p):
                raise UsageError("input path is not a corona")
            out = dna_encode(p).to_json()
        elif args.op == "decode":
            out = dna_decode(Dna.from_json(data)).path.to_json()
        else:
            if "layers" in data:
                d = Dna.from_json(data)
                back = dna_encode(dna_decode(d))
                ok = back == d
            else:
                p = FareyPath.from_json(data)
                if not is_corona(p):
                    raise UsageError("input path is not a corona")
                ok = dna_decode(dna_encode(p)).path == p
            out = {"round_trip": ok}
            _emit(out, args.format)
            return 0 if ok else 1
    except (KeyError, TypeError, PathError, CoronaError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"bad input: {exc}") from exc
    _emit(out, "json" if args.format == "json" else "text")
    return 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fareycorona", description="Farey paths, coronas and their statistics.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("json", "text"), default="text"):
        sp.add_argument("--format", choices=choices, default=default)

    b = sub.add_parser("build", help="build the corona c(|.| <= R) for a norm")
    b.add_argument("--norm", help="linear:A,B | power:P | max (default linear:1,1)")
    b.add_argument("--alpha", type=Fraction, help="linear norm alpha*x + beta*y")
    b.add_argument("--beta", type=Fraction)
    b.add_argument("--p", type=int, help="power norm (x^p + y^p)^(1/p)")
    b.add_argument("--max", action="store_true", help="max norm")
    b.add_argument("--r", "--R", dest="R", type=Fraction, required=True)
    b.add_argument("--max-size", type=int, default=None, help="refuse to walk past this x+y")
    fmt(b)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", nargs="*", help=f"suite names or 'all' ({', '.join(suites.SUITES)})")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--quick", action="store_true", help="reduced ranges for a fast smoke run")
    v.add_argument("--alpha", type=Fraction, help="restrict linear-norm suites to one (alpha, beta)")
    v.add_argument("--beta", type=Fraction)
    v.add_argument("--r-max", dest="r_max", type=int)
    v.add_argument("--n-max", dest="n_max", type=int)
    v.add_argument("--limit", type=int, help="exhaustive bound of the zeck suite")
    v.add_argument("--timings", action="store_true", help="include wall-clock seconds in the report")
    fmt(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="discrepancy trends, S_n values, totient counts, endpoint spacing")
    s.add_argument("kind", choices=("delta", "trends", "sn", "totient", "spacing"))
    s.add_argument("--r", "--R", dest="R", nargs="+", help="values, or a range A..B")
    s.add_argument("--step", type=int, help="step for an A..B range")
    s.add_argument("--r-max", dest="r_max", type=int)
    s.add_argument("--n-max", "--n", dest="n", type=int)
    fmt(s, ("json", "csv", "text"), "csv")
    s.set_defaults(func=cmd_stats)

    z = sub.add_parser("zeck", help="Zeckendorf or binary arithmetic")
    z.add_argument("op", choices=("expand", "encode", "add", "mul", "star-report", "star"))
    z.add_argument("values", type=int, nargs="+")
    z.add_argument("--base", choices=("zeckendorf", "binary"), default="zeckendorf")
    fmt(z)
    z.set_defaults(func=cmd_zeck)

    e = sub.add_parser("enumerate", help="count or list paths or coronas by degree")
    e.add_argument("--kind", choices=("coronas", "paths"), default="coronas")
    e.add_argument("--max-degree", type=int, required=True)
    e.add_argument("--list", action="store_true")
    fmt(e, ("json", "csv", "text"))
    e.set_defaults(func=cmd_enumerate)

    d = sub.add_parser("dna", help="encode, decode or round-trip a corona's d.n.a. (JSON files)")
    d.add_argument("op", choices=("encode", "decode", "roundtrip"))
    d.add_argument("--input", default="-", help="JSON file, '-' for stdin")
    fmt(d, default="json")
    d.set_defaults(func=cmd_dna)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, PathError, CoronaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
