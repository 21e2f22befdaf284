"""Command-line front end.

Exact numbers are printed as decimal integers or ``"num/den"`` strings. The
only floating-point output is the orbit CSV, whose approximate columns carry
an ``_approx`` suffix.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction

from . import buchholz, family, qrt, somos, triangle
from .errors import HeronError, InvariantViolation
from .exact import factorize, format_rational, parse_rational
from .search import SearchConfig, default_workers, run_search

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


def _fmt(q):
    return None if q is None else format_rational(q)


def _approx(q: Fraction, digits: int) -> str:
    return f"{float(q):.{digits}g}"


def _rationals(count: int):
    def parse(text: str) -> tuple[Fraction, ...]:
        parts = text.split(",")
        if len(parts) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated rationals, got {text!r}")
        return tuple(_rational(x) for x in parts)
    return parse


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _emit(obj, fmt: str, out) -> None:
    if fmt == "jsonl" and isinstance(obj, list):
        for item in obj:
            out.write(json.dumps(item, ensure_ascii=False) + "\n")
    else:
        out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_somos(args, out):
    if args.seed:
        seq = somos.SomosSequence.from_seed(parse_rational(x) for x in args.seed.split(","))
        seq = somos.somos5_extend(seq, max(0, args.to - seq.last_index))
        if args.backward:
            seq = somos.somos5_backward(seq, args.backward)
        lo = seq.first_index if args.backward else args.start
        terms = [seq[n] for n in range(lo, args.to + 1)]
    else:
        fn = somos.canonical_S if args.which == "S" else somos.canonical_T
        terms = [fn(n) for n in range(args.start, args.to + 1)]
    _emit([format_rational(x) for x in terms], "json", out)


def cmd_orbit(args, out):
    if args.somos:
        seq = somos.canonical_sequence(args.somos, args.steps + 8)
        first = 2 if args.somos == "S" else 3
        points = qrt.orbit_from_somos(seq, first, first + args.steps)
    else:
        points = qrt.orbit(qrt.PlanePoint(*args.start), args.steps)
    d = args.precision
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "U_approx", "V_approx", "J"])
        for i, p in enumerate(points):
            w.writerow([i, _approx(p.U, d), _approx(p.V, d), format_rational(qrt.invariant_J(p))])
        if args.curve:
            w.writerow([])
            w.writerow(["curve", "U_approx", "V_approx"])
            for u, v in qrt.curve_samples(args.curve_min, args.curve_max, args.curve_points):
                w.writerow(["curve", _approx(u, d), f"{v:.{d}g}"])
    else:
        rows = [
            {"n": i, "U": format_rational(p.U), "V": format_rational(p.V),
             "J": format_rational(qrt.invariant_J(p))}
            for i, p in enumerate(points)
        ]
        _emit(rows, args.format, out)


def _schubert_for_medians(t, md, area):
    """Triples for each rational median, permuting so that median bisects 'a'."""
    out = {}
    if area is None:
        return out
    perms = {"k": (t.a, t.b, t.c, md.k), "l": (t.b, t.c, t.a, md.l), "m": (t.c, t.a, t.b, md.m)}
    for name, (a, b, c, med) in perms.items():
        if med is None:
            continue
        try:
            s = triangle.schubert_from_triangle(triangle.Triangle(a, b, c), med, area)
        except HeronError:
            continue
        out[name] = {"sides": [_fmt(a), _fmt(b), _fmt(c)], "M": _fmt(s.M), "P": _fmt(s.P), "X": _fmt(s.X)}
    return out


def cmd_verify(args, out):
    t = triangle.Triangle(*args.sides)
    area = triangle.heron_area(t)
    md = triangle.medians(t)
    report = {
        "sides": [_fmt(x) for x in t.sides],
        "area": _fmt(area) if area is not None else "irrational",
        "area_sq": _fmt(triangle.heron_area_sq(t)),
        "k": _fmt(md.k), "l": _fmt(md.l), "m": _fmt(md.m),
        "k_sq": _fmt(md.k_sq), "l_sq": _fmt(md.l_sq), "m_sq": _fmt(md.m_sq),
        "schubert": _schubert_for_medians(t, md, area),
    }
    _emit(report, "json", out)


def cmd_params(args, out):
    t = triangle.Triangle(*args.sides)
    md = triangle.medians(t)
    if md.k is None or md.l is None:
        raise triangle.DomainError("params needs rational medians k and l")
    rows = []
    for signs, p in zip(buchholz.SIGN_PAIRS, buchholz.params_from_triangle(t, md.k, md.l)):
        res = buchholz.c4_residual(p)
        rows.append({
            "signs": "".join("+" if s > 0 else "-" for s in signs),
            "theta": _fmt(p.theta), "phi": _fmt(p.phi),
            "constraints_ok": buchholz.constraints_ok(p),
            "c4_residual": _fmt(res), "on_c4": res == 0,
        })
    _emit(rows, "json", out)


def cmd_family(args, out):
    lo, hi = args.start, args.to
    if args.factors:
        cols = ("s", "s-a", "s-b", "s-c", "area")
        rows = []
        for n in range(lo, hi + 1):
            facs = family.factor_table_row(n)
            rows.append({"n": n, **{c: f.render() for c, f in zip(cols, facs)}})
        if args.format == "text":
            for r in rows:
                out.write(f"{r['n']:>3} | " + " | ".join(r[c] for c in cols) + "\n")
        else:
            _emit(rows, args.format, out)
        return
    rows = []
    for n in range(lo, hi + 1):
        ft = family.family_triangle(n)
        rows.append({"n": n, "a": ft.a, "b": ft.b, "c": ft.c,
                     "k": _fmt(ft.k), "l": _fmt(ft.l), "area": ft.area})
    if args.format == "text":
        keys = ("n", "a", "b", "c", "k", "l", "area")
        table = [[str(r[k]) for k in keys] for r in rows]
        widths = [max(len(k), *(len(row[i]) for row in table)) for i, k in enumerate(keys)]
        out.write("  ".join(k.rjust(w) for k, w in zip(keys, widths)) + "\n")
        for row in table:
            out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)) + "\n")
    else:
        _emit(rows, args.format, out)


def cmd_schubert(args, out):
    if args.triangle:
        t = triangle.Triangle(*args.triangle)
        md = triangle.medians(t)
        area = triangle.heron_area(t)
        if area is None:
            raise triangle.DomainError("triangle is not Heron")
        _emit(_schubert_for_medians(t, md, area), "json", out)
    else:
        s = triangle.SchubertTriple(*args.triple)
        residual = triangle.schubert_residual(s)
        if residual != 0:
            raise triangle.DomainError(f"point is off the surface (residual {residual})")
        s = triangle.schubert_normalize(s)
        t, k, area = triangle.triangle_from_schubert(s, args.scale)
        _emit({"triple": [_fmt(x) for x in s], "sides": [_fmt(x) for x in t.sides],
               "k": _fmt(k), "area": _fmt(area)}, "json", out)


def cmd_search(args, out):
    cfg = SearchConfig(
        height=args.height, workers=args.workers, checkpoint_path=args.checkpoint,
        resume=args.resume, chunk_size=args.chunk_size, backend=args.backend,
    )
    found = run_search(cfg)
    for f in found:
        out.write(json.dumps(f.to_json()) + "\n")
    err = sys.stderr
    err.write(f"# height {args.height}: {len(found)} triangles\n")
    for f in found:
        err.write(f"#  {f.classification:>10}  ({f.a}, {f.b}, {f.c})  area {f.area}"
                  f"  k={f.k} l={f.l}  at ({f.source.theta}, {f.source.phi})\n")


def cmd_factor(args, out):
    rows = []
    for n in args.numbers:
        f = factorize(n)
        rows.append({"n": str(n), "factors": [[str(p), e] for p, e in f.factors],
                     "rendered": f.render()})
    _emit(rows, "json", out)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heronmedians", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("somos", help="Somos-5 sequence terms as a JSON array")
    p.add_argument("--which", choices=["S", "T"], default="S")
    p.add_argument("--seed", help="comma-separated custom seed (first index 0)")
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", type=int, default=20)
    p.add_argument("--backward", type=int, default=0, help="with --seed: prepend this many terms")
    p.set_defaults(func=cmd_somos)

    p = sub.add_parser("orbit", help="QRT orbit data")
    p.add_argument("--start", type=_rationals(2), default=(Fraction(1), Fraction(1)),
                   help="U,V (write --start=-1,7 for a negative first coordinate)")
    p.add_argument("--somos", choices=["S", "T"], help="take the orbit from a canonical sequence")
    p.add_argument("--steps", type=int, default=300)
    p.add_argument("--format", choices=["csv", "json", "jsonl"], default="csv")
    p.add_argument("--precision", type=int, default=12, help="significant digits of float columns")
    p.add_argument("--curve", action="store_true", help="append samples of the J = 5 curve")
    p.add_argument("--curve-min", type=_rational, default=Fraction(-10))
    p.add_argument("--curve-max", type=_rational, default=Fraction(10))
    p.add_argument("--curve-points", type=int, default=2001)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("verify", help="area, medians and Schubert data of a triangle")
    p.add_argument("sides", type=_rational, nargs=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("params", help="the four (theta, phi) pairs of a triangle")
    p.add_argument("sides", type=_rational, nargs=3)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("family", help="rows of the Somos family (or their factorizations)")
    p.add_argument("--from", dest="start", type=int, default=1)
    p.add_argument("--to", type=int, default=5)
    p.add_argument("--factors", action="store_true")
    p.add_argument("--format", choices=["json", "jsonl", "text"], default="json")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("schubert", help="Schubert triples of a triangle, or the reverse")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--triangle", type=_rationals(3), metavar="A,B,C")
    g.add_argument("--triple", type=_rationals(3), metavar="M,P,X",
                   help="write --triple=-1/4,2/3,8/3 when M is negative")
    p.add_argument("--scale", type=_rational, default=Fraction(1), help="side c of the rebuilt triangle")
    p.set_defaults(func=cmd_schubert)

    p = sub.add_parser("search", help="bounded-height parameter search")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--workers", type=int, default=default_workers(),
                   help="worker processes (default $HERONMEDIANS_WORKERS or 1)")
    p.add_argument("--checkpoint")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--chunk-size", type=int, default=1024)
    p.add_argument("--backend", choices=["numba", "numpy"])
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("factor", help="prime factorizations")
    p.add_argument("numbers", type=int, nargs="+")
    p.set_defaults(func=cmd_factor)
    return ap


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    if hasattr(sys, "set_int_max_str_digits"):
        # orbit coordinates outgrow the default 4300-digit str() limit
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args, out)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except HeronError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
