"""Command-line entry point: ``python -m bplocal VERB [options] EXPR``.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 cross-check
mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

from .chromatic import build_chromatic_resolution, chromatic_route_derived_L
from .cohomology import cech_cohomology, local_cohomology
from .errors import BPLocalError, ExpressionError, TruncationExceeded
from .expr import NormalizationWarning, max_index, parse_expression
from .grading import RingDescriptor
from .koszul import compare_with_symbolic
from .modules import (ModuleSum, dumps, module_to_json,
                      per_degree_evaluate, render)
from .spectral import (abutment_report, assemble_E2, detect_collapse,
                       page_to_json)

VERBS = ("lc", "cech", "ln", "tn", "chromatic", "ss", "eval-degree",
         "oracle-check")
EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Mismatch(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _degrees(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..")
            return range(int(a), int(b) + 1)
        d = int(text)
        return range(d, d + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree range {text!r}; use a..b")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="bplocal",
                 description="Local and Cech cohomology of chromatic modules.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("expr", nargs="?", default=None,
                    help='module expression, e.g. "v1^-1 R/(p^inf)"')
    ap.add_argument("--prime", type=int, default=2)
    ap.add_argument("--truncation", type=int, default=None,
                    help="number N of polynomial generators (default: smallest that fits)")
    ap.add_argument("--n", type=int, default=None, help="ideal I_{n+1}")
    ap.add_argument("--i", type=int, default=None, help="cohomological degree")
    ap.add_argument("--k", type=int, default=None, help="chromatic resolution of R/I_k")
    ap.add_argument("--length", type=int, default=None, help="resolution length")
    ap.add_argument("--degrees", type=_degrees, default=None, metavar="a..b")
    ap.add_argument("--r-max", type=int, default=8)
    ap.add_argument("--format", choices=("text", "json", "csv"), default="text")
    ap.add_argument("--style", choices=("ascii", "unicode"), default="ascii")
    ap.add_argument("--route", choices=("closed", "iterative", "chromatic", "all"),
                    default="closed")
    return ap


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.verb} needs --{name.replace('_', '-')}")


def _ring(args) -> RingDescriptor:
    top = max(args.n or 0, args.k or 0)
    if args.expr is not None:
        top = max(top, max_index(args.expr))
    N = args.truncation if args.truncation is not None else top
    try:
        ring = RingDescriptor(args.prime, N)
    except TruncationExceeded:
        raise
    except ValueError as e:
        raise UsageError(str(e))
    for name in ("n", "k"):
        v = getattr(args, name)
        if v is not None and (v < 0 or v > N):
            raise UsageError(f"--{name} {v} outside 0..{N} (truncation)")
    return ring


def _module(args, ring) -> ModuleSum:
    if args.expr is None:
        raise UsageError(f"{args.verb} needs a module expression")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NormalizationWarning)
        M = parse_expression(args.expr, ring)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return M


def _invariant_quotient_index(M: ModuleSum):
    """k if M is R/I_k, else None."""
    if len(M) != 1:
        return None
    (c,) = M.summands
    k = len(c.exponents)
    if c.suspension or c.inverted or c.exponent_map != {i: 1 for i in range(k)}:
        return None
    return k


def _tables(args, M, ring, kind):
    ideal = ring.ideal(args.n)
    compute = cech_cohomology if kind == "cech" else local_cohomology
    routes = ["closed", "iterative", "chromatic"] if args.route == "all" else [args.route]
    if kind == "local" and "chromatic" in routes:
        if args.route == "chromatic":
            raise UsageError("the chromatic route computes L_n, not T_n")
        routes.remove("chromatic")
    out = []
    for route in routes:
        if route == "chromatic":
            k = _invariant_quotient_index(M)
            if k is None:
                if args.route == "all":
                    continue
                raise UsageError("the chromatic route needs a module R/I_k")
            out.append(chromatic_route_derived_L(ring, k, args.n))
        else:
            out.append(compute(M, ideal, route))
    first = out[0]
    for t in out[1:]:
        if t.entries != first.entries:
            raise Mismatch(f"route {t.route} disagrees with route {first.route}:\n"
                           f"{first.render()}\n---\n{t.render()}")
    return first


def _emit_table(table, args) -> str:
    if args.format == "json":
        return table.dumps()
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "module"])
        for s, m in sorted(table.entries.items()):
            w.writerow([s, render(m, args.style)])
        return buf.getvalue().rstrip("\n")
    return table.render(args.style)


def _emit_module(M, args) -> str:
    if args.format == "json":
        return dumps(M)
    return render(M, args.style)


def _cmd_table(args, kind):
    _need(args, "n")
    ring = _ring(args)
    M = _module(args, ring)
    return _emit_table(_tables(args, M, ring, kind), args)


def _cmd_functor(args, kind):
    _need(args, "n", "i")
    if args.i < 0:
        raise UsageError("--i must be >= 0")
    ring = _ring(args)
    M = _module(args, ring)
    table = _tables(args, M, ring, kind)
    value = table.entries.get(args.i, ModuleSum.zero(ring))
    return _emit_module(value, args)


def _cmd_chromatic(args):
    _need(args, "k")
    ring = _ring(args)
    if args.expr is not None:
        M = _module(args, ring)
        if _invariant_quotient_index(M) != args.k:
            raise UsageError(f"expression is not R/I{args.k}")
    if args.n is not None:
        table = chromatic_route_derived_L(ring, args.k, args.n)
        if args.route == "all":
            M = ModuleSum.invariant_quotient(ring, args.k)
            other = cech_cohomology(M, ring.ideal(args.n))
            if other.entries != table.entries:
                raise Mismatch("chromatic route disagrees with the closed form")
        return _emit_table(table, args)
    length = args.length if args.length is not None else ring.truncation - args.k
    res = build_chromatic_resolution(ring, args.k, length)
    if args.format == "json":
        return json.dumps({"k": res.k, "length": res.length,
                           "terms": [module_to_json(J) for J in res.terms],
                           "maps": [f.render() for f in res.maps]},
                          sort_keys=True)
    return res.render(args.style)


def _cmd_ss(args):
    _need(args, "n")
    ring = _ring(args)
    M = _module(args, ring)
    page = assemble_E2(M, args.n)
    if args.format == "json":
        return json.dumps(page_to_json(page), sort_keys=True)
    lines = [f"E_2 page, n = {args.n}"]
    for s in range(args.n + 1):
        col = page.columns.get(s, ModuleSum.zero(ring))
        tag = "  (image of input)" if s == 0 and page.image_of_input else ""
        lines.append(f"  s = {s}: {render(col, args.style)}{tag}")
    verdict = detect_collapse(page)
    lines.append(f"verdict: {verdict}")
    if verdict.collapsed:
        lines.append(abutment_report(page).render(args.style))
    return "\n".join(lines)


def _group_row(d, g):
    return [d, g.free_rank, " ".join(map(str, g.torsion_orders)),
            g.divisible_corank, g.rational_rank]


def _cmd_eval(args):
    _need(args, "degrees")
    ring = _ring(args)
    M = _module(args, ring)
    groups = [(d, per_degree_evaluate(M, d)) for d in args.degrees]
    if args.format == "json":
        return json.dumps([dict(d=d, **g.to_dict()) for d, g in groups],
                          sort_keys=True)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "free_rank", "torsion_orders", "divisible_corank",
                    "rational_rank"])
        for d, g in groups:
            w.writerow(_group_row(d, g))
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"degree {d}: {g}" for d, g in groups)


def _cmd_oracle(args):
    _need(args, "n", "degrees")
    ring = _ring(args)
    M = _module(args, ring)
    table = local_cohomology(M, ring.ideal(args.n))
    report = compare_with_symbolic(table, M, args.degrees, args.r_max)
    if args.format == "json":
        out = report.to_json()
    elif args.format == "csv":
        out = report.to_csv().rstrip("\n")
    else:
        out = report.render()
        out += f"\n{len(report.rows)} checks, {len(report.mismatches)} mismatches"
    if not report.ok:
        print(out)
        raise Mismatch(f"{len(report.mismatches)} degree(s) disagree with the oracle")
    return out


def run(args) -> str:
    if args.verb == "lc":
        return _cmd_table(args, "local")
    if args.verb == "cech":
        return _cmd_table(args, "cech")
    if args.verb == "ln":
        return _cmd_functor(args, "cech")
    if args.verb == "tn":
        return _cmd_functor(args, "local")
    if args.verb == "chromatic":
        return _cmd_chromatic(args)
    if args.verb == "ss":
        return _cmd_ss(args)
    if args.verb == "eval-degree":
        return _cmd_eval(args)
    return _cmd_oracle(args)


def _glue_values(argv: list) -> list:
    """'--degrees -20..0' would read as an option; glue it to its flag."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--degrees":
            out.append(a + "=" + next(it, ""))
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_intermixed_args(_glue_values(argv))
        print(run(args))
    except (UsageError, ExpressionError, TruncationExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Mismatch as e:
        print(f"mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except (BPLocalError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK
