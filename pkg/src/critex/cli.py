"""Command-line entry point: ``critex <subcommand> ...``.

Every report is deterministic.  Text is the default; ``--json`` switches to a
JSON document with the same content.  Exit status 0 on success, 1 on domain
errors, 2 on malformed input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from fractions import Fraction
from typing import Optional

from . import _kernels
from .graph import (GraphError, GraphFormatError, cover_degree, is_regular_cover,
                    merge, parse_graph, serialize_graph)
from .grouping import DISCRETENESS_NOTE, NoGrouping, find_vertex_ordering
from .growth import (GrowthError, PartitionSpec, build_ray_quotient, estimate_delta,
                     exact_delta_of_partition, predicted_orbit_count, return_counts,
                     spectral_delta, target_partition, trace_counts)
from .series import NoRoot, SeriesError, partition_series, solve_unit_product
from .zeta import (ZetaError, brute_force_cycle_counts, dumbbell, enumerate_primes,
                   ihara_zeta, pgt_check)


class InputError(Exception):
    """Malformed command line or input file (exit status 2)."""


def _fr(x) -> str:
    return str(Fraction(x))


def _poly(p) -> list:
    return [int(c) for c in p.c]


def _interval(r) -> dict:
    return {"lo": str(r.lo), "hi": str(r.hi), "exact": r.exact, "value": r.value}


def _read(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{path}: not UTF-8") from None
    return text, hashlib.sha256(raw).hexdigest()


def _load(path: str):
    text, digest = _read(path)
    try:
        g = parse_graph(text)
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    return g, digest


def _partition(spec: str) -> PartitionSpec:
    try:
        return PartitionSpec.parse(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands; each returns (digest, results dict, text lines)
# ---------------------------------------------------------------------------

def cmd_validate(args):
    g, digest = _load(args.file)
    deg = {v: cover_degree(g, v) for v in g.vertices}
    res = {
        "vertices": g.num_vertices,
        "edges": g.num_edges,
        "oriented_edges": g.num_oriented_edges,
        "connected": g.is_connected,
        "base": g.base,
        "cover_degree": deg,
    }
    lines = [f"vertices {g.num_vertices}", f"edges {g.num_edges}",
             f"connected {str(g.is_connected).lower()}"]
    if args.q is not None:
        res["regular_cover"] = is_regular_cover(g, args.q)
        lines.append(f"regular_cover q={args.q} {str(res['regular_cover']).lower()}")
    lines += [f"cover_degree {v} {d}" for v, d in deg.items()]
    return digest, res, lines


def cmd_grouping(args):
    g, digest = _load(args.file)
    out = find_vertex_ordering(g)
    if isinstance(out, NoGrouping):
        res = {"status": "NOGROUPING", "witness": list(out.witness),
               "product": _fr(out.product)}
        return digest, res, ["NOGROUPING " + " ".join(map(str, out.witness)),
                             f"product {out.product}"]
    res = {"status": "ORDERING", "N": dict(out.values), "note": DISCRETENESS_NOTE}
    lines = [f"N {v} {n}" for v, n in out.values.items()]
    return digest, res, lines + [f"# {DISCRETENESS_NOTE}"]


def cmd_merge(args):
    g1, d1 = _load(args.file1)
    g2, d2 = _load(args.file2)
    m = merge(g1, args.x, g2, args.y)
    text = serialize_graph(m)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    digest = hashlib.sha256((d1 + d2).encode()).hexdigest()
    res = {"vertices": m.num_vertices, "edges": m.num_edges,
           "merged_vertex": args.x, "merged_cover_degree": cover_degree(m, args.x),
           "graph": text}
    return digest, res, text.split("\n")


def cmd_zeta(args):
    g, digest = _load(args.file)
    z = ihara_zeta(g, args.degree)
    res = {
        "num_vertices": z.num_vertices,
        "num_edges": z.num_edges,
        "chi": z.chi,
        "det_poly": _poly(z.det_poly),
        "w_poly": _poly(z.w_poly),
        "bass_identity": z.bass_identity,
        "R": _interval(z.R),
        "lambda_max": z.lambda_max,
        "exact_lambda": z.exact_lambda,
        "Delta": z.delta_gcd,
        "primes": {str(n): c for n, c in z.primes.items()},
    }
    lines = [
        f"|V| {z.num_vertices}  |E| {z.num_edges}  chi {z.chi}",
        f"det(I-Adj*u+Q*u^2) {_poly(z.det_poly)}",
        f"det(I-u*W) {_poly(z.w_poly)}",
        f"bass_identity {str(z.bass_identity).lower()}",
        f"R {z.R.value!r} in [{z.R.lo}, {z.R.hi}]" + (" exact" if z.R.exact else ""),
        f"lambda_max {z.lambda_max!r}",
        f"Delta {z.delta_gcd}",
    ]
    lines += [f"pi({n}) {c}" for n, c in z.primes.items()]
    return digest, res, lines


def cmd_counts(args):
    g, digest = _load(args.file)
    if args.base is not None:
        counts = return_counts(g, args.base, args.maxlen)
        kind = "return"
    else:
        counts = trace_counts(g, args.maxlen)
        kind = "trace"
    res = {"kind": kind, "counts": counts}
    if args.brute:
        brute = brute_force_cycle_counts(g, args.maxlen)
        res["brute_force"] = brute
        res["agree"] = brute == counts
    lines = [f"N({m}) {c}" for m, c in enumerate(counts, start=1)]
    if args.brute:
        lines.append(f"brute_force_agrees {str(res['agree']).lower()}")
    return digest, res, lines


def cmd_primes(args):
    g, digest = _load(args.file)
    table = enumerate_primes(g, args.maxlen, collect=args.list)
    res = {"pi": {str(n): table.counts[n] for n in range(1, args.maxlen + 1)},
           "Delta": table.delta}
    lines = [f"pi({n}) {table.counts[n]}" for n in range(1, args.maxlen + 1)]
    lines.append(f"Delta {table.delta}")
    if args.list:
        res["cycles"] = [list(c) for c in table.cycles]
        lines += ["P " + " ".join(map(str, c)) for c in table.cycles]
    return digest, res, lines


def cmd_pgt(args):
    g, digest = _load(args.file)
    t = pgt_check(g, args.nmax)
    res = {"Delta": t.delta, "R": _interval(t.R),
           "rows": [{"n": n, "length": ln, "pi": p, "value": v, "normalized": v / t.delta}
                    for n, ln, p, v in t.rows],
           "tail_deviation": t.tail_deviation, "tail_monotone": t.tail_monotone}
    lines = [f"Delta {t.delta}", f"R {t.R.value!r}", "n length pi value value/Delta"]
    lines += [f"{n} {ln} {p} {v!r} {v / t.delta!r}" for n, ln, p, v in t.rows]
    lines += [f"tail_deviation {t.tail_deviation!r}",
              f"tail_monotone {str(t.tail_monotone).lower()}"]
    return digest, res, lines


def cmd_delta(args):
    g, digest = _load(args.file)
    if args.spectral:
        sd = spectral_delta(g)
        res = {"method": "spectral", "delta": sd.value, "lambda_max": sd.lambda_max,
               "exact_lambda": sd.exact_lambda, "root": _interval(sd.root),
               "certificate": _poly(sd.certificate)}
        lines = [f"delta {sd.value!r}", f"lambda_max {sd.lambda_max!r}",
                 f"root [{sd.root.lo}, {sd.root.hi}]",
                 f"certificate {_poly(sd.certificate)}"]
        return digest, res, lines
    counts = return_counts(g, None, args.depth)
    cumulative = [1]
    for c in counts:
        cumulative.append(cumulative[-1] + c)
    est = estimate_delta(cumulative)
    res = {"method": "orbit", "depth": args.depth, "delta": est.value,
           "cumulative": cumulative, "tail": est.tail, "all_zero": est.all_zero}
    lines = [f"delta {est.value!r}", "tail " + " ".join(repr(x) for x in est.tail)]
    if est.all_zero:
        lines.append("all_zero true")
    return digest, res, lines


def cmd_construct(args):
    if args.partition is not None:
        part = _partition(args.partition)
    elif args.delta is not None:
        part = target_partition(args.delta, args.q)
    else:
        raise InputError("construct needs --delta or --partition")
    rq = build_ray_quotient(args.q, part, args.depth)
    exact = exact_delta_of_partition(args.q, part)
    bits = part.bits(args.depth)
    rows = []
    for n in range(args.depth + 1):
        rows.append({
            "n": n,
            "in_I": bool(bits[n - 1]) if n else None,
            "s": rq.partial_sums[n],
            "N": rq.ray_N[n],
            "predicted": predicted_orbit_count(args.q, part, n) if n else None,
        })
    text = serialize_graph(rq.graph)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    digest = hashlib.sha256(
        f"construct q={args.q} partition={part} depth={args.depth}".encode()).hexdigest()
    res = {
        "q": args.q,
        "partition": str(part),
        "density": _fr(part.density()) if isinstance(part.density(), (int, Fraction))
        else part.density(),
        "delta_exact": str(exact),
        "delta": exact.value,
        "vertices": rq.graph.num_vertices,
        "regular_cover": is_regular_cover(rq.graph, args.q),
        "table": rows,
    }
    if not args.output:
        res["graph"] = text
    lines = [f"partition {part}", f"delta {exact} = {exact.value!r}",
             f"vertices {rq.graph.num_vertices}",
             f"regular_cover {str(res['regular_cover']).lower()}",
             "n in_I s_n N(x_n) predicted(2n)"]
    for r in rows:
        flag = "-" if r["in_I"] is None else int(r["in_I"])
        pred = "-" if r["predicted"] is None else r["predicted"]
        lines.append(f"{r['n']} {flag} {r['s']} {r['N']} {pred}")
    if not args.output:
        lines += ["# graph"] + text.split("\n")
    return digest, res, lines


def cmd_dumbbell(args):
    g = dumbbell(args.a, args.b, args.n)
    text = serialize_graph(g)
    digest = hashlib.sha256(f"dumbbell {args.a} {args.b} {args.n}".encode()).hexdigest()
    res = {"vertices": g.num_vertices, "edges": g.num_edges, "graph": text}
    return digest, res, text.split("\n")


def cmd_solve_merge(args):
    px, py = _partition(args.px), _partition(args.py)
    fx = partition_series(args.q, px, args.degree, args.form)
    fy = partition_series(args.q, py, args.degree, args.form)
    digest = hashlib.sha256(
        f"solve-merge q={args.q} px={px} py={py} M={args.degree} "
        f"tol={args.tol!r} form={args.form}".encode()).hexdigest()
    assumption = "closed cycles of X and Y pass through the merge vertex (not checked)"
    try:
        root = solve_unit_product(fx, fy, args.tol)
    except NoRoot as exc:
        res = {"status": "NOROOT", "reason": str(exc), "assumption": assumption}
        return digest, res, [f"NOROOT {exc}"]
    res = {
        "status": root.label,
        "u": root.u,
        "bracket": list(root.bracket),
        "delta_candidate": root.delta_lower,
        "delta_over_log_q": root.delta_lower / math.log(args.q),
        "tail_term": root.tail_term,
        "degree": root.degree,
        "form": args.form,
        "assumption": assumption,
    }
    lines = [f"{root.label} u* {root.u!r}",
             f"bracket [{root.bracket[0]!r}, {root.bracket[1]!r}]",
             f"delta {root.delta_lower!r} (lower bound from degree {root.degree})",
             f"delta/log(q) {res['delta_over_log_q']!r}",
             f"tail_term {root.tail_term!r}",
             f"# assumption: {assumption}"]
    return digest, res, lines


# ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {v}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="critex", description="Critical exponents of tree lattices.")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    s = sub.add_parser("validate", help="check a graph file")
    s.add_argument("file")
    s.add_argument("--q", type=_positive)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("grouping", help="integral vertex ordering or witness cycle")
    s.add_argument("file")
    s.set_defaults(func=cmd_grouping)

    s = sub.add_parser("merge", help="wedge two graphs at a vertex of each")
    s.add_argument("file1")
    s.add_argument("x")
    s.add_argument("file2")
    s.add_argument("y")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_merge)

    s = sub.add_parser("zeta", help="Ihara zeta function")
    s.add_argument("file")
    s.add_argument("--degree", type=int, default=8)
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("counts", help="non-backtracking closed walk counts")
    s.add_argument("file")
    s.add_argument("--maxlen", type=_positive, default=10)
    s.add_argument("--base", help="count walks returning to this vertex instead of traces")
    s.add_argument("--brute", action="store_true", help="cross-check by enumeration")
    s.set_defaults(func=cmd_counts)

    s = sub.add_parser("primes", help="prime cycle counts")
    s.add_argument("file")
    s.add_argument("--maxlen", type=_positive, required=True)
    s.add_argument("--list", action="store_true", help="print representatives")
    s.set_defaults(func=cmd_primes)

    s = sub.add_parser("pgt", help="prime geodesic theorem table")
    s.add_argument("file")
    s.add_argument("--nmax", type=_positive, required=True)
    s.set_defaults(func=cmd_pgt)

    s = sub.add_parser("delta", help="critical exponent of a finite graph")
    s.add_argument("file")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--depth", type=_positive, default=30)
    grp.add_argument("--spectral", action="store_true")
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("construct", help="ray quotient realizing an exponent")
    s.add_argument("--q", type=_positive, required=True)
    s.add_argument("--delta", type=float)
    s.add_argument("--depth", type=_positive, default=6)
    s.add_argument("--partition")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("dumbbell", help="dumbbell graph D(a,b,n)")
    s.add_argument("a", type=_positive)
    s.add_argument("b", type=_positive)
    s.add_argument("n", type=_positive)
    s.set_defaults(func=cmd_dumbbell)

    s = sub.add_parser("solve-merge", help="root of F_X*F_Y = 1 for two partitions")
    s.add_argument("--q", type=_positive, required=True)
    s.add_argument("--px", required=True)
    s.add_argument("--py", required=True)
    s.add_argument("--degree", type=_positive, default=80)
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("--form", choices=("orbit", "weight"), default="orbit")
    s.set_defaults(func=cmd_solve_merge)
    return p


def _render(argv, digest, results, lines, as_json: bool) -> str:
    if as_json:
        doc = {"command": list(argv), "input_sha256": digest, "results": results}
        return json.dumps(doc, indent=2, ensure_ascii=False)
    head = [f"# critex {' '.join(argv)}", f"# input_sha256 {digest}"]
    return "\n".join(head + lines)


DOMAIN_ERRORS = (GraphError, GrowthError, ZetaError, SeriesError, _kernels.GuardExceeded,
                 ValueError, ArithmeticError)


def run(argv) -> tuple:
    """Execute one invocation; returns (exit status, report text)."""
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        return 2, f"critex: error: {exc}"
    shown = [a for a in argv if a != "--json"]
    try:
        digest, results, lines = args.func(args)
    except InputError as exc:
        return 2, f"critex: error: {exc}"
    except GraphFormatError as exc:
        return 2, f"critex: error: {exc}"
    except DOMAIN_ERRORS as exc:
        msg = str(exc) or type(exc).__name__
        if args.json:
            doc = {"command": shown, "error": type(exc).__name__, "message": msg}
            return 1, json.dumps(doc, indent=2, ensure_ascii=False)
        return 1, f"critex: {msg}"
    return 0, _render(shown, digest, results, lines, args.json)


def main(argv: Optional[list] = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == 0 else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
