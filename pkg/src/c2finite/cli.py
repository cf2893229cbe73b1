"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
3 search/certification bound exceeded, 4 network failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import List, Optional, Sequence

from . import cfinite as cfm
from .c2 import (C2Recurrence, ExtractionParams, c2_guess, c2_reduce, c2_verify, extract_recurrence,
                 fib, fib_square_identity_holds, fib_triangle_identity_holds, quadratic_subseq,
                 zeta)
from .catalog import NON_BI_ITERATIVE, family_names, get_family, grid_graph
from .cfinite import CFiniteSeq, cf_const, cf_fibonacci
from .cfmatrix import CFMatrixSeq
from .errors import BoundExceeded, CertificationError, ExtractionError, PatternNotFound
from .famrec import (family_recurrence_verify, g2_independence, g2_scalar_recurrence, g2_transfer,
                     g4_combined_stream, g4_dichromatic_stream, QXY)
from .graphpoly import (chromatic_eval, dichromatic, independence_poly, poly_to_json, tutte)
from .graphs import FamilySpec, KGraph, analyze_spec, export_graph, materialize, materialize_all
from .oeis import NetworkError, crosscheck
from .rings import QQ, RatFuncField

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BOUND, EXIT_NETWORK = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _csv(header: Sequence[str], rows, out) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    out.write(buf.getvalue())


def _num(x) -> str:
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from None


def _load_seq(text: str) -> CFiniteSeq:
    """A C-finite sequence from a JSON file or a built-in name."""
    if text in ("fib", "fibonacci"):
        return cf_fibonacci(QQ)
    if text == "lucas":
        return cf_fibonacci(QQ, (2, 1))
    if text.startswith("geom:"):
        return cfm.cf_geometric(QQ, Fraction(text[5:]))
    try:
        return CFiniteSeq.from_json(_load_json(text))
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"bad sequence {text!r}: {exc}") from None


def _params(text: Optional[str]) -> ExtractionParams:
    if not text:
        return ExtractionParams()
    try:
        return ExtractionParams.parse(text)
    except ValueError as exc:
        raise UsageError(f"--params: {exc}") from None


def _load_terms(path: str, dom) -> list:
    text = Path(path).read_text() if path != "-" else sys.stdin.read()
    text = text.strip()
    if text.startswith("["):
        items = json.loads(text)
    else:
        items = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        items = [x for x in items if x]
        # b-file style "n value" lines keep the value only
        items = [x.split()[-1] if len(x.split()) == 2 and dom == QQ else x for x in items]
    return [dom.parse(str(x)) for x in items]


def _get_spec(args) -> FamilySpec:
    if getattr(args, "spec", None):
        return FamilySpec.from_json(_load_json(args.spec))
    if not args.name:
        raise UsageError("give --name or --spec")
    try:
        return get_family(args.name)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _rec_report(rec: C2Recurrence, oracle, upto: Optional[int], out) -> int:
    obj = {"recurrence": rec.to_json()}
    code = EXIT_OK
    if upto is not None:
        rep = c2_verify(rec, oracle, upto)
        obj["verify"] = rep.to_json()
        code = EXIT_OK if rep.ok else EXIT_MISMATCH
    _emit(obj, out)
    return code


# --------------------------------------------------------------------------
# subcommands

def cmd_seq(args, out) -> int:
    a = _load_seq(args.seq)
    op = args.op
    if op == "terms":
        res = a
    elif op in ("add", "mul", "sub"):
        if not args.other:
            raise UsageError(f"--op {op} needs --other")
        b = _load_seq(args.other)
        res = {"add": cfm.cf_add, "mul": cfm.cf_mul, "sub": cfm.cf_sub}[op](a, b)
    elif op == "subseq":
        res = cfm.cf_subseq(a, args.t, args.r)
    elif op == "shift":
        res = cfm.cf_shift(a, args.r)
    elif op == "minimize":
        res = a
    elif op == "zero-pattern":
        zp = cfm.cf_zero_pattern(a, horizon=max(64, args.count))
        _emit(zp.to_json(), out)
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(op)
    if args.minimize or op == "minimize":
        res = cfm.cf_minimize(res)
    _emit({"sequence": res.to_json(), "terms": [res.domain.format(x) for x in res.terms(args.count)]}, out)
    return EXIT_OK


def cmd_subseq(args, out) -> int:
    a = _load_seq(args.seq)
    rec = quadratic_subseq(a, args.c, args.d, args.e, _params(args.params))
    return _rec_report(rec, lambda n: a.term(zeta(args.c, args.d, args.e, n)), args.verify, out)


def cmd_extract(args, out) -> int:
    M = CFMatrixSeq.from_json(_load_json(args.matrix))
    dom = M.domain
    w = CFiniteSeq.from_json(_load_json(args.w)) if args.w else cf_const(dom, dom.one)
    v0 = [dom.parse(x) for x in args.v0.split(",")]
    output = None
    if args.output is not None:
        parts = args.output.split(",")
        output = int(parts[0]) if len(parts) == 1 else [dom.parse(x) for x in parts]
    rec = extract_recurrence(M, w, v0, _params(args.params), output=output, mode=args.mode)
    rec = c2_reduce(rec)
    _emit({"recurrence": rec.to_json()}, out)
    return EXIT_OK


def _ansatz(text: str, dom) -> List[CFiniteSeq]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if item.startswith("poly:"):
            deg = int(item[5:])
            for k in range(deg + 1):
                # n^k: order k+1 with binomial coefficients
                coeffs = [(-1) ** (k + 1 - j + 1) * comb(k + 1, j) for j in range(k + 1)]
                out.append(CFiniteSeq(dom, coeffs, [n ** k for n in range(k + 1)]))
        elif item == "1":
            out.append(cf_const(dom, dom.one))
        elif item == "n":
            out.append(CFiniteSeq(dom, [-1, 2], [0, 1]))
        elif item.startswith("geom:"):
            out.append(cfm.cf_geometric(dom, Fraction(item[5:])))
        elif item == "fib":
            out.append(CFiniteSeq(dom, [1, 1], [0, 1]))
        else:
            raise UsageError(f"unknown ansatz item {item!r}")
    return out


def _domain_from_vars(text: Optional[str]):
    if not text:
        return QQ
    return RatFuncField(tuple(v.strip() for v in text.split(",")))


def cmd_guess(args, out) -> int:
    dom = _domain_from_vars(args.vars)
    if args.terms:
        terms = _load_terms(args.terms, dom)
    elif args.g2_terms:
        dom = RatFuncField(("x",))
        terms = g2_transfer().values(args.g2_terms - 1)
    else:
        raise UsageError("give --terms FILE or --g2-terms N")
    rec = c2_guess(terms, args.order, _ansatz(args.ansatz, dom), args.holdout, dom)
    _emit({"recurrence": rec.to_json()}, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    rec = C2Recurrence.from_json(_load_json(args.rec))
    terms = _load_terms(args.terms, rec.domain)
    upto = args.upto if args.upto is not None else len(terms) - rec.order - 1
    rep = c2_verify(rec, terms, upto)
    _emit(rep.to_json(), out)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_family(args, out) -> int:
    if args.action == "list":
        rows = []
        for name in family_names():
            sp = get_family(name)
            rows.append([name, sp.kind, sp.k, analyze_spec(sp).bounded])
        for name in NON_BI_ITERATIVE:
            rows.append([name, "plain", "", ""])
        _csv(["name", "kind", "k", "bounded"], rows, out)
        return EXIT_OK
    if args.action == "grid":
        out.write(export_graph(grid_graph(args.n, args.n), args.format if args.format != "json" else "edge_list"))
        return EXIT_OK
    sp = _get_spec(args)
    if args.action == "materialize":
        g = materialize(sp, args.n)
        if args.format == "json":
            _emit(g.to_json(), out)
        else:
            out.write(export_graph(g, args.format))
        return EXIT_OK
    if args.action == "analyze":
        _emit(analyze_spec(sp).to_json(), out)
        return EXIT_OK
    if args.action == "counts":
        rows, ok = [], True
        for n, g in enumerate(materialize_all(sp, args.n)):
            ev = sp.vertex_count(n) if sp.vertex_count else ""
            ee = sp.edge_count(n) if sp.edge_count else ""
            good = ev in ("", g.num_vertices) and ee in ("", g.num_edges)
            ok &= good
            rows.append([n, g.num_vertices, ev, g.num_edges, ee, good])
        _csv(["n", "vertices", "expected_vertices", "edges", "expected_edges", "ok"], rows, out)
        return EXIT_OK if ok else EXIT_MISMATCH
    if args.action == "spec":
        _emit(sp.to_json(), out)
        return EXIT_OK
    raise UsageError(args.action)  # pragma: no cover


def _graph_from_args(args) -> KGraph:
    if args.graph:
        text = Path(args.graph).read_text()
        if text.lstrip().startswith("{"):
            return KGraph.from_json(json.loads(text))
        edges, nv = [], 0
        for ln in text.splitlines():
            ln = ln.split("#", 1)[0].strip()
            if ln:
                u, v = map(int, ln.split()[:2])
                edges.append((u, v))
                nv = max(nv, u + 1, v + 1)
        m = re.search(r"#\s*vertices\s+(\d+)", text)
        if m:
            nv = max(nv, int(m.group(1)))
        return KGraph.build(1, [1] * nv, edges)
    return materialize(_get_spec(args), args.n)


def cmd_poly(args, out) -> int:
    g = _graph_from_args(args)
    if args.kind == "independence":
        p = independence_poly(g)
    elif args.kind == "dichromatic":
        p = dichromatic(g, args.method)
    elif args.kind == "tutte":
        p = tutte(g)
    elif args.kind == "chromatic":
        if args.q is None:
            raise UsageError("--q is required for chromatic")
        _emit({"q": str(args.q), "value": _num(chromatic_eval(g, Fraction(args.q)))}, out)
        return EXIT_OK
    else:  # pragma: no cover
        raise UsageError(args.kind)
    obj = poly_to_json(p)
    if args.eval:
        pt = [Fraction(x) for x in args.eval.split(",")]
        obj["value"] = _num(p.eval(pt))
    _emit(obj, out)
    return EXIT_OK


def cmd_famrec(args, out) -> int:
    if args.engine == "g2":
        if args.printed:
            vals = [g2_scalar_recurrence(n, 0).as_poly() for n in range(args.upto + 1)]
        else:
            vals = [g2_independence(n) for n in range(args.upto + 1)]
        if args.verify is not None:
            rep = family_recurrence_verify(get_family("G2"), independence_poly,
                                           lambda n: vals[n], min(args.verify, args.upto))
            _emit(rep.to_json(), out)
            return EXIT_OK if rep.ok else EXIT_MISMATCH
        if args.eval:
            _csv(["n", "value"], [[n, _num(v.eval([Fraction(args.eval)]))] for n, v in enumerate(vals)], out)
        else:
            _csv(["n", "I"], [[n, str(v)] for n, v in enumerate(vals)], out)
        return EXIT_OK
    # g4
    if args.printed:
        vals = [QXY.convert(v) for v in g4_combined_stream(args.upto, printed=True)]
        polys = [v.as_poly() if v.is_polynomial() else v for v in vals]
    else:
        polys = g4_dichromatic_stream(args.upto)
    if args.verify is not None:
        rep = family_recurrence_verify(get_family("G4"), dichromatic, lambda n: polys[n],
                                       min(args.verify, args.upto))
        _emit(rep.to_json(), out)
        return EXIT_OK if rep.ok else EXIT_MISMATCH
    if args.eval:
        pt = [Fraction(x) for x in args.eval.split(",")]
        rows = []
        for m, p in enumerate(polys):
            v = p.eval(pt)
            rows.append([m, _num(abs(v) if args.abs else v)])
        _csv(["m", "value"], rows, out)
    else:
        _csv(["m", "Z"], [[m, str(p)] for m, p in enumerate(polys)], out)
    return EXIT_OK


_OEIS_SOURCES = {
    "fib-square": lambda k: [fib(n * n) for n in range(k)],
    "fib-triangle": lambda k: [fib(n * (n - 1) // 2) for n in range(k)],
    "g2-indsets": lambda k: [int(g2_independence(n).eval([1])) for n in range(k)],
}


def cmd_oeis(args, out) -> int:
    ours = _OEIS_SOURCES[args.seq](args.count)
    try:
        rep = crosscheck(args.id, ours, path=args.bfile, network=args.network)
    except NetworkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(rep.to_json(), out)
    if args.soft:
        return EXIT_OK
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def reproduce_reference(out, upto: int = 6) -> bool:
    """Both G4 tables, the Fibonacci identities and the G2 comparison."""
    ok = True
    polys = g4_dichromatic_stream(upto)
    out.write("# chromatic values Z(G4_m; 3, -1)\n")
    t1 = [p.eval([3, -1]) for p in polys]
    _csv(["m", "value"], [[m, _num(v)] for m, v in enumerate(t1)], out)
    out.write("# acyclic orientations |Z(G4_m; -1, -1)|\n")
    t2 = [abs(p.eval([-1, -1])) for p in polys]
    _csv(["m", "value"], [[m, _num(v)] for m, v in enumerate(t2)], out)
    ok &= t1 == [6, 30, 318, 6762, 288354, 24601830, 4198550862][:upto + 1]
    ok &= t2 == [6, 90, 2826, 179874, 22988394, 5882561010, 3011536790874][:upto + 1]

    out.write("# Fibonacci identities, 2 <= n <= 30\n")
    sq = all(fib_square_identity_holds(n) for n in range(2, 31))
    tr = all(fib_triangle_identity_holds(n) for n in range(2, 31))
    _csv(["identity", "holds"], [["F_{n^2}", sq], ["F_{C(n,2)}", tr]], out)
    ok &= sq and tr

    out.write("# G2 independence polynomial vs direct evaluation\n")
    rows = []
    for n, g in enumerate(materialize_all(get_family("G2"), 6)):
        direct = independence_poly(g)
        cal = g2_independence(n)
        printed = g2_scalar_recurrence(n, 0).as_poly()
        rows.append([n, str(direct), cal == direct, printed == direct])
        ok &= cal == direct
    _csv(["n", "direct", "transfer_matches", "uncalibrated_matches"], rows, out)
    return ok


def cmd_reproduce(args, out) -> int:
    return EXIT_OK if reproduce_reference(out, args.upto) else EXIT_MISMATCH


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="c2finite", description="C-finite and C^2-finite sequence toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seq", help="C-finite sequences: terms and closure operations")
    s.add_argument("--seq", required=True, help="JSON file, or fib | lucas | geom:R")
    s.add_argument("--op", default="terms",
                   choices=["terms", "add", "sub", "mul", "subseq", "shift", "minimize", "zero-pattern"])
    s.add_argument("--other", help="second operand for add/sub/mul")
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--r", type=int, default=0)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--minimize", action="store_true")
    s.set_defaults(fn=cmd_seq)

    s = sub.add_parser("subseq", help="recurrence for a_{c*C(n,2)+d*n+e}")
    s.add_argument("--seq", required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--d", type=int, default=0)
    s.add_argument("--e", type=int, default=0)
    s.add_argument("--verify", type=int, help="check against direct terms up to this index")
    s.add_argument("--params", help="n1_max,p_max,horizon")
    s.set_defaults(fn=cmd_subseq)

    s = sub.add_parser("extract", help="recurrence for v_{n+1} = M_n v_n / w_n")
    s.add_argument("--matrix", required=True, help="CFMatrixSeq JSON")
    s.add_argument("--w", help="CFiniteSeq JSON (default 1)")
    s.add_argument("--v0", required=True, help="comma-separated initial vector")
    s.add_argument("--output", help="component index or comma-separated weights")
    s.add_argument("--mode", choices=["matrix", "functional"], default="matrix")
    s.add_argument("--params")
    s.set_defaults(fn=cmd_extract)

    s = sub.add_parser("guess", help="fit a C^2 recurrence to terms")
    s.add_argument("--terms", help="file: JSON list or one term per line")
    s.add_argument("--g2-terms", type=int, help="use the first N independence polynomials of G2")
    s.add_argument("--vars", help="comma-separated variables of the coefficient field")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--ansatz", default="1,n", help="e.g. '1,n' or 'poly:2,geom:2,fib'")
    s.add_argument("--holdout", type=int, default=8)
    s.set_defaults(fn=cmd_guess)

    s = sub.add_parser("verify", help="check a recurrence against terms")
    s.add_argument("--rec", required=True)
    s.add_argument("--terms", required=True)
    s.add_argument("--upto", type=int)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("family", help="graph families")
    s.add_argument("action", choices=["list", "materialize", "analyze", "counts", "spec", "grid"])
    s.add_argument("--name")
    s.add_argument("--spec", help="FamilySpec JSON file")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--format", choices=["edge_list", "dot", "json"], default="edge_list")
    s.set_defaults(fn=cmd_family)

    s = sub.add_parser("poly", help="graph polynomials")
    s.add_argument("kind", choices=["independence", "dichromatic", "tutte", "chromatic"])
    s.add_argument("--name")
    s.add_argument("--spec")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--graph", help="edge-list or KGraph JSON file")
    s.add_argument("--method", choices=["deletion_contraction", "subset_oracle"],
                   default="deletion_contraction")
    s.add_argument("--q", help="evaluation point for chromatic")
    s.add_argument("--eval", help="comma-separated evaluation point")
    s.set_defaults(fn=cmd_poly)

    s = sub.add_parser("famrec", help="family recurrence engines")
    s.add_argument("engine", choices=["g2", "g4"])
    s.add_argument("--upto", type=int, default=6)
    s.add_argument("--eval", help="evaluation point (g4: 'X,Y'; g2: 'x')")
    s.add_argument("--abs", action="store_true", help="absolute values")
    s.add_argument("--verify", type=int, help="compare with materialized graphs up to this index")
    s.add_argument("--printed", action="store_true", help="use the uncalibrated / shorter form")
    s.set_defaults(fn=cmd_famrec)

    s = sub.add_parser("oeis", help="compare terms with an OEIS b-file")
    s.add_argument("--id", required=True)
    s.add_argument("--seq", required=True, choices=sorted(_OEIS_SOURCES))
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--bfile", help="local b-file")
    s.add_argument("--network", action="store_true", help="download the b-file")
    s.add_argument("--soft", action="store_true", help="report only; exit 0 on mismatch")
    s.set_defaults(fn=cmd_oeis)

    s = sub.add_parser("reproduce-paper", help="reproduce the reference tables and identities")
    s.add_argument("--upto", type=int, default=6)
    s.set_defaults(fn=cmd_reproduce)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PatternNotFound, BoundExceeded) as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (CertificationError, ExtractionError) as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
