"""Command-line interface: tables, verification, orbits, group queries."""
from __future__ import annotations

import argparse
import ast
import json
import math
import operator
import sys
from dataclasses import dataclass, field
from typing import List, Optional

from . import __version__
from .coxeter import (
    HEUN_POINTS,
    CycleSyntaxError,
    DuplicatePoint,
    NotEvenSigned,
    UnknownPoint,
    compose,
    d3_to_s4,
    element_order,
    format_cycles,
    is_even,
    parse_cycles,
)
from .fuchsian import A_HOMOGRAPHY, row_record
from .projective import INF, DegenerateA, DegeneratePoints, orbit_n4, orbit_n5

ORDERING = "class-major: (0,first),(0,second),(1,first),(1,second),(a,first),(a,second),(inf,first),(inf,second); D_n enumeration order within a class"


# -- table documents -------------------------------------------------------------


@dataclass
class TableDocument:
    n: int
    ordering: str = ORDERING
    version: str = __version__
    rows: List[dict] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "ordering": self.ordering, "version": self.version, "rows": self.rows}, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "TableDocument":
        d = json.loads(text)
        return cls(d["n"], d["ordering"], d.get("version", ""), d["rows"])


def build_table(n: int) -> TableDocument:
    from .numerics import solution_table

    return TableDocument(n, rows=[row_record(s) for s in solution_table(n)])


def _prefactor_text(pref) -> str:
    return " * ".join(f"({p['base']})^({p['exponent']})" for p in pref) or "1"


def _params_text(params) -> str:
    return "; ".join(f"{k}={v}" for k, v in params.items())


def render_text(doc: TableDocument) -> str:
    lines = []
    for r in doc.rows:
        lines.append(
            "\t".join(
                [
                    r["g"],
                    r["class"]["point"],
                    r["class"]["branch"],
                    _prefactor_text(r["prefactor"]),
                    r["argument"],
                    _params_text(r["params"]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


_GREEK = {"alpha": r"\alpha", "beta": r"\beta", "gamma": r"\gamma", "delta": r"\delta"}


def _tex_expr(s: str) -> str:
    import re

    s = re.sub(r"\^(\d+)", r"^{\1}", s)
    s = re.sub(r"[A-Za-z]+", lambda m: _GREEK.get(m.group(0), m.group(0)), s)
    s = s.replace("*", r"\,")
    return s


def _tex_cycles(g: str) -> str:
    import re

    g = g.replace("inf", r"\infty")
    return "$" + re.sub(r"(\\infty|[0-9a]+)([+-])", r"\1_\2", g) + "$"


def _class_exponent(n: int, point: str, branch: str) -> str:
    if branch == "first" and point != "inf":
        return "zero"
    if n == 3:
        table = {"0": "1-c", "1": "-a-b+c", "inf": "a" if branch == "first" else "b"}
    else:
        table = {"0": "1-gamma", "1": "1-delta", "a": "gamma+delta-alpha-beta", "inf": "alpha" if branch == "first" else "beta"}
    return "exponent $" + _tex_expr(table[point]) + "$"


def render_latex(doc: TableDocument) -> str:
    fn = r"\mathop{Hl}" if doc.n == 4 else r"{}_2F_1"
    keys = ("a", "q", "alpha", "beta", "gamma", "delta") if doc.n == 4 else ("a", "b", "c")
    out = [
        r"\documentclass{article}",
        r"\usepackage{longtable}",
        r"\begin{document}",
        r"\begin{longtable}{|l|l|}",
        r"\hline",
    ]
    current = None
    for r in doc.rows:
        cls = (r["class"]["point"], r["class"]["branch"])
        if cls != current:
            current = cls
            k = 1 if cls[1] == "first" else 2
            d = r"\infty" if cls[0] == "inf" else cls[0]
            out.append(
                r"\multicolumn{2}{|c|}{Frobenius solution \#%d at $x=%s$ (%s)}\\\hline"
                % (k, d, _class_exponent(doc.n, *cls))
            )
        pref = "".join(
            "(%s)^{%s}" % (_tex_expr(p["base"]), _tex_expr(p["exponent"])) for p in r["prefactor"]
        )
        p = r["params"]
        if doc.n == 4:
            args = "%s,%s;%s" % (_tex_expr(p["a"]), _tex_expr(p["q"]), ",".join(_tex_expr(p[k]) for k in keys[2:]))
        else:
            args = "%s,%s;%s" % (_tex_expr(p["a"]), _tex_expr(p["b"]), _tex_expr(p["c"]))
        out.append(r"%s & $%s\,%s(%s;\,%s)$\\\hline" % (_tex_cycles(r["g"]), pref, fn, args, _tex_expr(r["argument"])))
    out += [r"\end{longtable}", r"\end{document}", ""]
    return "\n".join(out)


# -- complex literals --------------------------------------------------------------

_CONSTS = {"sqrt5": math.sqrt(5.0), "sqrt3": math.sqrt(3.0), "i": 1j}
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def parse_complex(text: str) -> complex:
    """Evaluate a constant such as "(3+sqrt5)/2" or "1/2+i*sqrt3/2"."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
            return node.value
        if isinstance(node, ast.Name) and node.id in _CONSTS:
            return _CONSTS[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        raise ValueError(f"unsupported token in complex literal {text!r}")

    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse complex literal {text!r}") from exc
    return complex(ev(tree))


def _fmt_c(z) -> str:
    if z is INF:
        return "inf"
    z = complex(z)
    if abs(z.imag) < 1e-15 * max(1.0, abs(z.real)):
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


# -- commands ------------------------------------------------------------------------


def cmd_table(args) -> int:
    doc = build_table(args.n)
    if args.format == "json":
        text = doc.to_json() + "\n"
    elif args.format == "latex":
        text = render_latex(doc)
    else:
        text = render_text(doc)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    from .numerics import verify_all

    try:
        report = verify_all(trials=args.trials, seed=args.seed, tol=args.tol, n=args.n)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(report.to_json(indent=1))
    else:
        print(report.summary())
    return 0 if report.passed else 1


def cmd_orbit(args) -> int:
    try:
        a = parse_complex(args.a)
        if args.n == 4:
            pts = orbit_n4(a, args.tol)
            print(f"size {len(pts)}")
            for z in pts:
                print(_fmt_c(z))
        else:
            if args.b is None:
                print("error: --b is required for --n 5", file=sys.stderr)
                return 2
            b = parse_complex(args.b)
            pts = orbit_n5(a, b, args.tol)
            print(f"size {len(pts)}")
            for u, v in pts:
                print(f"{_fmt_c(u)}\t{_fmt_c(v)}")
    except (ValueError, DegenerateA, DegeneratePoints, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_group(args) -> int:
    try:
        g = parse_cycles(args.element, HEUN_POINTS)
    except (CycleSyntaxError, UnknownPoint, DuplicatePoint) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"element\t{format_cycles(g)}")
    if args.order:
        print(f"order\t{element_order(g)}")
    if args.parity:
        print(f"parity\t{'even' if is_even(g) else 'odd'}")
    if args.s4:
        try:
            print(f"s4\t{d3_to_s4(g)}")
        except (NotEvenSigned, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    if args.partner:
        print(f"partner\t{format_cycles(compose(g, A_HOMOGRAPHY))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heun192", description="Local solutions of the hypergeometric and Heun equations.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="emit the 24- or 192-row solution table")
    t.add_argument("--n", type=int, choices=(3, 4), default=4)
    t.add_argument("--format", choices=("text", "json", "latex"), default="text")
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run the numeric cross-agreement driver")
    v.add_argument("--n", type=int, choices=(3, 4), default=4)
    v.add_argument("--trials", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("orbit", help="orbit of a configuration under the hyper-Kummer group")
    o.add_argument("--n", type=int, choices=(4, 5), default=4)
    o.add_argument("--a", required=True)
    o.add_argument("--b")
    o.add_argument("--tol", type=float, default=1e-9)
    o.set_defaults(func=cmd_orbit)

    g = sub.add_parser("group", help="query a signed permutation of (0, 1, inf, a)")
    g.add_argument("--element", required=True)
    g.add_argument("--order", action="store_true")
    g.add_argument("--parity", action="store_true")
    g.add_argument("--s4", action="store_true")
    g.add_argument("--partner", action="store_true")
    g.set_defaults(func=cmd_group)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
