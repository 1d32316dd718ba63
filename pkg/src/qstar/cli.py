"""Command-line front end: coupling tables, star products, verification.

Subcommands:

  qcg     full (q-)Clebsch-Gordan table for a spin pair, CSV or JSON
  twist   forward/inverse twist matrices as JSON
  star    star-product expansion of "<poly> * <poly>"
  verify  run verification grids, write a JSON report, exit 1 on failure

Exit codes: 0 success, 1 verification failure, 2 malformed flags or
expressions, 3 unsupported generator for the chosen space.  The
environment variable QSTAR_ORDER overrides the default truncation order.

Star expressions are split at the top-level " * " (star with surrounding
spaces, outside parentheses), which must occur exactly once; inside each
factor the grammar is whitespace-insensitive with integer coefficients,
+ - * ^ and parentheses, read commutatively.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cgc import CGQuery, cg, coupled_labels, qcg
from .hseries import DEFAULT_ORDER, HSeries, spin, weights
from .qplane import PlaneElement, mu_classical
from .spacetime4d import FourElement, classical_product4, star4
from .twist import EtaFunction, twist_rep
from .qplane import bidiff as plane_bidiff
from .qplane import star as plane_star
from .verify import run_suites


class UnsupportedGenerator(Exception):
    """Generator symbol not available in the chosen space (exit 3)."""


class ExprError(Exception):
    """Malformed polynomial expression (exit 2)."""


def _default_order() -> int:
    env = os.environ.get("QSTAR_ORDER")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_ORDER


def _spin_arg(text: str):
    try:
        return spin(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


# ---------------------------------------------------------------------------
# polynomial expressions
# ---------------------------------------------------------------------------

_PLANE_GENS = {"x": (1, 0), "y": (0, 1)}
_FOUR_GENS = ("x1", "y1", "x2", "y2")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum()):
                j += 1
            tokens.append(("ident", text[i:j]))
            i = j
        elif ch in "+-*^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise ExprError(f"unexpected character {ch!r}")
    tokens.append(("end", None))
    return tokens


class _Parser:
    """Recursive-descent parser evaluating directly into plane/4-space elements."""

    def __init__(self, tokens, space: str, order: int):
        self.tokens = tokens
        self.pos = 0
        self.space = space
        self.order = order

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _one(self):
        if self.space == "plane":
            return PlaneElement.one(self.order)
        return FourElement.one(self.order)

    def _mul(self, a, b):
        if self.space == "plane":
            return mu_classical(a, b)
        return classical_product4(a, b)

    def _generator(self, name: str):
        if self.space == "plane":
            if name in _PLANE_GENS:
                a, b = _PLANE_GENS[name]
                return PlaneElement.monomial(a, b, self.order)
            raise UnsupportedGenerator(f"generator {name!r} is not a plane coordinate (use x, y)")
        if name in _FOUR_GENS:
            return FourElement.coordinate(name, self.order)
        raise UnsupportedGenerator(
            f"generator {name!r} is not a 4-space coordinate (use x1, y1, x2, y2)"
        )

    def parse(self):
        value = self.expr()
        if self.peek() != "end":
            raise ExprError(f"trailing input near token {self.tokens[self.pos][1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() == "*":
            self.next()
            value = self._mul(value, self.unary())
        return value

    def unary(self):
        sign = 1.0
        while self.peek() == "-":
            self.next()
            sign = -sign
        value = self.power()
        return value.scale(sign) if sign < 0 else value

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            kind, val = self.next()
            if kind != "int":
                raise ExprError("exponent must be a non-negative integer")
            out = self._one()
            for _ in range(val):
                out = self._mul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return self._one().scale(float(val))
        if kind == "ident":
            return self._generator(val)
        if kind == "(":
            value = self.expr()
            if self.next()[0] != ")":
                raise ExprError("missing closing parenthesis")
            return value
        raise ExprError(f"unexpected token {val!r}")


def parse_polynomial(text: str, space: str, order: int):
    if not text.strip():
        raise ExprError("empty polynomial")
    return _Parser(_tokenize(text), space, order).parse()


def split_star_expr(expr: str):
    """Split at the unique top-level ' * ' separator (depth 0)."""
    depth = 0
    positions = []
    for i in range(len(expr)):
        ch = expr[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and expr[i : i + 3] == " * ":
            positions.append(i)
    if len(positions) != 1:
        raise ExprError(
            "expression must contain exactly one top-level ' * ' separating the two factors"
            " (parenthesize factors that contain spaced products)"
        )
    i = positions[0]
    return expr[:i], expr[i + 3 :]


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _monomial_name(powers: dict) -> str:
    bits = []
    for gen, p in powers.items():
        if p == 0:
            continue
        bits.append(gen if p == 1 else f"{gen}^{p}")
    return " ".join(bits) if bits else "1"


def _plane_slices(el: PlaneElement) -> dict:
    slices = {}
    for mon in el.as_monomials(deformed=False):
        name = _monomial_name({"x": mon.a, "y": mon.b})
        for k, c in enumerate(mon.coeff.coeffs):
            if abs(c) > 1e-14:
                slices.setdefault(k, []).append((name, c))
    return slices


def _four_slices(el: FourElement) -> dict:
    import math

    slices = {}
    for ((j, m), (jp, mp)), coeff in el.terms.items():
        a = (j.twice - m.twice) // 2
        b = (j.twice + m.twice) // 2
        c2 = (jp.twice - mp.twice) // 2
        d2 = (jp.twice + mp.twice) // 2
        norm = math.sqrt(math.comb(j.twice, b) * math.comb(jp.twice, d2))
        name = _monomial_name({"x1": a, "y1": b, "x2": c2, "y2": d2})
        for k, c in enumerate(coeff.coeffs):
            v = c * norm
            if abs(v) > 1e-14:
                slices.setdefault(k, []).append((name, v))
    return slices


def render_slices(slices: dict, order: int) -> list:
    lines = []
    for k in range(order + 1):
        if k not in slices:
            continue
        terms = sorted(slices[k])
        body = " + ".join(f"{c:.10g} {name}" for name, c in terms)
        lines.append(f"h^{k}: {body}")
    return lines or ["0"]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_qcg(args) -> int:
    order = args.order
    j1, j2 = args.j1, args.j2
    rows = []
    for j, m in coupled_labels(j1, j2):
        for m1 in weights(j1):
            m2t = m.twice - m1.twice
            if abs(m2t) > j2.twice or (j2.twice - m2t) % 2 != 0:
                continue
            m2 = spin(m2t / 2)
            qr = CGQuery(j1, j2, j, m1, m2, m)
            coeffs = qcg(qr, order).coeffs if args.deformed else [cg(qr)]
            rows.append((str(j1), str(j2), str(j), str(m1), str(m2), str(m), [float(c) for c in coeffs]))
    if args.format == "csv":
        width = max(len(r[6]) for r in rows)
        header = ["j1", "j2", "j", "m1", "m2", "m"] + [f"c{k}" for k in range(width)]
        print(",".join(header))
        for r in rows:
            print(",".join(list(r[:6]) + [repr(c) for c in r[6]]))
    else:
        payload = [
            {"j1": r[0], "j2": r[1], "j": r[2], "m1": r[3], "m2": r[4], "m": r[5], "coeffs": r[6]}
            for r in rows
        ]
        print(json.dumps(payload, indent=2))
    return 0


def cmd_twist(args) -> int:
    tw = twist_rep(args.j1, args.j2, EtaFunction.one(), args.order)
    payload = {
        "j1": str(args.j1),
        "j2": str(args.j2),
        "order": args.order,
        "eta": "one",
        "forward": tw.forward.to_json(),
        "inverse": tw.inverse.to_json(),
    }
    print(json.dumps(payload, indent=2))
    return 0


def cmd_star(args) -> int:
    order = args.order
    left_text, right_text = split_star_expr(args.expr)
    space = "plane" if args.space == "plane" else "four"
    left = parse_polynomial(left_text, space, order)
    right = parse_polynomial(right_text, space, order)

    if args.space == "plane":
        result = plane_star(left, right)
        element = result.to_json()
        slices = _plane_slices(result)
    else:
        variant = "euclidean" if args.space == "euclid" else "minkowski"
        result = star4(left, right, variant)
        element = result.to_json()
        slices = _four_slices(result)

    payload = {
        "space": args.space,
        "order": order,
        "eta": "one",
        "element": element,
        "rendering": render_slices(slices, order),
    }
    if args.bidiff is not None:
        k = args.bidiff
        if k > order:
            print(f"error: --bidiff {k} exceeds truncation order {order}", file=sys.stderr)
            return 2
        if args.space == "plane":
            bk = plane_bidiff(k, left, right)
            bk_json, bk_slices = bk.to_json(), _plane_slices(bk)
        else:
            sliced = {
                key: HSeries([c.coeffs[k]]) for key, c in result.terms.items()
            }
            bk = FourElement(sliced, 0)
            bk_json, bk_slices = bk.to_json(), _four_slices(bk)
        payload["bidiff"] = {"k": k, "element": bk_json, "rendering": render_slices(bk_slices, 0)}
    print(json.dumps(payload, indent=2))
    return 0


def cmd_verify(args) -> int:
    try:
        reports = run_suites(args.suite, max_spin=args.max_spin, order=args.order, tol=args.tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    all_pass = True
    combined = []
    for rep in reports:
        data = rep.to_json()
        combined.append(data)
        for case in data["cases"]:
            mark = "PASS" if case["pass"] else "FAIL"
            print(f"{mark} {case['id']} residual={case['residual']:.3e} tol={case['tolerance']:.1e}")
        s = data["summary"]
        print(f"suite {rep.suite}: {s['passed']}/{s['total']} passed, max residual {s['max_residual']:.3e}")
        all_pass = all_pass and rep.passed
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(combined if len(combined) > 1 else combined[0], fh, indent=2)
        print(f"report written to {args.report}")
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qstar",
        description="Star products on the quantum plane and q-deformed 4-spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    order_default = _default_order()

    p = sub.add_parser("qcg", help="emit a (q-)Clebsch-Gordan table")
    p.add_argument("--j1", type=_spin_arg, required=True)
    p.add_argument("--j2", type=_spin_arg, required=True)
    p.add_argument("--deformed", action="store_true", help="q-deformed coefficients (series)")
    p.add_argument("--order", type=int, default=order_default)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_qcg)

    p = sub.add_parser("twist", help="dump twist matrices for a spin pair")
    p.add_argument("--j1", type=_spin_arg, required=True)
    p.add_argument("--j2", type=_spin_arg, required=True)
    p.add_argument("--order", type=int, default=order_default)
    p.add_argument("--eta", choices=("one",), default="one")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("star", help="expand a star product of two polynomials")
    p.add_argument("--space", choices=("plane", "euclid", "minkowski"), default="plane")
    p.add_argument("--order", type=int, default=order_default)
    p.add_argument("--eta", choices=("one",), default="one")
    p.add_argument("--expr", required=True, help='e.g. "x * y" or "x1 * x2"')
    p.add_argument("--bidiff", type=int, default=None, metavar="K", help="also emit the order-K slice")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("verify", help="run verification grids")
    p.add_argument("--suite", choices=("all",) + tuple(sorted(("series", "cgc", "twist", "plane", "spacetime"))), default="all")
    p.add_argument("--max-spin", type=_spin_arg, default=None)
    p.add_argument("--order", type=int, default=order_default)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--report", type=str, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UnsupportedGenerator as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
