"""Command line front end: classify matrices, enumerate conjugacy classes,
run the lattice calculator, work with binary quadratic forms, emit the
fixture tables and draw river SVGs.

Exit codes: 0 ok, 1 usage, 2 domain error (message names the violated
precondition), 3 undecided.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import conjugacy as cj
from . import exactnum as xn
from . import families as fam
from . import poly as up
from . import quadform as qf
from .errors import LatClassError
from .lattice import FullLattice

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_UNDECIDED = 3


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_matrix(text: str):
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    data = json.loads(text)
    claimed = None
    if isinstance(data, dict):
        claimed = data.get("charpoly")
        data = data["matrix"]
    m = tuple(tuple(int(x) for x in row) for row in data)
    if claimed is not None:
        f = up.poly([Fraction(str(c)) for c in claimed])
        if up.charpoly(m) != f:
            raise LatClassError("matrix does not have the claimed "
                                "characteristic polynomial")
    return m


def _read_poly(text: str) -> up.Poly:
    text = text.strip()
    if text.startswith("["):
        return up.poly([Fraction(str(c)) for c in json.loads(text)])
    return up.from_string(text)


def _read_basis(text: str):
    data = json.loads(text)
    if isinstance(data, dict):
        data = data["basis"]
    return tuple(tuple(Fraction(str(x)) for x in row) for row in data)


def _basis_json(basis) -> list:
    return [[str(x) for x in row] for row in basis]


def _matrix_json(m) -> list:
    return [[int(x) for x in row] for row in m]


def _emit(payload: dict, as_json: bool):
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for key, value in payload.items():
        if isinstance(value, str) and "\n" in value:
            print(f"{key}:")
            print(value)
        else:
            print(f"{key}: {value}")


def _lattice_from_args(args) -> FullLattice:
    f = _read_poly(args.poly)
    alg, _ = cj.algebra_for_poly(f)
    basis = _read_basis(args.basis)
    return FullLattice(alg, xn.columns(basis))


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args) -> int:
    m = _read_matrix(args.matrix)
    cp = up.charpoly(m)
    regular = cj.is_regular(m)
    out = {
        "charpoly": up.to_string(cp),
        "charpoly_coeffs": [str(c) for c in cp],
        "regular": regular,
    }
    if not regular:
        _emit(out, args.json)
        return EXIT_OK
    lat = cj.matrix_to_lattice(m)
    out["order_basis"] = _basis_json(lat.order().basis)
    out["lattice_basis"] = _basis_json(lat.basis)
    out["invertible"] = lat.is_invertible()
    family = _family_info(m, cp)
    if family:
        out.update(family)
    if args.same_class is not None:
        other = _read_matrix(args.same_class)
        verdict = cj.same_class(m, other)
        out["same_class"] = "undecided" if verdict is None else verdict
        _emit(out, args.json)
        return EXIT_UNDECIDED if verdict is None else EXIT_OK
    _emit(out, args.json)
    return EXIT_OK


def _family_info(m, cp):
    factors = up.factor_rationals(cp)
    n = up.degree(cp)
    roots = [int(-g[0]) for g, mult in factors for _ in range(mult)
             if up.degree(g) == 1 and g[0].denominator == 1]
    if n == 2 and len(factors) == 1 and up.degree(factors[0][0]) == 2:
        form = qf.form_of_matrix(m)
        info = {"family": "quadratic", "form": list(form)}
        if form.four_disc() > 0:
            info["river_period"] = [list(f) for f in qf.river(form).period]
        return info
    if n == 2 and len(roots) == 2 and roots[0] != roots[1]:
        lo, hi, mu = fam.split2_normal_matrix(m)
        return {"family": "split", "normal_form": [[hi - lo, int(mu)], [0, 0]],
                "shift": lo}
    if n == 2 and len(roots) == 2:
        lam, g = fam.jordan2_normal_matrix(m)
        return {"family": "jordan", "normal_form": [[0, g], [0, 0]], "shift": lam}
    if n == 3 and len(set(roots)) == 3:
        lams, triple = fam.split3_normal_form_of_matrix(m)
        return {"family": "split", "eigenvalues": list(lams),
                "normal_triple": [str(x) for x in triple]}
    if n == 3 and len(roots) == 3 and len(set(roots)) == 1:
        lam, (g22, g32, g33) = fam.jordan3_normal_form_of_matrix(m)
        info = {"family": "jordan", "shift": lam,
                "normal_triple": [str(g22), str(g32), str(g33)]}
        if lam == 0 and all(x == 0 for x in (m[1][0], m[2][0], m[2][1]))  \
                and m[0][1] > 0 and m[1][2] > 0 and m[0][2] <= 0:
            m1, m2, m3 = m[0][1], m[1][2], -m[0][2]
            from math import gcd as _g
            if 0 <= m3 < _g(m1, m2):
                n2, n3, n4, n1, d1 = fam.jordan_decode(m1, m2, m3)
                info["order_params"] = {"n2": n2, "n3": n3, "n4": n4}
                info["class_decomposition"] = {"n1": n1, "d1": d1}
        return info
    if n == 3 and len(roots) == 3 and len(set(roots)) == 2:
        lams, triple = fam.mixed_normal_form_of_matrix(m)
        return {"family": "mixed", "eigenvalues": list(lams),
                "normal_triple": [str(x) for x in triple]}
    return None


def cmd_enumerate(args) -> int:
    f = _read_poly(args.poly)
    n = up.degree(f)
    limit = args.limit
    factors = up.factor_rationals(f)
    roots = [int(-g[0]) for g, mult in factors for _ in range(mult)
             if up.degree(g) == 1 and g[0].denominator == 1]
    out = {"poly": up.to_string(f)}
    if n == 1:
        out.update(classes=[{"matrix": [[roots[0]]]}], count=1)
    elif n == 2 and len(factors) == 1 and up.degree(factors[0][0]) == 2:
        r, s = int(-f[1]), int(f[0])
        classes = qf.gl2_classes(r, s)
        out["count"] = len(classes)
        out["sl2_count"] = sum(c["sl2_classes"] for c in classes)
        out["classes"] = [{"matrix": _matrix_json(c["representative"]),
                           "sl2_classes": c["sl2_classes"]} for c in classes]
    elif n == 2 and len(roots) == 2 and roots[0] != roots[1]:
        lo, hi = sorted(roots)
        recs = fam.split2_enumerate(hi - lo)
        out["count"] = len(recs)
        out["classes"] = [
            {"matrix": _matrix_json(_shift(rec["matrix"], lo)),
             "order_alpha": rec["order_alpha"]} for rec in recs]
    elif n == 2 and len(roots) == 2:
        lam = roots[0]
        out["infinite"] = True
        out["classes"] = [{"matrix": _matrix_json(_shift(((0, m_), (0, 0)), lam))}
                          for m_ in range(1, limit + 1)]
    elif n == 3 and len(set(roots)) == 3 and len(roots) == 3:
        lams = _fixture_or_sorted(roots)
        recs = fam.split3_enumerate_classes(lams)
        out["count"] = len(recs)
        out["eigenvalue_order"] = list(lams)
        out["classes"] = [{"matrix": _matrix_json(rec["matrix"]),
                           "triple": [str(x) for x in rec["triple"]],
                           "order": [rec["order"].a1, rec["order"].a2,
                                     rec["order"].a3]} for rec in recs]
    elif n == 3 and len(roots) == 3 and len(set(roots)) == 1:
        lam = roots[0]
        out["infinite"] = True
        classes = []
        for m1 in range(1, limit + 1):
            for m2 in range(1, limit + 1):
                from math import gcd as _g
                for m3 in range(_g(m1, m2)):
                    classes.append({"matrix": _matrix_json(
                        _shift(((0, m1, -m3), (0, 0, m2), (0, 0, 0)), lam))})
        out["classes"] = classes
    elif n == 3 and len(roots) == 3 and len(set(roots)) == 2:
        double = next(r for r in set(roots) if roots.count(r) == 2)
        single = next(r for r in set(roots) if roots.count(r) == 1)
        alpha = single - double
        sign = 1 if alpha > 0 else -1
        recs = fam.mixed_enumerate(abs(alpha), max_n2=limit)
        out["infinite"] = True
        out["classes"] = [{"matrix": _matrix_json(
            _shift(tuple(tuple(sign * x for x in row) for row in rec["matrix"]),
                   double)),
            "triple": [str(x) for x in rec["triple"]]} for rec in recs]
    elif n == 3 and tuple(f) == tuple(up.poly([16, 8, 4, 1])):
        suite = fam.cubic_suite()
        out["count"] = 6
        out["classes"] = [{"name": fam.CUBIC_DISPLAY[name],
                           "matrix": _matrix_json(suite["matrices"][name])}
                          for name in fam.CUBIC_NAMES]
    else:
        raise LatClassError(
            "enumerate supports dimension <= 2, the rank-3 families with "
            "integer eigenvalues, and the fixture cubic field")
    _emit(out, args.json)
    return EXIT_OK


def _fixture_or_sorted(roots):
    if sorted(roots) == [-2, 0, 2]:
        return fam.SPLIT_FIXTURE_LAMS
    return tuple(sorted(roots))


def _shift(m, lam):
    return tuple(tuple(x + (lam if i == j else 0) for j, x in enumerate(row))
                 for i, row in enumerate(m))


def cmd_lattice(args) -> int:
    lat = _lattice_from_args(args)
    out = {}
    if args.op in ("product", "colon", "sum", "intersect"):
        if args.basis2 is None:
            raise UsageError(f"--basis2 is required for op {args.op}")
        f = _read_poly(args.poly)
        alg, _ = cj.algebra_for_poly(f)
        other = FullLattice(alg, xn.columns(_read_basis(args.basis2)))
        result = {"product": lambda: lat * other,
                  "colon": lambda: lat.colon(other),
                  "sum": lambda: lat + other,
                  "intersect": lambda: lat & other}[args.op]()
    elif args.op == "order":
        result = lat.order()
    elif args.op == "power":
        result = lat.power(args.k)
    elif args.op == "dual":
        result = lat.dual()
    elif args.op == "winv":
        out = {"invertible": lat.is_invertible(),
               "order_basis": _basis_json(lat.order().basis)}
        _emit(out, args.json)
        return EXIT_OK
    else:  # pragma: no cover - argparse chokes first
        raise UsageError(f"unknown lattice op {args.op}")
    out["basis"] = _basis_json(result.basis)
    _emit(out, args.json)
    return EXIT_OK


def cmd_quadform(args) -> int:
    if args.qf_cmd == "reduce":
        m = _read_matrix(args.matrix)
        red = qf.legendre_reduce(m)
        _emit({"matrix": _matrix_json(red),
               "form": list(qf.form_of_matrix(red))}, args.json)
        return EXIT_OK
    if args.qf_cmd == "enumerate":
        members = qf.enumerate_m(args.r, args.s, wide=args.wide)
        _emit({"count": len(members),
               "matrices": [_matrix_json(m) for m in members]}, args.json)
        return EXIT_OK
    form = qf.QuadForm(args.a, args.h, args.b)
    if args.qf_cmd == "river":
        cyc = qf.river(form)
        out = {
            "period": [list(f) for f in cyc.period],
            "moves": "".join(cyc.moves),
            "automorph": _matrix_json(cyc.automorph),
            "delta": cyc.delta,
            "unit_in_omega_basis": list(cyc.unit_omega),
        }
        if args.svg:
            with open(args.svg, "w") as fh:
                fh.write(qf.svg_river(cyc))
            out["svg"] = args.svg
        _emit(out, args.json)
        return EXIT_OK
    if args.qf_cmd == "types":
        a, b, c = qf.classify_types(form)
        _emit({"type_a": sorted(map(list, a)), "type_b": sorted(map(list, b)),
               "type_c": sorted(map(list, c)),
               "gl2_splits": qf.gl2_splits(form)}, args.json)
        return EXIT_OK
    raise UsageError(f"unknown quadform command {args.qf_cmd}")  # pragma: no cover


def cmd_tables(args) -> int:
    tables = fam.cubic_tables() if args.fixture == "cubic8" \
        else fam.split202m2_tables()
    _emit(tables, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> Parser:
    p = Parser(prog="latclass",
               description="Exact lattice arithmetic and integer matrix "
                           "conjugacy classification")
    p.add_argument("--json", action="store_true", help="machine readable output")
    json_flag = Parser(add_help=False)
    # also accepted after the subcommand; SUPPRESS keeps the global value
    # when the flag is absent there
    json_flag.add_argument("--json", action="store_true",
                           default=argparse.SUPPRESS,
                           help="machine readable output")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("classify", parents=[json_flag],
                       help="invariants of a regular integer matrix")
    c.add_argument("--matrix", required=True, help="JSON matrix or file path")
    c.add_argument("--same-class", help="second matrix to compare against")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("enumerate", parents=[json_flag],
                       help="conjugacy classes for a polynomial")
    e.add_argument("--poly", required=True, help='e.g. "t^2+20" or [c0,c1,...,1]')
    e.add_argument("--limit", type=int, default=4,
                   help="bound for infinite families (default 4)")
    e.set_defaults(func=cmd_enumerate)

    l = sub.add_parser("lattice", parents=[json_flag],
                       help="lattice calculator in Q[t]/(f)")
    l.add_argument("--op", required=True,
                   choices=["product", "colon", "sum", "intersect", "order",
                            "power", "dual", "winv"])
    l.add_argument("--poly", required=True)
    l.add_argument("--basis", required=True,
                   help="JSON matrix whose columns generate the lattice")
    l.add_argument("--basis2", help="second lattice for binary operations")
    l.add_argument("--k", type=int, default=2, help="exponent for op power")
    l.set_defaults(func=cmd_lattice)

    q = sub.add_parser("quadform", help="binary quadratic form tools")
    qsub = q.add_subparsers(dest="qf_cmd", required=True)
    qr = qsub.add_parser("reduce", parents=[json_flag])
    qr.add_argument("--matrix", required=True)
    qe = qsub.add_parser("enumerate", parents=[json_flag])
    qe.add_argument("-r", type=int, required=True, help="trace")
    qe.add_argument("-s", type=int, required=True, help="determinant")
    qe.add_argument("--wide", action="store_true", help="the enlarged window")
    for name in ("river", "types"):
        qx = qsub.add_parser(name, add_help=False, parents=[json_flag])
        qx.add_argument("--help", action="help")
        qx.add_argument("-a", type=int, required=True)
        qx.add_argument("-h", type=int, required=True)
        qx.add_argument("-b", type=int, required=True)
        if name == "river":
            qx.add_argument("--svg", help="write one period as an SVG file")
    q.set_defaults(func=cmd_quadform)

    t = sub.add_parser("tables", parents=[json_flag],
                       help="golden tables for the worked fixtures")
    t.add_argument("--fixture", required=True, choices=["cubic8", "split202m2"])
    t.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LatClassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"usage error: cannot parse input ({exc})", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
