"""Command-line interface.

Exit codes: 0 on success, 1 when an input violates a precondition or a
hypothesis of the chosen algorithm, 2 on an internal error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bounds
from .algtodiff import run as algtodiff_run
from .arith.field import GF, QQ, FieldSpec
from .arith.parse import ParseError, bipoly_from_json, parse_bipoly
from .arith.poly import BiPoly
from .diffop import DiffOp
from .errors import AlgDiffError, HypothesisError, NotFound
from .lift import hb_holds_at, smallest_good_shift


class UsageError(Exception):
    pass


def _field(args) -> FieldSpec:
    if args.rational:
        return QQ
    if args.modulus is None:
        raise UsageError("give a field: --modulus p or --rational")
    return GF(args.modulus)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_poly(args) -> BiPoly:
    F = _field(args)
    if args.expr is not None and args.input is not None:
        raise UsageError("give either --expr or --input, not both")
    if args.expr is not None:
        text = _read_text("-") if args.expr == "-" else args.expr
    elif args.input is not None:
        text = _read_text(args.input)
    else:
        raise UsageError("give a polynomial with --expr or --input")
    text = text.strip()
    if text.startswith("{"):
        P = bipoly_from_json(text)
        F.check(P.field)
    else:
        P = parse_bipoly(text, F)
    if args.shift:
        P = P.shift_x(F(args.shift))
    return P


def _require_hb(P: BiPoly):
    if not hb_holds_at(P, 0):
        a = smallest_good_shift(P)
        raise HypothesisError("H_b", "leading coefficient or discriminant vanishes at 0", shift=a)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload))
    else:
        print(text)


def _write_op(args, op: DiffOp):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(op.to_json(), fh)
            fh.write("\n")


def _var(name):
    return "d_dx" if name == "dx" else "theta"


# -- subcommands -----------------------------------------------------------

def cmd_resolvent(args):
    from .resolvent import resolvent
    P = _load_poly(args)
    op, r = resolvent(P, args.method, _var(args.var), seed=args.seed)
    _write_op(args, op)
    _emit(args, {"op": op.to_json(), "order": r, "degree": op.degree, "text": str(op)},
          op.dumps())


def cmd_telescope(args):
    from .telescope import find_lambda, find_theta_operator
    P = _load_poly(args)
    prof = bounds.DegreeProfile.of(P)
    if args.mode == "quadratic":
        N_X, N_d, _, _ = bounds.thm2_bounds(P.degree_x, P.degree_y)
        if args.d is not None:
            N_d = args.d
        res = find_lambda(P, N_X, N_d)
        op, extra = res.A, {"k": res.k}
    else:
        d = bounds.thm3_bound(prof) if args.d is None else args.d
        op = find_theta_operator(P, d)
        if op is None:
            raise NotFound(f"no theta-operator with order and degree <= {d}")
        extra = {"d": d}
    _write_op(args, op)
    _emit(args, {"op": op.to_json(), "order": op.order, "degree": op.degree, **extra,
                 "text": str(op)}, op.dumps())


def cmd_algtodiff(args):
    P = _load_poly(args)
    res = algtodiff_run(P, args.preset, args.mode, _var(args.var), seed=args.seed,
                        certify=args.verify)
    _write_op(args, res.op)
    B_X, B_d, _ = res.params
    _emit(args, {"op": res.op.to_json(), "verified": res.verified, "mode": res.mode,
                 "B_X": B_X, "B_d": B_d, "text": str(res.op)}, res.op.dumps())


def _parse_root(F, root):
    return "algebra" if root == "algebra" else F.from_str(root)


def cmd_expand(args):
    from .rec import expand
    P = _load_poly(args)
    F = P.field
    root = _parse_root(F, args.root)
    if root == "algebra":
        _require_hb(P)
    op = None
    if args.op:
        op = DiffOp.from_json(_read_text(args.op), F)
    u = expand(P, root, args.terms, via=args.via, op=op, source=args.source, seed=args.seed)
    if u.ndim == 1:
        vals = [F.to_str(c) for c in u]
    else:
        vals = [[F.to_str(c) for c in row] for row in u]
    if args.json:
        print(json.dumps(vals))
    else:
        for v in vals:
            print(v if isinstance(v, str) else " ".join(v))


def cmd_bounds(args):
    out = bounds.all_bounds(args.dx, args.dy, args.d, args.r)
    print(json.dumps(out, indent=None if args.json else 2))


def cmd_verify(args):
    from .telescope import verify_associated
    P = _load_poly(args)
    op = DiffOp.from_json(_read_text(args.op), P.field)
    ok = verify_associated(op, P)
    _emit(args, {"verified": ok}, "verified" if ok else "not verified")
    return 0 if ok else 1


def cmd_lab(args):
    from . import lab
    F = lab.F9973 if args.modulus is None and not args.rational else _field(args)
    if args.experiment == "table1":
        rep = lab.run_table1(args.max_d, F, args.seed, repeats=args.repeats)
    elif args.experiment == "table2":
        Ns = args.n or [2 ** k for k in range(10, 16)]
        rep = lab.run_table2(args.dy, Ns, args.seed, F)
    else:
        rep = lab.run_conjectures(tuple(range(1, args.max_d + 1)), args.seed, F)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(rep.dumps())
    if args.json:
        print(rep.dumps())
    else:
        print(rep.to_text())


# -- parser ----------------------------------------------------------------

def _common(p, poly=True):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--modulus", type=int, help="work over F_p")
    g.add_argument("--rational", action="store_true", help="work over Q")
    if poly:
        p.add_argument("--expr", help="polynomial text, '-' for stdin")
        p.add_argument("--input", help="file holding the polynomial (text or JSON)")
        p.add_argument("--shift", type=int, default=0, help="replace X by X + a first")
    p.add_argument("--json", action="store_true", help="structured JSON on stdout")
    p.add_argument("--threads", type=int, default=1, help="parallelism hint")


def build_parser():
    ap = argparse.ArgumentParser(prog="algdiff", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolvent", help="minimal differential resolvent")
    _common(p)
    p.add_argument("--method", choices=["series", "fraction"], default="series")
    p.add_argument("--var", choices=["dx", "theta"], default="dx")
    p.add_argument("--seed", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_resolvent)

    p = sub.add_parser("telescope", help="telescoped operators")
    _common(p)
    p.add_argument("--mode", choices=["quadratic", "refined"], default="refined")
    p.add_argument("--d", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_telescope)

    p = sub.add_parser("algtodiff", help="operators from Pade-Hermite approximation")
    _common(p)
    p.add_argument("--preset", choices=["1", "2", "3", "thm2", "thm3"], default="1")
    p.add_argument("--mode", choices=["det", "prob"], default="det")
    p.add_argument("--var", choices=["dx", "theta"], default="theta")
    p.add_argument("--seed", type=int)
    p.add_argument("--verify", action="store_true", help="force the explicit certificate")
    p.add_argument("--output")
    p.set_defaults(func=cmd_algtodiff)

    p = sub.add_parser("expand", help="power series expansion of a root")
    _common(p)
    p.add_argument("--root", required=True, help="y0 (a simple root of P(0, Y)) or 'algebra'")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--via", choices=["recurrence", "newton"], default="recurrence")
    p.add_argument("--op", help="operator JSON to use instead of computing one")
    p.add_argument("--source", choices=["resolvent", "algtodiff", "heuristic"],
                   default="resolvent")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("bounds", help="degree bounds as JSON")
    p.add_argument("--dx", type=int, required=True)
    p.add_argument("--dy", type=int, required=True)
    p.add_argument("--d", type=int, help="total degree (default dx + dy)")
    p.add_argument("--r", type=int, help="resolvent order (default dy)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="certify that an operator is associated to P")
    _common(p)
    p.add_argument("--op", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lab", help="experiments")
    p.add_argument("experiment", choices=["table1", "table2", "conjectures"])
    _common(p, poly=False)
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--dy", type=int, default=8)
    p.add_argument("--n", type=int, nargs="*", help="expansion lengths for table2")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json-out", help="also write the report to this file")
    p.set_defaults(func=cmd_lab)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = args.func(args)
        return 0 if code is None else code
    except (UsageError, ParseError, HypothesisError, NotFound, AlgDiffError, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # an invariant broke
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
