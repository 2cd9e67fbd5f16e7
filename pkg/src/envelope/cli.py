"""Command-line front end.

Exit codes: 0 when everything checked passes, 1 when a verification fails,
2 for usage, parse and mode errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import abelian as ab
from . import pbw
from . import verify as vfy
from .completion import (
    GradedTruncation,
    TruncElement,
    bch,
    check_thread,
    coproduct_trunc,
    exp_trunc,
    inverse_trunc,
    is_grouplike_trunc,
    is_primitive_trunc,
    log_trunc,
    parse_tower,
)
from .errors import EnvelopeError, ExpressionError, NotAbelian
from .expr import Context, evaluate_text
from .lie import LieAlgebra, check_jacobi, parse_lie, parse_linear
from .linalg import Subspace, format_fraction

ALIASES = {"heis": "heisenberg.lie", "heis.lie": "heisenberg.lie"}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    p = Path(path)
    if p.is_file():
        return p.read_text(encoding="utf-8")
    name = ALIASES.get(path, path)
    data = resources.files("envelope.data")
    for candidate in (name, f"{name}.lie"):
        f = data.joinpath(candidate)
        if f.is_file():
            return f.read_text(encoding="utf-8")
    raise UsageError(f"no such file or bundled algebra: {path}")


def load_lie(path: str) -> LieAlgebra:
    return parse_lie(_read(path), extra_keywords=("stage",))


def to_jsonable(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, int):
        return str(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    raise ExpressionError(f"cannot serialize a {type(value).__name__}")


def to_text(value) -> str:
    if isinstance(value, Fraction):
        return format_fraction(value)
    return repr(value) if not isinstance(value, bool) else str(value).lower()


def _emit(payload: dict, as_json: bool, text_lines):
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# evaluation contexts per mode
# ---------------------------------------------------------------------------

def _pbw_context(L: LieAlgebra) -> Context:
    env = pbw.envelope(L)
    names = {n: env.gen(i) for i, n in enumerate(L.names)}
    fns = {
        "coproduct": lambda a: pbw.coproduct(L, _pbw_arg(env, a)),
        "antipode": lambda a: pbw.antipode(L, _pbw_arg(env, a)),
        "counit": lambda a: _pbw_arg(env, a).counit(),
        "bracket": lambda a, b: _pbw_arg(env, a) * _pbw_arg(env, b) - _pbw_arg(env, b) * _pbw_arg(env, a),
        "is_primitive": lambda a: pbw.is_primitive(L, _pbw_arg(env, a)),
        "is_grouplike": lambda a: pbw.is_grouplike(L, _pbw_arg(env, a)),
    }
    return Context(names, fns)


def _pbw_arg(env, a):
    if isinstance(a, Fraction):
        return env.scalar(a)
    if not isinstance(a, pbw.PbwElement):
        raise ExpressionError("expected an element of the enveloping algebra")
    return a


def _trunc_context(L: LieAlgebra, cutoff: int) -> Context:
    T = GradedTruncation(L, cutoff)
    names = {n: T.gen(i) for i, n in enumerate(L.names)}

    def arg(a):
        if isinstance(a, Fraction):
            return T.scalar(a)
        if not isinstance(a, TruncElement):
            raise ExpressionError("expected an element of the truncation")
        return a

    fns = {
        "exp": lambda a: exp_trunc(T, arg(a)),
        "log": lambda a: log_trunc(T, arg(a)),
        "bch": lambda a, b: bch(T, arg(a), arg(b)),
        "inv": lambda a: inverse_trunc(T, arg(a)),
        "coproduct": lambda a: coproduct_trunc(T, arg(a)),
        "is_grouplike": lambda a: is_grouplike_trunc(T, arg(a)),
        "is_primitive": lambda a: is_primitive_trunc(T, arg(a)),
        "counit": lambda a: arg(a).counit(),
    }
    return Context(names, fns)


def _abelian_context(L: LieAlgebra) -> Context:
    if not L.is_abelian:
        raise NotAbelian("abelian mode needs an abelian Lie algebra")
    d = L.dim
    env = pbw.envelope(L)
    names = {n: env.gen(i) for i, n in enumerate(L.names)}
    for i in range(d):
        names.setdefault(f"w{i + 1}", ab.ExpPolyFunction.coordinate(d, i))

    def fn(a):
        if isinstance(a, Fraction):
            return ab.ExpPolyFunction.constant(d, a)
        if isinstance(a, pbw.PbwElement):
            return ab.q_map(a)
        if not isinstance(a, ab.ExpPolyFunction):
            raise ExpressionError("expected a function on the dual")
        return a

    def exp_of(a):
        f = fn(a)
        if not f.summands:
            return ab.ExpPolyFunction.constant(d, 1)
        poly = f.summands.get((Fraction(0),) * d) if f.is_polynomial() else None
        if poly is None or any(sum(m) != 1 for m in poly):
            raise ExpressionError("exp() takes a linear form in w1..wd")
        ell = [Fraction(0)] * d
        for m, c in poly.items():
            ell[m.index(1)] = c
        return ab.ExpPolyFunction.exp_linear(d, ell)

    def antipode(a):
        if isinstance(a, pbw.PbwElement):
            return pbw.antipode(L, a)
        return ab.antipode_fn(fn(a))

    def evaluate_at(a, *point):
        return ab.fn_eval(fn(a), point)

    def nu(a):
        a = _pbw_arg(env, a)
        if any(len(m) != 1 for m in a.terms):
            raise ExpressionError("nu() takes an element of the Lie algebra")
        v = [Fraction(0)] * d
        for m, c in a.terms.items():
            v[m[0]] = c
        return ab.nu_embed(v)

    fns = {
        "q": lambda a: ab.q_map(_pbw_arg(env, a)),
        "nu": nu,
        "exp": exp_of,
        "gamma": lambda a: ab.gamma(fn(a)),
        "antipode": antipode,
        "counit": lambda a: a.counit() if isinstance(a, pbw.PbwElement) else ab.counit_fn(fn(a)),
        "eval": evaluate_at,
        "coproduct": lambda a: pbw.coproduct(L, _pbw_arg(env, a)),
        "is_primitive": lambda a: ab.is_primitive_fn(fn(a)),
        "is_grouplike": lambda a: ab.is_grouplike_fn(fn(a)),
    }
    return Context(names, fns)


def _a2_context() -> Context:
    def arg(a):
        v = ab.A2Element.coerce(a)
        if v is NotImplemented:
            raise ExpressionError("expected an element of A2")
        return v

    def inv(a):
        a = arg(a)
        if not ab.a2_is_unit(a.pair()):
            raise ExpressionError(f"{a!r} is not a unit")
        return ab.A2Element(*ab.a2_inverse(a.pair()))

    fns = {
        "pair": lambda x, y: ab.A2Element(x, y),
        "inv": inv,
        "is_unit": lambda a: ab.a2_is_unit(arg(a).pair()),
    }
    return Context({"c": ab.A2Element(1, 0), "one": ab.A2Element(0, 1)}, fns)


def _parse_mode(mode: list, cutoff: int | None):
    name = mode[0]
    if name not in ("pbw", "trunc", "abelian", "a2"):
        raise UsageError(f"unknown mode {name!r} (pbw, trunc N, abelian, a2)")
    if name == "trunc":
        if len(mode) > 2:
            raise UsageError("mode trunc takes a single cutoff")
        if len(mode) == 2:
            try:
                cutoff = int(mode[1])
            except ValueError:
                raise UsageError(f"cutoff must be an integer, got {mode[1]!r}") from None
        if cutoff is None or cutoff < 1:
            raise UsageError("mode trunc needs a positive cutoff (--mode trunc N or --cutoff N)")
        return name, cutoff
    if len(mode) > 1:
        raise UsageError(f"mode {name} takes no argument")
    return name, None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    L = load_lie(args.path)
    jac = check_jacobi(L)
    checks = {"jacobi": "pass" if jac.ok else "fail"}
    if L.weights is not None:
        checks["weights-additive"] = "pass" if L.weights_additive() else "fail"
    ok = all(v == "pass" for v in checks.values())
    payload = {"file": args.path, "basis": list(L.names), "dim": L.dim, "checks": checks,
               "status": "pass" if ok else "fail"}
    if not jac.ok:
        payload["jacobi_failures"] = [
            {"triple": [L.names[i], L.names[j], L.names[k]],
             "cyclic_sum": [format_fraction(c) for c in s]}
            for i, j, k, s in jac.failures]
    _emit(payload, args.json,
          [f"{args.path}: dim {L.dim}"] + [f"{k}: {v}" for k, v in checks.items()])
    return 0 if ok else 1


def cmd_eval(args) -> int:
    mode, cutoff = _parse_mode(args.mode, args.cutoff)
    if mode == "a2":
        ctx = _a2_context()
    else:
        L = load_lie(args.path)
        ctx = {"pbw": lambda: _pbw_context(L),
               "trunc": lambda: _trunc_context(L, cutoff),
               "abelian": lambda: _abelian_context(L)}[mode]()
    try:
        value = evaluate_text(args.expr, ctx)
    except TypeError as exc:
        raise ExpressionError(f"operands do not combine in mode {mode}: {exc}") from None
    payload = {"mode": mode if cutoff is None else f"trunc {cutoff}", "expression": args.expr,
               "result": to_jsonable(value), "text": to_text(value)}
    _emit(payload, args.json, [to_text(value)])
    return 0


def cmd_primitives(args) -> int:
    L = load_lie(args.path)
    P = pbw.primitive_space(L, args.degree)
    elements = P.elements()
    ok = P.dim == L.dim
    payload = {"degree": args.degree, "dim": P.dim, "lie_dim": L.dim,
               "status": "pass" if ok else "fail",
               "basis": [e.to_json() for e in elements]}
    _emit(payload, args.json,
          [f"primitive elements of degree <= {args.degree}: dim {P.dim} (Lie algebra dim {L.dim})"]
          + [f"  {e!r}" for e in elements])
    return 0 if ok else 1


def _parse_vectors(L: LieAlgebra, items: list) -> list:
    vectors = []
    for item in items:
        for piece in item.split(","):
            if piece.strip():
                coeffs = parse_linear(piece, L.names)
                vectors.append(tuple(coeffs.get(i, Fraction(0)) for i in range(L.dim)))
    return vectors


def cmd_membership(args) -> int:
    L = load_lie(args.path)
    J = Subspace(_parse_vectors(L, args.ideal), L.dim)
    F = _parse_vectors(L, args.complement or [])
    u = evaluate_text(args.expr, _pbw_context(L))
    u = _pbw_arg(pbw.envelope(L), u)
    member = pbw.membership_ULJ(L, u, J, F)
    payload = {"expression": args.expr, "element": u.to_json(), "ideal_dim": J.dim,
               "member": member}
    _emit(payload, args.json, [f"{u!r} {'is' if member else 'is not'} in U(L)J"])
    return 0


def cmd_tower(args) -> int:
    tower = parse_tower(_read(args.path))
    failures = tower.verify(args.degree)
    stages = [{"name": name, "ideal_dim": s.ideal.dim, "quotient_dim": s.algebra.dim,
               "quotient_basis": list(s.algebra.names),
               "window_dim": len(s.projection.target.window(args.degree))}
              for name, s in zip(tower.names, tower.stages)]
    threads = []
    for spec in args.thread or []:
        parts = [p.strip() for p in spec.split("|")]
        if len(parts) != len(tower.stages):
            raise UsageError(f"thread needs {len(tower.stages)} entries separated by '|'")
        elements = [_pbw_arg(s.projection.target,
                             evaluate_text(p, _pbw_context(s.algebra)))
                    for p, s in zip(parts, tower.stages)]
        t = tower.thread(elements)
        threads.append({"entries": parts, "compatible": check_thread(t)})
    for expr in args.project or []:
        base = pbw.envelope(tower.base)
        t = tower.project(_pbw_arg(base, evaluate_text(expr, _pbw_context(tower.base))))
        threads.append({"entries": [repr(e) for e in t.elements], "projected_from": expr,
                        "compatible": check_thread(t)})
    ok = not failures
    payload = {"degree": args.degree, "stages": stages, "bonding_failures": len(failures),
               "threads": threads, "status": "pass" if ok else "fail"}
    lines = [f"stage {s['name']}: ideal dim {s['ideal_dim']}, quotient dim {s['quotient_dim']}, "
             f"window dim {s['window_dim']}" for s in stages]
    lines.append(f"bonding identities on degree <= {args.degree}: "
                 f"{'pass' if ok else f'{len(failures)} failures'}")
    lines += [f"thread {' | '.join(t['entries'])}: "
              f"{'compatible' if t['compatible'] else 'incompatible'}" for t in threads]
    _emit(payload, args.json, lines)
    return 0 if ok else 1


def cmd_census_a2(args) -> int:
    if not 1 <= args.n <= 8:
        raise UsageError("census size must be between 1 and 8")
    maps = ab.a2_morphism_census(args.n)
    records = [{"images": [[format_fraction(x) for x in img] for img in F.images],
                "radical_preimage_in_kernel": F.preimage_in_kernel()} for F in maps]
    ok = len(maps) == args.n and all(r["radical_preimage_in_kernel"] for r in records)
    payload = {"n": args.n, "count": len(maps), "morphisms": records,
               "status": "pass" if ok else "fail"}
    lines = [f"{len(maps)} unital morphisms K^{args.n} -> A2"]
    lines += ["  " + ", ".join(f"e{i + 1} -> ({', '.join(r['images'][i])})"
                               for i in range(args.n))
              + ("" if r["radical_preimage_in_kernel"] else "  [radical preimage NOT in kernel]")
              for r in records]
    _emit(payload, args.json, lines)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    try:
        report = vfy.run(args.suite, seed=args.seed)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    for path in args.paths:
        L = load_lie(path)
        jac = check_jacobi(L)
        report.checks.append(vfy.Check("inputs", f"{path}/jacobi",
                                       "pass" if jac.ok else "fail", {}))
        P = pbw.primitive_space(L, 3)
        report.checks.append(vfy.Check("inputs", f"{path}/primitives",
                                       "pass" if P.dim == L.dim else "fail",
                                       {"primitive_dim": P.dim, "lie_dim": L.dim}))
    if args.json:
        print(report.dumps())
    else:
        for line in report.summary_lines():
            print(line)
        for c in report.checks:
            if c.suite == "inputs":
                print(f"{c.status.upper():4} {c.name}")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="envelope",
        description="Exact computations in enveloping algebras of finite-dimensional Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("check", help="parse a .lie file and validate its axioms")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate an expression")
    p.add_argument("path", help=".lie file or bundled name (ignored in a2 mode, use '-')")
    p.add_argument("expr")
    p.add_argument("--mode", nargs="+", default=["pbw"], metavar="MODE",
                   help="pbw | trunc N | abelian | a2")
    p.add_argument("--cutoff", type=int, help="weight cutoff for trunc mode")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("primitives", help="primitive elements of a PBW window")
    p.add_argument("path")
    p.add_argument("--degree", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_primitives)

    p = sub.add_parser("membership", help="decide u in U(L)J")
    p.add_argument("path")
    p.add_argument("expr")
    p.add_argument("--ideal", action="append", required=True,
                   help="spanning vectors of J, e.g. 'z' or 'x + y, z'")
    p.add_argument("--complement", action="append",
                   help="optional vectors F of the adapted basis")
    common(p)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("tower", help="build a tower from a description file")
    p.add_argument("path")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--thread", action="append",
                   help="stage entries separated by '|', largest ideal first")
    p.add_argument("--project", action="append", help="element of U(L) to project to a thread")
    common(p)
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("census-a2", help="unital algebra morphisms K^n -> A2")
    p.add_argument("n", type=int)
    common(p)
    p.set_defaults(func=cmd_census_a2)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("paths", nargs="*", help="extra .lie files to validate")
    p.add_argument("--suite", action="append", choices=list(vfy.SUITES),
                   help="run only these suites (repeatable)")
    p.add_argument("--seed", type=int, default=vfy.DEFAULT_SEED)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for opt in ("degree", "cutoff"):
        v = getattr(args, opt, None)
        if v is not None and v < 1:
            parser.error(f"--{opt} must be positive")
    try:
        return args.func(args)
    except (EnvelopeError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
