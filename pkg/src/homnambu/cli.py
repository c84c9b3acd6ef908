"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a mathematical failure (with a
report), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import replace
from fractions import Fraction

from . import families
from .construct import PreconditionError, induce_algebra, reduce_algebra, wedge_construct
from .fileformat import AlgebraFile, FileFormatError, dumps, load
from .identities import (
    check_abelian,
    check_fundamental_identity,
    check_gji,
    check_hom_nambu_jacobi,
    check_phi_trace,
    check_pform_compatible,
    check_skew,
    check_wedge_hypothesis,
)
from .multilinear import PForm, SkewMap, det_pform
from .report import CheckReport
from .scalar import ParameterContext, ScalarSyntaxError, parse_scalar
from .space import DimensionError, IncompatibleTuple, LinearMap, Space, classify_tuple

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

IDENTITIES = ("skew", "hnj", "fi", "trace", "pform-compat", "gji", "wedge-hyp", "abelian")


class UsageError(Exception):
    pass


# -- built-in examples ----------------------------------------------------------


def _bindings(pairs) -> dict[str, str]:
    out = {}
    for p in pairs or ():
        if "=" not in p:
            raise UsageError(f"--set expects name=value, got {p!r}")
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _int_binding(b, name, default):
    try:
        return int(b.pop(name, default))
    except ValueError:
        raise UsageError(f"{name} must be an integer") from None


def _ex_worked(b, seed, step=0):
    names = [n for n in ("b", "c", "delta1", "delta2") if n not in b]
    ctx = ParameterContext(tuple(names))
    val = {n: ctx.param(n) for n in names}
    for n in ("b", "c", "delta1", "delta2"):
        if n in b:
            val[n] = parse_scalar(b.pop(n))
    alg, tau, alpha2 = families.paper_example(val["b"], val["c"])
    rho = families.second_trace(val["delta1"], val["delta2"])
    alpha1 = alg.twists[0]
    f = AlgebraFile(Space.standard(4), ctx, alg.bracket, ["alpha1"],
                    {"alpha1": alpha1, "alpha2": alpha2}, {"tau": tau, "rho": rho},
                    comment=["Hom-Lie algebra [x_i, x_j] = x3 + b_ij x4 with alpha1(x_i) = x3"])
    if step >= 1:
        rec = induce_algebra(alg, tau, alpha2, verify=False)
        f.bracket = rec.result.bracket
        f.twists = ["alpha1", "alpha2"]
        f.comment = ["induced ternary algebra (trace tau, alpha2)"]
    return f


def _ex_simple_nlie(b, seed):
    n = _int_binding(b, "arity", 3)
    phi = families.simple_nlie(n)
    return AlgebraFile(Space.standard(n + 1), bracket=phi, maps={"id": LinearMap.identity(n + 1)},
                       twists=["id"] * (n - 1), comment=[f"simple {n}-Lie algebra"])


def _ex_random_nlie(b, seed):
    d = _int_binding(b, "dim", 4)
    n = _int_binding(b, "arity", 2)
    phi = families.random_nlie(d, n, seed)
    if phi is None:
        raise UsageError(f"no {n}-Lie bracket found for dim={d}, seed={seed}")
    return AlgebraFile(Space.standard(d), bracket=phi, maps={"id": LinearMap.identity(d)},
                       twists=["id"] * (n - 1), comment=[f"random {n}-Lie algebra, seed {seed}"])


def _ex_induction(family):
    def build(b, seed):
        d = _int_binding(b, "dim", 4)
        n = _int_binding(b, "arity", 2)
        inst = families.random_induction_instance(family, d, n, seed)
        maps = {f"alpha{k}": a for k, a in enumerate(inst.algebra.twists, 1)}
        maps[f"alpha{n}"] = inst.alpha_n
        return AlgebraFile(Space.standard(d), bracket=inst.algebra.bracket, maps=maps,
                           twists=[f"alpha{k}" for k in range(1, n)], traces={"tau": inst.tau},
                           comment=[f"{family.upper()} induction input, seed {seed}; "
                                    f"induce with --trace tau --alpha alpha{n}"])
    return build


def _ex_wedge_demo(b, seed):
    one, z = Fraction(1), Fraction(0)
    phi = SkewMap(4, 2, {(2, 3): (z, z, z, one)})
    u = [(z, z, one, z), (z, z, z, one)]
    return AlgebraFile(Space.standard(4), bracket=phi, maps={"id": LinearMap.identity(4)},
                       twists=["id"], forms={"omega": det_pform(4, u)},
                       vectors={"u1": u[0], "u2": u[1]},
                       comment=["omega(v1, v2) = det(v1, v2, x3, x4)"])


EXAMPLES = {
    "worked": lambda b, s: _ex_worked(b, s, 0),
    "worked-step1": lambda b, s: _ex_worked(b, s, 1),
    "simple-nlie": _ex_simple_nlie,
    "random-nlie": _ex_random_nlie,
    "rank-one-c1": _ex_induction("c1"),
    "random-c2": _ex_induction("c2"),
    "wedge-demo": _ex_wedge_demo,
}

# (name, bindings, seed) triples forming the built-in corpus
CORPUS = [
    ("worked", {}, 0),
    ("worked", {"b": "2", "c": "3"}, 0),
    ("worked", {"b": "-1/2", "c": "0", "delta1": "1", "delta2": "0"}, 0),
    ("worked-step1", {}, 0),
    ("worked-step1", {"b": "2", "c": "3"}, 0),
    ("simple-nlie", {"arity": "2"}, 0),
    ("simple-nlie", {"arity": "3"}, 0),
    ("random-nlie", {"dim": "4", "arity": "2"}, 1),
    ("random-nlie", {"dim": "4", "arity": "3"}, 2),
    ("rank-one-c1", {"dim": "4", "arity": "2"}, 3),
    ("random-c2", {"dim": "4", "arity": "2"}, 4),
    ("random-c2", {"dim": "4", "arity": "3"}, 5),
    ("wedge-demo", {}, 0),
]


def build_example(name: str, bindings: dict | None = None, seed: int = 0) -> AlgebraFile:
    if name not in EXAMPLES:
        raise UsageError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    b = dict(bindings or {})
    f = EXAMPLES[name](b, seed)
    if b:
        raise UsageError(f"example {name!r} does not take {', '.join(sorted(b))}")
    return f


def builtin_corpus() -> list[AlgebraFile]:
    return [build_example(n, b, s) for n, b, s in CORPUS]


# -- helpers --------------------------------------------------------------------


def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _print_report(rep: CheckReport, basis, fmt):
    if fmt == "machine":
        print(json.dumps(rep.to_dict(basis), indent=2, ensure_ascii=False))
    else:
        print(rep.format_text(basis))


def _trace_name(f: AlgebraFile, name):
    return name or f.sole("traces")


def _form(f: AlgebraFile, name, trace_name=None) -> PForm:
    if name:
        return f.lookup("forms", name)
    if trace_name:
        return PForm.from_covector(f.lookup("traces", trace_name))
    if len(f.forms) == 1:
        return f.forms[f.sole("forms")]
    return PForm.from_covector(f.lookup("traces", f.sole("traces")))


def _bracket(f: AlgebraFile) -> SkewMap:
    if f.bracket is None:
        raise FileFormatError("bracket", "file has no bracket")
    return f.bracket


def _with_twist_maps(f: AlgebraFile, twists: list[LinearMap]) -> tuple[dict, list[str]]:
    """Reuse existing map names for ``twists``; invent names for new ones."""
    maps = dict(f.maps)
    names = []
    for t in twists:
        name = next((k for k, m in maps.items() if m == t), None)
        if name is None:
            name = "id" if t == LinearMap.identity(f.dim) and "id" not in maps else f"map{len(maps) + 1}"
            maps[name] = t
        names.append(name)
    return maps, names


# -- commands -------------------------------------------------------------------


def cmd_verify(args) -> int:
    f = load(args.file)
    first = args.first
    ident = args.identity
    if ident == "skew":
        rep = check_skew(_bracket(f))
    elif ident == "hnj":
        rep = check_hom_nambu_jacobi(f.algebra(), first, args.jobs)
    elif ident == "fi":
        rep = check_fundamental_identity(_bracket(f), first, args.jobs)
    elif ident == "trace":
        rep = check_phi_trace(f.lookup("traces", _trace_name(f, args.trace)), _bracket(f), first)
    elif ident == "pform-compat":
        rep = check_pform_compatible(_form(f, args.form, args.trace), _bracket(f), first)
    elif ident == "gji":
        rep = check_gji(_bracket(f), first)
    elif ident == "wedge-hyp":
        rep = check_wedge_hypothesis(_form(f, args.form, args.trace), first)
    else:
        rep = check_abelian(_bracket(f))
    _print_report(rep, f.space.basis, args.format)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_induce(args) -> int:
    f = load(args.file)
    tname = _trace_name(f, args.trace)
    tau = f.lookup("traces", tname)
    alpha = f.lookup("maps", args.alpha)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            rec = induce_algebra(f.algebra(), tau, alpha, verify=args.verify, jobs=args.jobs)
    except PreconditionError as exc:
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        print(f"induce: {exc.args[0].splitlines()[0]}")
        if exc.report is not None:
            _print_report(exc.report, f.space.basis, args.format)
        return EXIT_FAIL
    out = replace(f, bracket=rec.result.bracket, twists=f.twists + [args.alpha],
                  comment=[f"induced with trace {tname} and twist {args.alpha}"]
                  + rec.summary(f.space.basis))
    _emit(dumps(out), args.output)
    hnj = rec.reports.get("HNJ")
    if hnj is not None:
        print(hnj.format_text(f.space.basis), file=sys.stderr)
        return EXIT_OK if hnj.passed else EXIT_FAIL
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = load(args.file)
    names = [n for n in args.fix.split(",") if n]
    vecs = [f.lookup("vectors", n) for n in names]
    try:
        out_alg = reduce_algebra(f.algebra(), vecs)
    except PreconditionError as exc:
        print(f"reduce: {exc.args[0].splitlines()[0]}")
        _print_report(exc.report, f.space.basis, args.format)
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = replace(f, bracket=out_alg.bracket, twists=f.twists[: out_alg.arity - 1],
                  comment=[f"reduced by fixing {', '.join(names)}"])
    code = EXIT_OK
    if args.verify:
        rep = check_hom_nambu_jacobi(out_alg, jobs=args.jobs)
        print(rep.format_text(f.space.basis), file=sys.stderr)
        code = EXIT_OK if rep.passed else EXIT_FAIL
    _emit(dumps(out), args.output)
    return code


def cmd_wedge(args) -> int:
    f = load(args.file)
    form = _form(f, args.form, args.trace)
    try:
        bracket, rep = wedge_construct(_bracket(f), form, mode=args.mode, verify=True)
    except PreconditionError as exc:
        print(f"wedge: {exc.args[0].splitlines()[0]}")
        _print_report(exc.report, f.space.basis, args.format)
        return EXIT_FAIL
    maps, twists = _with_twist_maps(f, [LinearMap.identity(f.dim)] * (bracket.arity - 1))
    out = replace(f, bracket=bracket, maps=maps, twists=twists,
                  comment=[f"wedge product ({args.mode} mode) of arity {bracket.arity}"])
    _emit(dumps(out), args.output)
    print(rep.format_text(f.space.basis), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_classify(args) -> int:
    f = load(args.file)
    tau = f.lookup("traces", _trace_name(f, args.trace))
    names = args.alpha or list(f.twists)
    alphas = [f.lookup("maps", n) for n in names]
    try:
        cls = classify_tuple(alphas, tau)
    except IncompatibleTuple as exc:
        print("Incompatible")
        _print_report(exc.report, f.space.basis, args.format)
        return EXIT_FAIL
    if args.format == "machine":
        print(json.dumps({"class": cls.kind.value, "maps": names,
                          "witness": {k: _jsonable(v, f.space.basis) for k, v in cls.witness.items()}}))
    else:
        extra = "".join(f", {k}={_render(v, f.space.basis)}" for k, v in cls.witness.items())
        print(f"{cls.kind.value} for maps {', '.join(names)}{extra}")
    return EXIT_OK


def _render(v, basis):
    if isinstance(v, int):
        return basis[v]
    return "(" + ",".join(str(k) for k in v) + ")"


def _jsonable(v, basis):
    if isinstance(v, int):
        return basis[v]
    return list(v)


def cmd_example(args) -> int:
    f = build_example(args.name, _bindings(args.set), args.seed)
    _emit(dumps(f), args.output)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homnambu", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output=False):
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        sp.add_argument("--jobs", type=int, default=1)
        if output:
            sp.add_argument("-o", "--output", help="output file (default: stdout)")

    v = sub.add_parser("verify", help="check an identity")
    v.add_argument("file")
    v.add_argument("identity", choices=IDENTITIES)
    v.add_argument("--trace")
    v.add_argument("--form")
    v.add_argument("--first", action="store_true", help="stop at the first defect")
    common(v)
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("induce", help="induce an (n+1)-ary algebra")
    i.add_argument("file")
    i.add_argument("--trace")
    i.add_argument("--alpha", required=True)
    i.add_argument("--verify", action="store_true")
    common(i, output=True)
    i.set_defaults(func=cmd_induce)

    r = sub.add_parser("reduce", help="fix trailing bracket arguments")
    r.add_argument("file")
    r.add_argument("--fix", required=True, help="comma-separated vector names")
    r.add_argument("--verify", action="store_true")
    common(r, output=True)
    r.set_defaults(func=cmd_reduce)

    w = sub.add_parser("wedge", help="wedge a p-form with the bracket")
    w.add_argument("file")
    w.add_argument("--form")
    w.add_argument("--trace", help="use a named trace as a 1-form")
    w.add_argument("--mode", choices=("nambu", "gji"), default="nambu")
    common(w, output=True)
    w.set_defaults(func=cmd_wedge)

    c = sub.add_parser("classify", help="classify a compatible tuple")
    c.add_argument("file")
    c.add_argument("--trace")
    c.add_argument("--alpha", nargs="+", help="map names (default: the twists)")
    common(c)
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("example", help="emit a built-in algebra file")
    e.add_argument("name", choices=sorted(EXAMPLES))
    e.add_argument("--set", action="append", metavar="NAME=VALUE")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_example)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, FileFormatError, UsageError, ScalarSyntaxError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
