"""Command line front end.

Exit codes: 0 success, 1 a check suite failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

from .bispan import Bispan, compose_bispans
from .context import CompositionError, Mor, dependent_product
from .evaluation import (
    BoundTooSmall,
    Poly,
    compile,
    evaluate,
    finite_difference_degree,
    get_semiring,
    max_fiber_degree,
    polynomial_oracle,
)
from .finset import degree_decomposition
from .gset import builtin_group, double_coset_decomposition, parse_subgroup, subgroup_name
from .serialize import (
    Document,
    ParseError,
    bispan_dot,
    dist_dot,
    parse_document,
    serialize,
    span_dot,
    to_document,
    to_dot,
)
from .span import Span


class UsageError(Exception):
    pass


def _load(args) -> Document:
    if not args.input:
        raise UsageError("--input FILE is required for this command")
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_document(text)


def _where(doc: Document, ident: str) -> str:
    line, col = doc.locate(ident)
    return f"{ident} (line {line}, column {col})"


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _seed(args) -> int:
    env = os.environ.get("BISPAN_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"BISPAN_SEED must be an integer, got {env!r}") from None
    return args.seed


def _group(args, doc: Document | None = None):
    name = args.group
    if name is None:
        raise UsageError("--group is required for this command")
    if doc is not None and name in doc.groups:
        return doc.groups[name]
    try:
        return builtin_group(name)
    except KeyError:
        raise UsageError(f"unknown group {name!r}") from None


def _perm(G, g: int) -> str:
    if G.perms is None:
        return f"g{g}"
    return "[" + " ".join(str(i) for i in G.perms[g]) + "]"


# commands


def cmd_compose(args) -> int:
    doc = _load(args)
    b1, b2 = doc.get("bispans", args.first), doc.get("bispans", args.second)
    if b1.tgt != b2.src:
        raise UsageError(f"cannot compose {_where(doc, args.second)} after {_where(doc, args.first)}: "
                         f"target of {args.first} is not the source of {args.second}")
    c = compose_bispans(b2, b1)
    form = str(polynomial_oracle(c))
    if args.format == "dot":
        sys.stdout.write(bispan_dot("composite", c))
        return 0
    text = serialize({"composite": c})
    _emit(args, text + f"canonical form: {form}\n",
          {"canonical_form": form, "document": json.loads(text)})
    return 0


def _parse_value(s: str, name: str):
    if name == "bool":
        if s.lower() in ("1", "true", "t"):
            return True
        if s.lower() in ("0", "false", "f"):
            return False
        raise UsageError(f"not a boolean: {s!r}")
    if name == "tropical" and s.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"not an integer: {s!r}") from None


def _show(v) -> str:
    if v is True or v is False:
        return "true" if v else "false"
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return str(v)


def cmd_eval(args) -> int:
    doc = _load(args)
    b = doc.get("bispans", args.bispan)
    name = args.semiring
    c = compile(b)
    if name == "poly":
        out = [str(p) for p in polynomial_oracle(b).polys]
        _emit(args, " ".join(out) if out else "", {"semiring": name, "output": out})
        return 0
    try:
        R = get_semiring(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    x = [_parse_value(v, name) for v in args.values]
    if len(x) != c.src_arity:
        raise UsageError(f"{args.bispan} expects {c.src_arity} input values, got {len(x)}")
    y = evaluate(c, R, x)
    shown = [_show(v) for v in y]
    _emit(args, " ".join(shown), {"semiring": name, "input": [_show(v) for v in x], "output": shown})
    return 0


def cmd_dist(args) -> int:
    doc = _load(args)
    l, f = doc.get("morphisms", args.l), doc.get("morphisms", args.f)
    if l.cod != f.dom:
        raise UsageError(f"{_where(doc, args.l)} and {_where(doc, args.f)} are not composable")
    try:
        d = dependent_product(l, f)
    except CompositionError as exc:
        raise UsageError(str(exc)) from None
    fmt = args.format or "dot"
    if fmt == "dot":
        sys.stdout.write(dist_dot("distributivity", d))
        return 0
    sizes = {"x": len(d.l.dom), "y": len(d.f.dom), "z": len(d.f.cod), "w": len(d.w), "f*w": len(d.pb.apex)}
    text = "\n".join(f"{k}\t{v}" for k, v in sizes.items())
    _emit(args, text, {"sizes": sizes, "g": list(d.g.table), "eps": list(d.eps.table)})
    return 0


def cmd_degree(args) -> int:
    doc = _load(args)
    if args.id in doc.bispans:
        b = doc.bispans[args.id]
        c = compile(b)
        predicted = max_fiber_degree(b)
        bound = args.bound if args.bound is not None else max(max(predicted, default=0), 0) + 2
        try:
            got = finite_difference_degree(c, bound)
        except BoundTooSmall as exc:
            raise UsageError(str(exc)) from None
        rows = [f"out{j}\t{m.total}\t{' '.join(map(str, m.per_variable))}\t{predicted[j]}"
                for j, m in enumerate(got)]
        _emit(args, "\n".join(["target\tdegree\tper-variable\tmax-fiber"] + rows),
              {"bound": bound, "degrees": [m.total for m in got],
               "per_variable": [list(m.per_variable) for m in got], "max_fiber": list(predicted)})
        return 0
    m = doc.get("morphisms", args.id)
    dec = degree_decomposition(m)
    rows = [f"{c.degree}\t{' '.join(map(str, c.incl.table))}" for c in dec.components]
    _emit(args, "\n".join(["degree\tcodomain"] + rows),
          {"components": {str(c.degree): list(c.incl.table) for c in dec.components}})
    return 0


def _subgroup(G, spec: str):
    try:
        if spec.startswith("["):
            return parse_subgroup(G, json.loads(spec))
        return parse_subgroup(G, spec)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0]) if exc.args else "bad subgroup") from None


def cmd_cosets(args) -> int:
    doc = _load(args) if args.input else None
    G = _group(args, doc)
    H, K = _subgroup(G, args.H), _subgroup(G, args.K)
    L = _subgroup(G, args.L) if args.L else G.whole
    try:
        dec = double_coset_decomposition(H, K, L)
    except CompositionError as exc:
        raise UsageError(str(exc)) from None
    rows = [(_perm(G, b.representative), subgroup_name(b.stabilizer), len(b.orbit)) for b in dec.blocks]
    head = f"# {G.name}: H={subgroup_name(H)} K={subgroup_name(K)} L={subgroup_name(L)}"
    text = "\n".join([head, "representative\tstabilizer\torbit"] + ["\t".join(map(str, r)) for r in rows])
    _emit(args, text, {"group": G.name, "rows": [
        {"representative": r[0], "stabilizer": r[1], "orbit": r[2]} for r in rows]})
    return 0


_TERM = re.compile(r"^\s*(\d+)\s*(?:[*·]\s*(\[[^\]]+\]))?\s*$")


def _parse_element(H, text: str):
    from .tambara import burnside_basis_names, burnside_from_names

    names = burnside_basis_names(H)
    terms = {}
    for part in text.split("+"):
        m = _TERM.match(part)
        if not m:
            raise UsageError(f"cannot parse Burnside term {part.strip()!r}")
        basis = m.group(2) or names[0]
        terms[basis] = terms.get(basis, 0) + int(m.group(1))
    try:
        return burnside_from_names(H, terms)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_norm(args) -> int:
    from .gset import quotient_map
    from .tambara import SliceValue, burnside_basis_names, norm

    doc = _load(args) if args.input else None
    G = _group(args, doc)
    H, K = _subgroup(G, args.H), _subgroup(G, args.K)
    try:
        q = quotient_map(H, K)
    except CompositionError as exc:
        raise UsageError(str(exc)) from None
    names = burnside_basis_names(K)
    if args.element is not None:
        elements = [_parse_element(H, args.element)]
    else:
        from .tambara import BurnsideElement, subgroup_classes_in

        top = (1,) + (0,) * (len(subgroup_classes_in(H)) - 1)
        elements = [BurnsideElement(H, tuple(n * c for c in top)) for n in range(args.max_size + 1)]
    header = f"# norm {G.name}/{subgroup_name(H)} -> {G.name}/{subgroup_name(K)}"
    lines = [header, "input\t" + "\t".join(names) + "\tresult"]
    payload = []
    for x in elements:
        y = norm(SliceValue(q.dom, (x,)), q).parts[0]
        lines.append("\t".join([str(x)] + [str(c) for c in y.counts] + [str(y)]))
        payload.append({"input": str(x), "counts": list(y.counts), "result": str(y)})
    _emit(args, "\n".join(lines), {"basis": list(names), "rows": payload})
    return 0


def cmd_check(args) -> int:
    from .checks import SUITES

    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    args.seed = _seed(args)
    if args.group is not None and args.group != "trivial":
        _group(args)
    res = SUITES[args.suite](args)
    counter = None
    if res.counterexample is not None:
        counter = _counterexample_document(res.counterexample)
    payload = {"suite": res.name, "ok": res.ok, "cases": res.cases, "reason": res.reason,
               "counterexample": counter}
    text = res.line()
    if counter is not None:
        text += "\n" + counter
    if args.format == "json":
        if counter is not None:
            payload["counterexample"] = json.loads(counter)
        _emit(args, text, payload)
    else:
        _emit(args, text, payload)
    return 0 if res.ok else 1


def _counterexample_document(w) -> str | None:
    items = w if isinstance(w, tuple) else (w,)
    named = {}
    for k, v in enumerate(items):
        if isinstance(v, (Bispan, Span, Mor)):
            named[f"c{k}"] = v
    if not named:
        return json.dumps({"witness": repr(w)}) + "\n"
    return serialize(named)


def cmd_render(args) -> int:
    doc = _load(args)
    ident = args.id
    if ident in doc.bispans:
        sys.stdout.write(bispan_dot(ident, doc.bispans[ident]))
    elif ident in doc.spans:
        sys.stdout.write(span_dot(ident, doc.spans[ident]))
    elif ident in doc.morphisms:
        m = doc.morphisms[ident]
        sys.stdout.write(to_dot(ident, {"dom": m.dom, "cod": m.cod}, [("dom", "cod", ident)]))
    else:
        doc.get("bispans", ident)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE")
    common.add_argument("--semiring", default="nat", metavar="NAME")
    common.add_argument("--group", metavar="ID")
    common.add_argument("--max-size", type=int, metavar="N")
    common.add_argument("--seed", type=int, default=0, metavar="N")
    common.add_argument("--format", choices=("text", "json", "dot"))

    p = argparse.ArgumentParser(prog="bispans", description="Spans, bispans and their evaluations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compose", parents=[common], help="compose two bispans (first, then second)")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(run=cmd_compose)

    s = sub.add_parser("eval", parents=[common], help="evaluate a bispan over a semiring")
    s.add_argument("bispan")
    s.add_argument("values", nargs="*")
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("dist", parents=[common], help="distributivity diagram of l then f")
    s.add_argument("l")
    s.add_argument("f")
    s.set_defaults(run=cmd_dist)

    s = sub.add_parser("degree", parents=[common], help="degree of a bispan or a morphism")
    s.add_argument("id")
    s.add_argument("--bound", type=int)
    s.set_defaults(run=cmd_degree)

    s = sub.add_parser("cosets", parents=[common], help="double coset decomposition")
    s.add_argument("H")
    s.add_argument("K")
    s.add_argument("L", nargs="?")
    s.set_defaults(run=cmd_cosets)

    s = sub.add_parser("norm", parents=[common], help="norm along G/H -> G/K")
    s.add_argument("H")
    s.add_argument("K")
    s.add_argument("element", nargs="?")
    s.set_defaults(run=cmd_norm)

    s = sub.add_parser("check", parents=[common], help="run an invariant suite")
    from .checks import SUITES

    s.add_argument("suite", help="one of: " + ", ".join(sorted(SUITES)))
    s.add_argument("--trials", type=int)
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("render", parents=[common], help="dot graph of a declared value")
    s.add_argument("id")
    s.set_defaults(run=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "norm" and args.element is None and args.max_size is None:
        args.max_size = 6
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"{args.input}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"bispans {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
