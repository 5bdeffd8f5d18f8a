"""Command line entry point: ``orelab eval | suite | map | finiteness | demo``.

Exit codes: 0 pass, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import OreLabError
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orelab", description="Ore extensions, skew series and finiteness checks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate an expression")
    e.add_argument("--ring", required=True, help="ring descriptor, e.g. 'Poly(Z,y)'")
    e.add_argument("--sigma", help="endomorphism name; makes the ring R[x;sigma,delta]")
    e.add_argument("--delta", help="sigma-derivation name")
    e.add_argument("--prec", type=int, default=8, help="precision used by theta")
    e.add_argument("expr")

    s = sub.add_parser("suite", help="run a verification suite")
    s.add_argument("name", help="suite name, or 'all'")
    s.add_argument("--window", type=int)
    s.add_argument("--prec", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--count", type=int)
    s.add_argument("--base", help="override the base ring descriptor")
    s.add_argument("--json", dest="json_path", help="write the JSON report here ('-' for stdout)")

    m = sub.add_parser("map", help="module maps over a ring")
    m.add_argument("--ring", required=True)
    m.add_argument("--side", choices=("left", "right"), default="right")
    m.add_argument("--sigma")
    m.add_argument("--delta")
    m.add_argument("--matrix", help="rows of expressions, e.g. '[[x, 1]]' or '[[1],[1]]'")
    m.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--trials", type=int, default=1000)
    m.add_argument("--budget", type=int)
    msub = m.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = msub.add_parser("check")
    c.add_argument("what", choices=("inj", "surj"))
    se = msub.add_parser("search")
    se.add_argument("what", choices=("mono", "epi"))
    se.add_argument("n", type=int)
    se.add_argument("m", type=int)
    k = msub.add_parser("kernel")
    k.add_argument("--degree", type=int, required=True)

    f = sub.add_parser("finiteness", help="exhaustive finiteness oracles")
    f.add_argument("property", choices=("direct", "stable"))
    f.add_argument("--ring", required=True)
    f.add_argument("--upto", type=int, default=2)
    f.add_argument("--budget", type=int)

    d = sub.add_parser("demo", help="worked demonstrations")
    d.add_argument("which", choices=("ex116", "thm04", "cor118"))
    d.add_argument("--ring", default="Z/4")
    d.add_argument("--sigma", default="id")
    d.add_argument("--prec", type=int, default=8)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--count", type=int, default=100)
    return p


def _emit(rep: Report, json_path: str | None = None) -> int:
    if json_path == "-":
        print(rep.to_json())
    else:
        print(rep)
        if json_path:
            with open(json_path, "w", encoding="utf-8") as fh:
                fh.write(rep.to_json() + "\n")
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _cmd_eval(args) -> int:
    from .parser import build_context, eval_expression, format_value

    ctx = build_context(args.ring, args.sigma, args.delta, args.prec)
    print(format_value(eval_expression(args.expr, ctx)))
    return EXIT_PASS


def _cmd_suite(args) -> int:
    from .suites import run_suite

    params = {"window": args.window, "prec": args.prec, "seed": args.seed,
              "count": args.count, "base": args.base}
    return _emit(run_suite(args.name, params), args.json_path)


def _split_top(text: str) -> list[str]:
    """Split on commas that are not nested in brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _unbracket(text: str) -> str:
    from .parser import ParseError

    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"expected a bracketed list, got {text!r}")
    return text[1:-1]


def _matrix_from_text(text: str, ctx):
    """``"[[x, 1], [0, y]]"``: rows of expressions in the context ring."""
    from .parser import eval_expression

    rows = [_split_top(_unbracket(r)) for r in _split_top(_unbracket(text))]
    return tuple(tuple(eval_expression(e, ctx) for e in r) for r in rows)


def _cmd_map(args) -> int:
    from .modules import (ModuleMap, brute_injective, brute_surjective, bounded_degree_kernel,
                          search_epi, search_mono)
    from .parser import build_context

    ctx = build_context(args.ring, args.sigma, args.delta)
    R = ctx.ring
    if args.action == "search":
        fn = search_mono if args.what == "mono" else search_epi
        res = fn(R, args.n, args.m, args.side, args.mode, args.budget, args.seed, args.trials)
        if res.found is not None:
            print(f"found: {res.found}  (after {res.candidates} candidates)")
        elif res.definitive:
            print(f"none: no {args.what} R^{args.n} -> R^{args.m} exists ({res.candidates} candidates)")
        else:
            print(f"none found in {res.candidates} random trials (not definitive)")
        return EXIT_PASS
    if not args.matrix:
        print("orelab map: --matrix is required for check and kernel", file=sys.stderr)
        return EXIT_USAGE
    f = ModuleMap(R, _matrix_from_text(args.matrix, ctx), args.side)
    if args.action == "check":
        res = (brute_injective if args.what == "inj" else brute_surjective)(f, args.budget)
        label = "injective" if args.what == "inj" else "surjective"
        wit = ""
        if res.witness is not None:
            wit = "  witness: " + json.dumps([[str(e) for e in t] for t in res.witness]
                                             if args.what == "inj" else [str(e) for e in res.witness])
        print(f"{label}: {str(res.holds).lower()}{wit}  ({res.evaluations} evaluations)")
        return EXIT_PASS
    for v in bounded_degree_kernel(f, args.degree):
        print("(" + ", ".join(str(e) for e in v) + ")")
    return EXIT_PASS


def _cmd_finiteness(args) -> int:
    from .finiteness import directly_finite_brute, stably_finite_upto
    from .rings import make_ring

    R = make_ring(args.ring)
    if args.property == "direct":
        fr = directly_finite_brute(R, args.budget)
    else:
        fr = stably_finite_upto(R, args.upto, args.budget)
    line = f"{fr.property}[{fr.ring}]: {fr.verdict}"
    if fr.witness is not None:
        line += "  witness: (" + ", ".join(str(w) for w in fr.witness) + ")"
    if fr.detail:
        line += f"  ({fr.detail})"
    print(line)
    return EXIT_FAIL if fr.verdict == "fails" else EXIT_PASS


def _cmd_demo(args) -> int:
    from .finiteness import cor118_demo, ex116_demo, skew_poly_finiteness_demo
    from .morphisms import builtin_morphisms
    from .rings import make_ring

    if args.which == "ex116":
        return _emit(ex116_demo(args.seed))
    R = make_ring(args.ring)
    if args.which == "cor118":
        return _emit(cor118_demo(R, args.prec))
    sigma = builtin_morphisms(args.sigma, R)
    return _emit(skew_poly_finiteness_demo(R, sigma, args.prec, args.count, args.seed))


COMMANDS = {"eval": _cmd_eval, "suite": _cmd_suite, "map": _cmd_map,
            "finiteness": _cmd_finiteness, "demo": _cmd_demo}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (OreLabError, ValueError) as exc:
        print(f"orelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
