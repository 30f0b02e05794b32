"""Command-line front end: ``mcm <command> ...``.

Results go to stdout as JSON (or a single true/false token for queries);
diagnostics go to stderr.  Exit status 2 signals bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Callable, Optional

from . import congruence as cg
from . import element as el
from . import oracle
from .dsl import eval_text, to_text
from .equations import solve_left, solve_right
from .errors import MCMError
from .quotient import h_sigma, iota_map, preimage, semidirect_mul, word_mul

DEFAULT_SEED = 0


def _seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("MCM_SEED")
    return int(env) if env else DEFAULT_SEED


def _emit(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _point(text: str) -> tuple[int, int]:
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j with positive integers, got {text!r}")
    if i < 1 or j < 1:
        raise argparse.ArgumentTypeError(f"point ({i},{j}) is not in N x N")
    return i, j


# -- commands ----------------------------------------------------------------


def cmd_eval(args) -> int:
    alpha = eval_text(args.expr)
    if args.apply is not None:
        y = el.apply(alpha, args.apply)
        _emit(None if y is None else [y[0], y[1]])
    else:
        _emit(el.to_json(el.normalize(alpha)))
    return 0


def cmd_normalize(args) -> int:
    print(el.dumps(eval_text(args.expr)))
    return 0


def cmd_print(args) -> int:
    print(to_text(eval_text(args.expr)))
    return 0


def _query(pred: Callable[[el.Element, el.Element], bool]):
    def run(args) -> int:
        ok = pred(eval_text(args.left), eval_text(args.right))
        print("true" if ok else "false")
        return 0 if ok else 1

    return run


def cmd_canon(args) -> int:
    _emit(iota_map(eval_text(args.expr)).to_json())
    return 0


def cmd_solve(args) -> int:
    a, b = eval_text(args.alpha), eval_text(args.beta)
    solver = solve_right if args.side == "right" else solve_left
    for chi in solver(a, b, search_margin=args.margin):
        _emit(el.to_json(chi))
    return 0


def cmd_random(args) -> int:
    params = oracle.RandomParams(args.max_window, args.max_shift, args.hole_budget, not args.no_swap)
    _emit(el.to_json(el.normalize(oracle.random_element(_seed(args.seed), params))))
    return 0


# -- verification suites -------------------------------------------------------


def _pairs(rng: random.Random, n: int, **kw):
    for _ in range(n):
        yield oracle.random_element(rng, **kw), oracle.random_element(rng, **kw)


def suite_compose(rng, n):
    W = 14
    for a, b in _pairs(rng, n):
        ab = el.compose(a, b)
        ta, tb = oracle.truncate(a, W + 4), oracle.truncate(b, W + 8)
        expected = oracle.bf_compose(ta, tb).restricted(W)
        if oracle.truncate(ab, W) != expected:
            yield f"compose disagrees with pointwise evaluation: {a} {b}"
        if not oracle.bf_check(oracle.truncate(ab, W)):
            yield f"product is not monotone injective: {ab}"


def suite_order(rng, n):
    for beta in (oracle.random_element(rng) for _ in range(n)):
        holes = oracle.random_window_subset(rng, beta.bound + 2, rng.randint(0, 4))
        alpha = el.restrict(beta, holes)
        if not el.natural_leq(alpha, beta) or el.natural_leq_witness(alpha, beta) is None:
            yield f"restriction not below original: {beta} {sorted(holes)}"


def suite_sigma(rng, n):
    for a, b in _pairs(rng, n, allow_swap=False):
        for x, y in ((a, b), (b, a)):
            if cg.sigma_equiv(x, y) != (h_sigma(x) == h_sigma(y)):
                yield f"sigma test and word map disagree: {x} {y}"
        if h_sigma(el.compose(a, b)) != word_mul(h_sigma(a), h_sigma(b)):
            yield f"word map is not multiplicative: {a} {b}"
        if not cg.sigma_equiv(a, cg.alpha_f(a)):
            yield f"alpha_f left the class: {a}"


def suite_quotient(rng, n):
    for a, b in _pairs(rng, n):
        if iota_map(el.compose(a, b)) != semidirect_mul(iota_map(a), iota_map(b)):
            yield f"iota is not multiplicative: {a} {b}"
        if iota_map(preimage(iota_map(a))) != iota_map(a):
            yield f"preimage does not reproduce class: {a}"


def suite_dsl(rng, n):
    for _ in range(n):
        a = oracle.random_element(rng)
        if eval_text(to_text(a)) != a:
            yield f"print/parse round trip failed: {a}"


SUITES = {
    "compose": suite_compose,
    "order": suite_order,
    "sigma": suite_sigma,
    "quotient": suite_quotient,
    "dsl": suite_dsl,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    seed = _seed(args.seed)
    status = 0
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        failures = list(SUITES[name](rng, args.samples))
        for msg in failures[:5]:
            print(f"[{name}] {msg}", file=sys.stderr)
        _emit({"suite": name, "samples": args.samples, "seed": seed, "failures": len(failures)})
        if failures:
            status = 1
    return status


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="evaluate an expression")
    s.add_argument("expr")
    s.add_argument("--apply", type=_point, metavar="I,J", help="apply the result to a point")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("normalize", help="print the canonical JSON literal")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("print", help="print a generator-word expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_print)

    for name, pred in (("eq", el.equals), ("leq", el.natural_leq), ("sigma-eq", cg.sigma_equiv)):
        s = sub.add_parser(name, help=f"{name} query; exit 0 if true, 1 if false")
        s.add_argument("left")
        s.add_argument("right")
        s.set_defaults(func=_query(pred))

    s = sub.add_parser("canon", help="free word and orientation of the sigma-class")
    s.add_argument("expr")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("solve", help="all solutions of A*X = B (right) or X*A = B (left)")
    s.add_argument("--side", choices=("right", "left"), required=True)
    s.add_argument("--margin", type=int, default=None, help="override the search window")
    s.add_argument("alpha")
    s.add_argument("beta")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="run randomized property suites")
    s.add_argument("--suite", choices=["all", *SUITES], default="all")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--samples", type=int, default=100)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("random", help="emit a seeded random element")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--max-window", type=int, default=6)
    s.add_argument("--max-shift", type=int, default=2)
    s.add_argument("--hole-budget", type=int, default=3)
    s.add_argument("--no-swap", action="store_true")
    s.set_defaults(func=cmd_random)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MCMError, ValueError, OSError) as exc:
        print(f"mcm: error: {exc}", file=sys.stderr)
        return 2


def run(argv: Optional[list[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
