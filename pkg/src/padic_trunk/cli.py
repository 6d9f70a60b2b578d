"""Command-line interface: trunk, solve, classify, poincare, bench.

Structured output is deterministic (sorted keys, sorted lists) and
serializes every integer as a decimal string so arbitrary-precision
values survive any JSON consumer.  Diagnostics go to stderr with a
nonzero exit code; structured output is never emitted on error paths.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .analysis import classify_quadratic, poincare_series
from .parser import parse
from .polynomial import poly_to_str
from .primes import factorize
from .solver import (
    ball_decomposition,
    brute_force,
    count_solutions,
    crt_solve,
    enumerate_solutions,
)
from .trunk import (
    DEFAULT_MAX_PRIME,
    STATUS_CYCLE,
    STATUS_HENSEL,
    STATUS_UNDETERMINED,
    Trunk,
    TrunkNode,
    build_trunk,
)

SCHEMA_VERSION = "1"
ENV_MAX_PRIME = "PADIC_TRUNK_MAX_PRIME"

# benchmark rows measure brute force only up to this many candidates
BENCH_BRUTE_CAP = 10**6

_BENCH_SUITES = {
    "default": [
        ("(X^2+3)*(X^2+3*X+9)", 3),
        ("X*(X-1)^2+25", 5),
        ("X^2", 3),
        ("(X-1)^2+3^5", 3),
        ("(X-1)*(X-2)+5", 5),
    ],
    "x2": [
        ("X^2", 3),
    ],
}


def _max_prime_from_env() -> int:
    raw = os.environ.get(ENV_MAX_PRIME)
    if raw is None:
        return DEFAULT_MAX_PRIME
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_MAX_PRIME} must be an integer, got {raw!r}")
    if value < 2:
        raise ValueError(f"{ENV_MAX_PRIME} must be at least 2")
    return value


def _document(command: str, inputs: dict, payload: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": inputs,
        "payload": payload,
    }


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _status_tag(node: TrunkNode) -> str:
    if node.status == STATUS_CYCLE:
        return f"cycle-certified({node.period})"
    return node.status


def _node_json(node: TrunkNode) -> dict:
    entry = {
        "r": str(node.r),
        "k": str(node.k),
        "t": None if node.t is None else str(node.t),
        "phi": str(node.phi),
        "s": str(node.s),
        "status": node.status,
        "successor": poly_to_str(node.successor),
    }
    if node.period is not None:
        entry["period"] = str(node.period)
    if node.hensel_root is not None:
        entry["hensel_root"] = str(node.hensel_root)
    return entry


# ----------------------------------------------------------------------
# trunk rendering
# ----------------------------------------------------------------------

def _trunk_text(trunk: Trunk) -> str:
    lines = [
        f"polynomial: {poly_to_str(trunk.P0)}",
        f"prime: {trunk.p}",
        f"content exponent t0: {trunk.t0}",
        f"reduced degree d_p: {trunk.d_p}",
        f"built depth: {trunk.built_depth}",
        "(0,0)",
    ]

    def draw(node: TrunkNode, indent: str, last: bool) -> None:
        branch = "└─ " if last else "├─ "
        lines.append(f"{indent}{branch}({node.r},{node.k}) t={node.t}"
                     f" s={node.s} phi={node.phi} {_status_tag(node)}")
        deeper = indent + ("   " if last else "│  ")
        for i, child in enumerate(node.children):
            draw(child, deeper, i == len(node.children) - 1)

    for i, child in enumerate(trunk.root.children):
        draw(child, "", i == len(trunk.root.children) - 1)
    return "\n".join(lines)


def _node_label(node: TrunkNode) -> str:
    if node.t is None:
        return f"({node.r},{node.k})"
    label = f"({node.r},{node.k}) t={node.t} phi={node.phi}"
    if node.status == STATUS_HENSEL:
        label += " hensel"
    elif node.status == STATUS_CYCLE:
        label += f" cycle({node.period})"
    elif node.status == STATUS_UNDETERMINED:
        label += " ?"
    return label


def _trunk_dot(trunk: Trunk, fans_to: int | None) -> str:
    lines = [
        "digraph trunk {",
        "  rankdir=BT;",
        "  node [fontsize=10];",
    ]
    trunk_ids: dict[tuple[int, int], str] = {(0, 0): "n0_0"}
    lines.append(f'  "n0_0" [label="(0,0)", color=firebrick, penwidth=2];')
    pairs: list[tuple[TrunkNode, TrunkNode]] = []
    stack = [(trunk.root, child) for child in reversed(trunk.root.children)]
    while stack:
        parent, node = stack.pop()
        pairs.append((parent, node))
        stack.extend((node, child) for child in reversed(node.children))
    for _, node in pairs:
        nid = f"n{node.k}_{node.r}"
        trunk_ids[(node.k, node.r)] = nid
        lines.append(f'  "{nid}" [label="{_node_label(node)}",'
                     " color=firebrick, penwidth=2];")
    for parent, node in pairs:
        pid = trunk_ids[(parent.k, parent.r)]
        nid = trunk_ids[(node.k, node.r)]
        lines.append(f'  "{pid}" -> "{nid}" [color=firebrick, penwidth=2];')

    if fans_to is not None:
        if trunk.t0 != 0:
            raise ValueError(
                "--with-fans requires a polynomial not divisible by p")
        previous: dict[int, str] = {0: "n0_0"}
        for level in range(1, fans_to + 1):
            solutions = enumerate_solutions(trunk, level)
            current: dict[int, str] = {}
            for x in solutions:
                vid = trunk_ids.get((level, x))
                if vid is None:
                    vid = f"f{level}_{x}"
                    lines.append(f'  "{vid}" [label="{x}", color=gray50];')
                current[x] = vid
            for x, vid in current.items():
                parent_id = previous[x % trunk.p ** (level - 1)]
                if (level, x) in trunk_ids and (level - 1, x % trunk.p ** (level - 1)) in trunk_ids:
                    continue  # trunk edge already drawn
                lines.append(f'  "{parent_id}" -> "{vid}" [color=gray50];')
            previous = current
            if not current:
                break
    lines.append("}")
    return "\n".join(lines)


def _cmd_trunk(args: argparse.Namespace) -> int:
    if args.with_fans is not None and args.format != "dot":
        raise ValueError("--with-fans requires --format dot")
    poly = parse(args.poly)
    trunk = build_trunk(poly, args.prime, args.max_level,
                        max_prime=args.max_prime)
    if args.format == "text":
        print(_trunk_text(trunk))
    elif args.format == "dot":
        print(_trunk_dot(trunk, args.with_fans))
    else:
        nodes = [trunk.root] + sorted(trunk.iter_nodes(), key=lambda n: (n.k, n.r))
        payload = {
            "polynomial": poly_to_str(trunk.P0),
            "p": str(trunk.p),
            "t0": str(trunk.t0),
            "d_p": str(trunk.d_p),
            "built_depth": str(trunk.built_depth),
            "tip_count": str(trunk.d_trunk),
            "nodes": [_node_json(n) for n in nodes],
        }
        _emit_json(_document("trunk", {
            "poly": args.poly,
            "prime": str(args.prime),
            "max_level": str(args.max_level),
        }, payload))
    return 0


# ----------------------------------------------------------------------
# solve
# ----------------------------------------------------------------------

def _balls_json(decomposition) -> list[dict]:
    p, e = decomposition.p, decomposition.e
    return [{"r": str(ball.r), "k": str(ball.k),
             "size": str(p ** (e - ball.k))}
            for ball in decomposition.balls]


def _balls_text(decomposition) -> list[str]:
    p, e = decomposition.p, decomposition.e
    out = []
    for ball in decomposition.balls:
        size = p ** (e - ball.k)
        noun = "solution" if size == 1 else "solutions"
        out.append(f"  {ball.r} mod {p}^{ball.k}  ({size} {noun})")
    return out


def _solve_prime_power(args: argparse.Namespace) -> int:
    poly = parse(args.poly)
    p, e = args.prime, args.exp
    trunk = build_trunk(poly, p, max(e, 1), max_prime=args.max_prime)
    count = count_solutions(trunk, e)
    decomposition = ball_decomposition(trunk, e) if args.balls and e >= 1 else None
    solutions = None
    if not args.count_only and not args.balls:
        solutions = [0] if e == 0 else enumerate_solutions(trunk, e)

    if args.format == "text":
        print(f"modulus: {p}^{e}")
        print(f"count: {count}")
        if decomposition is not None:
            print("balls:")
            for line in _balls_text(decomposition):
                print(line)
        if solutions is not None:
            print("solutions: " + " ".join(str(x) for x in solutions))
    else:
        payload: dict = {
            "p": str(p),
            "e": str(e),
            "modulus": str(p ** e),
            "count": str(count),
        }
        if decomposition is not None:
            payload["balls"] = _balls_json(decomposition)
        if solutions is not None:
            payload["solutions"] = [str(x) for x in solutions]
        _emit_json(_document("solve", {
            "poly": args.poly,
            "prime": str(p),
            "exp": str(e),
        }, payload))
    return 0


def _solve_modulus(args: argparse.Namespace) -> int:
    poly = parse(args.poly)
    result = crt_solve(poly, args.modulus, count_only=args.count_only,
                       max_prime=args.max_prime)
    factored = " * ".join(f"{p}^{e}" for p, e in factorize(args.modulus))
    if args.format == "text":
        print(f"modulus: {args.modulus} = {factored}")
        print(f"count: {result.count}")
        if args.balls:
            for pp, decomposition in result.factors:
                print(f"factor {pp.p}^{pp.e}: count {decomposition.count}")
                for line in _balls_text(decomposition):
                    print(line)
        if result.solutions is not None and not args.balls:
            print("solutions: " + " ".join(str(x) for x in result.solutions))
    else:
        payload = {
            "n": str(args.modulus),
            "count": str(result.count),
            "factors": [
                {
                    "p": str(pp.p),
                    "e": str(pp.e),
                    "count": str(decomposition.count),
                    "balls": _balls_json(decomposition),
                }
                for pp, decomposition in result.factors
            ],
        }
        if result.solutions is not None:
            payload["solutions"] = [str(x) for x in result.solutions]
        _emit_json(_document("solve", {
            "poly": args.poly,
            "modulus": str(args.modulus),
        }, payload))
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    if args.modulus is not None:
        if args.prime is not None or args.exp is not None:
            raise ValueError("--modulus excludes --prime/--exp")
        return _solve_modulus(args)
    if args.prime is None or args.exp is None:
        raise ValueError("provide either --modulus or both --prime and --exp")
    return _solve_prime_power(args)


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------

def _cmd_classify(args: argparse.Namespace) -> int:
    poly = parse(args.poly)
    result = classify_quadratic(poly, args.prime)
    base = "infinite" if result.base_length is None else str(result.base_length)
    if args.format == "text":
        print(f"kind: {result.kind}")
        print(f"base stem length: {base}")
    else:
        _emit_json(_document("classify", {
            "poly": args.poly,
            "prime": str(args.prime),
        }, {"kind": result.kind, "base_length": base}))
    return 0


# ----------------------------------------------------------------------
# poincare
# ----------------------------------------------------------------------

def _u_poly_str(coeffs) -> str:
    if not coeffs:
        return "0"
    parts: list[str] = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            term = str(mag)
        else:
            power = "u" if i == 1 else f"u^{i}"
            term = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)


def _cmd_poincare(args: argparse.Namespace) -> int:
    poly = parse(args.poly)
    trunk = build_trunk(poly, args.prime, args.max_level,
                        max_prime=args.max_prime)
    series = poincare_series(trunk)
    if series.certified:
        horizon = args.horizon if args.horizon is not None \
            else max(10, trunk.built_depth)
    else:
        available = len(series.truncation) - 1
        horizon = available if args.horizon is None \
            else min(args.horizon, available)
    coeffs = series.expand(horizon)
    counts = [c * args.prime**e for e, c in enumerate(coeffs)]

    if args.format == "text":
        print(f"certified: {'true' if series.certified else 'false'}")
        if series.certified:
            print(f"S(u) = ({_u_poly_str(series.numerator)})"
                  f" / ({_u_poly_str(series.denominator)})")
        else:
            print("closed form not certified; partial coefficients only")
        print(f"coefficients N_e/p^e (e = 0..{horizon}): "
              + ", ".join(str(c) for c in coeffs))
        print(f"counts N_e (e = 0..{horizon}): "
              + ", ".join(str(c) for c in counts))
    else:
        payload: dict = {
            "certified": series.certified,
            "horizon": str(horizon),
            "coefficients": [str(c) for c in coeffs],
            "counts": [str(c) for c in counts],
        }
        if series.certified:
            payload["numerator"] = _u_poly_str(series.numerator)
            payload["denominator"] = _u_poly_str(series.denominator)
            payload["denominator_factors"] = [
                {"a": str(a), "b": str(b)}
                for a, b in series.denominator_factors
            ]
        _emit_json(_document("poincare", {
            "poly": args.poly,
            "prime": str(args.prime),
            "max_level": str(args.max_level),
        }, payload))
    return 0


# ----------------------------------------------------------------------
# bench
# ----------------------------------------------------------------------

def _bench_rows(suite: str, max_exp: int, max_prime: int) -> list[dict]:
    rows = []
    for text, p in _BENCH_SUITES[suite]:
        poly = parse(text)
        for e in range(1, max_exp + 1):
            start = time.perf_counter()
            trunk = build_trunk(poly, p, e, max_prime=max_prime)
            count = count_solutions(trunk, e)
            trunk_ms = (time.perf_counter() - start) * 1000
            balls = len(ball_decomposition(trunk, e).balls)
            brute_ms = None
            if p ** e <= BENCH_BRUTE_CAP:
                start = time.perf_counter()
                found = brute_force(poly, p ** e, budget=BENCH_BRUTE_CAP)
                brute_ms = (time.perf_counter() - start) * 1000
                if len(found) != count:
                    raise RuntimeError(
                        f"trunk/brute-force disagreement for {text} at {p}^{e}:"
                        f" {count} vs {len(found)}")
            rows.append({
                "poly": text,
                "p": p,
                "e": e,
                "count": count,
                "balls": balls,
                "trunk_ms": round(trunk_ms, 3),
                "brute_ms": None if brute_ms is None else round(brute_ms, 3),
            })
    return rows


def _cmd_bench(args: argparse.Namespace) -> int:
    rows = _bench_rows(args.suite, args.max_exp, args.max_prime)
    if args.format == "text":
        print(f"suite: {args.suite}   max exponent: {args.max_exp}"
              f"   brute-force cap: {BENCH_BRUTE_CAP}")
        header = (f"{'poly':<28} {'p':>3} {'e':>3} {'N_e':>12} {'balls':>5} "
                  f"{'trunk_ms':>10} {'brute_ms':>10}")
        print(header)
        for row in rows:
            brute = "-" if row["brute_ms"] is None else f"{row['brute_ms']:.3f}"
            print(f"{row['poly']:<28} {row['p']:>3} {row['e']:>3} "
                  f"{row['count']:>12} {row['balls']:>5} "
                  f"{row['trunk_ms']:>10.3f} {brute:>10}")
    else:
        payload = {
            "suite": args.suite,
            "max_exp": str(args.max_exp),
            "brute_cap": str(BENCH_BRUTE_CAP),
            "rows": [
                {
                    "poly": row["poly"],
                    "p": str(row["p"]),
                    "e": str(row["e"]),
                    "count": str(row["count"]),
                    "balls": str(row["balls"]),
                    "trunk_ms": row["trunk_ms"],
                    "brute_ms": row["brute_ms"],
                }
                for row in rows
            ],
        }
        _emit_json(_document("bench", {
            "suite": args.suite,
            "max_exp": str(args.max_exp),
        }, payload))
    return 0


# ----------------------------------------------------------------------
# argument parsing and dispatch
# ----------------------------------------------------------------------

def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-trunk",
        description="Solve polynomial congruences modulo prime powers"
                    " through compact trunk representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    trunk_p = sub.add_parser("trunk", help="build and display a trunk")
    trunk_p.add_argument("--poly", required=True, help="polynomial expression, e.g. \"(X^2+3)*(X^2+3*X+9)\"")
    trunk_p.add_argument("--prime", required=True, type=int)
    trunk_p.add_argument("--max-level", required=True, type=int)
    trunk_p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    trunk_p.add_argument("--with-fans", type=int, metavar="E", default=None,
                         help="in dot output, also draw the solution tree up to level E")
    trunk_p.set_defaults(handler=_cmd_trunk)

    solve_p = sub.add_parser("solve", help="membership, count and enumeration")
    solve_p.add_argument("--poly", required=True)
    solve_p.add_argument("--prime", type=int)
    solve_p.add_argument("--exp", type=int)
    solve_p.add_argument("--modulus", type=int,
                         help="composite modulus (factored and recombined)")
    solve_p.add_argument("--count-only", action="store_true")
    solve_p.add_argument("--balls", action="store_true",
                         help="show the disjoint-ball decomposition instead of the list")
    solve_p.add_argument("--format", choices=("text", "json"), default="text")
    solve_p.set_defaults(handler=_cmd_solve)

    classify_p = sub.add_parser("classify", help="degree-two trunk classification")
    classify_p.add_argument("--poly", required=True)
    classify_p.add_argument("--prime", required=True, type=int)
    classify_p.add_argument("--format", choices=("text", "json"), default="text")
    classify_p.set_defaults(handler=_cmd_classify)

    poincare_p = sub.add_parser("poincare", help="generating function of the counts")
    poincare_p.add_argument("--poly", required=True)
    poincare_p.add_argument("--prime", required=True, type=int)
    poincare_p.add_argument("--horizon", type=int, default=None,
                            help="number of expansion coefficients to report")
    poincare_p.add_argument("--max-level", type=int, default=16)
    poincare_p.add_argument("--format", choices=("text", "json"), default="text")
    poincare_p.set_defaults(handler=_cmd_poincare)

    bench_p = sub.add_parser("bench", help="trunk counting vs brute force timings")
    bench_p.add_argument("--suite", choices=sorted(_BENCH_SUITES), default="default")
    bench_p.add_argument("--max-exp", required=True, type=int)
    bench_p.add_argument("--format", choices=("text", "json"), default="text")
    bench_p.set_defaults(handler=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its diagnostic
        return int(exc.code or 0)
    try:
        args.max_prime = _max_prime_from_env()
        return args.handler(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
