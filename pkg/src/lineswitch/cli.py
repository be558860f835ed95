"""Command-line front door: gen, solve, oracle, verify, profile, bench, serve.

Exit codes: 0 ok, 1 verification reject, 2 bad input, 3 cap exceeded,
4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import instances
from .board import (
    DEFAULT_SWITCH_BUDGET,
    claim_bound_ok,
    format_certificate,
    new_board,
    parse_certificate,
    verify_certificate,
    SwitchCertificate,
)
from .errors import (
    BadInputError,
    CapExceededError,
    InternalInvariantError,
    LineSwitchError,
)
from .geometry import check_incidence_inequalities, incidence_profile
from .instances import KINDS, WEIGHT_MODES, GeneratorSpec
from .oracle import DEFAULT_CAP, board_value, max_discrepancy, switch_code
from .solvers import SOLVER_NAMES, NearPerfectParams, solve

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_BAD_INPUT = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _spec_from_args(args: argparse.Namespace) -> GeneratorSpec:
    if args.spec:
        return GeneratorSpec.from_string(args.spec)
    if not args.kind:
        raise BadInputError("gen needs --kind or --spec")
    return GeneratorSpec(
        kind=args.kind,
        n=args.n,
        rows=args.rows,
        cols=args.cols,
        k=args.k,
        seed=args.seed,
        weight_mode=args.weights,
    )


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    points, weights = instances.generate(spec)
    text = f"# {spec.to_string()}\n" + instances.serialize(points, weights)
    _write_text(args.out, text)
    return EXIT_OK


def _near_perfect_params(args: argparse.Namespace) -> NearPerfectParams | None:
    if args.slack is None and args.min_component is None and args.cutoff is None:
        return None
    base = NearPerfectParams()
    return NearPerfectParams(
        slack=args.slack if args.slack is not None else base.slack,
        min_component=args.min_component if args.min_component is not None else base.min_component,
        small_cutoff=args.cutoff if args.cutoff is not None else base.small_cutoff,
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    points, weights = instances.parse(_read_text(args.infile))
    board = new_board(points, weights)
    outcome = solve(board, args.solver, _near_perfect_params(args))
    cert = outcome.certificate
    if args.out:
        _write_text(args.out, format_certificate(points, cert))
    print(
        f"n={board.n} final={outcome.final_discrepancy} "
        f"switches={len(cert.switches)} bound={cert.claimed_bound_kind}"
    )
    return EXIT_OK


def _witness_kind(value: int, n: int) -> str:
    for kind in ("n_minus_2", "third", "balance"):
        if claim_bound_ok(kind, value, value, n):
            return kind
    raise BadInputError(f"oracle value {value} for n={n} fits no certificate bound kind")


def _cmd_oracle(args: argparse.Namespace) -> int:
    points, weights = instances.parse(_read_text(args.infile))
    board = new_board(points, weights)
    code = switch_code(board.incidence)
    result = max_discrepancy(code, weights, cap=args.cap)
    print(f"F {result.value}")
    if args.board:
        print(f"F_board {board_value(code, cap=args.cap).value}")
    if args.out:
        assert result.witness_lines is not None
        cert = SwitchCertificate(
            initial_weights=tuple(weights),
            switches=tuple(code.line_keys[i] for i in result.witness_lines),
            claimed_discrepancy=result.value,
            claimed_bound_kind=_witness_kind(result.value, board.n),
        )
        _write_text(args.out, format_certificate(points, cert))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    points, cert = parse_certificate(_read_text(args.infile))
    result = verify_certificate(points, cert, switch_budget=args.budget)
    if result.accepted:
        print(
            f"ACCEPT n={len(points)} final={result.final_discrepancy} "
            f"switches={result.switch_count} bound={cert.claimed_bound_kind}"
        )
        return EXIT_OK
    for failure in result.failures:
        print(f"REJECT {failure}")
    return EXIT_REJECT


def _cmd_profile(args: argparse.Namespace) -> int:
    points, weights = instances.parse(_read_text(args.infile))
    board = new_board(points, weights)
    profile = incidence_profile(board.incidence)
    print(f"n {profile.n}")
    print(f"lines {sum(profile.t.values())}")
    for k, count in profile.t.items():
        print(f"t_{k} {count}")
    report = check_incidence_inequalities(profile)
    for check in report.checks():
        if not check.hypothesis:
            print(f"{check.name} not_applicable")
        else:
            status = "satisfied" if check.satisfied else "VIOLATED"
            scale = f" (x{check.scale})" if check.scale != 1 else ""
            print(f"{check.name} {status} lhs={check.lhs} rhs={check.rhs}{scale}")
    return EXIT_OK


def _bench_specs(kind: str, n: int, seed: int) -> GeneratorSpec:
    if kind == "grid":
        rows = max(2, round(n**0.5))
        cols = max(2, -(-n // rows))
        return GeneratorSpec(kind=kind, rows=rows, cols=cols, seed=seed, weight_mode="random")
    if kind == "circle_plus_line":
        return GeneratorSpec(kind=kind, n=max(n, 6), k=n // 3, seed=seed, weight_mode="random")
    if kind == "collinear_plus_k":
        return GeneratorSpec(kind=kind, n=max(n - 3, 2), k=3, seed=seed, weight_mode="random")
    return GeneratorSpec(kind=kind, n=max(n, 3), seed=seed, weight_mode="random")


def _cmd_bench(args: argparse.Namespace) -> int:
    kinds = args.kinds.split(",")
    sizes = [int(s) for s in args.sizes.split(",")]
    solvers = args.solvers.split(",")
    print("kind\tn\tsolver\tfinal\tswitches\tbound\tms")
    for kind in kinds:
        if kind not in KINDS:
            raise BadInputError(f"unknown instance kind {kind!r}")
        for size in sizes:
            points, weights = instances.generate(_bench_specs(kind, size, args.seed))
            board = new_board(points, weights)
            for solver in solvers:
                start = time.perf_counter()
                outcome = solve(board, solver)
                elapsed = (time.perf_counter() - start) * 1000
                cert = outcome.certificate
                print(
                    f"{kind}\t{board.n}\t{solver}\t{outcome.final_discrepancy}"
                    f"\t{len(cert.switches)}\t{cert.claimed_bound_kind}\t{elapsed:.1f}"
                )
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lineswitch", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--rows", type=int, default=0)
    p.add_argument("--cols", type=int, default=0)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", choices=WEIGHT_MODES, default="all_plus")
    p.add_argument("--spec", help='single-line spec, e.g. "kind=grid rows=3 cols=3"')
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="run a solver and write its certificate")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--solver", choices=SOLVER_NAMES, default="auto")
    p.add_argument("--out", help="certificate output path")
    p.add_argument("--slack", type=float, default=None)
    p.add_argument("--min-component", type=int, default=None)
    p.add_argument("--cutoff", type=int, default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="exact optimum via the GF(2) switch code")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--board", action="store_true", help="also print the worst case over all weights")
    p.add_argument("--out", help="write a witness certificate")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="replay and check a certificate")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--budget", type=int, default=DEFAULT_SWITCH_BUDGET)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("profile", help="t_k table and incidence inequality report")
    p.add_argument("--in", dest="infile", default="-")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("bench", help="time solvers across generated instances")
    p.add_argument("--kinds", default="near_pencil,grid,random_gp,cubic")
    p.add_argument("--sizes", default="10,20,40")
    p.add_argument("--solvers", default="third,auto,balance")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="launch the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except BadInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except LineSwitchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
