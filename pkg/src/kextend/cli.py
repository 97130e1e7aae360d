"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 contract violation,
3 property failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import ContractError, Element
from .exact import MAX_EXACT_SIZE
from .io import StreamFormatError, iter_stream, load_constraint
from .runner import ALGORITHMS, UsageError, run
from .systems import (
    MAX_CHECK_SIZE,
    MAX_SWEEP_SIZE,
    ExplicitSystem,
    GroundSetTooLarge,
    check_k_extendible,
    check_k_set_system,
    down_closed_witness,
    extendibility_witness,
    min_extendibility,
)
from .validation import parse_weight
from .verify import verify_suite

EXIT_OK, EXIT_USAGE, EXIT_CONTRACT, EXIT_PROPERTY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _k_list(text: str) -> list[int]:
    try:
        ks = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not ks or min(ks) < 1:
        raise argparse.ArgumentTypeError("k values must be positive integers")
    return ks


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kextend", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="run an algorithm over a JSONL stream and print a JSON report")
    p.add_argument("--stream-file", required=True)
    p.add_argument("--constraint-file", required=True)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="theorem1")
    p.add_argument("--k", type=int, help="extendibility parameter (default: the constraint's k)")
    p.add_argument("--wmin", type=parse_weight, help="lower weight bound (gog-bounded)")
    p.add_argument("--wmax", type=parse_weight, help="upper weight bound (gog-bounded)")
    p.add_argument("--verify", action="store_true", help=f"also compute the exact optimum (n <= {MAX_EXACT_SIZE})")
    p.add_argument("--instrument", action="store_true", help="add traces and wall time to the report")

    v = sub.add_parser("verify", help="run the seeded property suite against brute-force oracles")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=500)
    v.add_argument("--k", type=_k_list, default=[2, 4], help="comma-separated k values (default 2,4)")
    v.add_argument("--inject-fault", action="store_true", help="plant a down-closedness violation (self-test)")

    c = sub.add_parser("check-system", help="check down-closedness, k-set-system and k-extendibility on a small system")
    c.add_argument("--constraint-file", required=True)
    c.add_argument("--stream-file", help="ground set (not needed for explicit systems)")
    c.add_argument("--k", type=int)
    return parser


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _cmd_run(args) -> int:
    system, cfg = load_constraint(args.constraint_file)
    k = args.k if args.k is not None else cfg.get("k", system.k)
    report = run(
        iter_stream(args.stream_file, system),
        system,
        algorithm=args.algorithm,
        k=k,
        wmin=args.wmin,
        wmax=args.wmax,
        verify=args.verify,
        instrument=args.instrument,
    )
    _emit(report.to_dict())
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")

    def show(failure):
        print(f"FAIL {failure['check']} seed={failure['seed']} k={failure['k']}: {failure['detail']}", file=sys.stderr)

    result = verify_suite(args.seed, args.trials, args.k, inject_fault=args.inject_fault, on_failure=show)
    _emit(result.summary())
    return EXIT_OK if result.passed else EXIT_PROPERTY


def _cmd_check_system(args) -> int:
    system, cfg = load_constraint(args.constraint_file)
    if args.stream_file:
        ground = list(iter_stream(args.stream_file, system))
    elif isinstance(system, ExplicitSystem):
        ground = [Element(uid, 1) for uid in system.ground_ids]
    else:
        raise UsageError("--stream-file is required for non-explicit systems")
    k = args.k if args.k is not None else int(cfg.get("k", system.k))
    out = {"n": len(ground), "k": k}
    wit = down_closed_witness(system, ground)
    out["down_closed"] = wit is None
    if wit is not None:
        out["down_closed_witness"] = {"independent": list(wit[0]), "dependent_subset": list(wit[1])}
    out["k_set_system"] = check_k_set_system(system, ground, k)
    out["k_extendible"] = check_k_extendible(system, ground, k)
    if not out["k_extendible"]:
        T, S, u = extendibility_witness(system, ground, k)
        out["k_extendible_witness"] = {"T": list(T), "S": list(S), "u": u}
    if len(ground) <= MAX_SWEEP_SIZE:
        out["min_extendibility"] = min_extendibility(system, ground)
    _emit(out)
    ok = out["down_closed"] and out["k_set_system"] and out["k_extendible"]
    return EXIT_OK if ok else EXIT_PROPERTY


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"run": _cmd_run, "verify": _cmd_verify, "check-system": _cmd_check_system}[args.command]
    try:
        return handler(args)
    except ContractError as e:
        print(f"contract violation: {e}", file=sys.stderr)
        return EXIT_CONTRACT
    except GroundSetTooLarge as e:
        print(f"error: {e} (limit {MAX_CHECK_SIZE} for checkers)", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, StreamFormatError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
