"""Command line interface.

``exsum run`` benchmarks one algorithm on one instance; ``exsum sweep``
benchmarks several algorithms across dimensionalities at a roughly constant
element count.  Results go to stdout as CSV, or to a file with ``--csv``.
Exit codes: 0 success, 1 verification mismatch, 2 unusable configuration or
bad arguments.
"""

from __future__ import annotations

import argparse
import sys

from .bench import ALGORITHMS, CSV_HEADER, run_benchmark, run_sweep
from .errors import ConfigurationError, UsageError, VerificationError
from .monoid import MONOID_CHOICES


def _parse_ints(text: str, label: str):
    try:
        return tuple(int(v) for v in text.split(",") if v != "")
    except ValueError:
        raise UsageError(f"bad {label} {text!r}: expected comma-separated integers") from None


def _parse_dims(text: str):
    if ":" in text:
        lo, _, hi = text.partition(":")
        try:
            return tuple(range(int(lo), int(hi) + 1))
        except ValueError:
            raise UsageError(f"bad dimension range {text!r}") from None
    return _parse_ints(text, "dimension list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exsum",
        description="Benchmark included/excluded box-sum algorithms over monoids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="benchmark one algorithm on one instance")
    run_p.add_argument("--algo", required=True, choices=sorted(ALGORITHMS))
    run_p.add_argument("--extents", help="comma-separated tensor extents, e.g. 32,32,32")
    run_p.add_argument("--input", help="tensor file (see README) instead of --extents")
    run_p.add_argument("--box", required=True, help="box side lengths; one value broadcasts")
    run_p.add_argument("--monoid", default="add-i64", help=f"one of {', '.join(MONOID_CHOICES)}")
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--trials", type=int, default=3)
    run_p.add_argument("--delay-ns", type=int, default=0, help="busy-wait per combine")
    run_p.add_argument("--c", type=int, default=1, dest="c",
                       help="corners space factor: leaf buffers / cached spine depth")
    run_p.add_argument("--verify", action="store_true", help="compare against the oracle")
    run_p.add_argument("--csv", metavar="PATH", help="write CSV here instead of stdout")

    sweep_p = sub.add_parser("sweep", help="benchmark algorithms across dimensionalities")
    sweep_p.add_argument("--algos", required=True, help="comma-separated algorithm names")
    sweep_p.add_argument("--dims", required=True, help="e.g. 2:8 or 2,4,6")
    sweep_p.add_argument("--elems", type=int, default=1 << 18, help="target element count")
    sweep_p.add_argument("--box-extent", type=int, default=2, help="box side in every dimension")
    sweep_p.add_argument("--monoid", default="add-i64")
    sweep_p.add_argument("--seed", type=int, default=0)
    sweep_p.add_argument("--trials", type=int, default=3)
    sweep_p.add_argument("--delay-ns", type=int, default=0)
    sweep_p.add_argument("--c", type=int, default=1, dest="c")
    sweep_p.add_argument("--csv", metavar="PATH", help="write CSV here instead of stdout")
    return parser


def _emit(rows, path):
    """Write the CSV header and ``rows`` (an iterable of lines) to ``path``
    or, when path is None, to stdout."""
    if path is None:
        print(CSV_HEADER)
        for row in rows:
            print(row, flush=True)
        return
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row + "\n")


def _cmd_run(args) -> int:
    extents = _parse_ints(args.extents, "extents") if args.extents else None
    box = _parse_ints(args.box, "box")
    if extents and len(box) == 1 and len(extents) > 1:
        box = box * len(extents)
    result = run_benchmark(
        args.algo,
        extents=extents,
        box=box,
        monoid=args.monoid,
        seed=args.seed,
        trials=args.trials,
        delay_ns=args.delay_ns,
        verify=args.verify,
        cache=args.c,
        input_path=args.input,
    )
    _emit([result.csv_row()], args.csv)
    if result.verified == "fail":
        print(f"verification failed for {args.algo}", file=sys.stderr)
        return 1
    return 0


def _cmd_sweep(args) -> int:
    algos = [a for a in args.algos.split(",") if a]
    dims = _parse_dims(args.dims)
    if not algos or not dims:
        raise UsageError("sweep needs at least one algorithm and one dimensionality")
    results = run_sweep(
        algos,
        dims,
        target_elements=args.elems,
        box_extent=args.box_extent,
        monoid=args.monoid,
        seed=args.seed,
        trials=args.trials,
        delay_ns=args.delay_ns,
        cache=args.c,
    )
    _emit((r.csv_row() for r in results), args.csv)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_sweep(args)
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConfigurationError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
