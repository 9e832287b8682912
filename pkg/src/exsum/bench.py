"""Benchmark harness: run an algorithm, count operator applications, track
peak element-buffer bytes, time the run, and optionally verify against the
brute-force oracle.

Reported figures are per element of the *input* tensor.  ``oplus_per_elem``
counts applications of the monoid's combine only; inverse applications are
tracked separately and not part of that column.  A combine into an
identity-initialized accumulator counts like any other, so the numbers are
a deterministic function of (algorithm, extents, box) and identical across
monoids and trials.  Verification is capped at 4096 elements — the oracle
is quadratic for excluded sums — and reports "skipped" beyond that.
"""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .alloc import AllocationTracker
from .errors import ConfigurationError, UsageError
from .excluded import (
    bdbs_excluded,
    box_complement_excluded,
    corners_excluded,
    corners_spine_excluded,
    naive_complement_excluded,
    naive_excluded,
    sat_excluded,
)
from .included import bdbs_included, naive_included, sat_included
from .monoid import InstrumentedMonoid, MonoidOps, resolve_monoid
from .oracle import oracle_excluded, oracle_included
from .tensor import Tensor, load_text, normalize_box, validate_extents

CSV_HEADER = "algo,d,N,K,time_ns_per_elem,oplus_per_elem,peak_bytes_per_elem,verified"

VERIFY_ELEMENT_CAP = 4096
FLOAT_RTOL = 1e-9


@dataclass(frozen=True)
class AlgorithmInfo:
    name: str
    fn: object
    kind: str  # "included" or "excluded"
    needs_inverse: bool
    dims: object = None  # None = any, else a set of supported dimensionalities
    cache_arg: str = ""  # keyword receiving the CLI --c value, if any

    def run(self, t: Tensor, box, cache: int) -> Tensor:
        if self.cache_arg:
            return self.fn(t, box, **{self.cache_arg: cache})
        return self.fn(t, box)


ALGORITHMS = {
    info.name: info
    for info in (
        AlgorithmInfo("naive-inc", naive_included, "included", False),
        AlgorithmInfo("sat", sat_included, "included", True),
        AlgorithmInfo("bdbs", bdbs_included, "included", False),
        AlgorithmInfo("naive-exc", naive_excluded, "excluded", False),
        AlgorithmInfo("naive-complement", naive_complement_excluded, "excluded", True),
        AlgorithmInfo("satc", sat_excluded, "excluded", True),
        AlgorithmInfo("bdbsc", bdbs_excluded, "excluded", True),
        AlgorithmInfo("box-complement", box_complement_excluded, "excluded", False),
        AlgorithmInfo("corners", corners_excluded, "excluded", False, {2, 3}, "buffers"),
        AlgorithmInfo(
            "corners-spine", corners_spine_excluded, "excluded", False, {2, 3}, "cache_depth"
        ),
    )
}


def resolve_algorithm(name: str) -> AlgorithmInfo:
    info = ALGORITHMS.get(name)
    if info is None:
        raise ConfigurationError(
            f"unknown algorithm {name!r}; choose from {', '.join(sorted(ALGORITHMS))}"
        )
    return info


def check_algorithm_config(info: AlgorithmInfo, ops: MonoidOps, d=None) -> None:
    """Reject impossible algorithm/monoid/dimension combinations before any
    tensor is allocated or any operator applied."""
    if info.needs_inverse and not ops.has_inverse:
        raise ConfigurationError(
            f"algorithm {info.name!r} requires an invertible monoid, "
            f"but {ops.name!r} has no inverse"
        )
    if d is not None and info.dims is not None and d not in info.dims:
        dims = ", ".join(str(v) for v in sorted(info.dims))
        raise ConfigurationError(
            f"algorithm {info.name!r} supports {dims}-D tensors only, got {d}-D"
        )


def generate_input(ops: MonoidOps, extents, seed: int) -> Tensor:
    """Deterministic pseudo-random input matched to the monoid's domain."""
    ext = validate_extents(extents)
    rng = np.random.default_rng(seed)
    if ops.dtype.kind == "f":
        arr = rng.random(ext)
    else:
        arr = rng.integers(0, 100, size=ext, dtype=np.int64)
        modulus = getattr(ops, "modulus", None)
        if modulus is not None:
            arr %= modulus
    return Tensor(ops, np.ascontiguousarray(arr, dtype=ops.dtype))


def _matches_oracle(result: Tensor, expected) -> bool:
    got = result.data.reshape(-1)
    if result.data.dtype.kind == "f":
        want = np.asarray(expected, dtype=np.float64)
        tol = FLOAT_RTOL * np.maximum(1.0, np.maximum(np.abs(got), np.abs(want)))
        return bool(np.all(np.abs(got - want) <= tol))
    return bool(np.array_equal(got, np.asarray(expected, dtype=result.data.dtype)))


def verify_against_oracle(info: AlgorithmInfo, t: Tensor, box, result: Tensor) -> bool:
    oracle = oracle_included if info.kind == "included" else oracle_excluded
    base = t.ops.inner if isinstance(t.ops, InstrumentedMonoid) else t.ops
    flat = list(t.data.reshape(-1))
    expected = oracle(t.extents, flat, box, base.combine, base.identity)
    return _matches_oracle(result, expected)


@dataclass
class BenchResult:
    algo: str
    extents: tuple
    box: tuple
    monoid: str
    time_ns: float
    op_count: int
    sub_count: int
    peak_bytes: int
    verified: str  # "pass", "fail", or "skipped"
    output: Tensor = field(repr=False, default=None)

    @property
    def n_elements(self) -> int:
        return math.prod(self.extents)

    def csv_row(self) -> str:
        n = self.n_elements
        k = math.prod(self.box)
        return ",".join(
            [
                self.algo,
                str(len(self.extents)),
                str(n),
                str(k),
                f"{self.time_ns / n:.1f}",
                f"{self.op_count / n:.4f}",
                f"{self.peak_bytes / n:.1f}",
                self.verified,
            ]
        )


def run_benchmark(
    algo: str,
    extents=None,
    box=None,
    monoid: str = "add-i64",
    seed: int = 0,
    trials: int = 3,
    delay_ns: int = 0,
    verify: bool = False,
    cache: int = 1,
    input_path=None,
) -> BenchResult:
    """Run one algorithm on one instance; medians over ``trials`` runs."""
    info = resolve_algorithm(algo)
    base_ops = resolve_monoid(monoid)
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials}")
    if delay_ns < 0:
        raise ConfigurationError(f"delay must be >= 0, got {delay_ns}")

    if input_path is not None and extents is not None:
        raise UsageError("give either extents or an input file, not both")
    if input_path is None and extents is None:
        raise UsageError("either extents or an input file is required")
    if box is None:
        raise UsageError("a box is required")
    check_algorithm_config(info, base_ops)  # monoid mismatch: fail before any work
    if input_path is not None:
        t_base = load_text(base_ops, input_path)
    else:
        check_algorithm_config(info, base_ops, len(validate_extents(extents)))
        t_base = generate_input(base_ops, extents, seed)
    check_algorithm_config(info, base_ops, t_base.ndim)
    k = normalize_box(t_base.extents, box)

    times = []
    op_count = sub_count = peak = 0
    result = None
    for _ in range(trials):
        instr = InstrumentedMonoid(base_ops, delay_ns=delay_ns)
        tracker = AllocationTracker()
        t = t_base.with_ops(instr)
        with tracker:
            start = time.perf_counter_ns()
            result = info.run(t, k, cache)
            times.append(time.perf_counter_ns() - start)
        op_count = instr.op_count
        sub_count = instr.sub_count
        peak = tracker.peak_bytes

    verified = "skipped"
    if verify:
        if t_base.size <= VERIFY_ELEMENT_CAP:
            ok = verify_against_oracle(info, t_base, k, result.with_ops(base_ops))
            verified = "pass" if ok else "fail"
    return BenchResult(
        algo=algo,
        extents=t_base.extents,
        box=k,
        monoid=base_ops.name,
        time_ns=statistics.median(times),
        op_count=op_count,
        sub_count=sub_count,
        peak_bytes=peak,
        verified=verified,
        output=result.with_ops(base_ops),
    )


def sweep_extents(d: int, target_elements: int) -> tuple:
    """Near-isotropic extents whose product approximates the target."""
    if d < 1:
        raise ConfigurationError(f"dimensionality must be >= 1, got {d}")
    side = max(2, round(target_elements ** (1.0 / d)))
    return (side,) * d


def run_sweep(
    algos,
    dims,
    target_elements: int = 1 << 18,
    box_extent: int = 2,
    monoid: str = "add-i64",
    seed: int = 0,
    trials: int = 3,
    delay_ns: int = 0,
    cache: int = 1,
):
    """Yield one BenchResult per (dimension, algorithm), extents scaled to
    keep the element count near the target."""
    for d in dims:
        extents = sweep_extents(d, target_elements)
        box = (box_extent,) * d
        for algo in algos:
            yield run_benchmark(
                algo,
                extents=extents,
                box=box,
                monoid=monoid,
                seed=seed,
                trials=trials,
                delay_ns=delay_ns,
                cache=cache,
            )
