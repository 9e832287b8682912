"""Included and excluded box sums over monoids, with a benchmark harness.

For every position x of a d-dimensional tensor, the included sum folds the
elements of the half-open box [x, x+k) (clipped to the tensor) and the
excluded sum folds everything outside it.  The interesting algorithms do
this without an inverse operator, in O(d) or O(2^d) combines per element
instead of refolding each region from scratch.
"""

from .alloc import AllocationTracker
from .bench import (
    ALGORITHMS,
    CSV_HEADER,
    BenchResult,
    generate_input,
    run_benchmark,
    run_sweep,
)
from .errors import ConfigurationError, ExsumError, UsageError, VerificationError
from .excluded import (
    CORNER_RULES,
    add_contribution,
    bdbs_excluded,
    box_complement_excluded,
    complement_slabs,
    corner_regions,
    corners_excluded,
    corners_spine_excluded,
    naive_complement_excluded,
    naive_excluded,
    sat_excluded,
)
from .included import bdbs_included, naive_included, sat_box_query, sat_build, sat_included
from .monoid import (
    MONOID_CHOICES,
    FloatAddOps,
    InstrumentedMonoid,
    IntAddOps,
    IntMaxOps,
    ModAddOps,
    MonoidOps,
    PythonKernels,
    resolve_monoid,
)
from .oracle import (
    PartitionVerdict,
    oracle_excluded,
    oracle_included,
    region_set_contains,
    validate_partition,
)
from .scan import (
    bdbs_1d,
    bdbs_along_dim,
    prefix_along_dim,
    prefix_range,
    reduced_slice,
    suffix_along_dim,
    suffix_range,
    windowed_sum_axis,
)
from .tensor import (
    Tensor,
    crop_to,
    linear_index,
    load_text,
    normalize_box,
    pad_to_box_multiple,
    save_text,
)

__version__ = "0.1.0"
