"""Scan primitives: prefix/suffix scans and windowed (box) sums.

The windowed sum replaces every position x of a row with the fold of the
clipped window [x, min(x+k, n)).  It is computed blockwise: split the row
into blocks of k, take suffix sums inside each block and prefix sums inside
each block (on a scratch copy), then stitch: positions that are not at a
block start and not in the last block combine their block suffix with the
next block's prefix at min(x+k, n)-1.  Cost is at most 3 combines per
element, independent of k.

``*_along_dim`` functions follow the dimension-reduction convention used by
the excluded-sum pipeline: dimensions before ``dim`` are considered already
reduced, and the operation touches only the slice where each of those
dimensions sits at its last index (the rest of the tensor is dead data).
"""

from __future__ import annotations

import numpy as np

from . import alloc
from .errors import UsageError
from .monoid import MonoidOps
from .tensor import Tensor, normalize_box


def prefix_range(buf, start: int, end: int, ops: MonoidOps) -> None:
    """In-place running fold over ``buf[start:end)``.

    After the call ``buf[i] == buf[start] ⊕ … ⊕ buf[i]`` for i in the range;
    elements outside it are untouched.  Uses exactly max(0, end-start-1)
    combines.  ``buf`` is any mutable 1-D sequence (list or ndarray).
    """
    n = len(buf)
    if not 0 <= start <= end <= n:
        raise IndexError(f"range [{start}, {end}) out of bounds for length {n}")
    for i in range(start + 1, end):
        buf[i] = ops.combine(buf[i - 1], buf[i])


def suffix_range(buf, start: int, end: int, ops: MonoidOps) -> None:
    """Mirror of :func:`prefix_range`, scanning right to left.

    After the call ``buf[i] == buf[i] ⊕ … ⊕ buf[end-1]`` for i in the range.
    """
    n = len(buf)
    if not 0 <= start <= end <= n:
        raise IndexError(f"range [{start}, {end}) out of bounds for length {n}")
    for i in range(end - 2, start - 1, -1):
        buf[i] = ops.combine(buf[i], buf[i + 1])


def bdbs_1d(ops: MonoidOps, values, k: int) -> np.ndarray:
    """Windowed sums of a 1-D sequence: out[x] = fold(values[x : x+k])."""
    arr = np.array(values, dtype=ops.dtype).reshape(-1)
    (k,) = normalize_box(arr.shape, (k,))
    windowed_sum_axis(ops, arr, k, 0)
    return arr


def windowed_sum_axis(ops: MonoidOps, view: np.ndarray, k: int, axis: int) -> None:
    """In-place windowed sums along ``axis`` of an ndarray (any strides)."""
    n = view.shape[axis]
    if view.size == 0 or k == 1:
        return
    if k >= n:
        ops.accumulate(view, axis, reverse=True)
        return
    moved = np.moveaxis(view, axis, -1)
    scratch = alloc.new_array(moved.shape, view.dtype)
    np.copyto(scratch, moved)
    full, tail = divmod(n, k)

    # suffix sums within each block, in place (positions r, r+1 share a block)
    for r in range(k - 2, -1, -1):
        nb = full + (1 if r <= tail - 2 else 0)
        if nb:
            stop = r + (nb - 1) * k + 1
            ops.combine_into(moved[..., r:stop:k], moved[..., r + 1 : stop + 1 : k])

    # prefix sums within each block, on the scratch copy
    for r in range(1, k):
        nb = full + (1 if r <= tail - 1 else 0)
        if nb:
            stop = r + (nb - 1) * k + 1
            ops.rcombine_into(scratch[..., r:stop:k], scratch[..., r - 1 : stop - 1 : k])

    # stitch: out[x] = suffix ⊕ next block's prefix at min(x+k, n)-1
    nblocks = full + (1 if tail else 0)
    stitched = nblocks - 1  # every block except the last
    for r in range(1, k):
        uniform = stitched if (tail == 0 or r <= tail) else stitched - 1
        if uniform > 0:
            dst_stop = r + (uniform - 1) * k + 1
            src_start = k + r - 1
            ops.combine_into(
                moved[..., r:dst_stop:k],
                scratch[..., src_start : src_start + (uniform - 1) * k + 1 : k],
            )
        if tail and r > tail:
            # window of the last pre-tail block clips at the row end
            ops.combine_into(moved[..., (stitched - 1) * k + r], scratch[..., n - 1])


def reduced_slice(t: Tensor, dim: int) -> np.ndarray:
    """View of ``t`` with every dimension before ``dim`` pinned at its last
    index; shape is ``t.extents[dim:]``."""
    if not 0 <= dim < t.ndim:
        raise UsageError(f"dimension {dim} out of range for {t.ndim}-D tensor")
    return t.data[tuple(n - 1 for n in t.extents[:dim])]


def prefix_along_dim(t: Tensor, dim: int) -> None:
    """Prefix scan along ``dim`` on the reduced slice, in place."""
    t.ops.accumulate(reduced_slice(t, dim), 0)


def suffix_along_dim(t: Tensor, dim: int) -> None:
    """Suffix scan along ``dim`` on the reduced slice, in place."""
    t.ops.accumulate(reduced_slice(t, dim), 0, reverse=True)


def bdbs_along_dim(t: Tensor, box, dim: int, scan_dim: int) -> None:
    """Windowed sums along ``scan_dim`` on the reduced slice at ``dim``."""
    k = normalize_box(t.extents, box)
    if scan_dim < dim:
        raise UsageError(f"scan dimension {scan_dim} precedes reduced dimension {dim}")
    view = reduced_slice(t, dim)
    windowed_sum_axis(t.ops, view, k[scan_dim], scan_dim - dim)
