"""Included sums: out[x] = fold over the clipped box [x, x+k).

Three routes with different cost/requirements:

* :func:`naive_included` — one shifted-slice combine per window offset,
  Theta(N * K) combines.  Works for any monoid.
* :func:`sat_included` — running-totals table plus 2^d-corner queries,
  Theta(2^d * N) combines but needs an inverse (and commutativity).
* :func:`bdbs_included` — windowed sums dimension by dimension, at most
  3 combines per element per dimension, no inverse needed.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import UsageError
from .scan import windowed_sum_axis
from .tensor import Tensor, normalize_box


def naive_included(t: Tensor, box) -> Tensor:
    k = normalize_box(t.extents, box)
    out = t.copy()
    for delta in itertools.product(*[range(s) for s in k]):
        if not any(delta):
            continue  # offset zero is the initial copy
        dst = out.data[tuple(slice(0, n - d) for n, d in zip(t.extents, delta))]
        src = t.data[tuple(slice(d, n) for n, d in zip(t.extents, delta))]
        if dst.size:
            t.ops.combine_into(dst, src)
    return out


def sat_build(t: Tensor) -> Tensor:
    """Running-totals table: S[z] = fold of every element y with y <= z."""
    s = t.copy()
    for axis in range(t.ndim):
        t.ops.accumulate(s.data, axis)
    return s


def sat_box_query(sat: Tensor, lo, hi):
    """Fold over the box [lo, hi) straight from a running-totals table.

    Evaluates all 2^d corner terms uniformly; a corner with any coordinate
    below zero contributes the identity (still one counted operation, like
    the full-tensor query kernel).  Requires an inverse.
    """
    ops = sat.ops
    ext = sat.extents
    lo = tuple(int(v) for v in lo)
    hi = tuple(int(v) for v in hi)
    if len(lo) != len(ext) or len(hi) != len(ext):
        raise UsageError("query arity does not match tensor dimensionality")
    for l, h, n in zip(lo, hi, ext):
        if not (0 <= l <= h <= n):
            raise UsageError(f"bad query range [{lo}, {hi}) for extents {ext}")
    total = None
    for pick_lo in itertools.product((False, True), repeat=len(ext)):
        corner = tuple(
            (l - 1) if pick else (h - 1)
            for pick, l, h in zip(pick_lo, lo, hi)
        )
        if any(c < 0 for c in corner):
            v = ops.identity
        else:
            v = sat.data[corner].item()
        if total is None:
            total = v  # the all-high corner comes first
        elif sum(pick_lo) % 2 == 0:
            total = ops.combine(total, v)
        else:
            total = ops.subtract(total, v)
    return total


def _query_table(sat: Tensor, box) -> Tensor:
    """Identity-below, saturated-above extension of a running-totals table.

    Index z+1 holds S[z]; index 0 is the identity plane (prefixes ending
    before the tensor), and the k-1 planes past the end replicate the last
    plane (prefixes clipped at the boundary).  Built by copying — no
    combines.
    """
    ext = sat.extents
    padded = Tensor.filled(sat.ops, tuple(n + k for n, k in zip(ext, box)))
    padded.data[tuple(slice(1, n + 1) for n in ext)] = sat.data
    for axis, (n, k) in enumerate(zip(ext, box)):
        if k < 2:
            continue
        idx_last = tuple(slice(None) if a != axis else slice(n, n + 1) for a in range(len(ext)))
        idx_pad = tuple(slice(None) if a != axis else slice(n + 1, n + k) for a in range(len(ext)))
        padded.data[idx_pad] = padded.data[idx_last]
    return padded


def sat_included(t: Tensor, box) -> Tensor:
    k = normalize_box(t.extents, box)
    ops = t.ops
    table = _query_table(sat_build(t), k)
    out = Tensor.like(t)
    ext = t.extents

    def term(pick_lo):
        # view of the table holding that corner's value for every x
        offs = [0 if pick else kk for pick, kk in zip(pick_lo, k)]
        return table.data[tuple(slice(o, o + n) for o, n in zip(offs, ext))]

    first = True
    for pick_lo in itertools.product((False, True), repeat=t.ndim):
        if first:
            np.copyto(out.data, term(pick_lo))
            first = False
        elif sum(pick_lo) % 2 == 0:
            ops.combine_into(out.data, term(pick_lo))
        else:
            ops.subtract_into(out.data, term(pick_lo))
    return out


def bdbs_included(t: Tensor, box) -> Tensor:
    k = normalize_box(t.extents, box)
    out = t.copy()
    for axis in range(t.ndim):
        windowed_sum_axis(t.ops, out.data, k[axis], axis)
    return out
