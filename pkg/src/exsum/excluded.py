"""Excluded sums: out[x] = fold over everything outside the box [x, x+k).

Inverse-free algorithms decompose the complement of the box into disjoint
regions whose folds can be shared across positions:

* :func:`box_complement_excluded` — per dimension i, the complement splits
  into a "below" and an "above" slab in dimension i, restricted to the box
  window in dimensions after i and unrestricted before i (those are already
  reduced).  Costs O(d) combines per element, constant space overhead.
* :func:`corners_excluded` / :func:`corners_spine_excluded` — the complement
  splits into 2^d corner regions, one per prefix/suffix pattern; each
  pattern's values come from one fully scanned copy of the input.  The two
  variants trade buffers for rescans: the leaf-buffered form keeps ``c``
  scanned copies at a time (always d * 2^d scans), the spine-cached form
  caches the first ``c`` scan levels of the pattern tree and redoes the
  remaining d-c scans per pattern (2^(c+1) - 2 + (d-c) * 2^d scans).

Inverse-based algorithms just subtract the included sum from the total.

All complement decompositions assume a commutative monoid (every built-in
monoid is).  Corner rule tables are provided for 2-D and 3-D; other
dimensionalities raise :class:`ConfigurationError`.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ConfigurationError, UsageError
from .included import bdbs_included, naive_included, sat_included
from .scan import (
    bdbs_along_dim,
    prefix_along_dim,
    reduced_slice,
    suffix_along_dim,
)
from .tensor import Tensor, normalize_box, validate_coords, validate_extents

NEAR, FAR = "near", "far"

# Per-dimension threshold kind for each corner pattern.  Pattern letter i
# says whether dimension i of the region is a prefix (y_i < T_i) or a
# suffix (y_i >= T_i); the table says whether T_i is the box's near face
# (x_i) or its far face (x_i + k_i).  Together the regions of all 2^d
# patterns tile the box complement exactly (validated exhaustively in the
# tests).
CORNER_RULES = {
    2: {
        "PP": (NEAR, FAR),
        "PS": (FAR, FAR),
        "SP": (NEAR, NEAR),
        "SS": (FAR, NEAR),
    },
    3: {
        "PPP": (FAR, NEAR, FAR),
        "PPS": (FAR, FAR, FAR),
        "PSP": (NEAR, NEAR, FAR),
        "PSS": (NEAR, FAR, FAR),
        "SPP": (FAR, NEAR, NEAR),
        "SPS": (FAR, FAR, NEAR),
        "SSP": (NEAR, NEAR, NEAR),
        "SSS": (NEAR, FAR, NEAR),
    },
}


# -- inverse-based routes ---------------------------------------------------


def _complement_via_inverse(t: Tensor, included: Tensor) -> Tensor:
    total = t.ops.fold(t.data)
    t.ops.rsubtract_scalar(total, included.data)
    return included


def naive_complement_excluded(t: Tensor, box) -> Tensor:
    """Total minus the naive included sum (needs an inverse)."""
    return _complement_via_inverse(t, naive_included(t, box))


def sat_excluded(t: Tensor, box) -> Tensor:
    """Total minus the table-based included sum (needs an inverse)."""
    return _complement_via_inverse(t, sat_included(t, box))


def bdbs_excluded(t: Tensor, box) -> Tensor:
    """Total minus the windowed-sum included sum (needs an inverse)."""
    return _complement_via_inverse(t, bdbs_included(t, box))


# -- naive strong route -----------------------------------------------------


def naive_excluded(t: Tensor, box) -> Tensor:
    """Fold the complement of each box directly (any monoid, Theta(N^2))."""
    k = normalize_box(t.extents, box)
    out = Tensor.filled(t.ops, t.extents)
    inside = np.empty(t.extents, dtype=bool)
    for x in np.ndindex(*t.extents):
        inside[...] = False
        inside[tuple(slice(xi, xi + ki) for xi, ki in zip(x, k))] = True
        out.data[x] = t.ops.fold(t.data[~inside])
    return out


# -- box-complement ---------------------------------------------------------


def add_contribution(src: Tensor, dst: Tensor, dim: int, offset: int) -> None:
    """Accumulate src's reduced slice into dst, shifted along ``dim``.

    For every position x of dst with 0 <= x_dim + offset < extent, combines
    src's reduced-slice value at (x_dim + offset, x_after) into dst[x]; the
    value is broadcast over the dimensions before ``dim`` (already reduced
    in src).  Positions whose shifted index falls outside stay untouched.
    """
    n = dst.extents[dim]
    lo = max(0, -offset)
    hi = min(n, n - offset)
    if lo >= hi:
        return
    src_view = reduced_slice(src, dim)[lo + offset : hi + offset]
    dst_view = dst.data[(slice(None),) * dim + (slice(lo, hi),)]
    dst.ops.combine_into(dst_view, src_view)


def box_complement_excluded(t: Tensor, box) -> Tensor:
    """Slab decomposition with shared windowed sums; no inverse needed."""
    k = normalize_box(t.extents, box)
    d = t.ndim
    ops = t.ops
    out = Tensor.filled(ops, t.extents)
    cur = t.copy()
    nxt = Tensor.like(t) if d > 1 else None
    win = Tensor.like(t)
    pre = Tensor.like(t)
    for i in range(d):
        live = reduced_slice(cur, i)
        if i < d - 1:
            # reduce dimension i for the remaining rounds: its total ends
            # up at the last index, where later reduced slices read it
            np.copyto(reduced_slice(nxt, i), live)
            prefix_along_dim(nxt, i)
        # windowed sums along the trailing dimensions, shared by both slabs
        np.copyto(reduced_slice(win, i), live)
        for j in range(i + 1, d):
            bdbs_along_dim(win, k, i, j)
        # below-slab: everything before x_i, window elsewhere
        np.copyto(reduced_slice(pre, i), reduced_slice(win, i))
        prefix_along_dim(pre, i)
        add_contribution(pre, out, i, -1)
        # above-slab: everything from x_i + k_i on, window elsewhere
        suffix_along_dim(win, i)
        add_contribution(win, out, i, k[i])
        if i < d - 1:
            cur, nxt = nxt, cur
    return out


def complement_slabs(extents, box, x):
    """Region sets of the box-complement slab decomposition at ``x``.

    Returns a list of ``(dim, side, region_set)``: for dimension i, the
    "below" slab has y_i < x_i and the "above" slab y_i >= x_i + k_i, both
    restricted to the box window in dimensions after i and unrestricted
    before i.  Each region set is a single clipped interval-product box (or
    empty); together they partition the complement of the clipped box.
    """
    ext = validate_extents(extents)
    k = normalize_box(ext, box)
    pos = validate_coords(ext, x)
    d = len(ext)
    slabs = []
    for i in range(d):
        base = [
            (0, n) if j < i else (pos[j], min(pos[j] + k[j], ext[j]))
            for j, n in enumerate(ext)
        ]
        below = tuple(base[:i] + [(0, pos[i])] + base[i + 1 :])
        above = tuple(base[:i] + [(min(pos[i] + k[i], ext[i]), ext[i])] + base[i + 1 :])
        slabs.append((i, "below", [below] if pos[i] > 0 else []))
        slabs.append((i, "above", [above] if pos[i] + k[i] < ext[i] else []))
    return slabs


# -- corners ----------------------------------------------------------------


def _corner_rules(d: int):
    rules = CORNER_RULES.get(d)
    if rules is None:
        raise ConfigurationError(
            f"corner decomposition is only defined for 2-D and 3-D tensors, got {d}-D"
        )
    return rules


def _corner_pieces(letter: str, kind: str, n: int, k: int):
    """(dst, src) slice pairs along one dimension for a corner pattern.

    dst indexes output positions x, src indexes the scanned tensor.  A
    prefix dimension reads its scan at T-1 (clamped to the last index, or
    no contribution when T-1 < 0); a suffix dimension reads at T (no
    contribution when T is past the end).
    """
    if letter == "P":
        if kind == NEAR:  # T = x, read x-1
            return [(slice(1, n), slice(0, n - 1))] if n > 1 else []
        # T = x + k, read min(x+k-1, n-1); the tail clamps to the last plane
        pieces = [(slice(0, n - k + 1), slice(k - 1, n))]
        if k > 1:
            pieces.append((slice(n - k + 1, n), slice(n - 1, n)))
        return pieces
    if kind == NEAR:  # suffix, T = x
        return [(slice(0, n), slice(0, n))]
    # suffix, T = x + k
    return [(slice(0, n - k), slice(k, n))] if n - k > 0 else []


def _apply_corner_contribution(scanned: Tensor, out: Tensor, pattern: str, box) -> None:
    kinds = _corner_rules(out.ndim)[pattern]
    per_dim = [
        _corner_pieces(letter, kind, n, k)
        for letter, kind, n, k in zip(pattern, kinds, out.extents, box)
    ]
    if any(not pieces for pieces in per_dim):
        return  # this pattern's region is empty at every position
    for combo in itertools.product(*per_dim):
        dst = out.data[tuple(p[0] for p in combo)]
        src = scanned.data[tuple(p[1] for p in combo)]
        out.ops.combine_into(dst, src)


def _corner_scan(ops, buf: np.ndarray, axis: int, letter: str) -> None:
    ops.accumulate(buf, axis, reverse=(letter == "S"))


def corners_excluded(t: Tensor, box, buffers: int = 1) -> Tensor:
    """Corner decomposition, leaf-buffered: hold up to ``buffers`` fully
    scanned pattern tensors at once.  Scan count is d * 2^d regardless."""
    d = t.ndim
    rules = _corner_rules(d)
    k = normalize_box(t.extents, box)
    if not 1 <= buffers <= d:
        raise UsageError(
            f"corners buffer count must be in [1, {d}] for a {d}-D tensor, got {buffers}"
        )
    ops = t.ops
    patterns = sorted(rules)
    slots = [Tensor.like(t) for _ in range(min(buffers, len(patterns)))]
    out = Tensor.filled(ops, t.extents)
    for start in range(0, len(patterns), len(slots)):
        batch = patterns[start : start + len(slots)]
        for slot, pattern in zip(slots, batch):
            np.copyto(slot.data, t.data)
            for axis, letter in enumerate(pattern):
                _corner_scan(ops, slot.data, axis, letter)
        for slot, pattern in zip(slots, batch):
            _apply_corner_contribution(slot, out, pattern, k)
    return out


def corners_spine_excluded(t: Tensor, box, cache_depth: int = 1) -> Tensor:
    """Corner decomposition, spine-cached: cache the first ``cache_depth``
    scan levels of the pattern tree and rescan only the remaining
    dimensions per pattern.  More cache, fewer rescans, more buffers."""
    d = t.ndim
    _corner_rules(d)
    k = normalize_box(t.extents, box)
    if not 1 <= cache_depth <= d:
        raise UsageError(
            f"cache depth must be in [1, {d}] for a {d}-D tensor, got {cache_depth}"
        )
    ops = t.ops
    caches = [Tensor.like(t) for _ in range(cache_depth)]
    work = Tensor.like(t)  # kept in the working set even when cache_depth == d
    out = Tensor.filled(ops, t.extents)

    def complete(prefix: str) -> None:
        for combo in itertools.product("PS", repeat=d - cache_depth):
            np.copyto(work.data, caches[cache_depth - 1].data)
            for off, letter in enumerate(combo):
                _corner_scan(ops, work.data, cache_depth + off, letter)
            _apply_corner_contribution(work, out, prefix + "".join(combo), k)

    def assign(depth: int, prefix: str) -> None:
        src = t if depth == 0 else caches[depth - 1]
        for letter in "PS":
            np.copyto(caches[depth].data, src.data)
            _corner_scan(ops, caches[depth].data, depth, letter)
            if depth + 1 < cache_depth:
                assign(depth + 1, prefix + letter)
            else:
                complete(prefix + letter)

    assign(0, "")
    return out


def corner_regions(extents, box, x):
    """Region set per corner pattern at position ``x``.

    Each pattern maps to a single clipped interval-product box (or an empty
    region set): a prefix dimension with threshold T spans [0, min(T, n)),
    a suffix dimension spans [min(T, n), n).  The 2^d region sets are
    pairwise disjoint and union to the complement of the clipped box; the
    tests validate this exhaustively.
    """
    ext = validate_extents(extents)
    k = normalize_box(ext, box)
    pos = validate_coords(ext, x)
    rules = _corner_rules(len(ext))
    regions = {}
    for pattern, kinds in rules.items():
        intervals = []
        for i, (letter, kind) in enumerate(zip(pattern, kinds)):
            threshold = pos[i] if kind == NEAR else pos[i] + k[i]
            cut = min(threshold, ext[i])
            intervals.append((0, cut) if letter == "P" else (cut, ext[i]))
        empty = any(lo >= hi for lo, hi in intervals)
        regions[pattern] = [] if empty else [tuple(intervals)]
    return regions
