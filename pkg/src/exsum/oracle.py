"""Brute-force reference implementations.

These are deliberately independent of the rest of the package: plain Python
loops over flat row-major lists, a caller-supplied ``combine`` callable, and
an explicit identity.  Every algorithm in :mod:`exsum.included` and
:mod:`exsum.excluded` is validated against these in the test suite, and the
benchmark ``--verify`` flag compares against them at run time.

Windows are half-open boxes [x, x+k) clipped to the tensor; the excluded
sum folds everything outside the clipped box.  Folds visit elements in
row-major order, seeded with the first element (identity only for empty
regions), which pins down the exact association for non-associative noise
(floats).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


def _strides(extents):
    strides = [1] * len(extents)
    for i in range(len(extents) - 2, -1, -1):
        strides[i] = strides[i + 1] * extents[i + 1]
    return strides


def _fold(combine, flat, indices, identity):
    acc = None
    for idx in indices:
        v = flat[idx]
        acc = v if acc is None else combine(acc, v)
    return identity if acc is None else acc


def oracle_included(extents, flat, box, combine, identity):
    """Included sums of a flat row-major list; returns a new flat list."""
    extents = tuple(extents)
    strides = _strides(extents)
    out = []
    for x in itertools.product(*[range(n) for n in extents]):
        window = [
            range(xi, min(xi + ki, ni))
            for xi, ki, ni in zip(x, box, extents)
        ]
        indices = (
            sum(yi * si for yi, si in zip(y, strides))
            for y in itertools.product(*window)
        )
        out.append(_fold(combine, flat, indices, identity))
    return out


def oracle_excluded(extents, flat, box, combine, identity):
    """Excluded sums of a flat row-major list; returns a new flat list."""
    extents = tuple(extents)
    out = []
    for x in itertools.product(*[range(n) for n in extents]):
        acc = None
        flat_i = 0
        for y in itertools.product(*[range(n) for n in extents]):
            inside = all(
                xi <= yi < xi + ki for xi, yi, ki in zip(x, y, box)
            )
            if not inside:
                v = flat[flat_i]
                acc = v if acc is None else combine(acc, v)
            flat_i += 1
        out.append(identity if acc is None else acc)
    return out


# -- region-set partition checking --------------------------------------
#
# A region set is a list of boxes interpreted as a union; a box is a tuple
# of per-dimension half-open (lo, hi) intervals.  The excluded-sum
# decompositions each claim to split the complement of a query box into
# such region sets; validate_partition brute-checks the claim.


def region_set_contains(region, coord) -> bool:
    """True if ``coord`` lies in any box of the region set."""
    return any(
        all(lo <= x < hi for x, (lo, hi) in zip(coord, box)) for box in region
    )


@dataclass(frozen=True)
class PartitionVerdict:
    """Outcome of :func:`validate_partition` with offending coordinates.

    ``overlap`` is a coordinate claimed by two region sets, ``missing`` a
    complement coordinate no region set covers, and ``extra`` a covered
    coordinate that is inside the box (or, for ``missing``/``extra``, None
    when the corresponding check passed).
    """

    disjoint: bool
    covers: bool
    overlap: tuple | None = None
    missing: tuple | None = None
    extra: tuple | None = None

    def __bool__(self):
        return self.disjoint and self.covers


def validate_partition(extents, lo, hi, regions) -> PartitionVerdict:
    """Check that ``regions`` exactly partition the complement of a box.

    ``regions`` is a list of region sets; the box is [lo, hi) per dimension.
    The verdict reports whether the sets are pairwise disjoint and whether
    their union is exactly the set of coordinates outside the box.  Intended
    for small domains: every coordinate is enumerated.
    """
    extents = tuple(int(n) for n in extents)
    lo = tuple(int(v) for v in lo)
    hi = tuple(int(v) for v in hi)
    for region in regions:
        for box in region:
            for (a, b), n in zip(box, extents):
                if not 0 <= a <= b <= n:
                    raise ValueError(f"interval [{a}, {b}) outside [0, {n})")
    overlap = missing = extra = None
    for coord in itertools.product(*[range(n) for n in extents]):
        hits = sum(1 for region in regions if region_set_contains(region, coord))
        inside = all(a <= x < b for x, a, b in zip(coord, lo, hi))
        if hits > 1 and overlap is None:
            overlap = coord
        if inside and hits > 0 and extra is None:
            extra = coord
        if not inside and hits == 0 and missing is None:
            missing = coord
    return PartitionVerdict(
        disjoint=overlap is None,
        covers=missing is None and extra is None,
        overlap=overlap,
        missing=missing,
        extra=extra,
    )
