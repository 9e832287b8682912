"""Dense row-major tensors bound to a monoid.

A :class:`Tensor` is a C-ordered numpy array plus the :class:`MonoidOps`
used to combine its elements.  All full-size working buffers are allocated
through :mod:`exsum.alloc` so benchmark runs can report peak element-buffer
bytes.  Indexing is 0-based and ranges are half-open throughout.
"""

from __future__ import annotations

import math

import numpy as np

from . import alloc
from .errors import UsageError
from .monoid import MonoidOps


def validate_extents(extents) -> tuple:
    try:
        ext = tuple(int(n) for n in extents)
    except (TypeError, ValueError):
        raise UsageError(f"extents must be a sequence of integers, got {extents!r}") from None
    if len(ext) == 0:
        raise UsageError("extents must have at least one dimension")
    if any(n < 1 for n in ext):
        raise UsageError(f"every extent must be >= 1, got {ext}")
    return ext


def normalize_box(extents, box) -> tuple:
    """Validate a box against ``extents``; side lengths clamp to the extent.

    A window [x, x+k) is always clipped to the tensor, so any k >= n behaves
    exactly like k == n; clamping up front lets the block algorithms assume
    k <= n.
    """
    ext = validate_extents(extents)
    try:
        b = tuple(int(k) for k in box)
    except (TypeError, ValueError):
        raise UsageError(f"box must be a sequence of integers, got {box!r}") from None
    if len(b) != len(ext):
        raise UsageError(f"box arity {len(b)} does not match {len(ext)} dimensions")
    if any(k < 1 for k in b):
        raise UsageError(f"every box side must be >= 1, got {b}")
    return tuple(min(k, n) for k, n in zip(b, ext))


def validate_coords(extents, coords) -> tuple:
    try:
        c = tuple(int(v) for v in coords)
    except (TypeError, ValueError):
        raise UsageError(f"coordinates must be a sequence of integers, got {coords!r}") from None
    if len(c) != len(extents):
        raise UsageError(f"coordinate arity {len(c)} does not match {len(extents)} dimensions")
    for v, n in zip(c, extents):
        if not 0 <= v < n:
            raise UsageError(f"coordinate {c} out of range for extents {tuple(extents)}")
    return c


def linear_index(extents, coords) -> int:
    """Row-major flat offset of ``coords`` (last dimension varies fastest)."""
    ext = validate_extents(extents)
    c = validate_coords(ext, coords)
    idx = 0
    for v, n in zip(c, ext):
        idx = idx * n + v
    return idx


class Tensor:
    """A monoid-valued dense array."""

    __slots__ = ("ops", "data")

    def __init__(self, ops: MonoidOps, data: np.ndarray):
        if data.dtype != ops.dtype:
            raise UsageError(f"dtype {data.dtype} does not match monoid {ops.name}")
        self.ops = ops
        self.data = data

    # -- constructors --------------------------------------------------

    @classmethod
    def filled(cls, ops: MonoidOps, extents, fill=None) -> "Tensor":
        """New tensor with every element equal to ``fill`` (default: identity)."""
        ext = validate_extents(extents)
        arr = alloc.new_array(ext, ops.dtype)
        arr.fill(ops.identity if fill is None else fill)
        return cls(ops, arr)

    @classmethod
    def from_values(cls, ops: MonoidOps, extents, values) -> "Tensor":
        """Build from row-major values (flat or nested)."""
        ext = validate_extents(extents)
        arr = np.asarray(values, dtype=ops.dtype).reshape(-1)
        n = math.prod(ext)
        if arr.size != n:
            raise UsageError(f"expected {n} values for extents {ext}, got {arr.size}")
        buf = alloc.new_array(ext, ops.dtype)
        buf.reshape(-1)[:] = arr
        return cls(ops, buf)

    @classmethod
    def like(cls, other: "Tensor") -> "Tensor":
        return cls(other.ops, alloc.new_array(other.data.shape, other.ops.dtype))

    def copy(self) -> "Tensor":
        buf = alloc.new_array(self.data.shape, self.ops.dtype)
        np.copyto(buf, self.data)
        return Tensor(self.ops, buf)

    def with_ops(self, ops: MonoidOps) -> "Tensor":
        """Same storage, different monoid wrapper (e.g. instrumented)."""
        if ops.dtype != self.ops.dtype:
            raise UsageError("with_ops requires a monoid of identical dtype")
        return Tensor(ops, self.data)

    # -- basics ---------------------------------------------------------

    @property
    def extents(self) -> tuple:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    def get(self, coords):
        c = validate_coords(self.data.shape, coords)
        return self.data[c].item()

    def set(self, coords, value):
        c = validate_coords(self.data.shape, coords)
        self.data[c] = value

    def total_reduce(self):
        """Fold of every element (row-major)."""
        return self.ops.fold(self.data)

    def __repr__(self):
        return f"Tensor({self.ops.name}, extents={self.data.shape})"


def pad_to_box_multiple(t: Tensor, box) -> tuple:
    """Extend each extent up to the next multiple of the box side, filling new
    cells with the identity.  Returns ``(padded, original_extents)`` so results
    can be cropped back with :func:`crop_to`."""
    k = normalize_box(t.extents, box)
    padded_ext = tuple(-(-n // s) * s for n, s in zip(t.extents, k))
    out = Tensor.filled(t.ops, padded_ext)
    out.data[tuple(slice(0, n) for n in t.extents)] = t.data
    return out, t.extents


def crop_to(t: Tensor, extents) -> Tensor:
    """Copy of the leading ``extents`` corner of ``t``."""
    ext = validate_extents(extents)
    if len(ext) != t.ndim or any(m > n for m, n in zip(ext, t.extents)):
        raise UsageError(f"cannot crop {t.extents} to {ext}")
    out = Tensor(t.ops, alloc.new_array(ext, t.ops.dtype))
    np.copyto(out.data, t.data[tuple(slice(0, m) for m in ext)])
    return out


def save_text(t: Tensor, path) -> None:
    """Write ``d n1 ... nd`` then one row-major value per line."""
    with open(path, "w") as fh:
        fh.write(" ".join([str(t.ndim)] + [str(n) for n in t.extents]) + "\n")
        if t.data.dtype.kind == "f":
            lines = (repr(float(v)) for v in t.data.reshape(-1))
        else:
            lines = (str(int(v)) for v in t.data.reshape(-1))
        fh.write("\n".join(lines) + "\n")


def load_text(ops: MonoidOps, path) -> Tensor:
    """Read the format written by :func:`save_text`."""
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise UsageError(f"{path}: empty tensor file")
    d = int(tokens[0])
    if d < 1 or len(tokens) < 1 + d:
        raise UsageError(f"{path}: bad header")
    extents = validate_extents(tokens[1 : 1 + d])
    values = tokens[1 + d :]
    n = math.prod(extents)
    if len(values) != n:
        raise UsageError(f"{path}: expected {n} values, found {len(values)}")
    cast = float if ops.dtype.kind == "f" else int
    try:
        parsed = [cast(v) for v in values]
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return Tensor.from_values(ops, extents, parsed)
