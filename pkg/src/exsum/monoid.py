"""Monoid kernel interface and the built-in monoids.

Every algorithm in this package is written against :class:`MonoidOps`: a
scalar ``combine`` (and optional ``subtract``) plus a small set of bulk
kernels (elementwise combine, inclusive scans, fold).  The base class gives
slow but order-faithful pure-Python implementations of the bulk kernels, so
any monoid defined by ``combine`` alone works everywhere; the built-in
monoids override them with numpy ufunc equivalents.  Both routes compute
bit-identical results (scans are sequential, not pairwise) and perform the
same number of element combines, which is what the instrumentation counts.

Suffix scans and the windowed/corner decompositions fold with the running
value as the left operand; for non-commutative monoids those algorithms are
not order-faithful, and the excluded-sum decompositions additionally require
commutativity.  All built-in monoids are commutative.
"""

from __future__ import annotations

import threading
import time

import numpy as np

from .errors import ConfigurationError

MOD_ADD_MAX_MODULUS = 2**31  # keeps raw int64 partial sums overflow-free


class MonoidOps:
    """A monoid (values of ``dtype``, ``combine``, ``identity``).

    Subclasses set the class attributes and implement ``combine`` (and
    ``subtract`` when ``has_inverse``).  Bulk kernels may be overridden with
    vectorized versions; the defaults below loop over elements in row-major
    order.
    """

    name = "abstract"
    dtype = np.dtype(np.int64)
    identity = 0
    commutative = True
    has_inverse = False

    def combine(self, a, b):
        raise NotImplementedError

    def subtract(self, a, b):
        """Return c with combine(c, b) == a.  Only when ``has_inverse``."""
        raise ConfigurationError(f"monoid {self.name!r} has no inverse")

    # -- bulk kernels -------------------------------------------------

    def combine_into(self, dst, src):
        """dst[i] = combine(dst[i], src[i]); src broadcasts to dst."""
        s = np.broadcast_to(src, dst.shape)
        for ix in np.ndindex(dst.shape):
            dst[ix] = self.combine(dst[ix], s[ix])

    def rcombine_into(self, dst, src):
        """dst[i] = combine(src[i], dst[i]); src broadcasts to dst."""
        if self.commutative:
            self.combine_into(dst, src)
            return
        s = np.broadcast_to(src, dst.shape)
        for ix in np.ndindex(dst.shape):
            dst[ix] = self.combine(s[ix], dst[ix])

    def subtract_into(self, dst, src):
        """dst[i] = subtract(dst[i], src[i]); src broadcasts to dst."""
        s = np.broadcast_to(src, dst.shape)
        for ix in np.ndindex(dst.shape):
            dst[ix] = self.subtract(dst[ix], s[ix])

    def rsubtract_scalar(self, total, dst):
        """dst[i] = subtract(total, dst[i])."""
        for ix in np.ndindex(dst.shape):
            dst[ix] = self.subtract(total, dst[ix])

    def accumulate(self, arr, axis, reverse=False):
        """In-place inclusive scan along ``axis``.

        Forward: arr[j] = combine(arr[j-1], arr[j]) for ascending j, i.e. a
        left fold.  ``reverse=True`` scans the axis flipped, so arr[j] ends
        up holding the fold of arr[j:] with the running value on the left.
        """
        if arr.size == 0:
            return
        work = np.flip(arr, axis=axis) if reverse else arr
        moved = np.moveaxis(work, axis, -1)
        n = moved.shape[-1]
        if n <= 1:
            return
        for ix in np.ndindex(moved.shape[:-1]):
            row = moved[ix]
            for j in range(1, n):
                row[j] = self.combine(row[j - 1], row[j])

    def fold(self, arr):
        """Left fold of all elements in row-major order (identity if empty)."""
        if arr.size == 0:
            return self.identity
        acc = None
        for ix in np.ndindex(arr.shape):
            acc = arr[ix] if acc is None else self.combine(acc, arr[ix])
        return acc


class PythonKernels(MonoidOps):
    """Wrap a monoid but force the generic pure-Python bulk kernels.

    Used in tests to check the vectorized kernels element for element.
    """

    def __init__(self, inner: MonoidOps):
        self._inner = inner
        self.name = inner.name + "/python"
        self.dtype = inner.dtype
        self.identity = inner.identity
        self.commutative = inner.commutative
        self.has_inverse = inner.has_inverse

    def combine(self, a, b):
        return self._inner.combine(a, b)

    def subtract(self, a, b):
        return self._inner.subtract(a, b)


class IntAddOps(MonoidOps):
    """64-bit integer addition."""

    name = "add-i64"
    dtype = np.dtype(np.int64)
    identity = 0
    commutative = True
    has_inverse = True

    def combine(self, a, b):
        return a + b

    def subtract(self, a, b):
        return a - b

    def combine_into(self, dst, src):
        np.add(dst, src, out=dst)

    def rcombine_into(self, dst, src):
        np.add(dst, src, out=dst)

    def subtract_into(self, dst, src):
        np.subtract(dst, src, out=dst)

    def rsubtract_scalar(self, total, dst):
        np.subtract(total, dst, out=dst)

    def accumulate(self, arr, axis, reverse=False):
        work = np.flip(arr, axis=axis) if reverse else arr
        np.add.accumulate(work, axis=axis, out=work)

    def fold(self, arr):
        if arr.size == 0:
            return self.identity
        return int(arr.sum())


class FloatAddOps(MonoidOps):
    """Float64 addition.  Scans/folds are sequential left folds, so results
    match the scalar reference bit for bit; the inverse is approximate in
    the usual floating-point sense."""

    name = "add-f64"
    dtype = np.dtype(np.float64)
    identity = 0.0
    commutative = True
    has_inverse = True

    def combine(self, a, b):
        return a + b

    def subtract(self, a, b):
        return a - b

    def combine_into(self, dst, src):
        np.add(dst, src, out=dst)

    def rcombine_into(self, dst, src):
        np.add(dst, src, out=dst)

    def subtract_into(self, dst, src):
        np.subtract(dst, src, out=dst)

    def rsubtract_scalar(self, total, dst):
        np.subtract(total, dst, out=dst)

    def accumulate(self, arr, axis, reverse=False):
        work = np.flip(arr, axis=axis) if reverse else arr
        np.add.accumulate(work, axis=axis, out=work)

    def fold(self, arr):
        if arr.size == 0:
            return self.identity
        # ufunc.accumulate is a strict sequential scan (np.sum is pairwise)
        return float(np.add.accumulate(arr.ravel())[-1])


class IntMaxOps(MonoidOps):
    """64-bit integer maximum; identity is the most negative int64."""

    name = "max-i64"
    dtype = np.dtype(np.int64)
    identity = int(np.iinfo(np.int64).min)
    commutative = True
    has_inverse = False

    def combine(self, a, b):
        return a if a >= b else b

    def combine_into(self, dst, src):
        np.maximum(dst, src, out=dst)

    def rcombine_into(self, dst, src):
        np.maximum(dst, src, out=dst)

    def accumulate(self, arr, axis, reverse=False):
        work = np.flip(arr, axis=axis) if reverse else arr
        np.maximum.accumulate(work, axis=axis, out=work)

    def fold(self, arr):
        if arr.size == 0:
            return self.identity
        return int(arr.max())


class ModAddOps(MonoidOps):
    """Addition modulo m (2 <= m <= 2**31), values canonicalized to [0, m).

    Bulk kernels accumulate raw int64 partial sums and reduce mod m at the
    end; the modulus cap keeps every partial sum far below int64 overflow.
    """

    commutative = True
    has_inverse = True
    dtype = np.dtype(np.int64)
    identity = 0

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or isinstance(modulus, bool):
            raise ConfigurationError("mod-add modulus must be an integer")
        if not 2 <= modulus <= MOD_ADD_MAX_MODULUS:
            raise ConfigurationError(
                f"mod-add modulus must be in [2, {MOD_ADD_MAX_MODULUS}], got {modulus}"
            )
        self.modulus = modulus
        self.name = f"mod-add:{modulus}"

    def combine(self, a, b):
        return (a + b) % self.modulus

    def subtract(self, a, b):
        return (a - b) % self.modulus

    def combine_into(self, dst, src):
        np.add(dst, src, out=dst)
        np.remainder(dst, self.modulus, out=dst)

    def rcombine_into(self, dst, src):
        self.combine_into(dst, src)

    def subtract_into(self, dst, src):
        np.subtract(dst, src, out=dst)
        np.remainder(dst, self.modulus, out=dst)

    def rsubtract_scalar(self, total, dst):
        np.subtract(total, dst, out=dst)
        np.remainder(dst, self.modulus, out=dst)

    def accumulate(self, arr, axis, reverse=False):
        work = np.flip(arr, axis=axis) if reverse else arr
        np.add.accumulate(work, axis=axis, out=work)
        np.remainder(work, self.modulus, out=work)

    def fold(self, arr):
        if arr.size == 0:
            return self.identity
        return int(arr.sum()) % self.modulus


class InstrumentedMonoid(MonoidOps):
    """Wrap a monoid; count combines/subtracts and optionally slow them.

    ``op_count`` counts applications of the combine operator and
    ``sub_count`` applications of the inverse, derived from the argument
    shapes of each kernel call (so the vectorized and pure-Python kernels
    report identical numbers).  ``delay_ns`` busy-waits that many
    nanoseconds per counted combine, to make operator cost dominate wall
    time in timing experiments.  Thread-safe.
    """

    def __init__(self, inner: MonoidOps, delay_ns: int = 0):
        self.inner = inner
        self.name = inner.name
        self.dtype = inner.dtype
        self.identity = inner.identity
        self.commutative = inner.commutative
        self.has_inverse = inner.has_inverse
        self.delay_ns = delay_ns
        self.op_count = 0
        self.sub_count = 0
        self._lock = threading.Lock()

    def _tick(self, n):
        if n <= 0:
            return
        with self._lock:
            self.op_count += n
        if self.delay_ns:
            end = time.perf_counter_ns() + n * self.delay_ns
            while time.perf_counter_ns() < end:
                pass

    def _tick_sub(self, n):
        if n <= 0:
            return
        with self._lock:
            self.sub_count += n

    def combine(self, a, b):
        self._tick(1)
        return self.inner.combine(a, b)

    def subtract(self, a, b):
        self._tick_sub(1)
        return self.inner.subtract(a, b)

    def combine_into(self, dst, src):
        self._tick(dst.size)
        self.inner.combine_into(dst, src)

    def rcombine_into(self, dst, src):
        self._tick(dst.size)
        self.inner.rcombine_into(dst, src)

    def subtract_into(self, dst, src):
        self._tick_sub(dst.size)
        self.inner.subtract_into(dst, src)

    def rsubtract_scalar(self, total, dst):
        self._tick_sub(dst.size)
        self.inner.rsubtract_scalar(total, dst)

    def accumulate(self, arr, axis, reverse=False):
        if arr.size:
            self._tick(arr.size - arr.size // arr.shape[axis])
        self.inner.accumulate(arr, axis, reverse=reverse)

    def fold(self, arr):
        self._tick(max(0, arr.size - 1))
        return self.inner.fold(arr)


def resolve_monoid(name: str) -> MonoidOps:
    """Build a monoid from its CLI name.

    Accepted: ``add-i64``, ``add-f64``, ``max-i64``, ``mod-add:<m>``.
    """
    if name == "add-i64":
        return IntAddOps()
    if name == "add-f64":
        return FloatAddOps()
    if name == "max-i64":
        return IntMaxOps()
    if name.startswith("mod-add:"):
        text = name.split(":", 1)[1]
        try:
            modulus = int(text)
        except ValueError:
            raise ConfigurationError(f"bad mod-add modulus: {text!r}") from None
        return ModAddOps(modulus)
    raise ConfigurationError(
        f"unknown monoid {name!r}; expected add-i64, add-f64, max-i64, or mod-add:<m>"
    )


MONOID_CHOICES = ("add-i64", "add-f64", "max-i64", "mod-add:<m>")
