"""Tracking of element-buffer allocations.

Algorithms allocate their working tensors through :func:`new_array`.  While
an :class:`AllocationTracker` is active, every such buffer adds its byte size
to the tracker's live total on creation and removes it when the buffer is
garbage collected (CPython refcounting makes this deterministic for the
acyclic buffer lifetimes used here).  ``peak_bytes`` is the high-water mark
of live element-buffer bytes — numpy-internal temporaries are not element
buffers and are deliberately out of scope.
"""

from __future__ import annotations

import threading
import weakref

import numpy as np

_lock = threading.Lock()
_trackers: list["AllocationTracker"] = []


class AllocationTracker:
    """Context manager recording live/peak bytes of tracked buffers."""

    __slots__ = ("live_bytes", "peak_bytes", "__weakref__")

    def __init__(self):
        self.live_bytes = 0
        self.peak_bytes = 0

    def __enter__(self):
        with _lock:
            _trackers.append(self)
        return self

    def __exit__(self, exc_type, exc, tb):
        with _lock:
            _trackers.remove(self)
        return False

    def _on_alloc(self, nbytes):
        with _lock:
            self.live_bytes += nbytes
            if self.live_bytes > self.peak_bytes:
                self.peak_bytes = self.live_bytes

    def _on_free(self, nbytes):
        with _lock:
            self.live_bytes -= nbytes


def track_array(arr: np.ndarray) -> np.ndarray:
    """Register ``arr`` with every active tracker; returns ``arr``."""
    with _lock:
        active = list(_trackers)
    for tracker in active:
        tracker._on_alloc(arr.nbytes)
        weakref.finalize(arr, tracker._on_free, arr.nbytes)
    return arr


def new_array(shape, dtype) -> np.ndarray:
    """Allocate an uninitialized tracked buffer."""
    return track_array(np.empty(shape, dtype=dtype))
