"""Tensor construction, indexing, padding/cropping, and text round-trips."""

import itertools

import numpy as np
import pytest

from exsum import (
    IntAddOps,
    IntMaxOps,
    FloatAddOps,
    Tensor,
    UsageError,
    crop_to,
    linear_index,
    load_text,
    normalize_box,
    pad_to_box_multiple,
    save_text,
)
from worked_example import EXTENTS, FLAT_INPUT, TOTAL


def test_linear_index_examples():
    assert linear_index((5, 5), (0, 0)) == 0
    assert linear_index((5, 5), (2, 2)) == 12
    assert linear_index((2, 3, 4), (1, 2, 3)) == 23


@pytest.mark.parametrize("extents", [(4,), (3, 5), (2, 3, 4), (2, 2, 3, 2)])
def test_linear_index_is_a_row_major_bijection(extents):
    seen = [linear_index(extents, c) for c in itertools.product(*map(range, extents))]
    assert seen == list(range(int(np.prod(extents))))  # row-major enumeration order


def test_linear_index_rejects_out_of_range():
    with pytest.raises(UsageError):
        linear_index((2, 2), (2, 0))
    with pytest.raises(UsageError):
        linear_index((2, 2), (0, -1))
    with pytest.raises(UsageError):
        linear_index((2, 2), (0, 0, 0))


def test_filled_with_value():
    t = Tensor.filled(IntAddOps(), (2, 3), 7)
    assert t.data.tolist() == [[7, 7, 7], [7, 7, 7]]
    assert t.get((1, 2)) == 7
    assert linear_index(t.extents, (1, 2)) == 5


def test_filled_defaults_to_identity():
    t = Tensor.filled(IntMaxOps(), (3,))
    assert all(v == np.iinfo(np.int64).min for v in t.data)


def test_bad_extents_rejected():
    for bad in [(), (0,), (3, -1), ("x",)]:
        with pytest.raises(UsageError):
            Tensor.filled(IntAddOps(), bad)


def test_from_values_checks_count():
    with pytest.raises(UsageError):
        Tensor.from_values(IntAddOps(), (2, 2), [1, 2, 3])


def test_dtype_must_match_monoid():
    with pytest.raises(UsageError):
        Tensor(IntAddOps(), np.zeros((2, 2), dtype=np.float64))
    t = Tensor.filled(IntAddOps(), (2, 2))
    with pytest.raises(UsageError):
        t.with_ops(FloatAddOps())


def test_get_set_roundtrip():
    t = Tensor.filled(IntAddOps(), (2, 3))
    t.set((1, 2), 9)
    assert t.get((1, 2)) == 9
    with pytest.raises(UsageError):
        t.get((2, 0))


def test_total_reduce():
    ia = IntAddOps()
    t = Tensor.from_values(ia, EXTENTS, FLAT_INPUT)
    assert t.total_reduce() == TOTAL
    assert t.with_ops(IntMaxOps()).total_reduce() == 9
    assert Tensor.from_values(ia, (3,), [2, 3, 4]).total_reduce() == 9


def test_normalize_box_clamps_and_validates():
    assert normalize_box((5, 5), (2, 9)) == (2, 5)
    with pytest.raises(UsageError):
        normalize_box((5, 5), (2,))
    with pytest.raises(UsageError):
        normalize_box((5, 5), (0, 2))


def test_pad_to_box_multiple():
    t = Tensor.from_values(IntAddOps(), EXTENTS, FLAT_INPUT)
    padded, orig = pad_to_box_multiple(t, (2, 2))
    assert padded.extents == (6, 6) and orig == (5, 5)
    new_region = padded.data.copy()
    new_region[:5, :5] = -1
    assert int((new_region == 0).sum()) == 11  # 36 - 25 identity cells
    assert np.array_equal(padded.data[:5, :5], t.data)


@pytest.mark.parametrize("extents,box", [((8,), (4,)), ((5,), (5,))])
def test_pad_already_aligned(extents, box):
    t = Tensor.from_values(IntAddOps(), extents, range(1, int(np.prod(extents)) + 1))
    padded, orig = pad_to_box_multiple(t, box)
    assert padded.extents == extents and orig == extents
    assert np.array_equal(padded.data, t.data)


def test_pad_crop_roundtrip():
    rng = np.random.default_rng(5)
    t = Tensor.from_values(IntAddOps(), (3, 5, 2), rng.integers(0, 100, 30))
    padded, orig = pad_to_box_multiple(t, (2, 3, 4))
    assert padded.extents == (4, 6, 2)
    back = crop_to(padded, orig)
    assert np.array_equal(back.data, t.data)
    with pytest.raises(UsageError):
        crop_to(t, (4, 5, 2))


@pytest.mark.parametrize("ops", [IntAddOps(), FloatAddOps()], ids=lambda m: m.name)
def test_text_roundtrip(ops, tmp_path):
    rng = np.random.default_rng(9)
    values = rng.random(24) if ops.dtype.kind == "f" else rng.integers(-999, 999, 24)
    t = Tensor.from_values(ops, (2, 3, 4), values)
    path = tmp_path / "t.txt"
    save_text(t, path)
    back = load_text(ops, path)
    assert back.extents == (2, 3, 4)
    assert np.array_equal(back.data, t.data)  # bitwise, including floats


def test_load_text_rejects_malformed(tmp_path):
    cases = ["", "2 2 2\n1 2 3", "0\n", "1 2\n1 x"]
    for i, text in enumerate(cases):
        path = tmp_path / f"bad{i}.txt"
        path.write_text(text)
        with pytest.raises(UsageError):
            load_text(IntAddOps(), path)
