"""Range scans, dimension-reduced scans, and the windowed-sum kernel."""

import numpy as np
import pytest

from exsum import (
    InstrumentedMonoid,
    IntAddOps,
    IntMaxOps,
    Tensor,
    UsageError,
    bdbs_1d,
    bdbs_along_dim,
    prefix_along_dim,
    prefix_range,
    reduced_slice,
    suffix_along_dim,
    suffix_range,
    windowed_sum_axis,
)

IA = IntAddOps()


def _win_oracle(vals, k, combine):
    out = []
    for x in range(len(vals)):
        window = vals[x : min(x + k, len(vals))]
        acc = window[0]
        for v in window[1:]:
            acc = combine(acc, v)
        out.append(acc)
    return out


# -- ranged 1D scans ---------------------------------------------------------


def test_prefix_range_examples():
    buf = [1, 2, 3, 4]
    prefix_range(buf, 0, 4, IA)
    assert buf == [1, 3, 6, 10]

    buf = [5, 1, 5]
    prefix_range(buf, 1, 3, IA)
    assert buf == [5, 1, 6]

    buf = [4, 4]
    prefix_range(buf, 1, 1, IA)
    assert buf == [4, 4]


def test_suffix_range_examples():
    buf = [1, 2, 3, 4]
    suffix_range(buf, 0, 4, IA)
    assert buf == [10, 9, 7, 4]

    buf = [9]
    suffix_range(buf, 0, 1, IA)
    assert buf == [9]

    buf = [2, 2, 2]
    suffix_range(buf, 2, 2, IA)
    assert buf == [2, 2, 2]


def test_range_scans_bounds_checked():
    for start, end in [(-1, 2), (0, 5), (3, 2)]:
        with pytest.raises(IndexError):
            prefix_range([1, 2, 3, 4], start, end, IA)
        with pytest.raises(IndexError):
            suffix_range([1, 2, 3, 4], start, end, IA)


@pytest.mark.parametrize("start,end", [(0, 6), (2, 6), (0, 3), (2, 5), (3, 3)])
def test_range_scan_combine_counts_exact(start, end):
    for fn in (prefix_range, suffix_range):
        instr = InstrumentedMonoid(IA)
        fn([1] * 6, start, end, instr)
        assert instr.op_count == max(0, end - start - 1)


def test_prefix_suffix_total_relationship():
    rng = np.random.default_rng(2)
    for _ in range(20):
        vals = list(rng.integers(-9, 9, size=rng.integers(1, 12)))
        pre, suf = list(vals), list(vals)
        prefix_range(pre, 0, len(pre), IA)
        suffix_range(suf, 0, len(suf), IA)
        assert pre[-1] == suf[0] == sum(vals)


def test_prefix_range_invertible():
    rng = np.random.default_rng(3)
    vals = [int(v) for v in rng.integers(-99, 99, size=30)]
    pre = list(vals)
    prefix_range(pre, 0, len(pre), IA)
    rebuilt = [pre[0]] + [IA.subtract(pre[i], pre[i - 1]) for i in range(1, len(pre))]
    assert rebuilt == vals


def test_range_scans_work_on_ndarray_rows():
    row = np.array([1, 2, 3], dtype=np.int64)
    prefix_range(row, 0, 3, IA)
    assert row.tolist() == [1, 3, 6]


# -- windowed 1D sums --------------------------------------------------------


def test_bdbs_1d_frozen_example():
    assert bdbs_1d(IA, [1, 2, 3, 4, 5, 6, 7, 8], 4).tolist() == [10, 14, 18, 22, 26, 21, 15, 8]


def test_bdbs_1d_window_one_is_identity_map():
    assert bdbs_1d(IA, [3, 1, 4], 1).tolist() == [3, 1, 4]


def test_bdbs_1d_all_identity():
    assert bdbs_1d(IA, [0, 0, 0, 0, 0], 3).tolist() == [0] * 5


def test_bdbs_1d_window_must_be_positive():
    with pytest.raises(UsageError):
        bdbs_1d(IA, [1, 2], 0)


def test_bdbs_1d_exhaustive_vs_oracle():
    rng = np.random.default_rng(4)
    mx = IntMaxOps()
    for n in range(1, 13):
        for k in range(1, n + 3):
            vals = [int(v) for v in rng.integers(-50, 50, size=n)]
            assert bdbs_1d(IA, vals, k).tolist() == _win_oracle(vals, min(k, n), IA.combine)
            assert bdbs_1d(mx, vals, k).tolist() == _win_oracle(vals, min(k, n), max)


def test_windowed_sum_axis_combine_counts():
    # per row: block suffix (n - nblocks) + block prefix (n - nblocks)
    # + stitch (positions off block starts outside the last block)
    for n, k, rows in [(12, 4, 3), (10, 4, 2), (7, 3, 1), (9, 2, 5), (5, 5, 2), (4, 9, 2)]:
        instr = InstrumentedMonoid(IA)
        arr = np.ones((rows, n), dtype=np.int64)
        windowed_sum_axis(instr, arr, k, 1)
        if k >= n:  # whole-row windows collapse to one suffix scan
            expected = rows * (n - 1)
        else:
            nblocks = -(-n // k)
            stitch = sum(1 for x in range(n) if x % k and x // k < nblocks - 1)
            expected = rows * (2 * (n - nblocks) + stitch)
        assert instr.op_count == expected, (n, k)
        assert instr.op_count <= 3 * arr.size


def test_windowed_sum_axis_rows_are_independent():
    # operating on a middle view must leave neighboring rows untouched
    rng = np.random.default_rng(6)
    arr = rng.integers(0, 100, size=(5, 9)).astype(np.int64)
    poisoned = arr.copy()
    poisoned[0] = poisoned[4] = -(10**12)
    windowed_sum_axis(IA, poisoned[1:4], 4, 1)
    assert np.array_equal(poisoned[0], np.full(9, -(10**12)))
    assert np.array_equal(poisoned[4], np.full(9, -(10**12)))
    for r in range(1, 4):
        assert poisoned[r].tolist() == _win_oracle(arr[r].tolist(), 4, IA.combine)


# -- whole-tensor directional scans ------------------------------------------


def _tensor(values):
    arr = np.array(values, dtype=np.int64)
    return Tensor.from_values(IA, arr.shape, arr.reshape(-1))


def test_prefix_along_dim_examples():
    t = _tensor([[1, 2], [3, 4]])
    prefix_along_dim(t, 0)
    assert t.data.tolist() == [[1, 2], [4, 6]]

    t = _tensor([[1, 2], [3, 4]])
    prefix_along_dim(t, 1)  # only the dim-0-last row is live
    assert t.data.tolist() == [[1, 2], [3, 7]]


def test_suffix_along_dim_examples():
    t = _tensor([[1, 2], [3, 4]])
    suffix_along_dim(t, 0)
    assert t.data.tolist() == [[4, 6], [3, 4]]

    t = _tensor([[0, 0], [0, 0]])
    suffix_along_dim(t, 0)
    assert t.data.tolist() == [[0, 0], [0, 0]]


def test_along_dim_on_1d_is_plain_scan():
    t = _tensor([1, 2, 3])
    prefix_along_dim(t, 0)
    assert t.data.tolist() == [1, 3, 6]


def test_bdbs_along_dim_examples():
    t = _tensor([[1, 2], [3, 4]])
    bdbs_along_dim(t, (2, 2), 0, 0)
    assert t.data.tolist() == [[4, 6], [3, 4]]
    bdbs_along_dim(t, (2, 2), 0, 1)
    assert t.data.tolist() == [[10, 6], [7, 4]]


def test_bdbs_along_dim_1xn_matches_bdbs_1d():
    t = _tensor([[5, 1, 5, 2]])
    bdbs_along_dim(t, (1, 2), 0, 1)
    assert t.data.reshape(-1).tolist() == bdbs_1d(IA, [5, 1, 5, 2], 2).tolist()


def test_bdbs_along_dim_index_contract():
    t = _tensor([[1, 2], [3, 4]])
    with pytest.raises(UsageError):
        bdbs_along_dim(t, (2, 2), 1, 0)
    with pytest.raises(UsageError):
        reduced_slice(t, 2)


def test_dead_region_never_read_or_written():
    # everything off the reduced slice is dead data: scans with i > 0 must
    # neither read it (results match a clean copy) nor write it
    rng = np.random.default_rng(8)
    base = rng.integers(0, 100, size=(3, 4, 5)).astype(np.int64)
    for op in [
        lambda t: prefix_along_dim(t, 1),
        lambda t: suffix_along_dim(t, 1),
        lambda t: bdbs_along_dim(t, (2, 2, 3), 1, 2),
        lambda t: bdbs_along_dim(t, (2, 3, 2), 1, 1),
    ]:
        clean = Tensor.from_values(IA, base.shape, base.reshape(-1))
        op(clean)

        poisoned_arr = base.copy()
        poisoned_arr[:2] = -(10**12)  # all but the last index of dim 0
        poisoned = Tensor.from_values(IA, base.shape, poisoned_arr.reshape(-1))
        op(poisoned)

        assert np.array_equal(poisoned.data[2], clean.data[2])
        assert np.all(poisoned.data[:2] == -(10**12))
