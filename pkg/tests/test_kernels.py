import importlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilext import _kernels_py, kernels

try:
    from nilext import _kernels as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")

int_rows = st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), max_size=7))
)


def test_reduced_form_contract():
    rows, pivots = _kernels_py.rref_int([[2, 4, 6], [1, 3, 5], [3, 7, 11]], 3)
    assert pivots == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 2]]


def test_reduce_int_membership():
    basis, pivots = _kernels_py.rref_int([[1, 0, 1], [0, 1, 1]], 3)
    assert not any(_kernels_py.reduce_int(basis, pivots, [2, 3, 5]))
    assert any(_kernels_py.reduce_int(basis, pivots, [0, 0, 1]))


@settings(max_examples=200)
@given(int_rows)
def test_pure_invariants(case):
    n, rows = case
    red, pivots = _kernels_py.rref_int(rows, n)
    assert pivots == sorted(set(pivots))
    for row, p in zip(red, pivots):
        assert row[p] > 0
        assert all(other[p] == 0 for other in red if other is not row)
    for r in rows:
        assert not any(_kernels_py.reduce_int(red, pivots, r))


@needs_compiled
@settings(max_examples=300)
@given(int_rows)
def test_backends_agree(case):
    n, rows = case
    assert compiled.rref_int(rows, n) == _kernels_py.rref_int(rows, n)
    red, pivots = _kernels_py.rref_int(rows, n)
    probe = [(i * 7 + 3) % 11 - 5 for i in range(n)]
    assert compiled.reduce_int(red, pivots, probe) == _kernels_py.reduce_int(red, pivots, probe)


@needs_compiled
def test_big_integers_agree():
    big = 10**40
    rows = [[big, 3, 1], [7, big + 1, 2], [1, 1, big * big]]
    assert compiled.rref_int(rows, 3) == _kernels_py.rref_int(rows, 3)


def test_pure_env_switch(monkeypatch):
    monkeypatch.setenv("NILEXT_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.rref_int is _kernels_py.rref_int
    finally:
        monkeypatch.delenv("NILEXT_PURE")
        importlib.reload(kernels)


def _inserted(module, rows):
    basis, pivots = [], []
    for r in rows:
        module.insert_int(basis, pivots, r)
    return basis, pivots


@settings(max_examples=200)
@given(int_rows)
def test_insert_one_at_a_time_matches_batch(case):
    n, rows = case
    assert _inserted(_kernels_py, rows) == _kernels_py.rref_int(rows, n)


def test_insert_reports_redundancy():
    basis, pivots = [], []
    assert _kernels_py.insert_int(basis, pivots, [0, 2, 4]) == 1
    assert _kernels_py.insert_int(basis, pivots, [0, 1, 2]) == -1
    assert _kernels_py.insert_int(basis, pivots, [3, 1, 0]) == 0
    assert (basis, pivots) == ([[3, 0, -2], [0, 1, 2]], [0, 1])


@needs_compiled
@settings(max_examples=200)
@given(int_rows)
def test_insert_backends_agree(case):
    _, rows = case
    assert _inserted(compiled, rows) == _inserted(_kernels_py, rows)
