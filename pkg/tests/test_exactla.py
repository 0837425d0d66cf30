from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilext.exactla import (
    DimensionError,
    LinearSolver,
    IncrementalSystem,
    Matrix,
    format_scalar,
    full_space,
    nullspace,
    parse_scalar,
    rref,
    solve,
    span,
    subspace_contains,
    subspace_eq,
    subspace_leq,
    subspace_sum,
    unit_vec,
    zero_subspace,
    zero_vec,
)

from conftest import rationals, small, vector_lists, vectors

F = Fraction


def m(rows):
    return Matrix.from_rows([[F(a) for a in r] for r in rows])


class TestScalars:
    @pytest.mark.parametrize("text,value", [("-3/2", F(-3, 2)), ("4", F(4)), ("6/4", F(3, 2)), (" 0 ", F(0)), (7, F(7))])
    def test_parse(self, text, value):
        assert parse_scalar(text) == value

    @pytest.mark.parametrize("text", ["1/0", "abc", "1.5", "", "2/-3", None, True])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_scalar(text)

    @given(rationals)
    def test_round_trip(self, q):
        assert parse_scalar(format_scalar(q)) == q

    def test_format_lowest_terms(self):
        assert format_scalar(F(-6, 4)) == "-3/2"
        assert format_scalar(F(5, 1)) == "5"


class TestRref:
    def test_permutation(self):
        assert rref(m([[0, 1], [1, 0]])) == m([[1, 0], [0, 1]])

    def test_rank_one(self):
        assert rref(m([[2, 4], [1, 2]])) == m([[1, 2], [0, 0]])
        assert span(m([[2, 4], [1, 2]]).entries, 2).basis == ((1, 2),)

    def test_hand_elimination(self):
        r = rref(m([[1, 1, 0], [0, 1, 1], [1, 0, -1]]))
        assert r.entries[:2] == m([[1, 0, -1], [0, 1, 1]]).entries
        assert not any(r.entries[2])

    @settings(max_examples=60)
    @given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), vector_lists(n, 5, rationals))))
    def test_idempotent(self, case):
        n, rows = case
        if not rows:
            return
        r = rref(Matrix.from_rows(rows, n))
        assert rref(r) == r


class TestSubspaces:
    def test_span_examples(self):
        assert span([], 3).dim == 0
        assert span([(1, 1), (0, 1)], 2) == full_space(2)
        s = span([(1, 2, 0), (2, 4, 0)], 3)
        assert s.dim == 1 and s.basis == ((1, 2, 0),)

    def test_sum_contains_leq(self):
        e = [unit_vec(3, i) for i in range(3)]
        assert subspace_sum(span([e[0]], 3), span([e[1]], 3)) == span(e[:2], 3)
        assert not subspace_contains(span([(1, 1)], 2), (1, 0))
        # <z> inside <y, z> in coordinates x, y, z, w
        assert subspace_leq(span([unit_vec(4, 2)], 4), span([unit_vec(4, 1), unit_vec(4, 2)], 4))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            span([(1, 2)], 3)
        with pytest.raises(DimensionError):
            subspace_sum(full_space(2), full_space(3))

    def test_canonical_basis_shape(self):
        s = span([(0, 2, 4), (3, 0, 3)], 3)
        for row, p in zip(s.basis, s.pivots):
            assert row[p] == 1
            assert all(other[p] == 0 for other in s.basis if other is not row)
        assert list(s.pivots) == sorted(s.pivots)

    @settings(max_examples=60)
    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), vector_lists(n), vector_lists(n), vector_lists(n))))
    def test_lattice_laws(self, case):
        n, a, b, c = case
        u, v, w = span(a, n), span(b, n), span(c, n)
        assert subspace_leq(u, subspace_sum(u, v))
        assert subspace_sum(u, v) == subspace_sum(v, u)
        assert subspace_sum(subspace_sum(u, v), w) == subspace_sum(u, subspace_sum(v, w))
        assert subspace_sum(u, u) == u
        assert span(u.basis, n) == u
        assert subspace_eq(u, v) == (subspace_leq(u, v) and subspace_leq(v, u))

    @given(st.integers(1, 5).flatmap(lambda n: st.tuples(vector_lists(n, 4), vectors(n))))
    def test_contains_matches_rank(self, case):
        rows, w = case
        n = len(w)
        u = span(rows, n)
        assert u.contains(w) == (span(list(rows) + [w], n).dim == u.dim)

    def test_zero(self):
        z = zero_subspace(3)
        assert z.is_zero() and z.contains((0, 0, 0)) and not z.contains((1, 0, 0))


class TestSolve:
    def test_identity(self):
        b = (F(1), F(-2), F(1, 3))
        assert solve(Matrix.identity(3), b) == b

    def test_inconsistent(self):
        assert solve(Matrix.zeros(2, 2), (F(1), F(0))) is None

    def test_free_variables_zero(self):
        assert solve(m([[1, 1]]), (F(2),)) == (F(2), F(0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            solve(Matrix.identity(2), (F(1),))

    @settings(max_examples=80)
    @given(
        st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
            lambda s: st.tuples(st.lists(vectors(s[1]), min_size=s[0], max_size=s[0]), vectors(s[0]))
        )
    )
    def test_solution_substitutes(self, case):
        rows, b = case
        a = Matrix.from_rows(rows)
        x = solve(a, b)
        consistent = span(a.columns() + [b], a.rows).dim == span(a.columns(), a.rows).dim
        assert (x is not None) == consistent
        if x is not None:
            assert a.apply(x) == tuple(b)
            assert LinearSolver(a).solve(b) == x
        for v in nullspace(a):
            assert not any(a.apply(v))
        assert len(nullspace(a)) == a.cols - a.rank()


class TestMatrix:
    def test_algebra(self):
        a = m([[1, 2], [3, 4]])
        assert a @ Matrix.identity(2) == a
        assert (a - a).is_zero()
        assert a.transpose().column(0) == (1, 2)
        assert (-a).scale(-1) == a
        assert a.rank() == 2

    def test_json(self):
        a = m([[F(1, 2), 0], [0, -3]])
        assert Matrix.from_json(a.to_json()) == a
        with pytest.raises(DimensionError):
            Matrix.from_json(a.to_json(), 3, 2)


@settings(max_examples=150)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.tuples(vectors(n), small), max_size=6))))
def test_incremental_system_matches_batch(case):
    n, eqs = case
    system = IncrementalSystem(n)
    for coeffs, rhs in eqs:
        system.add({c: a for c, a in enumerate(coeffs) if a}, rhs)
    if not eqs:
        assert system.solution() == zero_vec(n)
        assert len(system.kernel()) == n
        return
    a = Matrix.from_rows([c for c, _ in eqs], n)
    b = [r for _, r in eqs]
    assert system.solution() == solve(a, b)
    if system.consistent:
        assert system.kernel() == nullspace(a)


def test_incremental_system_stops_when_inconsistent():
    system = IncrementalSystem(2)
    assert system.add({0: Fraction(1)}, 1)
    assert not system.add({0: Fraction(2)}, 3)
    assert not system.add({1: Fraction(1)}, 0)
    assert system.solution() is None
