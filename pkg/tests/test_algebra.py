import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilext import corpus
from nilext.algebra import (
    SERIES_KINDS,
    AlgebraType,
    LinMap,
    abelian_algebra,
    algebra_from_json,
    algebra_to_json,
    check_identity,
    dia_series,
    ideal_closure,
    is_derivation,
    is_ideal,
    lcs,
    lozenge,
    make_algebra,
    mult_ops,
    multiply,
    nilpotency_class,
    nilpotency_index,
    paper_label,
    subspace_product,
)
from nilext.errors import AlgebraFormatError, ArityError, InvalidAlgebra
from nilext.exactla import Matrix, full_space, span, subspace_leq, unit_vec, zero_subspace
from nilext.generators import change_basis, random_nilpotent_algebra

from conftest import vector_lists

F = Fraction
ALL_TYPES = [t.value for t in AlgebraType]


def sub(alg, *names):
    return span([alg.basis_vector(alg.index(n)) for n in names], alg.dim)


class TestMultiply:
    def test_example1(self):
        L = corpus.example1_L1()
        assert multiply(L, 0, L.element({"w": 1}), L.element({"x": 1})) == L.element({"y": 1})

    def test_zero_left(self):
        L = corpus.example1_L1()
        assert not any(multiply(L, 0, L.element({}), L.element({"w": 3, "x": -1})))

    def test_example2_right_product(self):
        D = corpus.example2_Lphi()
        assert multiply(D, 1, D.element({"v": 1}), D.element({"u": 1})) == D.element({"x": 1, "y": 1})

    def test_bilinear(self):
        L = corpus.example1_L1()
        a, b = L.element({"w": 2, "x": 1}), L.element({"w": -1, "y": F(1, 2)})
        # (2w + x)(-w + y/2) = -2x + wy = -2x + z
        assert multiply(L, 0, a, b) == L.element({"x": -2, "z": 1})

    def test_arity(self):
        with pytest.raises(ArityError):
            multiply(corpus.example1_L1(), 1, (0,) * 4, (0,) * 4)


class TestCheckIdentity:
    def test_example1_valid(self):
        assert check_identity(corpus.example1_L1()) == []
        assert check_identity(corpus.example1_L2()) == []

    @pytest.mark.parametrize("t", ALL_TYPES)
    def test_abelian_valid(self, t):
        assert check_identity(abelian_algebra(t, "abc")) == []

    def test_leibniz_violation_certificate(self):
        bad = make_algebra("leibniz", "xyz", {"mul": {("x", "x"): {"y": 1}, ("y", "x"): {"z": 1}}}, validate=False)
        violations = check_identity(bad)
        at_xxx = [v for v in violations if v.basis == ("x", "x", "x")]
        assert len(at_xxx) == 1
        v = at_xxx[0]
        assert v.lhs == (0, 0, 0)
        assert v.rhs == (0, 0, 1)
        assert v.to_json()["rhs"] == ["0", "0", "1"]

    def test_validation_on_construction(self):
        with pytest.raises(InvalidAlgebra) as info:
            make_algebra("leibniz", "xyz", {"mul": {("x", "x"): {"y": 1}, ("y", "x"): {"z": 1}}})
        assert info.value.certificate()["violations"]

    def test_lie_needs_alternating(self):
        sym = make_algebra("leibniz", "xy", {"mul": {("x", "x"): {"y": 1}}})
        assert check_identity(sym) == []
        names = {v.identity.split(":")[0] for v in check_identity(sym.with_type(AlgebraType.LIE))}
        # x.x = y also breaks xy = -yx at (x, x)
        assert names == {"alternating", "antisymmetry"}

    def test_lie_antisymmetry(self):
        # x.y = z but y.x = 0: fails antisymmetry even though x.x = 0
        bad = make_algebra("lie", "xyz", {"mul": {("x", "y"): {"z": 1}}}, validate=False)
        assert any(v.identity.startswith("antisymmetry") for v in check_identity(bad))
        assert check_identity(corpus.heisenberg("lie")) == []

    def test_commutative_is_associative_plus_symmetry(self):
        noncomm = make_algebra("associative", "xyz", {"mul": {("x", "y"): {"z": 1}}})
        assert check_identity(noncomm) == []
        names = {v.identity.split(":")[0] for v in check_identity(noncomm.with_type(AlgebraType.COMMUTATIVE))}
        assert names == {"commutativity"}

    def test_dias_from_associative(self):
        A = corpus.seeded("associative", 4)
        D = type(A)(A.dim, A.basis_names, AlgebraType.DIASSOCIATIVE, A.products * 2)
        assert check_identity(D) == []

    def test_zinbiel_and_dendriform_seeds(self):
        assert check_identity(corpus.seeded("zinbiel", 5)) == []
        assert check_identity(corpus.seeded("dendriform", 5)) == []

    def test_dendriform_sum_is_associative(self):
        E = corpus.seeded("dendriform", 5)
        s = tuple(
            tuple(tuple(a + b for a, b in zip(E.products[0][i][j], E.products[1][i][j])) for j in range(5))
            for i in range(5)
        )
        assert check_identity(type(E)(5, E.basis_names, AlgebraType.ASSOCIATIVE, (s,))) == []


class TestProducts:
    def test_example1_square(self):
        L = corpus.example1_L1()
        full = full_space(4)
        assert subspace_product(L, 0, full, full) == sub(L, "x", "y", "z")
        assert subspace_product(L, 0, full, zero_subspace(4)).is_zero()

    def test_example3_square(self):
        L = corpus.example3_Lphi()
        full = full_space(4)
        assert subspace_product(L, 0, full, full) == sub(L, "z")

    def test_lozenge_example2(self):
        D = corpus.example2_Lphi()
        full = full_space(4)
        assert lozenge(D, full, full) == sub(D, "x", "y")
        assert lozenge(D, zero_subspace(4), full).is_zero()
        assert lozenge(D, full, sub(D, "x", "y")).is_zero()

    def test_lozenge_arity(self):
        with pytest.raises(ArityError):
            lozenge(corpus.example1_L1(), full_space(4), full_space(4))


class TestSeries:
    def test_example1(self):
        assert lcs(corpus.example1_L1()).dims == [4, 3, 2, 1, 0]
        assert lcs(corpus.example1_L2()).dims == [4, 2, 1, 0]

    def test_abelian(self):
        assert lcs(abelian_algebra("leibniz", "abcde")).dims == [5, 0]
        for kind in SERIES_KINDS:
            assert dia_series(abelian_algebra("dendriform", "abc"), kind).dims == [3, 0]

    @pytest.mark.parametrize("kind", SERIES_KINDS)
    def test_example2(self, kind):
        assert dia_series(corpus.example2_Lphi(), kind).dims == [4, 2, 0]
        assert dia_series(corpus.example2_Lab(), kind).dims == [4, 0]

    def test_arity_errors(self):
        with pytest.raises(ArityError):
            lcs(corpus.example2_Lphi())
        with pytest.raises(ArityError):
            dia_series(corpus.example1_L1(), "left")
        with pytest.raises(ValueError):
            dia_series(corpus.example2_Lphi(), "sideways")

    def test_class_conventions(self):
        chain = lcs(corpus.example1_L1())
        assert nilpotency_index(chain) == 4
        assert paper_label(nilpotency_index(chain)) == 5
        assert paper_label(None) is None

    def test_zero_algebra(self):
        assert nilpotency_index(lcs(abelian_algebra("leibniz", []))) == 0

    def test_idempotent_not_nilpotent(self):
        one = make_algebra("associative", "x", {"mul": {("x", "x"): {"x": 1}}})
        chain = lcs(one)
        assert chain.stabilized and chain.dims == [1]
        assert nilpotency_class(one) is None

    def test_chain_padding(self):
        chain = lcs(corpus.example1_L2())
        assert chain[10].is_zero()
        assert chain.limit.is_zero()


class TestMaps:
    def test_example3_adjoints(self):
        A = corpus.example3_A()
        left, _ = mult_ops(A, 0, A.element({"x": -1}))
        assert left(A.element({"x": 1})) == A.element({"z": -1})
        assert not any(left(A.element({"y": 1}))) and not any(left(A.element({"z": 1})))
        _, right = mult_ops(A, 0, A.element({"x": 1}))
        assert right(A.element({"x": 1})) == A.element({"z": 1})

    def test_adjoint_of_zero(self):
        A = corpus.example3_A()
        left, right = mult_ops(A, 0, A.element({}))
        assert left.is_zero() and right.is_zero()

    def test_derivations(self):
        A1 = corpus.example1_A()
        assert is_derivation(A1, LinMap.zero(3))
        phi = LinMap.from_images([A1.element({"y": 1}), A1.element({"z": 1}), A1.element({})])
        assert is_derivation(A1, phi)
        A3 = corpus.example3_A()
        proj_x = LinMap.from_images([A3.element({"x": 1}), A3.element({}), A3.element({})])
        assert not is_derivation(A3, proj_x)

    def test_linmap_arithmetic(self):
        a = LinMap.from_images([(1, 0), (1, 1)])
        assert (a - a).is_zero()
        assert (a + (-a)).is_zero()
        assert a((F(1), F(1))) == (2, 1)


class TestIdealClosure:
    def test_zero_seed(self):
        assert ideal_closure(corpus.example1_L1(), zero_subspace(4)).is_zero()

    def test_with_extra_maps(self):
        A = corpus.example1_A()
        phi = LinMap.from_images([A.element({"y": 1}), A.element({"z": 1}), A.element({})])
        assert ideal_closure(A, sub(A, "y", "z"), [phi]) == sub(A, "y", "z")
        assert ideal_closure(A, sub(A, "x"), [phi]) == full_space(3)

    def test_plain_ideal(self):
        A = corpus.example3_A()
        assert ideal_closure(A, sub(A, "x")) == sub(A, "x", "z")
        assert is_ideal(A, sub(A, "x", "z"))
        assert not is_ideal(A, sub(A, "x"))


class TestJson:
    def test_round_trip_corpus(self):
        for name, alg in corpus.corpus_algebras().items():
            assert algebra_from_json(json.loads(json.dumps(algebra_to_json(alg)))) == alg, name

    def test_unknown_name(self, data_dir):
        with pytest.raises(AlgebraFormatError) as info:
            algebra_from_json(json.loads((data_dir / "unknown_name.json").read_text()))
        assert "products.mul[0]" in str(info.value)

    def test_bad_scalar_location(self, data_dir):
        with pytest.raises(AlgebraFormatError) as info:
            algebra_from_json(json.loads((data_dir / "bad_scalar.json").read_text()))
        assert "val.y" in str(info.value)

    @pytest.mark.parametrize(
        "data",
        [
            [],
            {"type": "jordan", "basis": ["x"]},
            {"type": "leibniz", "basis": "xy"},
            {"type": "leibniz", "basis": ["x"], "products": {"left": []}},
            {"type": "leibniz", "basis": ["x"], "products": {"mul": [{"l": "x"}]}},
            {"type": "leibniz", "basis": ["x", "x"]},
        ],
    )
    def test_schema_errors(self, data):
        with pytest.raises(AlgebraFormatError):
            algebra_from_json(data)

    def test_violation_on_load(self, data_dir):
        data = json.loads((data_dir / "bad_leibniz.json").read_text())
        with pytest.raises(InvalidAlgebra):
            algebra_from_json(data)
        assert check_identity(algebra_from_json(data, validate=False))


# --- properties over generated algebras ---------------------------------------------

seeds = st.integers(0, 10**6)
types = st.sampled_from(ALL_TYPES)


@settings(max_examples=40, deadline=None)
@given(types, st.integers(1, 5), seeds, st.randoms(use_true_random=False))
def test_identity_check_is_basis_independent(t, dim, seed, rnd):
    alg = random_nilpotent_algebra(t, dim, seed=seed)
    perm = list(range(dim))
    rnd.shuffle(perm)
    P = Matrix.from_columns([unit_vec(dim, k) for k in perm], dim)
    assert check_identity(change_basis(alg, P)) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), seeds, vector_lists(n, 3), vector_lists(n, 3), vector_lists(n, 3))))
def test_product_monotone_and_closure_laws(case):
    n, seed, a, b, c = case
    alg = random_nilpotent_algebra("leibniz", n, density=0.5, seed=seed)
    u, v, w = span(a, n), span(b, n), span(c, n)
    uv = u + v
    assert subspace_leq(subspace_product(alg, 0, u, w), subspace_product(alg, 0, uv, w))
    assert subspace_leq(subspace_product(alg, 0, w, u), subspace_product(alg, 0, w, uv))
    cu = ideal_closure(alg, u)
    assert ideal_closure(alg, cu) == cu
    assert subspace_leq(u, cu)
    assert subspace_leq(cu, ideal_closure(alg, uv))
    assert is_ideal(alg, cu)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6))
def test_left_norming_on_generated_leibniz(seed, dim):
    alg = random_nilpotent_algebra("leibniz", dim, seed=seed)
    chain = lcs(alg)
    full = full_space(dim)
    for n in range(len(chain)):
        assert subspace_leq(subspace_product(alg, 0, chain[n], full), chain[n + 1])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["diassociative", "dendriform"]), seeds, st.integers(1, 6))
def test_dialgebra_series_agree(t, seed, dim):
    alg = random_nilpotent_algebra(t, dim, seed=seed)
    chains = [dia_series(alg, k) for k in SERIES_KINDS]
    assert chains[0].terms == chains[1].terms == chains[2].terms
    assert chains[0].terms[-1].is_zero()


@settings(max_examples=30, deadline=None)
@given(types, seeds, st.integers(1, 6))
def test_chains_strictly_descend(t, seed, dim):
    alg = random_nilpotent_algebra(t, dim, seed=seed)
    chain = lcs(alg) if alg.arity == 1 else dia_series(alg, "general")
    for a, b in itertools.pairwise(chain.terms):
        assert subspace_leq(b, a) and b.dim < a.dim
    assert len(chain) <= dim + 1
