"""Deterministic random inputs for fuzzing: nilpotent algebras and extensions.

Every generator takes an explicit seed and draws from its own
``random.Random``; identical arguments give identical output.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import comb
from typing import Optional

from .algebra import (
    Algebra,
    AlgebraType,
    LinMap,
    abelian_algebra,
    check_identity,
    default_series,
    ideal_closure,
    multiply,
)
from .cocycles import cocycle_space
from .errors import NilextError
from .exactla import ZERO, LinearSolver, Matrix, span, unit_vec, vadd
from .extension import (
    ExtensionData,
    FactorSystem,
    Lift,
    build_extension_algebra,
    extract_factor_system,
    lifts_differ_by_adjoints,
    make_extension,
)

MAX_ATTEMPTS = 10_000
DEFAULT_DENSITY = 0.25
_COEFFS = (-2, -1, 1, 2)


class GenerationError(NilextError):
    """Rejection sampling ran out of attempts."""


def _rng(*parts) -> random.Random:
    # str seeds are hashed with sha512 by random.Random: stable across runs
    return random.Random(":".join(str(p) for p in parts))


def _coef(rng: random.Random) -> Fraction:
    return Fraction(rng.choice(_COEFFS))


def _graded_tensor(rng, dim, grades, density, pairs):
    grid = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j in pairs:
        for k in range(dim):
            if grades[k] >= grades[i] + grades[j] and rng.random() < density:
                grid[i][j][k] = _coef(rng)
    return grid


def _freeze(grid) -> tuple:
    return tuple(tuple(tuple(v) for v in row) for row in grid)


def seed_tensors(alg_type, dim: int) -> tuple:
    """Structured nilpotent algebra of maximal class for the type, with grades.

    leibniz: e1 e_k = e_{k+1}; lie: model filiform [e1, e_k] = e_{k+1} (k >= 2);
    associative/commutative/diassociative: truncated polynomials e_i e_j = e_{i+j};
    zinbiel: e_i e_j = C(i+j-1, j) e_{i+j}; dendriform: the zinbiel product
    split as x < y = xy, x > y = yx.
    """
    alg_type = AlgebraType(alg_type)
    grid = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    grades = list(range(1, dim + 1))
    if alg_type is AlgebraType.LEIBNIZ:
        for k in range(dim - 1):
            grid[0][k][k + 1] = Fraction(1)
    elif alg_type is AlgebraType.LIE:
        grades = [1] + list(range(1, dim))
        for k in range(1, dim - 1):
            grid[0][k][k + 1] = Fraction(1)
            grid[k][0][k + 1] = Fraction(-1)
    elif alg_type is AlgebraType.ZINBIEL or alg_type is AlgebraType.DENDRIFORM:
        for i in range(dim):
            for j in range(dim):
                if i + j + 1 < dim:
                    grid[i][j][i + j + 1] = Fraction(comb(i + j + 1, j + 1))
    else:
        for i in range(dim):
            for j in range(dim):
                if i + j + 1 < dim:
                    grid[i][j][i + j + 1] = Fraction(1)
    if alg_type is AlgebraType.DENDRIFORM:
        swapped = [[list(grid[j][i]) for j in range(dim)] for i in range(dim)]
        return (grid, swapped), grades
    if alg_type is AlgebraType.DIASSOCIATIVE:
        return (grid, [[list(v) for v in row] for row in grid]), grades
    return (grid,), grades


def _candidate(rng, alg_type: AlgebraType, dim: int, max_grade: int, density: float) -> Algebra:
    if density <= 0:
        return abelian_algebra(alg_type, [f"e{k + 1}" for k in range(dim)])
    if rng.random() < 0.5:
        base, grades = seed_tensors(alg_type, dim)
        # a few single-entry perturbations pointing up the grading
        slots = [(i, j, k) for i in range(dim) for j in range(dim) for k in range(dim) if grades[k] >= grades[i] + grades[j]]
        tensors = [[[list(v) for v in row] for row in t] for t in base]
        for _ in range(rng.randint(0, 3) if slots else 0):
            i, j, k = rng.choice(slots)
            c = _coef(rng)
            t = rng.randrange(len(tensors))
            tensors[t][i][j][k] += c
            if alg_type is AlgebraType.LIE and i != j:
                tensors[t][j][i][k] -= c
            elif alg_type is AlgebraType.COMMUTATIVE and i != j:
                tensors[t][j][i][k] += c
        names = tuple(f"e{k + 1}" for k in range(dim))
        return Algebra(dim, names, alg_type, tuple(_freeze(t) for t in tensors))
    else:
        # consecutive grades mostly step by one, which leaves room for long chains
        grades = [1]
        for _ in range(dim - 1):
            grades.append(min(max_grade, grades[-1] + rng.choice((0, 1, 1))))
    all_pairs = [(i, j) for i in range(dim) for j in range(dim)]
    if alg_type is AlgebraType.LIE:
        g = _graded_tensor(rng, dim, grades, density, [(i, j) for i, j in all_pairs if i < j])
        for i, j in all_pairs:
            if i > j:
                g[i][j] = [-c for c in g[j][i]]
        tensors = (g,)
    elif alg_type is AlgebraType.COMMUTATIVE:
        g = _graded_tensor(rng, dim, grades, density, [(i, j) for i, j in all_pairs if i <= j])
        for i, j in all_pairs:
            if i > j:
                g[i][j] = list(g[j][i])
        tensors = (g,)
    elif alg_type.arity == 2:
        first = _graded_tensor(rng, dim, grades, density, all_pairs)
        if rng.random() < 0.25:
            # both products equal: any associative algebra
            tensors = (first, [[list(v) for v in row] for row in first])
        else:
            tensors = (first, _graded_tensor(rng, dim, grades, density, all_pairs))
    else:
        tensors = (_graded_tensor(rng, dim, grades, density, all_pairs),)
    names = tuple(f"e{k + 1}" for k in range(dim))
    return Algebra(dim, names, alg_type, tuple(_freeze(t) for t in tensors))


def random_nilpotent_algebra(
    alg_type,
    dim: int,
    max_grade: Optional[int] = None,
    density: float = DEFAULT_DENSITY,
    seed: int = 0,
    max_attempts: int = MAX_ATTEMPTS,
) -> Algebra:
    """Graded random structure constants, rejection-sampled until valid.

    Basis vectors get positive grades in ascending order and e_i * e_j only
    has components of grade >= grade_i + grade_j, so the result is nilpotent.
    """
    alg_type = AlgebraType(alg_type)
    if dim < 1:
        raise ValueError("dim must be at least 1")
    max_grade = max_grade or dim
    rng = _rng("algebra", alg_type.value, dim, max_grade, density, seed)
    for _ in range(max_attempts):
        alg = _candidate(rng, alg_type, dim, max_grade, density)
        if not check_identity(alg):
            return alg
    raise GenerationError(f"no valid {alg_type.value} algebra of dim {dim} after {max_attempts} attempts")


# --- extensions ---------------------------------------------------------------


def _random_element(rng, n: int, density: float) -> tuple:
    return tuple(_coef(rng) if rng.random() < density else ZERO for _ in range(n))


def _nilpotent_map(rng, n: int, density: float) -> LinMap:
    """Random strictly lower-triangular map (basis j goes to span of k > j)."""
    cols = []
    for j in range(n):
        cols.append(tuple(_coef(rng) if k > j and rng.random() < density else ZERO for k in range(n)))
    return LinMap.from_images(cols)


def _random_combination(rng, space, density: float) -> FactorSystem:
    return space.factor_system([_coef(rng) if rng.random() < density else 0 for _ in range(space.dim)])


def random_extension(
    A: Algebra,
    B: Algebra,
    density: float = DEFAULT_DENSITY,
    seed: int = 0,
    max_attempts: int = MAX_ATTEMPTS,
    perturbed_attempts: int = 8,
) -> ExtensionData:
    """Random extension of A by B.

    Each attempt draws a lift (an inner part ad(m_i) shared by all slots plus
    sparse strictly lower-triangular perturbations) and keeps it when some
    cocycle makes it a factor system; the cocycle is then a random point of
    that solution space.  After ``perturbed_attempts`` failures the
    perturbations are dropped, since a purely inner lift always admits one.
    """
    if A.type != B.type:
        raise ValueError("A and B must have the same type")
    rng = _rng("extension", A.type.value, A.dim, B.dim, density, seed)
    arity = A.arity
    for attempt in range(max_attempts):
        if attempt == max_attempts - 1 or density == 0:
            lift = Lift.zero(arity, A.dim, B.dim)
        else:
            inner = [_random_element(rng, A.dim, density) for _ in range(B.dim)]
            zero = Lift.zero(arity, A.dim, B.dim)
            lift = zero.perturbed(A, [inner] * len(zero.slots))
            maps = []
            for slot in lift.maps:
                maps.append(
                    tuple(
                        m + _nilpotent_map(rng, A.dim, density)
                        if attempt < perturbed_attempts and rng.random() < density
                        else m
                        for m in slot
                    )
                )
            lift = Lift(arity, tuple(maps))
        space = cocycle_space(A, B, lift)
        if space is None:
            continue
        fs = _random_combination(rng, space, density)
        _, ext = build_extension_algebra(A, B, fs)
        return ext
    raise GenerationError(f"no valid extension after {max_attempts} attempts")


def change_basis(alg: Algebra, P: Matrix) -> Algebra:
    """Same algebra in the basis given by the columns of invertible ``P``."""
    solver = LinearSolver(P)
    cols = P.columns()
    products = []
    for p in range(alg.arity):
        products.append(
            tuple(tuple(solver.solve(multiply(alg, p, cols[i], cols[j])) for j in range(alg.dim)) for i in range(alg.dim))
        )
    return Algebra(alg.dim, alg.basis_names, alg.type, tuple(products))


def _random_unimodular(rng, n: int) -> Matrix:
    """Product of random elementary integer matrices (determinant +-1)."""
    rows = [list(unit_vec(n, i)) for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            c = rng.choice((-1, 1))
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return Matrix.from_rows(rows, n)


def subalgebra_on(alg: Algebra, basis_vectors, names=None) -> Algebra:
    """Restriction of ``alg`` to a subalgebra spanned by ``basis_vectors``."""
    k = len(basis_vectors)
    S = Matrix.from_columns(basis_vectors, alg.dim)
    solver = LinearSolver(S)
    products = []
    for p in range(alg.arity):
        grid = []
        for i in range(k):
            row = []
            for j in range(k):
                coords = solver.solve(multiply(alg, p, basis_vectors[i], basis_vectors[j]))
                if coords is None:
                    raise ValueError("vectors do not span a subalgebra")
                row.append(coords)
            grid.append(tuple(row))
        products.append(tuple(grid))
    names = tuple(names) if names else tuple(f"a{i + 1}" for i in range(k))
    return Algebra(k, names, alg.type, tuple(products))


def extension_from_ideal(L: Algebra, ideal, rng: Optional[random.Random] = None) -> ExtensionData:
    """Extension A = ideal -> L -> L/ideal, optionally with a random section."""
    basis = list(ideal.basis)
    A = subalgebra_on(L, basis)
    sigma = Matrix.from_columns(basis, L.dim) if basis else Matrix.zeros(L.dim, 0)
    ext = make_extension(L, A, sigma)
    if rng is not None and A.dim and ext.B.dim and rng.random() < 0.5:
        shift = [tuple(_coef(rng) if rng.random() < 0.5 else ZERO for _ in range(A.dim)) for _ in range(ext.B.dim)]
        T = Matrix.from_columns(
            [vadd(ext.section(i), sigma.apply(s)) for i, s in enumerate(shift)], L.dim
        )
        ext = make_extension(L, A, sigma, T)
    return ext


def random_extension_from_algebra(
    alg_type, dim_a_max: int = 4, dim_b_max: int = 4, density: float = DEFAULT_DENSITY, seed: int = 0
) -> ExtensionData:
    """Random nilpotent L (in a random basis) cut along a random ideal.

    The ideal is a term of the lower series or the ideal generated by a
    random vector, chosen so that 1 <= dim A <= dim_a_max and
    1 <= dim B <= dim_b_max.
    """
    alg_type = AlgebraType(alg_type)
    rng = _rng("ext-from-algebra", alg_type.value, dim_a_max, dim_b_max, density, seed)
    for attempt in range(MAX_ATTEMPTS):
        dim = rng.randint(min(3, dim_a_max + dim_b_max), dim_a_max + dim_b_max)
        L = random_nilpotent_algebra(alg_type, dim, density=min(1.0, 2 * density), seed=rng.randrange(1 << 30))
        L = change_basis(L, _random_unimodular(rng, dim))
        candidates = [t for t in default_series(L).terms[1:]]
        for _ in range(3):
            v = _random_element(rng, dim, 0.5)
            if any(v):
                candidates.append(ideal_closure(L, span([v], dim)))
        rng.shuffle(candidates)
        for ideal in candidates:
            if 1 <= ideal.dim <= dim_a_max and 1 <= dim - ideal.dim <= dim_b_max:
                return extension_from_ideal(L, ideal, rng)
    raise GenerationError("could not find a suitable ideal")


def adjoint_perturbed_pair(ext: ExtensionData, density: float = 0.5, seed: int = 0, max_attempts: int = 24):
    """(A, B, fs1, fs2): the extension's factor system and one whose lift
    differs from it by adjoint operators, each with a valid cocycle.

    Witnesses are drawn independently per slot; if no cocycle exists for the
    drawn lift after ``max_attempts`` tries, a shared witness (a change of
    section) is used, which always admits one.
    """
    rng = _rng("perturb", seed)
    A, B = ext.A, ext.B
    fs1 = extract_factor_system(ext)
    base = cocycle_space(A, B, fs1.lift)
    if base is not None and base.dim and rng.random() < 0.5:
        # same lift, different cocycle
        fs1 = FactorSystem(fs1.lift, base.factor_system([_coef(rng) if rng.random() < 0.5 else 0 for _ in range(base.dim)]).cocycles)
    nslots = len(fs1.lift.slots)
    for attempt in range(max_attempts + 1):
        if attempt < max_attempts:
            ws = [[_random_element(rng, A.dim, density) for _ in range(B.dim)] for _ in range(nslots)]
        else:
            shared = [_random_element(rng, A.dim, density) for _ in range(B.dim)]
            ws = [shared] * nslots
        lift2 = fs1.lift.perturbed(A, ws)
        space = cocycle_space(A, B, lift2)
        if space is None:
            continue
        fs2 = _random_combination(rng, space, density)
        assert lifts_differ_by_adjoints(A, fs1.lift, fs2.lift) is not None
        return A, B, fs1, fs2
    raise GenerationError("no adjoint-perturbed lift admitted a cocycle")
