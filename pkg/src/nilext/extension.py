"""Extensions 0 -> A -> L -> B -> 0 as concrete data.

``sigma`` is a dim L x dim A matrix whose columns are the images of A's basis.
The quotient B is realized on the standard basis vectors of L at the
non-pivot columns of rref(sigma(A)); the default section sends each B basis
vector back to that representative.

Lift slots follow the order (product, side): for one product
``(phi, phi')``; for two ``(phi_⊣, phi_⊢, phi'_⊣, phi'_⊢)``.  ``phi`` is the
left action m -> T(i) * m, ``phi'`` the right action m -> m * T(i).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .algebra import (
    Algebra,
    AlgebraType,
    LinMap,
    algebra_from_json,
    algebra_to_json,
    check_identity,
    is_closed,
    is_derivation,
    mult_ops,
    multiply,
    require_ideal,
)
from .errors import AlgebraFormatError, ExtensionError, InvalidFactorSystem, NotAnIdeal
from .exactla import (
    ONE,
    ZERO,
    LinearSolver,
    Matrix,
    Subspace,
    Vec,
    column_space,
    format_scalar,
    parse_scalar,
    unit_vec,
    vsub,
    zero_vec,
)

SLOTS = {1: ((0, "l"), (0, "r")), 2: ((0, "l"), (1, "l"), (0, "r"), (1, "r"))}
SLOT_KEYS = {1: ("phi", "phi_prime"), 2: ("l", "r", "l_prime", "r_prime")}
COCYCLE_KEYS = {1: ("f",), 2: ("f_left", "f_right")}


@dataclass(frozen=True)
class Lift:
    """Action maps of B on A: ``maps[slot][i]`` for B basis element i."""

    arity: int
    maps: tuple

    def __post_init__(self):
        if len(self.maps) != len(SLOTS[self.arity]):
            raise ValueError(f"arity-{self.arity} lift needs {len(SLOTS[self.arity])} slots")
        if len({len(m) for m in self.maps}) > 1:
            raise ValueError("every slot needs one map per B basis element")

    @property
    def dim_b(self) -> int:
        return len(self.maps[0])

    @property
    def dim_a(self) -> Optional[int]:
        for slot in self.maps:
            for m in slot:
                return m.dim
        return None

    @property
    def slots(self) -> tuple:
        return SLOTS[self.arity]

    def all_maps(self) -> list:
        return [m for slot in self.maps for m in slot]

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.all_maps())

    @classmethod
    def zero(cls, arity: int, dim_a: int, dim_b: int) -> "Lift":
        z = LinMap.zero(dim_a)
        return cls(arity, tuple((z,) * dim_b for _ in SLOTS[arity]))

    def perturbed(self, A: Algebra, witnesses) -> "Lift":
        """Lift with ``maps[s][i] + ad(witnesses[s][i])`` (ad on the slot's side)."""
        out = []
        for (p, side), slot, ws in zip(self.slots, self.maps, witnesses):
            new = []
            for m, w in zip(slot, ws):
                left, right = mult_ops(A, p, w)
                new.append(m + (left if side == "l" else right))
            out.append(tuple(new))
        return Lift(self.arity, tuple(out))


@dataclass(frozen=True)
class FactorSystem:
    """A lift plus cocycle grids ``cocycles[p][i][j]`` (vectors in A)."""

    lift: Lift
    cocycles: tuple

    def __post_init__(self):
        if len(self.cocycles) != self.lift.arity:
            raise ValueError("one cocycle grid per product required")


@dataclass(frozen=True)
class ExtensionData:
    L: Algebra
    A: Algebra
    sigma: Matrix
    B: Algebra
    pi: Matrix
    T: Matrix

    @cached_property
    def _sigma_solver(self) -> LinearSolver:
        return LinearSolver(self.sigma)

    @cached_property
    def image(self) -> Subspace:
        """sigma(A) as a subspace of L."""
        return column_space(self.sigma)

    def sigma_inv(self, v: Sequence) -> Vec:
        x = self._sigma_solver.solve(v)
        if x is None:
            raise ExtensionError("vector does not lie in sigma(A)", [format_scalar(a) for a in v])
        return x

    def section(self, i: int) -> Vec:
        return self.T.column(i)


# --- construction -------------------------------------------------------------


def _pair_witness(alg: Algebra, p: int, i: int, j: int) -> dict:
    return {"product": p, "pair": [alg.basis_names[i], alg.basis_names[j]]}


def make_extension(L: Algebra, A: Algebra, sigma: Matrix, section: Optional[Matrix] = None) -> ExtensionData:
    """Validate an embedding A -> L onto an ideal and build B, pi and a section."""
    if L.type != A.type:
        raise ExtensionError(f"type mismatch: L is {L.type.value}, A is {A.type.value}")
    if (sigma.rows, sigma.cols) != (L.dim, A.dim):
        raise ExtensionError(f"sigma must be {L.dim}x{A.dim}, got {sigma.rows}x{sigma.cols}")
    if sigma.rank() != A.dim:
        raise ExtensionError("sigma is not injective")
    cols = sigma.columns()
    for p in range(L.arity):
        for i, j in itertools.product(range(A.dim), repeat=2):
            if sigma.apply(A.products[p][i][j]) != multiply(L, p, cols[i], cols[j]):
                raise ExtensionError("sigma is not a homomorphism", _pair_witness(A, p, i, j))
    image = column_space(sigma)
    try:
        require_ideal(L, image)
    except NotAnIdeal as exc:
        raise ExtensionError("sigma(A) is not an ideal of L", exc.witness) from None

    complement = [c for c in range(L.dim) if c not in image.pivots]
    pos = {c: j for j, c in enumerate(complement)}
    pi_cols = []
    for k in range(L.dim):
        col = [ZERO] * len(complement)
        if k in pos:
            col[pos[k]] = ONE
        else:
            row = image.basis[image.pivots.index(k)]
            for c, j in pos.items():
                col[j] = -row[c]
        pi_cols.append(col)
    pi = Matrix.from_columns(pi_cols, len(complement))
    products = []
    for t in L.products:
        products.append(tuple(tuple(pi.apply(t[a][b]) for b in complement) for a in complement))
    B = Algebra(len(complement), tuple(L.basis_names[c] for c in complement), L.type, tuple(products))

    if section is None:
        T = Matrix.from_columns([unit_vec(L.dim, c) for c in complement], L.dim)
    else:
        if (section.rows, section.cols) != (L.dim, B.dim):
            raise ExtensionError(f"section must be {L.dim}x{B.dim}, got {section.rows}x{section.cols}")
        if pi @ section != Matrix.identity(B.dim):
            raise ExtensionError("section does not satisfy pi T = id_B")
        T = section
    return ExtensionData(L, A, sigma, B, pi, T)


def _slot_image(ext: ExtensionData, p: int, side: str, i: int, m: Sequence) -> Vec:
    t = ext.section(i)
    prod = multiply(ext.L, p, t, m) if side == "l" else multiply(ext.L, p, m, t)
    return ext.sigma_inv(prod)


def extract_lift(ext: ExtensionData) -> Lift:
    """phi_*(i) m = sigma^-1(T(i) * sigma(m)),  phi'_*(i) m = sigma^-1(sigma(m) * T(i))."""
    cols = ext.sigma.columns()
    maps = []
    for p, side in SLOTS[ext.L.arity]:
        maps.append(
            tuple(
                LinMap.from_images([_slot_image(ext, p, side, i, c) for c in cols]) if cols else LinMap.zero(0)
                for i in range(ext.B.dim)
            )
        )
    lift = Lift(ext.L.arity, tuple(maps))
    if ext.A.type in (AlgebraType.LEIBNIZ, AlgebraType.LIE):
        for i, d in enumerate(lift.maps[0]):
            if not is_derivation(ext.A, d):
                raise ExtensionError(f"extracted phi({ext.B.basis_names[i]}) is not a derivation of A")
    return lift


def extract_factor_system(ext: ExtensionData) -> FactorSystem:
    """Lift plus f_*(i, j) = sigma^-1(T(i) * T(j) - T(i *_B j))."""
    lift = extract_lift(ext)
    grids = []
    for p in range(ext.L.arity):
        grid = []
        for i in range(ext.B.dim):
            row = []
            for j in range(ext.B.dim):
                tt = multiply(ext.L, p, ext.section(i), ext.section(j))
                row.append(ext.sigma_inv(vsub(tt, ext.T.apply(ext.B.products[p][i][j]))))
            grid.append(tuple(row))
        grids.append(tuple(grid))
    return FactorSystem(lift, tuple(grids))


def _fresh_names(a_names: Sequence[str], b_names: Sequence[str]) -> tuple:
    taken = set(a_names)
    out = []
    for name in b_names:
        while name in taken:
            name += "'"
        taken.add(name)
        out.append(name)
    return tuple(a_names) + tuple(out)


def check_factor_system_shape(A: Algebra, B: Algebra, fs: FactorSystem):
    if A.type != B.type:
        raise ValueError(f"type mismatch: A is {A.type.value}, B is {B.type.value}")
    lift = fs.lift
    if lift.arity != A.arity or lift.dim_b != B.dim:
        raise ValueError("lift is not shaped for (A, B)")
    if any(m.dim != A.dim for m in lift.all_maps()):
        raise ValueError("lift maps must act on A")
    for grid in fs.cocycles:
        if len(grid) != B.dim or any(len(row) != B.dim for row in grid):
            raise ValueError("cocycle grid must be dim B x dim B")
        if any(len(v) != A.dim for row in grid for v in row):
            raise ValueError("cocycle values must be vectors in A")


def extension_tensors(A: Algebra, B: Algebra, fs: FactorSystem) -> tuple:
    """Structure tensors of A ⊕ B with (m,i)(n,j) = (mn + phi(i)n + phi'(j)m + f(i,j), ij)."""
    na, nb = A.dim, B.dim
    n = na + nb
    slot_of = {s: k for k, s in enumerate(fs.lift.slots)}
    tensors = []
    for p in range(A.arity):
        left = fs.lift.maps[slot_of[(p, "l")]]
        right = fs.lift.maps[slot_of[(p, "r")]]
        grid = [[zero_vec(n)] * n for _ in range(n)]
        for a, b in itertools.product(range(na), repeat=2):
            grid[a][b] = A.products[p][a][b] + zero_vec(nb)
        for i in range(nb):
            lcols = left[i].matrix.columns()
            rcols = right[i].matrix.columns()
            for a in range(na):
                grid[na + i][a] = lcols[a] + zero_vec(nb)
                grid[a][na + i] = rcols[a] + zero_vec(nb)
            for j in range(nb):
                grid[na + i][na + j] = tuple(fs.cocycles[p][i][j]) + tuple(B.products[p][i][j])
        tensors.append(tuple(tuple(r) for r in grid))
    return tuple(tensors)


def build_extension_algebra(A: Algebra, B: Algebra, fs: FactorSystem) -> tuple:
    """The algebra A ⊕ B defined by ``fs`` and its extension data.

    Raises :class:`InvalidFactorSystem` (with violation certificates) when the
    result breaks the type's identities.
    """
    check_factor_system_shape(A, B, fs)
    n = A.dim + B.dim
    L2 = Algebra(n, _fresh_names(A.basis_names, B.basis_names), A.type, extension_tensors(A, B, fs))
    bad = check_identity(L2)
    if bad:
        raise InvalidFactorSystem(f"factor system does not define a {A.type.value} algebra", bad)
    iota = Matrix.from_columns([unit_vec(n, k) for k in range(A.dim)], n) if A.dim else Matrix.zeros(n, 0)
    T = Matrix.from_columns([unit_vec(n, A.dim + i) for i in range(B.dim)], n) if B.dim else Matrix.zeros(n, 0)
    pi = Matrix.from_rows([unit_vec(n, A.dim + i) for i in range(B.dim)], n)
    return L2, ExtensionData(L2, A, iota, B, pi, T)


def reconstruct(ext: ExtensionData) -> tuple:
    """(L2, ext2, tau) with tau(x) = (sigma^-1(x - T pi x), pi x), fully verified."""
    fs = extract_factor_system(ext)
    L2, ext2 = build_extension_algebra(ext.A, ext.B, fs)
    L = ext.L
    cols = []
    for k in range(L.dim):
        e = unit_vec(L.dim, k)
        b = ext.pi.apply(e)
        a = ext.sigma_inv(vsub(e, ext.T.apply(b)))
        cols.append(a + b)
    tau = Matrix.from_columns(cols, L.dim)
    if tau.rank() != L.dim:
        raise ExtensionError("reconstruction map is not bijective")
    for p in range(L.arity):
        for i, j in itertools.product(range(L.dim), repeat=2):
            lhs = tau.apply(L.products[p][i][j])
            rhs = multiply(L2, p, cols[i], cols[j])
            if lhs != rhs:
                raise ExtensionError("reconstruction map is not multiplicative", _pair_witness(L, p, i, j))
    if tau @ ext.sigma != ext2.sigma:
        raise ExtensionError("reconstruction map does not satisfy tau sigma = iota")
    return L2, ext2, tau


def reconstruction_iso(ext: ExtensionData) -> Matrix:
    return reconstruct(ext)[2]


def _ad_solvers(A: Algebra, arity: int) -> list:
    solvers = []
    for p, side in SLOTS[arity]:
        cols = []
        for k in range(A.dim):
            left, right = mult_ops(A, p, A.basis_vector(k))
            cols.append((left if side == "l" else right).matrix.flat())
        solvers.append(LinearSolver(Matrix.from_columns(cols, A.dim * A.dim)))
    return solvers


def lifts_differ_by_adjoints(A: Algebra, lift1: Lift, lift2: Lift) -> Optional[tuple]:
    """Witnesses m with lift1(i) = lift2(i) + ad(m), slot by slot, or None.

    ``ad`` is the left multiplication operator for ``phi`` slots and the right
    one for ``phi'`` slots.  The result is indexed ``[slot][i]``.
    """
    if lift1.arity != lift2.arity or lift1.arity != A.arity:
        raise ValueError("lifts must have the algebra's arity")
    if lift1.dim_b != lift2.dim_b:
        raise ValueError("lifts are for B of different dimensions")
    if any(m.dim != A.dim for m in lift1.all_maps() + lift2.all_maps()):
        raise ValueError("lift maps must act on A")
    if A.dim == 0:
        return tuple(tuple(() for _ in range(lift1.dim_b)) for _ in lift1.slots)
    out = []
    for solver, s1, s2 in zip(_ad_solvers(A, lift1.arity), lift1.maps, lift2.maps):
        ws = []
        for m1, m2 in zip(s1, s2):
            w = solver.solve((m1 - m2).matrix.flat())
            if w is None:
                return None
            ws.append(w)
        out.append(tuple(ws))
    return tuple(out)


def is_B_invariant(A: Algebra, lift: Lift, N: Subspace) -> bool:
    """True iff the ideal N of A is mapped into itself by every lift map."""
    if N.ambient_dim != A.dim:
        raise ValueError("N must be a subspace of A")
    require_ideal(A, N)
    return is_closed(A, N, lift.all_maps()) if N.basis else True


# --- JSON ---------------------------------------------------------------------


def _matrix(data, rows, cols, where):
    try:
        return Matrix.from_json(data, rows, cols)
    except ValueError as exc:
        raise AlgebraFormatError(str(exc), where) from None


def _vector(data, n, where):
    if not isinstance(data, list) or len(data) != n:
        raise AlgebraFormatError(f"expected a list of {n} scalars", where)
    try:
        return tuple(parse_scalar(a) for a in data)
    except ValueError as exc:
        raise AlgebraFormatError(str(exc), where) from None


def extension_to_json(ext: ExtensionData, include_section: bool = True) -> dict:
    out = {"L": algebra_to_json(ext.L), "A": algebra_to_json(ext.A), "sigma": ext.sigma.to_json()}
    if include_section:
        out["section"] = ext.T.to_json()
    return out


def extension_from_json(data) -> ExtensionData:
    if not isinstance(data, dict):
        raise AlgebraFormatError("extension must be a JSON object")
    for key in ("L", "A", "sigma"):
        if key not in data:
            raise AlgebraFormatError(f"missing key {key!r}", "extension")
    L = algebra_from_json(data["L"], location="L")
    A = algebra_from_json(data["A"], location="A")
    sigma = _matrix(data["sigma"], L.dim, A.dim, "sigma")
    section = None
    if data.get("section") is not None:
        section = _matrix(data["section"], L.dim, L.dim - A.dim, "section")
    return make_extension(L, A, sigma, section)


def lift_to_json(lift: Lift) -> dict:
    return {key: [m.matrix.to_json() for m in slot] for key, slot in zip(SLOT_KEYS[lift.arity], lift.maps)}


def lift_from_json(data, A: Algebra, B: Algebra, where: str = "lift") -> Lift:
    if not isinstance(data, dict):
        raise AlgebraFormatError("lift must be an object", where)
    maps = []
    for key in SLOT_KEYS[A.arity]:
        mats = data.get(key)
        if not isinstance(mats, list) or len(mats) != B.dim:
            raise AlgebraFormatError(f"expected {B.dim} matrices", f"{where}.{key}")
        maps.append(tuple(LinMap(_matrix(m, A.dim, A.dim, f"{where}.{key}[{i}]")) for i, m in enumerate(mats)))
    return Lift(A.arity, tuple(maps))


def factor_system_to_json(A: Algebra, B: Algebra, fs: FactorSystem) -> dict:
    out = {"A": algebra_to_json(A), "B": algebra_to_json(B), "lift": lift_to_json(fs.lift)}
    for key, grid in zip(COCYCLE_KEYS[A.arity], fs.cocycles):
        out[key] = [[[format_scalar(a) for a in v] for v in row] for row in grid]
    return out


def factor_system_from_json(data) -> tuple:
    """(A, B, FactorSystem) from the factor-system file schema."""
    if not isinstance(data, dict):
        raise AlgebraFormatError("factor system must be a JSON object")
    for key in ("A", "B", "lift"):
        if key not in data:
            raise AlgebraFormatError(f"missing key {key!r}", "factor system")
    A = algebra_from_json(data["A"], location="A")
    B = algebra_from_json(data["B"], location="B")
    if A.type != B.type:
        raise AlgebraFormatError("A and B must have the same type", "factor system")
    lift = lift_from_json(data["lift"], A, B)
    grids = []
    for key in COCYCLE_KEYS[A.arity]:
        raw = data.get(key)
        if raw is None:
            grids.append(tuple(tuple(zero_vec(A.dim) for _ in range(B.dim)) for _ in range(B.dim)))
            continue
        if not isinstance(raw, list) or len(raw) != B.dim or any(not isinstance(r, list) or len(r) != B.dim for r in raw):
            raise AlgebraFormatError(f"expected a {B.dim}x{B.dim} grid of vectors", key)
        grids.append(
            tuple(tuple(_vector(v, A.dim, f"{key}[{i}][{j}]") for j, v in enumerate(r)) for i, r in enumerate(raw))
        )
    return A, B, FactorSystem(lift, tuple(grids))
