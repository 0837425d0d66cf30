"""Finite-dimensional algebras given by structure constants.

An :class:`Algebra` carries one product (Lie, Leibniz, associative,
commutative, Zinbiel) or two (diassociative: ``⊣``/``⊢``; dendriform:
``<``/``>``), stored as dense tensors ``products[p][i][j]`` = coordinates of
``e_i * e_j``.  Defining identities are trilinear, so checking them on basis
triples is complete.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Mapping, NamedTuple, Optional, Sequence

from .errors import AlgebraFormatError, ArityError, InvalidAlgebra, NotAnIdeal
from .exactla import (
    ZERO,
    DimensionError,
    Matrix,
    Subspace,
    Vec,
    format_scalar,
    full_space,
    parse_scalar,
    span,
    subspace_sum,
    zero_subspace,
)


class AlgebraType(str, Enum):
    LIE = "lie"
    LEIBNIZ = "leibniz"
    ASSOCIATIVE = "associative"
    COMMUTATIVE = "commutative"
    ZINBIEL = "zinbiel"
    DIASSOCIATIVE = "diassociative"
    DENDRIFORM = "dendriform"

    @property
    def arity(self) -> int:
        return 2 if self in (AlgebraType.DIASSOCIATIVE, AlgebraType.DENDRIFORM) else 1

    @property
    def product_keys(self) -> tuple:
        return ("left", "right") if self.arity == 2 else ("mul",)


# --- identities as data -----------------------------------------------------
# A trilinear term is (coef, outer, inner, assoc, order):
#   assoc "L": (a inner b) outer c      assoc "R": a outer (b inner c)
# where (a, b, c) is the argument triple permuted by ``order``.


class Term(NamedTuple):
    coef: int
    outer: int
    inner: int
    assoc: str
    order: tuple


class TrilinearIdentity(NamedTuple):
    name: str
    terms: tuple


class BilinearIdentity(NamedTuple):
    """Sum of coef * (a_order[0] * a_order[1]); ``diagonal`` means x = y only."""

    name: str
    terms: tuple  # (coef, product, order)
    diagonal: bool = False


_XYZ = (0, 1, 2)

LEIBNIZ_ID = TrilinearIdentity(
    "leibniz: x(yz) = (xy)z + y(xz)",
    (Term(1, 0, 0, "R", _XYZ), Term(-1, 0, 0, "L", _XYZ), Term(-1, 0, 0, "R", (1, 0, 2))),
)
ZINBIEL_ID = TrilinearIdentity(
    "zinbiel: (xy)z = x(yz) + x(zy)",
    (Term(1, 0, 0, "L", _XYZ), Term(-1, 0, 0, "R", _XYZ), Term(-1, 0, 0, "R", (0, 2, 1))),
)


def _assoc(name, p):
    return TrilinearIdentity(name, (Term(1, p, p, "L", _XYZ), Term(-1, p, p, "R", _XYZ)))


ASSOC_ID = _assoc("associative: (xy)z = x(yz)", 0)
DIAS_IDS = (
    _assoc("associativity of ⊣", 0),
    _assoc("associativity of ⊢", 1),
    TrilinearIdentity("D1: x⊣(y⊣z) = x⊣(y⊢z)", (Term(1, 0, 0, "R", _XYZ), Term(-1, 0, 1, "R", _XYZ))),
    TrilinearIdentity("D2: (x⊢y)⊣z = x⊢(y⊣z)", (Term(1, 0, 1, "L", _XYZ), Term(-1, 1, 0, "R", _XYZ))),
    TrilinearIdentity("D3: (x⊣y)⊢z = (x⊢y)⊢z", (Term(1, 1, 0, "L", _XYZ), Term(-1, 1, 1, "L", _XYZ))),
)
DEND_IDS = (
    TrilinearIdentity(
        "E1: (x<y)<z = x<(y<z) + x<(y>z)",
        (Term(1, 0, 0, "L", _XYZ), Term(-1, 0, 0, "R", _XYZ), Term(-1, 0, 1, "R", _XYZ)),
    ),
    TrilinearIdentity("E2: (x>y)<z = x>(y<z)", (Term(1, 0, 1, "L", _XYZ), Term(-1, 1, 0, "R", _XYZ))),
    TrilinearIdentity(
        "E3: (x<y)>z + (x>y)>z = x>(y>z)",
        (Term(1, 1, 0, "L", _XYZ), Term(1, 1, 1, "L", _XYZ), Term(-1, 1, 1, "R", _XYZ)),
    ),
)
SYMMETRIC_ID = BilinearIdentity("commutativity: xy = yx", ((1, 0, (0, 1)), (-1, 0, (1, 0))))
ANTISYMMETRIC_ID = BilinearIdentity("antisymmetry: xy = -yx", ((1, 0, (0, 1)), (1, 0, (1, 0))))
ALTERNATING_ID = BilinearIdentity("alternating: xx = 0", ((1, 0, (0, 1)),), diagonal=True)

IDENTITIES = {
    AlgebraType.LEIBNIZ: ((LEIBNIZ_ID,), ()),
    AlgebraType.LIE: ((LEIBNIZ_ID,), (ALTERNATING_ID, ANTISYMMETRIC_ID)),
    AlgebraType.ASSOCIATIVE: ((ASSOC_ID,), ()),
    AlgebraType.COMMUTATIVE: ((ASSOC_ID,), (SYMMETRIC_ID,)),
    AlgebraType.ZINBIEL: ((ZINBIEL_ID,), ()),
    AlgebraType.DIASSOCIATIVE: (DIAS_IDS, ()),
    AlgebraType.DENDRIFORM: (DEND_IDS, ()),
}


class Violation(NamedTuple):
    identity: str
    basis: tuple  # names of the basis elements the identity was evaluated at
    lhs: Vec
    rhs: Vec

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "basis": list(self.basis),
            "lhs": [format_scalar(a) for a in self.lhs],
            "rhs": [format_scalar(a) for a in self.rhs],
        }


# --- the algebra ------------------------------------------------------------


@dataclass(frozen=True)
class Algebra:
    dim: int
    basis_names: tuple
    type: AlgebraType
    products: tuple  # products[p][i][j] -> Vec

    def __post_init__(self):
        if len(self.basis_names) != self.dim:
            raise DimensionError("one name per basis vector required")
        if len(self.products) != self.type.arity:
            raise ArityError(f"{self.type.value} algebras carry {self.type.arity} product(s), got {len(self.products)}")
        for t in self.products:
            if len(t) != self.dim or any(len(row) != self.dim for row in t):
                raise DimensionError("structure tensor must be dim x dim")
            if any(len(v) != self.dim for row in t for v in row):
                raise DimensionError("every product vector must have length dim")

    @property
    def arity(self) -> int:
        return self.type.arity

    @cached_property
    def sparse(self) -> tuple:
        """sparse[p][i][j] = ((k, c), ...) over nonzero coordinates of e_i * e_j."""
        return tuple(
            tuple(tuple(tuple((k, c) for k, c in enumerate(v) if c) for v in row) for row in t)
            for t in self.products
        )

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def element(self, coeffs: Mapping[str, object]) -> Vec:
        """Vector from a ``{name: scalar}`` mapping."""
        v = [ZERO] * self.dim
        for name, c in coeffs.items():
            v[self.index(name)] += Fraction(c)
        return tuple(v)

    def basis_vector(self, i: int) -> Vec:
        return tuple(Fraction(1) if k == i else ZERO for k in range(self.dim))

    def is_abelian(self) -> bool:
        return not any(any(v) for t in self.products for row in t for v in row)

    def with_type(self, new_type: AlgebraType) -> "Algebra":
        return Algebra(self.dim, self.basis_names, AlgebraType(new_type), self.products)

    def describe(self) -> str:
        lines = [f"{self.type.value} algebra of dimension {self.dim}: basis {', '.join(self.basis_names)}"]
        symbols = ("⊣", "⊢") if self.type is AlgebraType.DIASSOCIATIVE else ("<", ">") if self.arity == 2 else ("·",)
        for p, t in enumerate(self.products):
            for i, j in itertools.product(range(self.dim), repeat=2):
                if any(t[i][j]):
                    lines.append(
                        f"  {self.basis_names[i]} {symbols[p]} {self.basis_names[j]} = {format_vector(self, t[i][j])}"
                    )
        return "\n".join(lines)


def format_vector(alg: Algebra, v: Sequence) -> str:
    parts = []
    for name, c in zip(alg.basis_names, v):
        if not c:
            continue
        if c == 1:
            parts.append(name)
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{format_scalar(c)}*{name}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def zero_tensor(dim: int) -> tuple:
    z = (ZERO,) * dim
    return tuple(tuple(z for _ in range(dim)) for _ in range(dim))


def make_algebra(
    alg_type,
    basis: Sequence[str],
    tables: Optional[Mapping[str, Mapping]] = None,
    validate: bool = True,
) -> Algebra:
    """Build an algebra from readable product tables.

    ``tables`` maps a product key (``"mul"``, or ``"left"``/``"right"``) to
    ``{(l, r): {name: scalar}}``; omitted pairs are zero.

    >>> L = make_algebra("leibniz", "xyzw", {"mul": {("w", "x"): {"y": 1}}})
    >>> multiply(L, 0, L.element({"w": 1}), L.element({"x": 1})) == L.element({"y": 1})
    True
    """
    alg_type = AlgebraType(alg_type)
    basis = tuple(basis)
    if len(set(basis)) != len(basis):
        raise AlgebraFormatError(f"duplicate basis names in {basis}")
    n = len(basis)
    pos = {name: k for k, name in enumerate(basis)}
    tables = tables or {}
    unknown = set(tables) - set(alg_type.product_keys)
    if unknown:
        raise AlgebraFormatError(f"unexpected product keys {sorted(unknown)} for {alg_type.value}")
    products = []
    for key in alg_type.product_keys:
        grid = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (l, r), val in (tables.get(key) or {}).items():
            for name in (l, r, *val):
                if name not in pos:
                    raise AlgebraFormatError(f"unknown basis name {name!r}", key)
            cell = grid[pos[l]][pos[r]]
            for name, c in val.items():
                cell[pos[name]] += Fraction(c)
        products.append(tuple(tuple(tuple(v) for v in row) for row in grid))
    alg = Algebra(n, basis, alg_type, tuple(products))
    if validate:
        bad = check_identity(alg)
        if bad:
            raise InvalidAlgebra(f"not a {alg_type.value} algebra", bad)
    return alg


def abelian_algebra(alg_type, basis: Sequence[str]) -> Algebra:
    alg_type = AlgebraType(alg_type)
    n = len(basis)
    return Algebra(n, tuple(basis), alg_type, (zero_tensor(n),) * alg_type.arity)


# --- products -----------------------------------------------------------------


def _check_which(alg: Algebra, which: int):
    if not 0 <= which < alg.arity:
        raise ArityError(f"product index {which} out of range for a {alg.type.value} algebra")


def multiply(alg: Algebra, which: int, x: Sequence, y: Sequence) -> Vec:
    """Bilinear product ``x * y`` for product number ``which``."""
    _check_which(alg, which)
    if len(x) != alg.dim or len(y) != alg.dim:
        raise DimensionError(f"operands must have length {alg.dim}")
    tensor = alg.sparse[which]
    acc = [ZERO] * alg.dim
    ynz = [(j, b) for j, b in enumerate(y) if b]
    for i, a in enumerate(x):
        if not a:
            continue
        row = tensor[i]
        for j, b in ynz:
            cell = row[j]
            if cell:
                ab = a * b
                for k, c in cell:
                    acc[k] += ab * c
    return tuple(acc)


def _sparse_mul(tensor, x: dict, y: dict) -> dict:
    """Product of sparse ``{index: coef}`` vectors."""
    acc: dict = {}
    for i, a in x.items():
        row = tensor[i]
        for j, b in y.items():
            cell = row[j]
            if cell:
                ab = a * b
                for k, c in cell:
                    acc[k] = acc.get(k, ZERO) + ab * c
    return acc


def _basis_term(alg: Algebra, term: Term, args: tuple) -> dict:
    a, b, c = (args[k] for k in term.order)
    sp = alg.sparse
    if term.assoc == "L":
        inner = dict(sp[term.inner][a][b])
        return _sparse_mul(sp[term.outer], inner, {c: Fraction(1)}) if inner else {}
    inner = dict(sp[term.inner][b][c])
    return _sparse_mul(sp[term.outer], {a: Fraction(1)}, inner) if inner else {}


def _accumulate(acc: dict, part: dict, coef: int):
    for k, v in part.items():
        acc[k] = acc.get(k, ZERO) + coef * v


def _dense(d: dict, n: int) -> Vec:
    return tuple(d.get(k, ZERO) for k in range(n))


def check_identity(alg: Algebra) -> list:
    """All violations of the type's defining identities on basis tuples.

    Returns an empty list iff the algebra is of its declared type.  Each
    violation names the identity, the basis elements, and both sides.
    """
    trilinear, bilinear = IDENTITIES[alg.type]
    n = alg.dim
    names = alg.basis_names
    out = []
    for ident in bilinear:
        pairs = ((i, i) for i in range(n)) if ident.diagonal else itertools.product(range(n), repeat=2)
        for args in pairs:
            lhs: dict = {}
            rhs: dict = {}
            for coef, p, order in ident.terms:
                cell = alg.sparse[p][args[order[0]]][args[order[1]]]
                _accumulate(lhs if coef > 0 else rhs, dict(cell), abs(coef))
            if any(lhs.get(k, ZERO) != rhs.get(k, ZERO) for k in set(lhs) | set(rhs)):
                label = (names[args[0]],) if ident.diagonal else (names[args[0]], names[args[1]])
                out.append(Violation(ident.name, label, _dense(lhs, n), _dense(rhs, n)))
    for ident in trilinear:
        for args in itertools.product(range(n), repeat=3):
            lhs = {}
            rhs = {}
            for term in ident.terms:
                part = _basis_term(alg, term, args)
                if part:
                    _accumulate(lhs if term.coef > 0 else rhs, part, abs(term.coef))
            if any(lhs.get(k, ZERO) != rhs.get(k, ZERO) for k in set(lhs) | set(rhs)):
                out.append(
                    Violation(ident.name, tuple(names[a] for a in args), _dense(lhs, n), _dense(rhs, n))
                )
    return out


def subspace_product(alg: Algebra, which: int, u: Subspace, v: Subspace) -> Subspace:
    """Span of all products ``a * b`` with a in u, b in v."""
    _check_which(alg, which)
    if u.ambient_dim != alg.dim or v.ambient_dim != alg.dim:
        raise DimensionError("subspaces must live in the algebra")
    if u.is_zero() or v.is_zero():
        return zero_subspace(alg.dim)
    return span([multiply(alg, which, a, b) for a in u.basis for b in v.basis], alg.dim)


def _require_arity(alg: Algebra, arity: int, what: str):
    if alg.arity != arity:
        raise ArityError(f"{what} needs {arity} product(s); {alg.type.value} has {alg.arity}")


def lozenge(alg: Algebra, u: Subspace, v: Subspace) -> Subspace:
    """``u ◊ v = u ⊣ v + u ⊢ v`` (``<`` and ``>`` for dendriform)."""
    _require_arity(alg, 2, "lozenge")
    return subspace_sum(subspace_product(alg, 0, u, v), subspace_product(alg, 1, u, v))


def total_product(alg: Algebra, u: Subspace, v: Subspace) -> Subspace:
    """Sum of ``u * v`` over all products: the plain product or the lozenge."""
    if alg.arity == 1:
        return subspace_product(alg, 0, u, v)
    return lozenge(alg, u, v)


# --- series -----------------------------------------------------------------


@dataclass(frozen=True)
class Chain:
    """Descending chain of subspaces, computed until two consecutive terms agree.

    ``terms`` holds C_0, ..., C_m with C_{m+1} = C_m; C_k = C_m for k > m.
    """

    terms: tuple
    stabilized: bool = True

    def __getitem__(self, k: int) -> Subspace:
        if k < 0:
            raise IndexError(k)
        return self.terms[min(k, len(self.terms) - 1)]

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def dims(self) -> list:
        return [t.dim for t in self.terms]

    @property
    def limit(self) -> Subspace:
        return self.terms[-1]


def iterate_chain(start: Subspace, step, max_steps: Optional[int] = None) -> Chain:
    """Chain start, step(start), ... stopped at the first repeated term."""
    terms = [start]
    limit = max_steps if max_steps is not None else start.ambient_dim + 2
    for _ in range(limit):
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            return Chain(tuple(terms), True)
        terms.append(nxt)
    return Chain(tuple(terms), False)


def lcs(alg: Algebra) -> Chain:
    """Lower central series C_0 = L, C_{k+1} = L C_k."""
    _require_arity(alg, 1, "lcs")
    full = full_space(alg.dim)
    return iterate_chain(full, lambda c: subspace_product(alg, 0, full, c))


SERIES_KINDS = ("left", "right", "general")


def dia_series(alg: Algebra, kind: str = "general") -> Chain:
    """The three dialgebra series: D ◊ D^{k}, D^{k} ◊ D, or the convolution sum."""
    _require_arity(alg, 2, "dia_series")
    full = full_space(alg.dim)
    if kind == "left":
        return iterate_chain(full, lambda c: lozenge(alg, full, c))
    if kind == "right":
        return iterate_chain(full, lambda c: lozenge(alg, c, full))
    if kind != "general":
        raise ValueError(f"unknown series kind {kind!r}; expected one of {SERIES_KINDS}")
    terms = [full]
    for _ in range(alg.dim + 2):
        k = len(terms) - 1
        nxt = zero_subspace(alg.dim)
        for i in range(k + 1):
            nxt = subspace_sum(nxt, lozenge(alg, terms[i], terms[k - i]))
        if nxt == terms[-1]:
            return Chain(tuple(terms), True)
        terms.append(nxt)
    return Chain(tuple(terms), False)


def default_series(alg: Algebra) -> Chain:
    """lcs for one product, the general dialgebra series for two."""
    return lcs(alg) if alg.arity == 1 else dia_series(alg, "general")


def nilpotency_index(chain: Chain) -> Optional[int]:
    """Smallest k with C_k = 0, or None when the chain stalls at a nonzero term."""
    for k, t in enumerate(chain.terms):
        if t.is_zero():
            return k
    return None


def nilpotency_class(alg: Algebra) -> Optional[int]:
    return nilpotency_index(default_series(alg))


def paper_label(index: Optional[int]) -> Optional[int]:
    """Class as numbered in displays that start the series at LL (index + 1)."""
    return None if index is None else index + 1


# --- linear maps --------------------------------------------------------------


@dataclass(frozen=True)
class LinMap:
    """Linear endomorphism of an algebra's space, as a matrix on coordinate columns."""

    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise DimensionError("linear endomorphism must be square")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __call__(self, v: Sequence) -> Vec:
        return self.matrix.apply(v)

    def __add__(self, other: "LinMap") -> "LinMap":
        return LinMap(self.matrix + other.matrix)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return LinMap(self.matrix - other.matrix)

    def __neg__(self) -> "LinMap":
        return LinMap(-self.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    @classmethod
    def zero(cls, n: int) -> "LinMap":
        return cls(Matrix.zeros(n, n))

    @classmethod
    def from_images(cls, images: Sequence[Sequence]) -> "LinMap":
        """Map sending basis vector j to ``images[j]``."""
        return cls(Matrix.from_columns(images, len(images)))


def mult_ops(alg: Algebra, which: int, a: Sequence) -> tuple:
    """(left, right) multiplication maps ``m -> a*m`` and ``m -> m*a``."""
    _check_which(alg, which)
    basis = [alg.basis_vector(j) for j in range(alg.dim)]
    left = LinMap.from_images([multiply(alg, which, a, e) for e in basis])
    right = LinMap.from_images([multiply(alg, which, e, a) for e in basis])
    return left, right


def is_derivation(alg: Algebra, d: LinMap, which: int = 0) -> bool:
    """True iff d(mn) = d(m)n + m d(n) on all basis pairs."""
    _check_which(alg, which)
    if d.dim != alg.dim:
        raise DimensionError("map does not act on this algebra")
    images = d.matrix.columns()
    for i, j in itertools.product(range(alg.dim), repeat=2):
        lhs = d(alg.products[which][i][j])
        rhs = tuple(
            a + b
            for a, b in zip(
                multiply(alg, which, images[i], alg.basis_vector(j)),
                multiply(alg, which, alg.basis_vector(i), images[j]),
            )
        )
        if lhs != rhs:
            return False
    return True


def _one_step(alg: Algebra, u: Subspace, maps: Sequence[LinMap]) -> list:
    vecs = list(u.basis)
    for b in u.basis:
        nz = [(j, c) for j, c in enumerate(b) if c]
        for t in alg.sparse:
            for e in range(alg.dim):
                left = [ZERO] * alg.dim
                right = [ZERO] * alg.dim
                for j, c in nz:
                    for k, v in t[e][j]:
                        left[k] += c * v
                    for k, v in t[j][e]:
                        right[k] += c * v
                vecs.append(left)
                vecs.append(right)
        for f in maps:
            vecs.append(f(b))
    return vecs


def ideal_closure(alg: Algebra, seed: Subspace, extra_maps: Sequence[LinMap] = ()) -> Subspace:
    """Smallest subspace containing ``seed`` that is a two-sided ideal for every
    product and is mapped into itself by every map in ``extra_maps``."""
    if seed.ambient_dim != alg.dim:
        raise DimensionError("seed must live in the algebra")
    cur = seed
    while True:
        nxt = span(_one_step(alg, cur, extra_maps), alg.dim)
        if nxt == cur:
            return cur
        cur = nxt


def is_closed(alg: Algebra, u: Subspace, maps: Sequence[LinMap] = ()) -> bool:
    """True iff ``u`` is a two-sided ideal mapped into itself by ``maps``."""
    return all(u.contains(v) for v in _one_step(alg, u, maps))


def is_ideal(alg: Algebra, u: Subspace) -> bool:
    return is_closed(alg, u)


def require_ideal(alg: Algebra, u: Subspace):
    for b in u.basis:
        for p in range(alg.arity):
            for e in range(alg.dim):
                ev = alg.basis_vector(e)
                for side, prod in (("left", multiply(alg, p, ev, b)), ("right", multiply(alg, p, b, ev))):
                    if not u.contains(prod):
                        raise NotAnIdeal(
                            f"subspace is not an ideal: {alg.basis_names[e]} ({side}, product {p}) "
                            f"sends a basis vector outside it",
                            {"element": alg.basis_names[e], "side": side, "product": p,
                             "vector": [format_scalar(a) for a in b]},
                        )


# --- JSON ---------------------------------------------------------------------


def algebra_to_json(alg: Algebra) -> dict:
    products = {}
    for key, t in zip(alg.type.product_keys, alg.products):
        entries = []
        for i, j in itertools.product(range(alg.dim), repeat=2):
            v = t[i][j]
            if any(v):
                entries.append(
                    {
                        "l": alg.basis_names[i],
                        "r": alg.basis_names[j],
                        "val": {alg.basis_names[k]: format_scalar(c) for k, c in enumerate(v) if c},
                    }
                )
        products[key] = entries
    return {"type": alg.type.value, "basis": list(alg.basis_names), "products": products}


def algebra_from_json(data, validate: bool = True, location: str = "algebra") -> Algebra:
    if not isinstance(data, dict):
        raise AlgebraFormatError("algebra must be a JSON object", location)
    try:
        alg_type = AlgebraType(data.get("type"))
    except ValueError:
        raise AlgebraFormatError(f"unknown algebra type {data.get('type')!r}", f"{location}.type") from None
    basis = data.get("basis")
    if not isinstance(basis, list) or not all(isinstance(b, str) and b for b in basis):
        raise AlgebraFormatError("basis must be a list of non-empty names", f"{location}.basis")
    products = data.get("products", {})
    if not isinstance(products, dict):
        raise AlgebraFormatError("products must be an object", f"{location}.products")
    names = set(basis)
    tables = {}
    for key, entries in products.items():
        where = f"{location}.products.{key}"
        if key not in alg_type.product_keys:
            raise AlgebraFormatError(
                f"product key {key!r} not valid for {alg_type.value} (expected {list(alg_type.product_keys)})", where
            )
        if not isinstance(entries, list):
            raise AlgebraFormatError("product table must be a list", where)
        table = {}
        for n, entry in enumerate(entries):
            at = f"{where}[{n}]"
            if not isinstance(entry, dict) or not {"l", "r", "val"} <= set(entry):
                raise AlgebraFormatError("entry needs keys l, r, val", at)
            l, r, val = entry["l"], entry["r"], entry["val"]
            for name in (l, r):
                if name not in names:
                    raise AlgebraFormatError(f"unknown basis name {name!r}", at)
            if (l, r) in table:
                raise AlgebraFormatError(f"duplicate entry for ({l}, {r})", at)
            if not isinstance(val, dict):
                raise AlgebraFormatError("val must map basis names to scalars", at)
            parsed = {}
            for name, c in val.items():
                if name not in names:
                    raise AlgebraFormatError(f"unknown basis name {name!r}", f"{at}.val")
                try:
                    parsed[name] = parse_scalar(c)
                except ValueError as exc:
                    raise AlgebraFormatError(str(exc), f"{at}.val.{name}") from None
            table[(l, r)] = parsed
        tables[key] = table
    try:
        return make_algebra(alg_type, basis, tables, validate=validate)
    except AlgebraFormatError as exc:
        if not exc.location:
            exc.location = location
        raise
