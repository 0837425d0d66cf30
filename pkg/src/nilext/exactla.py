"""Exact rational linear algebra: scalars, matrices, canonical subspaces.

Everything here is over ``fractions.Fraction``.  Row reduction is delegated
to the integer kernels in :mod:`nilext.kernels`; rows are scaled to integers
on the way in and divided by their pivots on the way out.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from . import kernels

Scalar = Fraction
Vec = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


def parse_scalar(text) -> Fraction:
    """Parse the ``"p/q"`` / ``"p"`` scalar grammar (ints are accepted too)."""
    if isinstance(text, bool):
        raise ValueError(f"not a scalar: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"scalar must be a string like '-3/2', got {text!r}")
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"malformed scalar {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in scalar {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_scalar(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero_vec(v: Sequence) -> bool:
    return not any(v)


def vadd(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vec:
    return tuple(c * a for a in v)


def _int_row(row: Sequence[Fraction]) -> list:
    den = 1
    for a in row:
        if a:
            den = lcm(den, Fraction(a).denominator)
    if den == 1:
        return [int(a) for a in row]
    return [int(a * den) for a in row]


def _from_int_row(row: list, pivot: int) -> Vec:
    p = row[pivot]
    return tuple(Fraction(a, p) if a else ZERO for a in row)


def _reduce(rows: Sequence[Sequence], ncols: int):
    """RREF of ``rows`` over Q: (nonzero rows as Fractions, pivots, int rows)."""
    int_rows, pivots = kernels.rref_int([_int_row(r) for r in rows], ncols)
    return tuple(_from_int_row(r, p) for r, p in zip(int_rows, pivots)), tuple(pivots), int_rows


@dataclass(frozen=True)
class Matrix:
    """Dense row-major rational matrix."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        entries = tuple(tuple(Fraction(a) for a in r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls(nrows, len(columns), tuple(tuple(Fraction(c[i]) for c in columns) for i in range(nrows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(unit_vec(n, i) for i in range(n)))

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.columns()))

    def apply(self, v: Sequence) -> Vec:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        nz = [(j, a) for j, a in enumerate(v) if a]
        return tuple(sum((r[j] * a for j, a in nz), ZERO) for r in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.columns()
        return Matrix.from_columns([self.apply(c) for c in cols], self.rows) if cols else Matrix.zeros(self.rows, 0)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vadd(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vsub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(vscale(-1, r) for r in self.entries))

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(vscale(c, r) for r in self.entries))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def flat(self) -> Vec:
        """Row-major entries as one vector."""
        return tuple(a for r in self.entries for a in r)

    def rank(self) -> int:
        return len(_reduce(self.entries, self.cols)[1])

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix shapes differ")

    def to_json(self) -> list:
        return [[format_scalar(a) for a in r] for r in self.entries]

    @classmethod
    def from_json(cls, data, rows: Optional[int] = None, cols: Optional[int] = None) -> "Matrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix must be a list of rows")
        m = cls.from_rows([[parse_scalar(a) for a in r] for r in data], cols if not data else None)
        if rows is not None and m.rows != rows or cols is not None and m.cols != cols:
            raise DimensionError(f"expected a {rows}x{cols} matrix, got {m.rows}x{m.cols}")
        return m


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form; zero rows are kept at the bottom."""
    rows, _, _ = _reduce(m.entries, m.cols)
    pad = tuple((ZERO,) * m.cols for _ in range(m.rows - len(rows)))
    return Matrix(m.rows, m.cols, rows + pad)


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n stored by its RREF basis (zero rows dropped).

    Because the basis is canonical, ``==`` is subspace equality.
    """

    ambient_dim: int
    basis: tuple
    pivots: tuple = field(compare=False, repr=False)
    _int_rows: list = field(compare=False, repr=False, hash=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def basis_matrix(self) -> Matrix:
        return Matrix(len(self.basis), self.ambient_dim, self.basis)

    def contains(self, w: Sequence) -> bool:
        if len(w) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(w)} in ambient dimension {self.ambient_dim}")
        if not any(w):
            return True
        if not self.basis:
            return False
        return not any(kernels.reduce_int(self._int_rows, list(self.pivots), _int_row(w)))

    def __le__(self, other: "Subspace") -> bool:
        return subspace_leq(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    rows = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if any(v):
            rows.append(v)
    if not rows:
        return Subspace(ambient_dim, (), (), [])
    basis, pivots, int_rows = _reduce(rows, ambient_dim)
    return Subspace(ambient_dim, basis, pivots, int_rows)


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, (), (), [])


def full_space(n: int) -> Subspace:
    return span([unit_vec(n, i) for i in range(n)], n)


def _check_dims(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_dims(u, v)
    if not v.basis:
        return u
    if not u.basis:
        return v
    return span(u.basis + v.basis, u.ambient_dim)


def subspace_contains(u: Subspace, w: Sequence) -> bool:
    return u.contains(w)


def subspace_leq(u: Subspace, v: Subspace) -> bool:
    _check_dims(u, v)
    if u.dim > v.dim:
        return False
    return all(v.contains(b) for b in u.basis)


def subspace_eq(u: Subspace, v: Subspace) -> bool:
    _check_dims(u, v)
    return u.basis == v.basis


def image(m: Matrix, u: Subspace) -> Subspace:
    """Image of a subspace under ``m`` (acting on column vectors)."""
    return span([m.apply(b) for b in u.basis], m.rows)


def column_space(m: Matrix) -> Subspace:
    return span(m.columns(), m.rows)


class LinearSolver:
    """Solves ``a x = b`` for many right-hand sides with one elimination.

    Row-reduces ``[a | I]`` once; the right block is the transform ``E`` with
    ``E a = rref(a)``.  Free variables are set to zero, so the returned
    solution is deterministic.
    """

    def __init__(self, a: Matrix):
        self.a = a
        m, n = a.rows, a.cols
        aug = [tuple(r) + unit_vec(m, i) for i, r in enumerate(a.entries)]
        rows, pivots, _ = _reduce(aug, n + m) if m else ((), (), [])
        self.rank = sum(1 for p in pivots if p < n)
        self._pivots = pivots[: self.rank]
        self._transform = [r[n:] for r in rows]

    def solve(self, b: Sequence) -> Optional[Vec]:
        if len(b) != self.a.rows:
            raise DimensionError(f"right-hand side of length {len(b)} for {self.a.rows} equations")
        nz = [(i, c) for i, c in enumerate(b) if c]
        eb = [sum((row[i] * c for i, c in nz), ZERO) for row in self._transform]
        if any(eb[self.rank :]):
            return None
        x = [ZERO] * self.a.cols
        for r, p in enumerate(self._pivots):
            x[p] = eb[r]
        return tuple(x)


def solve(a: Matrix, b: Sequence) -> Optional[Vec]:
    """One exact solution of ``a x = b`` (free variables zero), or None."""
    if len(b) != a.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {a.rows} equations")
    n = a.cols
    aug = [tuple(r) + (Fraction(c),) for r, c in zip(a.entries, b)]
    rows, pivots, _ = _reduce(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for r, p in zip(rows, pivots):
        x[p] = r[n]
    return tuple(x)


def nullspace(a: Matrix) -> list:
    """Basis of ``{x : a x = 0}``, one vector per free column of rref(a)."""
    rows, pivots, _ = _reduce(a.entries, a.cols)
    free = [c for c in range(a.cols) if c not in pivots]
    out = []
    for f in free:
        x = [ZERO] * a.cols
        x[f] = ONE
        for r, p in zip(rows, pivots):
            x[p] = -r[f]
        out.append(tuple(x))
    return out


class IncrementalSystem:
    """Linear equations over Q added one at a time, kept in reduced form.

    Each equation is a sparse ``{column: coefficient}`` dict and a
    right-hand side.  Redundant equations cost one reduction and are
    dropped; the first inconsistent one marks the system unsolvable.  The
    final solution and kernel match :func:`solve` and :func:`nullspace`
    applied to the full stacked system.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.consistent = True
        self._basis: list = []
        self._pivots: list = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def add(self, coeffs: dict, rhs=0) -> bool:
        """Add ``sum(coeffs[c] * x_c) = rhs``; returns False once inconsistent."""
        if not self.consistent:
            return False
        row = [ZERO] * (self.ncols + 1)
        for c, a in coeffs.items():
            row[c] = a
        row[self.ncols] = Fraction(rhs)
        if kernels.insert_int(self._basis, self._pivots, _int_row(row)) == self.ncols:
            self.consistent = False
        return self.consistent

    def solution(self) -> Optional[Vec]:
        if not self.consistent:
            return None
        x = [ZERO] * self.ncols
        for row, p in zip(self._basis, self._pivots):
            if row[self.ncols]:
                x[p] = Fraction(row[self.ncols], row[p])
        return tuple(x)

    def kernel(self) -> list:
        """Homogeneous solutions; incomplete once the system is inconsistent."""
        pivots = set(self._pivots)
        out = []
        for f in range(self.ncols):
            if f in pivots:
                continue
            x = [ZERO] * self.ncols
            x[f] = ONE
            for row, p in zip(self._basis, self._pivots):
                if row[f]:
                    x[p] = Fraction(-row[f], row[p])
            out.append(tuple(x))
        return out
