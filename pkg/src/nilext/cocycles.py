"""All cocycles compatible with a given lift, as an affine solution space.

With the lift fixed, the structure constants of A ⊕ B depend on the cocycle
grids f only through the entries ``e_i * e_j`` for i, j in B, and every
identity term (a*b)*c or a*(b*c) is affine in f: a product of two f-dependent
factors would need an f-value (which lies in A) multiplied by a B-slot of
the f-grid, which never happens.  Collecting the linear and constant parts
over all basis triples gives a linear system whose solutions are exactly the
factor systems for that lift.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional

from .algebra import IDENTITIES, Algebra
from .exactla import ZERO, IncrementalSystem, zero_vec
from .extension import FactorSystem, Lift, extension_tensors


class CocycleSpace:
    """Solutions ``particular + span(kernel)`` of the cocycle equations."""

    def __init__(self, A: Algebra, B: Algebra, lift: Lift, particular, kernel):
        self.A = A
        self.B = B
        self.lift = lift
        self.particular = particular
        self.kernel = kernel

    @property
    def dim(self) -> int:
        return len(self.kernel)

    def unflatten(self, x) -> tuple:
        na, nb = self.A.dim, self.B.dim
        grids = []
        for p in range(self.A.arity):
            grid = []
            for i in range(nb):
                row = []
                for j in range(nb):
                    base = ((p * nb + i) * nb + j) * na
                    row.append(tuple(x[base : base + na]))
                grid.append(tuple(row))
            grids.append(tuple(grid))
        return tuple(grids)

    def factor_system(self, coeffs=()) -> FactorSystem:
        """Particular solution plus ``sum(c_k * kernel[k])``."""
        x = list(self.particular)
        for c, v in zip(coeffs, self.kernel):
            if c:
                x = [a + c * b for a, b in zip(x, v)]
        return FactorSystem(self.lift, self.unflatten(x))


def _unknown(na: int, nb: int, p: int, i: int, j: int, c: int) -> int:
    return ((p * nb + i) * nb + j) * na + c


def cocycle_space(A: Algebra, B: Algebra, lift: Lift) -> Optional[CocycleSpace]:
    """Affine space of cocycles making (lift, f) a factor system, or None."""
    na, nb = A.dim, B.dim
    n = na + nb
    nunk = A.arity * nb * nb * na
    zero_f = tuple(tuple(tuple(zero_vec(na) for _ in range(nb)) for _ in range(nb)) for _ in range(A.arity))
    tensors = extension_tensors(A, B, FactorSystem(lift, zero_f))
    sparse = [[[[(k, c) for k, c in enumerate(v) if c] for v in row] for row in t] for t in tensors]

    def in_b(x):
        return x >= na

    def term(outer, inner, assoc, a, b, c):
        """(constant dict, {unknown: dict}) for one trilinear term at basis indices."""
        const: dict = {}
        lin: dict = {}
        if assoc == "L":
            first = sparse[inner][a][b]
            for k, v in first:
                for m, w in sparse[outer][k][c]:
                    const[m] = const.get(m, ZERO) + v * w
            if in_b(a) and in_b(b):
                for cc in range(na):
                    vec = dict(sparse[outer][cc][c])
                    if vec:
                        lin[_unknown(na, nb, inner, a - na, b - na, cc)] = vec
            if in_b(c):
                for k, v in first:
                    if in_b(k):
                        for cc in range(na):
                            u = _unknown(na, nb, outer, k - na, c - na, cc)
                            d = lin.setdefault(u, {})
                            d[cc] = d.get(cc, ZERO) + v
        else:
            second = sparse[inner][b][c]
            for k, v in second:
                for m, w in sparse[outer][a][k]:
                    const[m] = const.get(m, ZERO) + v * w
            if in_b(b) and in_b(c):
                for cc in range(na):
                    vec = dict(sparse[outer][a][cc])
                    if vec:
                        lin[_unknown(na, nb, inner, b - na, c - na, cc)] = vec
            if in_b(a):
                for k, v in second:
                    if in_b(k):
                        for cc in range(na):
                            u = _unknown(na, nb, outer, a - na, k - na, cc)
                            d = lin.setdefault(u, {})
                            d[cc] = d.get(cc, ZERO) + v
        return const, lin

    system = IncrementalSystem(nunk)
    seen = set()
    trilinear, bilinear = IDENTITIES[A.type]

    def collect(const, lin):
        by_coord: dict = {}
        for u, vec in lin.items():
            for coord, v in vec.items():
                if v:
                    by_coord.setdefault(coord, {})[u] = v
        for coord in range(n):
            coeffs = by_coord.get(coord)
            rhs = -const.get(coord, ZERO)
            if coeffs:
                key = (tuple(sorted(coeffs.items())), rhs)
                if key not in seen:
                    seen.add(key)
                    if not system.add(coeffs, rhs):
                        return False
            elif rhs:
                return False
        return True

    def add(acc_c, acc_l, part, coef):
        const, lin = part
        for k, v in const.items():
            acc_c[k] = acc_c.get(k, ZERO) + coef * v
        for u, vec in lin.items():
            d = acc_l.setdefault(u, {})
            for k, v in vec.items():
                d[k] = d.get(k, ZERO) + coef * v

    for ident in bilinear:
        pairs = ((i, i) for i in range(n)) if ident.diagonal else itertools.product(range(n), repeat=2)
        for args in pairs:
            acc_c: dict = {}
            acc_l: dict = {}
            for coef, p, order in ident.terms:
                x, y = args[order[0]], args[order[1]]
                const = dict(sparse[p][x][y])
                lin = {}
                if in_b(x) and in_b(y):
                    lin = {_unknown(na, nb, p, x - na, y - na, cc): {cc: Fraction(1)} for cc in range(na)}
                add(acc_c, acc_l, (const, lin), coef)
            if not collect(acc_c, acc_l):
                return None
    for ident in trilinear:
        for args in itertools.product(range(n), repeat=3):
            acc_c = {}
            acc_l = {}
            for t in ident.terms:
                a, b, c = (args[k] for k in t.order)
                add(acc_c, acc_l, term(t.outer, t.inner, t.assoc, a, b, c), t.coef)
            if not collect(acc_c, acc_l):
                return None

    return CocycleSpace(A, B, lift, system.solution(), system.kernel())
