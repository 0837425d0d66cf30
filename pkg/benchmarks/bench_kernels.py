"""Time the compiled row-reduction kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py [--repeat N] [--size N]

Two workloads: batch ``rref_int`` on random dense integer matrices, and
``insert_int`` fed the equations of a real cocycle system (a diassociative
extension, which is the slowest case in practice).
"""
from __future__ import annotations

import argparse
import random
import sys
import timeit

from nilext import _kernels_py, kernels
from nilext.exactla import _int_row

try:
    from nilext import _kernels as compiled
except ImportError:
    compiled = None


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9) -> list:
    return [[rng.randint(-bound, bound) if rng.random() < 0.4 else 0 for _ in range(cols)] for _ in range(rows)]


def cocycle_rows() -> tuple:
    """Integer rows of the cocycle equations for one generated extension."""
    from nilext import cocycles
    from nilext.exactla import IncrementalSystem
    from nilext.extension import extract_factor_system
    from nilext.generators import random_extension_from_algebra

    ext = random_extension_from_algebra("diassociative", 4, 4, seed=2)
    captured = []
    original = IncrementalSystem.add

    def record(self, coeffs, rhs=0):
        row = [0] * (self.ncols + 1)
        for c, a in coeffs.items():
            row[c] = a
        row[self.ncols] = rhs
        captured.append(_int_row(row))
        return original(self, coeffs, rhs)

    IncrementalSystem.add = record
    try:
        cocycles.cocycle_space(ext.A, ext.B, extract_factor_system(ext).lift)
    finally:
        IncrementalSystem.add = original
    return captured, len(captured[0])


def insert_all(module, rows) -> tuple:
    basis: list = []
    pivots: list = []
    for r in rows:
        module.insert_int(basis, pivots, r)
    return basis, pivots


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--size", type=int, default=60, help="rows and columns of the random matrices")
    args = parser.parse_args(argv)
    if compiled is None:
        print("compiled kernels not built; only the pure backend is available", file=sys.stderr)
        return 1

    rng = random.Random(0)
    mats = [random_matrix(rng, args.size, args.size) for _ in range(5)]
    rows, width = cocycle_rows()
    workloads = [
        (f"rref_int {args.size}x{args.size} (x5)", lambda m: [m.rref_int(a, args.size) for a in mats]),
        (f"insert_int cocycle system ({len(rows)} rows, {width} cols)", lambda m: insert_all(m, rows)),
    ]
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'workload':<52} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, work in workloads:
        assert work(compiled) == work(_kernels_py)
        t_py = min(timeit.repeat(lambda: work(_kernels_py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: work(compiled), number=1, repeat=args.repeat))
        print(f"{name:<52} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
