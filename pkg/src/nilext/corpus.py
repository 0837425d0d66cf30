"""Curated algebras and extensions.

The JSON files under ``nilext/corpus/`` are generated from the definitions
below (``python -m nilext.corpus [DIR]``).  ``NILP_CORPUS_DIR`` overrides
the directory :func:`load_corpus` reads.
"""
from __future__ import annotations

import json
import os
import sys
from pathlib import Path

from .algebra import Algebra, AlgebraType, abelian_algebra, check_identity, algebra_from_json, algebra_to_json, make_algebra
from .exactla import Matrix, unit_vec
from .extension import (
    ExtensionData,
    extension_from_json,
    extension_to_json,
    extract_factor_system,
    factor_system_from_json,
    factor_system_to_json,
    make_extension,
)
from .generators import _freeze, seed_tensors

PACKAGE_DIR = Path(__file__).with_name("corpus")


def _inclusion(n: int, k: int) -> Matrix:
    return Matrix.from_columns([unit_vec(n, i) for i in range(k)], n)


# Example 1: two Leibniz extensions of abelian <x,y,z> by <w>.
def example1_L1() -> Algebra:
    return make_algebra("leibniz", "xyzw", {"mul": {("w", "w"): {"x": 1}, ("w", "x"): {"y": 1}, ("w", "y"): {"z": 1}}})


def example1_L2() -> Algebra:
    return make_algebra("leibniz", "xyzw", {"mul": {("w", "x"): {"y": 1}, ("w", "y"): {"z": 1}}})


def example1_A() -> Algebra:
    return abelian_algebra("leibniz", "xyz")


def example1_ext(which: int = 1) -> ExtensionData:
    L = example1_L1() if which == 1 else example1_L2()
    return make_extension(L, example1_A(), _inclusion(4, 3))


# Example 2: diassociative extension of abelian <x,y> by abelian <u,v>.
def example2_Lphi() -> Algebra:
    xy = {"x": 1, "y": 1}
    return make_algebra(
        "diassociative",
        ["x", "y", "u", "v"],
        {
            "left": {("u", "u"): {"x": 1}, ("v", "v"): {"y": 1}},
            "right": {("u", "u"): xy, ("v", "v"): xy, ("v", "u"): xy, ("u", "v"): xy},
        },
    )


def example2_Lab() -> Algebra:
    return abelian_algebra("diassociative", ["x", "y", "u", "v"])


def example2_A() -> Algebra:
    return abelian_algebra("diassociative", ["x", "y"])


def example2_ext(abelian: bool = False) -> ExtensionData:
    L = example2_Lab() if abelian else example2_Lphi()
    return make_extension(L, example2_A(), _inclusion(4, 2))


# Example 3: nonabelian A = <x,y,z>, x^2 = y^2 = z; two lifts differing by adjoints.
def example3_A(alg_type: str = "associative") -> Algebra:
    return make_algebra(alg_type, "xyz", {"mul": {("x", "x"): {"z": 1}, ("y", "y"): {"z": 1}}})


def example3_Lphi(alg_type: str = "associative") -> Algebra:
    return make_algebra(
        alg_type,
        "xyzw",
        {"mul": {("x", "x"): {"z": 1}, ("y", "y"): {"z": 1}, ("x", "w"): {"z": 1}, ("w", "x"): {"z": -1}}},
    )


def example3_Lpsi(alg_type: str = "associative") -> Algebra:
    return make_algebra(alg_type, "xyzw", {"mul": {("x", "x"): {"z": 1}, ("y", "y"): {"z": 1}}})


def example3_ext(which: str = "phi", alg_type: str = "associative") -> ExtensionData:
    L = example3_Lphi(alg_type) if which == "phi" else example3_Lpsi(alg_type)
    return make_extension(L, example3_A(alg_type), _inclusion(4, 3))


def heisenberg(alg_type: str = "leibniz") -> Algebra:
    return make_algebra(alg_type, "xyz", {"mul": {("x", "y"): {"z": 1}, ("y", "x"): {"z": -1}}})


def seeded(alg_type: str, dim: int) -> Algebra:
    tensors, _ = seed_tensors(alg_type, dim)
    alg = Algebra(dim, tuple(f"e{k + 1}" for k in range(dim)), AlgebraType(alg_type), tuple(_freeze(t) for t in tensors))
    assert not check_identity(alg)
    return alg


def corpus_objects() -> dict:
    """Every curated object by file stem."""
    out = {
        "example1_A": example1_A(),
        "example1_B": example1_ext(1).B,
        "example1_L1": example1_L1(),
        "example1_L2": example1_L2(),
        "example1_ext_L1": example1_ext(1),
        "example1_ext_L2": example1_ext(2),
        "example2_A": example2_A(),
        "example2_B": example2_ext().B,
        "example2_Lphi": example2_Lphi(),
        "example2_Lab": example2_Lab(),
        "example2_ext_Lphi": example2_ext(),
        "example2_ext_Lab": example2_ext(abelian=True),
        "example3_A": example3_A(),
        "example3_B": example3_ext().B,
        "example3_Lphi": example3_Lphi(),
        "example3_Lpsi": example3_Lpsi(),
        "example3_ext_Lphi": example3_ext("phi"),
        "example3_ext_Lpsi": example3_ext("psi"),
        "heisenberg_lie": heisenberg("lie"),
        "heisenberg_leibniz": heisenberg("leibniz"),
        "null_filiform_leibniz_5": seeded("leibniz", 5),
        "filiform_lie_5": seeded("lie", 5),
        "truncated_poly_4": seeded("associative", 4),
        "truncated_poly_commutative_4": seeded("commutative", 4),
        "dias_truncated_poly_4": seeded("diassociative", 4),
        "zinbiel_4": seeded("zinbiel", 4),
        "dendriform_zinbiel_4": seeded("dendriform", 4),
        "abelian_leibniz_3": abelian_algebra("leibniz", "abc"),
    }
    for name, ext in [
        ("example1_fs1", example1_ext(1)),
        ("example1_fs2", example1_ext(2)),
        ("example2_fs_phi", example2_ext()),
        ("example2_fs_ab", example2_ext(abelian=True)),
        ("example3_fs_phi", example3_ext("phi")),
        ("example3_fs_psi", example3_ext("psi")),
    ]:
        out[name] = (ext.A, ext.B, extract_factor_system(ext))
    return out


def to_json(obj) -> dict:
    if isinstance(obj, Algebra):
        return algebra_to_json(obj)
    if isinstance(obj, ExtensionData):
        return extension_to_json(obj, include_section=False)
    A, B, fs = obj
    return factor_system_to_json(A, B, fs)


def from_json(data):
    """Algebra, ExtensionData or (A, B, FactorSystem), by the keys present."""
    if "L" in data:
        return extension_from_json(data)
    if "lift" in data:
        return factor_system_from_json(data)
    return algebra_from_json(data)


def corpus_dir() -> Path:
    return Path(os.environ.get("NILP_CORPUS_DIR") or PACKAGE_DIR)


def load_corpus(directory=None) -> dict:
    directory = Path(directory) if directory else corpus_dir()
    out = {}
    for path in sorted(directory.glob("*.json")):
        with open(path, encoding="utf-8") as fh:
            out[path.stem] = from_json(json.load(fh))
    return out


def corpus_algebras(directory=None) -> dict:
    """Just the algebras of the corpus, including the L of each extension."""
    out = {}
    for name, obj in load_corpus(directory).items():
        if isinstance(obj, Algebra):
            out[name] = obj
        elif isinstance(obj, ExtensionData):
            out[name + ".L"] = obj.L
    return out


def write_corpus(directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, obj in corpus_objects().items():
        with open(directory / f"{name}.json", "w", encoding="utf-8") as fh:
            json.dump(to_json(obj), fh, indent=1, ensure_ascii=False)
            fh.write("\n")


if __name__ == "__main__":
    write_corpus(sys.argv[1] if len(sys.argv) > 1 else PACKAGE_DIR)
