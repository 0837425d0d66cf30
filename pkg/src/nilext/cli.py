"""Command-line interface.

Exit codes: 0 success, 1 a mathematical check failed (a certificate is
printed as JSON), 2 the input could not be used.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import (
    SERIES_KINDS,
    AlgebraType,
    algebra_from_json,
    algebra_to_json,
    check_identity,
    dia_series,
    format_vector,
    lcs,
    nilpotency_index,
    paper_label,
)
from .errors import (
    AlgebraFormatError,
    ExtensionError,
    HypothesisUnmet,
    IdentityViolation,
    InvalidFactorSystem,
    LiftMismatch,
    NilextError,
    NotAnIdeal,
)
from .extension import (
    build_extension_algebra,
    extension_from_json,
    extension_to_json,
    extract_factor_system,
    factor_system_from_json,
    factor_system_to_json,
)
from .generators import DEFAULT_DENSITY
from .theory import (
    THEOREMS,
    GammaContext,
    a_sequence,
    gamma_sequence,
    verify_main_theorem,
    verify_series_equality,
)

OK, FAIL, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _write_json(path, obj):
    text = _dump(obj) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _algebra_data(path: str):
    data = _read_json(path)
    # an extension file stands for its middle algebra
    if isinstance(data, dict) and "L" in data and "basis" not in data:
        return data["L"]
    return data


def load_algebra(path: str, validate: bool = True):
    return algebra_from_json(_algebra_data(path), validate=validate, location=path)


def load_extension(path: str):
    return extension_from_json(_read_json(path))


def load_factor_system(path: str, A=None, B=None):
    """(A, B, fs); algebras given on the command line fill in or must match the file's."""
    data = _read_json(path)
    if isinstance(data, dict):
        data = dict(data)
        for key, alg in (("A", A), ("B", B)):
            if alg is None:
                continue
            if key not in data:
                data[key] = algebra_to_json(alg)
            elif algebra_from_json(data[key], location=f"{path}:{key}") != alg:
                raise InputError(f"{path}: {key} differs from the algebra given on the command line")
    return factor_system_from_json(data)


def _chain_json(alg, chain) -> dict:
    index = nilpotency_index(chain)
    return {
        "dims": chain.dims,
        "terms": [[format_vector(alg, b) for b in t.basis] for t in chain.terms],
        "stabilized": chain.stabilized,
        "index": index,
        "paper_label": paper_label(index),
        "nilpotent": index is not None,
    }


def _chain_text(title: str, info: dict) -> str:
    lines = [title]
    for k, (d, basis) in enumerate(zip(info["dims"], info["terms"])):
        lines.append(f"  C_{k}: dim {d}  <{', '.join(basis)}>")
    if info["nilpotent"]:
        lines.append(f"  nilpotent: index {info['index']}, paper_label {info['paper_label']}")
    else:
        lines.append("  not nilpotent")
    return "\n".join(lines)


def _failure(payload: dict) -> int:
    sys.stdout.write(_dump(payload) + "\n")
    return FAIL


# --- subcommands ------------------------------------------------------------------


def cmd_check(args) -> int:
    alg = load_algebra(args.file, validate=False)
    violations = check_identity(alg)
    report = {"type": alg.type.value, "dim": alg.dim, "violations": [v.to_json() for v in violations]}
    if violations:
        return _failure(report)
    if args.json:
        _write_json(None, report)
    else:
        print(f"{args.file}: valid {alg.type.value} algebra of dimension {alg.dim}")
    return OK


def cmd_series(args) -> int:
    alg = load_algebra(args.file)
    kind = args.kind or ("lcs" if alg.arity == 1 else "general")
    if (kind == "lcs") != (alg.arity == 1):
        return _failure({"error": "ArityError", "message": f"series kind {kind!r} needs a "
                         f"{'one' if kind == 'lcs' else 'two'}-product algebra, got {alg.type.value}"})
    chain = lcs(alg) if kind == "lcs" else dia_series(alg, kind)
    out = {"type": alg.type.value, "kind": kind, **_chain_json(alg, chain)}
    lemma = None
    if alg.arity == 2:
        lemma = verify_series_equality(alg)
        out["series_equal"] = lemma.ok
    if args.json:
        _write_json(None, out)
    else:
        print(_chain_text(f"{kind} series of {args.file}", out))
        if lemma is not None:
            print(f"  left, right and general series agree: {'yes' if lemma.ok else 'NO'}")
    if lemma is not None and not lemma.ok:
        return _failure(lemma.to_json())
    return OK


def cmd_extend(args) -> int:
    A = load_algebra(args.sub)
    B = load_algebra(args.quot)
    A, B, fs = load_factor_system(args.fs, A, B)
    try:
        _, ext = build_extension_algebra(A, B, fs)
    except InvalidFactorSystem as exc:
        return _failure(exc.certificate())
    _write_json(args.output, extension_to_json(ext))
    if args.output not in (None, "-"):
        print(f"wrote {args.output}: {ext.L.describe()}")
    return OK


def cmd_extract(args) -> int:
    ext = load_extension(args.ext)
    fs = extract_factor_system(ext)
    _write_json(args.output, factor_system_to_json(ext.A, ext.B, fs))
    return OK


def cmd_gamma(args) -> int:
    ext = load_extension(args.ext)
    ak = a_sequence(ext)
    gk = gamma_sequence(GammaContext.from_extension(ext))
    out = {"A_k": _chain_json(ext.A, ak), "gamma": _chain_json(ext.A, gk), "equal": ak.terms == gk.terms}
    if args.json:
        _write_json(None, out)
    else:
        print(_chain_text("A_k sequence", out["A_k"]))
        print(_chain_text("Gamma_k^B sequence", out["gamma"]))
        print(f"  A_k = Gamma_k for all k: {'yes' if out['equal'] else 'NO'}")
    if not out["equal"]:
        return _failure({"check": "A_k == Gamma_k", "A_k": out["A_k"]["terms"], "gamma": out["gamma"]["terms"]})
    return OK


def _theorem_list(text: str) -> list:
    names = []
    for part in text.split(","):
        part = part.strip()
        if part == "all":
            names.extend(THEOREMS)
        elif part in THEOREMS:
            names.append(part)
        else:
            raise InputError(f"unknown theorem {part!r}; choose from {', '.join(THEOREMS)}, all")
    return list(dict.fromkeys(names))


def _emit_reports(reports, as_json: bool) -> int:
    if as_json:
        _write_json(None, [r.to_json() for r in reports])
    else:
        for r in reports:
            print(r.to_text())
    failed = [r for r in reports if not r.ok]
    if failed:
        if not as_json:
            sys.stdout.write(_dump({"certificates": [r.to_json() for r in failed]}) + "\n")
        return FAIL
    return OK


def cmd_verify(args) -> int:
    names = _theorem_list(args.theorems)
    ext = load_extension(args.ext)
    reports = []
    for name in names:
        try:
            reports.append(THEOREMS[name](ext))
        except HypothesisUnmet as exc:
            print(_dump(exc.report.to_json() if exc.report else exc.certificate()), file=sys.stderr)
            raise InputError(f"{name}: hypothesis not met: {exc}") from None
    return _emit_reports(reports, args.json)


def cmd_main_theorem(args) -> int:
    A = load_algebra(args.a)
    B = load_algebra(args.b)
    _, _, fs1 = load_factor_system(args.fs1, A, B)
    _, _, fs2 = load_factor_system(args.fs2, A, B)
    try:
        report = verify_main_theorem(A, B, fs1, fs2)
    except LiftMismatch as exc:
        raise InputError(str(exc)) from None
    except InvalidFactorSystem as exc:
        return _failure(exc.certificate())
    return _emit_reports([report], args.json)


def cmd_fuzz(args) -> int:
    from .fuzz import run_fuzz

    if args.dim < 1 or args.cases < 0 or not 0 <= args.density <= 1:
        raise InputError("need dim >= 1, cases >= 0 and 0 <= density <= 1")
    tally = run_fuzz(args.type, args.dim, args.cases, args.seed, args.density, out_dir=args.out)
    if args.json:
        _write_json(None, tally)
    else:
        print(f"{tally['passed']}/{tally['cases']} pass ({tally['type']}, dim {args.dim}, seed {args.seed})")
        if tally["failed"]:
            print(f"failing cases written to {args.out}: {tally['failures']}")
    return FAIL if tally["failed"] else OK


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilext", description="Nilpotency of extensions of Loday algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check the defining identities of an algebra")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("series", help="lower central or dialgebra series")
    p.add_argument("file")
    p.add_argument("--kind", choices=("lcs",) + SERIES_KINDS)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("extend", help="build the extension algebra of a factor system")
    p.add_argument("--sub", required=True, help="the ideal A")
    p.add_argument("--quot", required=True, help="the quotient B")
    p.add_argument("--fs", required=True, help="factor system file")
    p.add_argument("-o", "--output", help="output extension file (default stdout)")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("extract", help="extract the factor system of an extension")
    p.add_argument("--ext", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("gamma", help="A_k and Gamma_k^B sequences of an extension")
    p.add_argument("--ext", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("verify", help="run theorem checks on an extension")
    p.add_argument("--ext", required=True)
    p.add_argument("--theorems", default="all", help="comma list of %s or all" % ", ".join(THEOREMS))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("main-theorem", help="compare two factor systems whose lifts differ by adjoints")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--fs1", required=True)
    p.add_argument("--fs2", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_main_theorem)

    p = sub.add_parser("fuzz", help="random end-to-end checks")
    p.add_argument("--type", required=True, choices=[t.value for t in AlgebraType])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=DEFAULT_DENSITY)
    p.add_argument("--out", default="fuzz-failures", help="directory for failing cases")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (AlgebraFormatError, IdentityViolation, ExtensionError, NotAnIdeal) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(_dump(exc.certificate()), file=sys.stderr)
        return BAD_INPUT
    except NilextError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
