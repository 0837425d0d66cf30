"""Randomized end-to-end checks: generate, cut into an extension, verify everything."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .algebra import Algebra, AlgebraType, algebra_to_json, check_identity, default_series, ideal_closure, nilpotency_class
from .errors import NilextError
from .exactla import span
from .extension import extension_to_json, reconstruct
from .generators import (
    DEFAULT_DENSITY,
    GenerationError,
    _random_element,
    _rng,
    adjoint_perturbed_pair,
    extension_from_ideal,
    random_nilpotent_algebra,
)
from .theory import (
    TheoremReport,
    verify_ak_equals_gamma,
    verify_gamma_lift_independence,
    verify_left_norming,
    verify_main_theorem,
    verify_nil_bounds,
    verify_sandwich,
    verify_series_equality,
)


@dataclass
class CaseResult:
    index: int
    algebra: Algebra
    reports: list = field(default_factory=list)
    extension: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def to_json(self) -> dict:
        out = {
            "index": self.index,
            "ok": self.ok,
            "algebra": algebra_to_json(self.algebra),
            "reports": [r.to_json() for r in self.reports],
        }
        if self.extension is not None:
            out["extension"] = self.extension
        return out


def _fallback(alg_type: AlgebraType, index: int) -> Algebra:
    from .corpus import corpus_algebras

    same = [a for _, a in sorted(corpus_algebras().items()) if a.type is alg_type]
    if not same:
        raise GenerationError(f"no corpus algebra of type {alg_type.value} to fall back on")
    return same[index % len(same)]


def _run(report_name: str, fn, *args) -> TheoremReport:
    try:
        return fn(*args)
    except NilextError as exc:
        report = TheoremReport(report_name)
        report.check("raised", False, **exc.certificate())
        return report


def _round_trip(ext) -> TheoremReport:
    report = TheoremReport("round-trip", params={"dim_L": ext.L.dim})
    reconstruct(ext)
    report.check("extract, rebuild, reconstruction iso", True)
    return report


def _main_pair(ext, seed) -> TheoremReport:
    A, B, fs1, fs2 = adjoint_perturbed_pair(ext, seed=seed)
    report = verify_main_theorem(A, B, fs1, fs2)
    independence = verify_gamma_lift_independence(A, B, fs1.lift, fs2.lift)
    for c in independence.checks:
        report.check("gamma lift independence: " + c["name"], c["passed"], k=c["k"])
    return report


def fuzz_case(alg_type, dim: int, density: float = DEFAULT_DENSITY, seed=0, index: int = 0) -> CaseResult:
    alg_type = AlgebraType(alg_type)
    rng = _rng("fuzz", alg_type.value, dim, density, seed, index)
    try:
        alg = random_nilpotent_algebra(alg_type, dim, density=density, seed=f"{seed}:{index}")
    except GenerationError:
        alg = _fallback(alg_type, index)
    result = CaseResult(index, alg)

    basics = TheoremReport("algebra", params={"type": alg_type.value, "dim": alg.dim})
    violations = check_identity(alg)
    basics.check("identities hold", not violations, violations=[v.to_json() for v in violations[:5]])
    basics.check("nilpotent", nilpotency_class(alg) is not None)
    result.reports.append(basics)
    if alg_type in (AlgebraType.LEIBNIZ, AlgebraType.LIE):
        result.reports.append(verify_left_norming(alg))
    if alg.arity == 2:
        result.reports.append(verify_series_equality(alg))

    candidates = list(default_series(alg).terms[1:])
    v = _random_element(rng, alg.dim, 0.5)
    if any(v):
        candidates.append(ideal_closure(alg, span([v], alg.dim)))
    candidates = [c for c in candidates if 0 < c.dim < alg.dim]
    if not candidates:
        return result
    ext = extension_from_ideal(alg, rng.choice(candidates), rng)
    result.extension = extension_to_json(ext)
    result.reports.append(_run("sandwich", verify_sandwich, ext))
    result.reports.append(_run("ak-gamma", verify_ak_equals_gamma, ext))
    result.reports.append(_run("bounds", verify_nil_bounds, ext))
    result.reports.append(_run("round-trip", _round_trip, ext))
    result.reports.append(_run("main", _main_pair, ext, f"{seed}:{index}"))
    return result


def run_fuzz(alg_type, dim: int, cases: int, seed=0, density: float = DEFAULT_DENSITY, out_dir=None) -> dict:
    """Run ``cases`` fuzz cases; failing ones are written to ``out_dir`` as JSON."""
    alg_type = AlgebraType(alg_type)
    failures = []
    for index in range(cases):
        result = fuzz_case(alg_type, dim, density, seed, index)
        if result.ok:
            continue
        failures.append(index)
        if out_dir is not None:
            path = Path(out_dir)
            path.mkdir(parents=True, exist_ok=True)
            with open(path / f"case_{index:05d}.json", "w", encoding="utf-8") as fh:
                json.dump(result.to_json(), fh, indent=1, sort_keys=True)
                fh.write("\n")
    return {
        "type": alg_type.value,
        "dim": dim,
        "seed": seed,
        "density": density,
        "cases": cases,
        "passed": cases - len(failures),
        "failed": len(failures),
        "failures": failures,
    }
