"""Ideal sequences of an extension and executable checks of the nilpotency theorems.

Class numbers throughout are chain indices: nil L = u means C_u(L) = 0 and
C_{u-1}(L) != 0 with C_0 = L.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    Algebra,
    Chain,
    SERIES_KINDS,
    default_series,
    dia_series,
    ideal_closure,
    lcs,
    iterate_chain,
    nilpotency_class,
    nilpotency_index,
    paper_label,
    subspace_product,
    total_product,
)
from .errors import HypothesisUnmet, LiftMismatch, NotAnIdeal
from .exactla import Subspace, format_scalar, full_space, image, span, subspace_leq, subspace_sum
from .extension import (
    ExtensionData,
    FactorSystem,
    Lift,
    build_extension_algebra,
    extract_lift,
    is_B_invariant,
    lifts_differ_by_adjoints,
)


def _basis_json(u: Subspace) -> list:
    return [[format_scalar(a) for a in b] for b in u.basis]


@dataclass
class TheoremReport:
    theorem: str
    verdict: str = "pass"
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    certificate: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def check(self, name: str, passed: bool, **detail) -> bool:
        self.checks.append({"name": name, "passed": bool(passed), **detail})
        if not passed and self.verdict == "pass":
            self.verdict = "fail"
            self.certificate = {"check": name, **detail}
        return passed

    def to_json(self) -> dict:
        out = {"theorem": self.theorem, "verdict": self.verdict, "params": self.params, "checks": self.checks}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out

    def to_text(self) -> str:
        failed = [c for c in self.checks if not c["passed"]]
        head = f"{self.theorem}: {self.verdict.upper()} ({len(self.checks) - len(failed)}/{len(self.checks)} checks)"
        lines = [head]
        if self.params:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in self.params.items()))
        for c in failed[:5]:
            lines.append(f"  failed: {json.dumps(c, sort_keys=True)}")
        return "\n".join(lines)


# --- sequences ----------------------------------------------------------------


def a_sequence(ext: ExtensionData) -> Chain:
    """A_0 = A, A_{k+1} = sigma^-1(sigma(A_k) L + L sigma(A_k)) (◊ for two products)."""
    L = ext.L
    full_l = full_space(L.dim)

    def step(ak: Subspace) -> Subspace:
        s = image(ext.sigma, ak)
        prod = subspace_sum(total_product(L, s, full_l), total_product(L, full_l, s))
        return span([ext.sigma_inv(b) for b in prod.basis], ext.A.dim)

    return iterate_chain(full_space(ext.A.dim), step)


@dataclass(frozen=True)
class GammaContext:
    A: Algebra
    B: Algebra
    lift: Lift

    def __post_init__(self):
        if self.A.type != self.B.type:
            raise ValueError("A and B must have the same type")
        if self.lift.arity != self.A.arity or self.lift.dim_b != self.B.dim:
            raise ValueError("lift is not shaped for (A, B)")

    @classmethod
    def from_extension(cls, ext: ExtensionData) -> "GammaContext":
        return cls(ext.A, ext.B, extract_lift(ext))


def gamma_step(ctx: GammaContext, N: Subspace) -> Subspace:
    """Smallest B-invariant ideal containing A N, N A and the lift images of N."""
    A = ctx.A
    if not is_B_invariant(A, ctx.lift, N):
        raise NotAnIdeal("N is not B-invariant")
    full = full_space(A.dim)
    seed = span([m(n) for m in ctx.lift.all_maps() for n in N.basis], A.dim)
    for p in range(A.arity):
        seed = subspace_sum(seed, subspace_product(A, p, full, N))
        seed = subspace_sum(seed, subspace_product(A, p, N, full))
    out = ideal_closure(A, seed, ctx.lift.all_maps())
    assert subspace_leq(out, N), "Gamma(N) must lie in N"
    return out


def gamma_sequence(ctx: GammaContext) -> Chain:
    return iterate_chain(full_space(ctx.A.dim), lambda n: gamma_step(ctx, n))


def b_nilpotency_class(ctx: GammaContext) -> Optional[int]:
    """Smallest u with Gamma_u A = 0, or None."""
    return nilpotency_index(gamma_sequence(ctx))


# --- theorem checks -------------------------------------------------------------


def _ext_params(ext: ExtensionData) -> dict:
    return {"type": ext.L.type.value, "dim_L": ext.L.dim, "dim_A": ext.A.dim, "dim_B": ext.B.dim}


def verify_sandwich(ext: ExtensionData) -> TheoremReport:
    """C_{k+s}(L) ⊆ sigma(A_k) ⊆ C_k(L) for all k, with s = nil B; and
    L nilpotent iff some A_k = 0."""
    report = TheoremReport("sandwich", params=_ext_params(ext))
    s = nilpotency_class(ext.B)
    if s is None:
        report.verdict = "hypothesis-unmet"
        report.certificate = {"reason": "B is not nilpotent"}
        raise HypothesisUnmet("B is not nilpotent", report)
    report.params["s"] = s
    lser = default_series(ext.L)
    ak = a_sequence(ext)
    report.params["L_dims"] = lser.dims
    report.params["A_k_dims"] = ak.dims
    for k in range(max(len(lser), len(ak)) + s + 1):
        sak = image(ext.sigma, ak[k])
        report.check(
            "lower", subspace_leq(lser[k + s], sak), k=k,
            C_k_plus_s=_basis_json(lser[k + s]), sigma_A_k=_basis_json(sak),
        )
        report.check("upper", subspace_leq(sak, lser[k]), k=k, sigma_A_k=_basis_json(sak), C_k=_basis_json(lser[k]))
    l_nil = nilpotency_index(lser) is not None
    a_zero = nilpotency_index(ak) is not None
    report.check("nilpotent iff some A_k = 0", l_nil == a_zero, L_nilpotent=l_nil, A_k_reaches_zero=a_zero)
    return report


def verify_ak_equals_gamma(ext: ExtensionData) -> TheoremReport:
    """A_k = Gamma_k^B A for every k, with Gamma built from the extracted lift."""
    report = TheoremReport("ak-gamma", params=_ext_params(ext))
    ak = a_sequence(ext)
    gk = gamma_sequence(GammaContext.from_extension(ext))
    report.params["A_k_dims"] = ak.dims
    report.params["gamma_dims"] = gk.dims
    for k in range(max(len(ak), len(gk))):
        report.check("A_k == Gamma_k", ak[k] == gk[k], k=k, A_k=_basis_json(ak[k]), Gamma_k=_basis_json(gk[k]))
    return report


def verify_nil_bounds(ext: ExtensionData) -> TheoremReport:
    """max(nil_B A, nil B) <= nil L <= nil_B A + nil B, and the nilpotency criterion."""
    report = TheoremReport("bounds", params=_ext_params(ext))
    nil_l = nilpotency_class(ext.L)
    nil_b = nilpotency_class(ext.B)
    gk = gamma_sequence(GammaContext.from_extension(ext))
    nil_ba = nilpotency_index(gk)
    report.params.update(nil_L=nil_l, nil_B=nil_b, nil_B_A=nil_ba)
    gamma_vanishes = any(gk[u].is_zero() for u in range(1, len(gk) + 1))
    report.check(
        "L nilpotent iff B nilpotent and some Gamma_u A = 0",
        (nil_l is not None) == (nil_b is not None and gamma_vanishes),
        L_nilpotent=nil_l is not None, B_nilpotent=nil_b is not None, gamma_vanishes=gamma_vanishes,
    )
    if None not in (nil_l, nil_b, nil_ba):
        report.check("max(nil_B A, nil B) <= nil L", max(nil_ba, nil_b) <= nil_l, lower=max(nil_ba, nil_b), nil_L=nil_l)
        report.check("nil L <= nil_B A + nil B", nil_l <= nil_ba + nil_b, nil_L=nil_l, upper=nil_ba + nil_b)
    return report


def verify_main_theorem(A: Algebra, B: Algebra, fs1: FactorSystem, fs2: FactorSystem) -> TheoremReport:
    """Extensions from two lifts of the same class are both nilpotent or both not."""
    witnesses = lifts_differ_by_adjoints(A, fs1.lift, fs2.lift)
    if witnesses is None:
        raise LiftMismatch("lifts do not differ by adjoint operators: they induce different classes")
    L1, _ = build_extension_algebra(A, B, fs1)
    L2, _ = build_extension_algebra(A, B, fs2)
    c1 = nilpotency_class(L1)
    c2 = nilpotency_class(L2)
    report = TheoremReport(
        "main",
        params={
            "type": A.type.value,
            "dim_A": A.dim,
            "dim_B": B.dim,
            "class_1": c1,
            "class_2": c2,
            "paper_label_1": paper_label(c1),
            "paper_label_2": paper_label(c2),
            "witnesses": [[[format_scalar(a) for a in w] for w in slot] for slot in witnesses],
        },
    )
    report.check("nilpotency verdicts agree", (c1 is None) == (c2 is None), nilpotent_1=c1 is not None,
                 nilpotent_2=c2 is not None)
    return report


def verify_gamma_lift_independence(A: Algebra, B: Algebra, lift1: Lift, lift2: Lift) -> TheoremReport:
    """Gamma_k^B A computed from two adjoint-related lifts agree term by term,
    and B-invariance of each Gamma term does not depend on the lift."""
    if lifts_differ_by_adjoints(A, lift1, lift2) is None:
        raise LiftMismatch("lifts do not differ by adjoint operators")
    report = TheoremReport("gamma-lift-independence", params={"type": A.type.value, "dim_A": A.dim, "dim_B": B.dim})
    g1 = gamma_sequence(GammaContext(A, B, lift1))
    g2 = gamma_sequence(GammaContext(A, B, lift2))
    for k in range(max(len(g1), len(g2))):
        report.check("Gamma_k equal", g1[k] == g2[k], k=k)
        report.check("invariance agrees", is_B_invariant(A, lift1, g1[k]) == is_B_invariant(A, lift2, g1[k]), k=k)
    return report


def verify_left_norming(alg: Algebra) -> TheoremReport:
    """C_n L ⊆ C_{n+1} along the lower central series of a Leibniz algebra."""
    report = TheoremReport("left-norming", params={"type": alg.type.value, "dim": alg.dim})
    chain = lcs(alg)
    full = full_space(alg.dim)
    report.params["dims"] = chain.dims
    for n in range(len(chain)):
        right = subspace_product(alg, 0, chain[n], full)
        report.check("C_n L <= C_{n+1}", subspace_leq(right, chain[n + 1]), n=n,
                     C_n_L=_basis_json(right), C_n_plus_1=_basis_json(chain[n + 1]))
    return report


def verify_series_equality(alg: Algebra) -> TheoremReport:
    """The left, right and general dialgebra series agree term by term."""
    report = TheoremReport("series-equality", params={"type": alg.type.value, "dim": alg.dim})
    chains = {kind: dia_series(alg, kind) for kind in SERIES_KINDS}
    report.params["dims"] = {kind: c.dims for kind, c in chains.items()}
    length = max(len(c) for c in chains.values())
    for k in range(length):
        terms = {kind: chains[kind][k] for kind in SERIES_KINDS}
        same = terms["left"] == terms["right"] == terms["general"]
        report.check("series agree", same, k=k, **{kind: _basis_json(t) for kind, t in terms.items()})
    return report


THEOREMS = {
    "sandwich": verify_sandwich,
    "ak-gamma": verify_ak_equals_gamma,
    "bounds": verify_nil_bounds,
}
