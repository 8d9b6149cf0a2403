"""Decision pipeline for a candidate pair (endomorphism f, divisor D = V(F)).

Rules are applied in a fixed order and every rule that fires is recorded
with its provenance: ``computed-here`` for checks carried out by this
package, ``cited-external`` for published results encoded as table entries.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .divgeo import AssumptionReport, SingularityReport, nonnormal_degree, sample_assumption
from .endo import (
    Endomorphism,
    InvarianceCertificate,
    NotSquarefreeError,
    RamificationData,
    component_avoids_R,
    is_squarefree,
    is_totally_invariant,
    iterate,
    log_ramification,
)
from .idealeng import BudgetExceeded
from .logchern import C2Comparison, c2_comparison
from .polyring import Polynomial

COMPUTED = "computed-here"
CITED = "cited-external"


class Conclusion(str, enum.Enum):
    HYPERPLANE_OK = "HyperplaneOK"
    NOT_INVARIANT = "NotInvariant"
    CONTRADICTION_BY_BOUND = "ContradictionByBound"
    CONTRADICTION_BY_DELTA_BOUND = "ContradictionByDeltaBound"
    EXCLUDED_BY_CITED_RESULT = "ExcludedByCitedResult"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Rule:
    tag: str
    provenance: str
    detail: str = ""
    citation: str | None = None


@dataclass
class Verdict:
    n: int
    d: int
    m: int
    invariant: bool
    certificate: InvarianceCertificate | None
    threshold: Fraction
    conclusion: Conclusion
    exclusion: str | None = None
    degZ: int | None = None
    delta_cap: int | None = None
    rules_fired: list[Rule] = field(default_factory=list)
    iterate_used: int = 1
    ramification: RamificationData | None = None
    singularities: SingularityReport | None = None
    comparison: C2Comparison | None = None
    assumption: AssumptionReport | None = None
    annotations: dict[str, Any] = field(default_factory=dict)


def bound_threshold(n: int, d: int) -> Fraction:
    """(d-1)^2 - n(n-1)/2; an invariant prime divisor needs deg Z above it."""
    return Fraction((d - 1) ** 2) - Fraction(n * (n - 1), 2)


def plane_curve_delta_bound(k: int) -> int:
    """Maximal number of singular points of an irreducible plane curve of degree k."""
    if k < 1:
        raise ValueError("degree must be positive")
    return (k - 1) * (k - 2) // 2


def normality_obstruction(n: int, d: int) -> bool:
    """(d-1)^2 >= n(n-1)/2, in integers: then Z cannot be empty."""
    return 2 * (d - 1) ** 2 >= n * (n - 1)


def degree_n_exclusion(n: int, degZ: int | None = None) -> bool:
    """For d = n the strict lower bound on deg Z meets the plane-curve cap.

    deg Z > threshold(n, n) is impossible once threshold(n, n) >= delta(n);
    degZ is accepted for reporting only.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    return bound_threshold(n, n) >= plane_curve_delta_bound(n)


@dataclass(frozen=True)
class AnalysisConfig:
    seed: int = 0
    iterate: int = 1
    trials: int = 16
    degz_override: int | None = None
    annotate: bool = True


def decide(n: int, d: int, invariant: bool, degZ: int | None = None) -> tuple[Conclusion, list[Rule], str | None]:
    """Pure decision table over already-computed facts."""
    rules: list[Rule] = []
    if not invariant:
        rules.append(Rule("total-invariance", COMPUTED, "F o f is not a scalar times F^m"))
        return Conclusion.NOT_INVARIANT, rules, None
    rules.append(Rule("total-invariance", COMPUTED, "F o f = c * F^m"))
    if d == 1:
        rules.append(Rule("hyperplane", COMPUTED, "d = 1"))
        return Conclusion.HYPERPLANE_OK, rules, None
    if d == n + 1:
        rules.append(Rule("degree-n+1", CITED, "invariant prime divisors of degree n+1 are excluded",
                          "Hwang-Nakayama 2011, Thm. 2.1"))
        return Conclusion.EXCLUDED_BY_CITED_RESULT, rules, "d = n+1"
    if d > n + 1:
        rules.append(Rule("log-ramification-degree", COMPUTED,
                          f"deg R = (m-1)(n+1-d) < 0 for d = {d} > n+1; no effective R"))
        return Conclusion.INCONCLUSIVE, rules, None
    if d == n:
        rules.append(Rule("degree-n-delta-bound", COMPUTED,
                          f"threshold {bound_threshold(n, n)} >= plane-curve cap {plane_curve_delta_bound(n)}; "
                          "presumes D prime (irreducibility not verified)"))
        if degree_n_exclusion(n, degZ):
            return Conclusion.CONTRADICTION_BY_DELTA_BOUND, rules, None
    if degZ is None:
        return Conclusion.INCONCLUSIVE, rules, None
    cmp = c2_comparison(n, d, degZ)
    thr = bound_threshold(n, d)
    if cmp.contradiction:
        rules.append(Rule("c2-bound", COMPUTED, f"deg Z = {degZ} <= threshold {thr}"))
        return Conclusion.CONTRADICTION_BY_BOUND, rules, None
    rules.append(Rule("c2-bound", COMPUTED, f"deg Z = {degZ} > threshold {thr}: bound satisfied"))
    return Conclusion.INCONCLUSIVE, rules, None


def _prepare(f: Endomorphism, F: Polynomial, config: AnalysisConfig) -> tuple[Endomorphism, int]:
    if F.nvars != f.n + 1:
        raise ValueError("divisor and endomorphism live in different projective spaces")
    d = F.is_homogeneous()
    if d is None or d == 0:
        raise ValueError("divisor must be a nonconstant homogeneous form")
    if not is_squarefree(F):
        raise NotSquarefreeError("divisor form has a repeated factor")
    g = iterate(f, config.iterate) if config.iterate > 1 else f
    return g, d


def analyze(f: Endomorphism, F: Polynomial, config: AnalysisConfig = AnalysisConfig()) -> Verdict:
    """Run the pipeline.  A BudgetExceeded raised midway carries the
    stages finished so far as ``partial``."""
    g, d = _prepare(f, F, config)
    n = g.n
    cert = is_totally_invariant(g, F, check_squarefree=False)
    verdict = Verdict(n, d, g.m, cert.invariant, cert, bound_threshold(n, d), Conclusion.INCONCLUSIVE,
                      iterate_used=config.iterate)
    if not cert.invariant:
        verdict.conclusion, verdict.rules_fired, _ = decide(n, d, False)
        return verdict
    try:
        _analyze_invariant(g, F, d, config, verdict)
    except BudgetExceeded as exc:
        exc.partial = verdict
        raise
    return verdict


def _analyze_invariant(g: Endomorphism, F: Polynomial, d: int, config: AnalysisConfig, verdict: Verdict) -> None:
    n = g.n
    ram = log_ramification(g, F)
    verdict.ramification = ram
    degZ = None
    if 2 <= d <= n:
        sing = nonnormal_degree(F, config.seed)
        verdict.singularities = sing
        degZ = sing.z_degree
        if config.annotate and config.trials > 0:
            verdict.assumption = sample_assumption(F, config.trials, config.seed)
        if config.annotate and ram.effective and sing.z_degree:
            verdict.annotations["sing_locus_avoids_R"] = component_avoids_R(ram, sing.sing_ideal)
    if config.degz_override is not None:
        degZ = config.degz_override
        verdict.annotations["degZ_overridden"] = True
    verdict.degZ = degZ
    if d == n:
        verdict.delta_cap = plane_curve_delta_bound(n)
    conclusion, rules, exclusion = decide(n, d, True, degZ)
    if verdict.degZ is not None and 1 <= d <= n:
        verdict.comparison = c2_comparison(n, d, verdict.degZ)
    verdict.conclusion, verdict.rules_fired, verdict.exclusion = conclusion, rules, exclusion


def classify_p3(f: Endomorphism, F: Polynomial, config: AnalysisConfig = AnalysisConfig()) -> Verdict:
    """Decision table for invariant prime divisors of endomorphisms of P^3."""
    if f.n != 3:
        raise ValueError("classify_p3 needs an endomorphism of P^3")
    g, d = _prepare(f, F, config)
    cert = is_totally_invariant(g, F, check_squarefree=False)
    verdict = Verdict(3, d, g.m, cert.invariant, cert, bound_threshold(3, d), Conclusion.INCONCLUSIVE,
                      iterate_used=config.iterate)
    if not cert.invariant:
        verdict.conclusion, verdict.rules_fired, _ = decide(3, d, False)
        return verdict
    rules = [Rule("total-invariance", COMPUTED, "F o f = c * F^m")]
    if d == 1:
        rules.append(Rule("hyperplane", COMPUTED, "d = 1"))
        verdict.conclusion = Conclusion.HYPERPLANE_OK
    elif d == 2:
        rules.append(Rule("p3-quadric", CITED, "invariant prime quadrics in P^3 are excluded",
                          "Zhang 2013, Thm. 1.1 with Nakayama-Zhang 2010, Thm. 1.5(5)"))
        verdict.conclusion = Conclusion.EXCLUDED_BY_CITED_RESULT
        verdict.exclusion = "P3 d = 2"
    elif d == 3:
        rules.append(Rule("degree-n-delta-bound", COMPUTED,
                          "threshold 1 >= plane-curve cap 1; presumes D prime (irreducibility not verified)"))
        verdict.conclusion = Conclusion.CONTRADICTION_BY_DELTA_BOUND
        verdict.delta_cap = plane_curve_delta_bound(3)
    elif d == 4:
        rules.append(Rule("degree-n+1", CITED, "invariant prime divisors of degree n+1 are excluded",
                          "Hwang-Nakayama 2011, Thm. 2.1"))
        verdict.conclusion = Conclusion.EXCLUDED_BY_CITED_RESULT
        verdict.exclusion = "d = n+1"
    else:
        rules.append(Rule("log-ramification-degree", COMPUTED, f"d = {d} > 4 leaves no effective R"))
    verdict.rules_fired = rules
    return verdict
