from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import nonzero_rationals
from invdiv.endo import NotSquarefreeError, validate
from invdiv.idealeng import BudgetExceeded, GroebnerConfig, configured
from invdiv.logchern import c2_comparison
from invdiv.polyring import Polynomial, parse_poly
from invdiv.verdict import (
    CITED,
    COMPUTED,
    AnalysisConfig,
    Conclusion,
    analyze,
    bound_threshold,
    classify_p3,
    decide,
    degree_n_exclusion,
    normality_obstruction,
    plane_curve_delta_bound,
)


def power_map(n, m=2, scale=1):
    return validate([Polynomial.var(n + 1, i) ** m * scale for i in range(n + 1)])


def coordinate_product(n, k):
    """X0*...*X(k-1) in n+1 variables."""
    p = Polynomial.constant(n + 1, 1)
    for i in range(k):
        p = p * Polynomial.var(n + 1, i)
    return p


class TestArithmetic:
    @pytest.mark.parametrize("n, d, thr", [(2, 2, 0), (3, 3, 1), (3, 2, -2), (4, 4, 3), (6, 5, 1), (5, 4, -1)])
    def test_threshold(self, n, d, thr):
        assert bound_threshold(n, d) == thr

    def test_threshold_negative_values(self):
        assert bound_threshold(4, 3) == Fraction(-2)
        assert bound_threshold(5, 1) == -10
        assert bound_threshold(6, 2) == -14

    @pytest.mark.parametrize("k, cap", [(1, 0), (2, 0), (3, 1), (4, 3), (5, 6), (6, 10)])
    def test_delta_cap(self, k, cap):
        assert plane_curve_delta_bound(k) == cap

    def test_delta_cap_domain(self):
        with pytest.raises(ValueError):
            plane_curve_delta_bound(0)

    def test_delta_cap_is_arithmetic_genus(self):
        # genus of a smooth plane curve of degree k by adjunction: (k-3)k/2 + 1
        for k in range(1, 30):
            assert plane_curve_delta_bound(k) == (k - 3) * k // 2 + 1

    @pytest.mark.parametrize("n", range(2, 13))
    def test_degree_n_exclusion(self, n):
        assert degree_n_exclusion(n)
        assert degree_n_exclusion(n, degZ=0)
        assert bound_threshold(n, n) == plane_curve_delta_bound(n)

    def test_degree_n_threshold_meets_cap_formally(self):
        n = sympy.symbols("n")
        assert sympy.expand((n - 1) ** 2 - n * (n - 1) / 2 - (n - 1) * (n - 2) / 2) == 0

    def test_degree_n_domain(self):
        with pytest.raises(ValueError):
            degree_n_exclusion(1)

    @pytest.mark.parametrize("n", range(2, 13))
    def test_obstruction_matches_threshold_sign(self, n):
        for d in range(1, 3 * n):
            assert normality_obstruction(n, d) == (bound_threshold(n, d) >= 0)

    def test_obstruction_examples(self):
        assert normality_obstruction(3, 3) and not normality_obstruction(3, 2)
        assert normality_obstruction(2, 2) and not normality_obstruction(2, 1)


class TestDecide:
    def test_not_invariant(self):
        concl, rules, _ = decide(3, 2, False)
        assert concl is Conclusion.NOT_INVARIANT and [r.tag for r in rules] == ["total-invariance"]

    def test_hyperplane(self):
        assert decide(5, 1, True)[0] is Conclusion.HYPERPLANE_OK

    def test_degree_n_plus_one_is_cited(self):
        concl, rules, excl = decide(3, 4, True, degZ=100)
        assert concl is Conclusion.EXCLUDED_BY_CITED_RESULT and excl == "d = n+1"
        assert rules[-1].provenance == CITED and rules[-1].citation

    def test_degree_above_n_plus_one(self):
        concl, rules, _ = decide(3, 6, True)
        assert concl is Conclusion.INCONCLUSIVE and rules[-1].tag == "log-ramification-degree"

    def test_degree_n(self):
        concl, rules, _ = decide(4, 4, True, degZ=50)
        assert concl is Conclusion.CONTRADICTION_BY_DELTA_BOUND
        assert rules[-1].provenance == COMPUTED and "presumes D prime" in rules[-1].detail

    def test_bound_at_and_past_threshold(self):
        # n = 6, d = 5: threshold 1
        assert decide(6, 5, True, degZ=1)[0] is Conclusion.CONTRADICTION_BY_BOUND
        assert decide(6, 5, True, degZ=0)[0] is Conclusion.CONTRADICTION_BY_BOUND
        assert decide(6, 5, True, degZ=2)[0] is Conclusion.INCONCLUSIVE

    def test_missing_degz(self):
        assert decide(6, 5, True)[0] is Conclusion.INCONCLUSIVE

    @settings(max_examples=300, deadline=None)
    @given(st.integers(2, 12), st.integers(2, 40), st.booleans(), st.none() | st.integers(0, 100))
    def test_hyperplane_only_for_lines(self, n, d, inv, degZ):
        assert decide(n, d, inv, degZ)[0] is not Conclusion.HYPERPLANE_OK

    @settings(max_examples=300, deadline=None)
    @given(st.integers(2, 12), st.integers(2, 12), st.integers(0, 60))
    def test_bound_rule_agrees_with_comparison(self, n, d, degZ):
        if d >= n:
            return
        concl, _, _ = decide(n, d, True, degZ)
        expected = Conclusion.CONTRADICTION_BY_BOUND if c2_comparison(n, d, degZ).contradiction else Conclusion.INCONCLUSIVE
        assert concl is expected
        assert (concl is Conclusion.CONTRADICTION_BY_BOUND) == (degZ <= bound_threshold(n, d))


class TestAnalyze:
    def test_hyperplane(self):
        v = analyze(power_map(2), parse_poly("X0", 3))
        assert v.conclusion is Conclusion.HYPERPLANE_OK and v.degZ is None

    def test_not_invariant(self):
        v = analyze(power_map(2), parse_poly("X0*X2 - X1^2", 3))
        assert v.conclusion is Conclusion.NOT_INVARIANT and v.certificate.failed_stage == 2
        assert v.ramification is None and v.singularities is None

    def test_line_pair_in_plane(self):
        v = analyze(power_map(2), parse_poly("X0*X1", 3))
        assert v.conclusion is Conclusion.CONTRADICTION_BY_DELTA_BOUND
        assert (v.degZ, v.delta_cap, v.threshold) == (1, 0, 0)
        assert v.assumption.passed

    def test_triangle(self):
        v = analyze(power_map(2), coordinate_product(2, 3))
        assert v.conclusion is Conclusion.EXCLUDED_BY_CITED_RESULT and v.exclusion == "d = n+1"

    def test_plane_pair_in_p3(self):
        v = analyze(power_map(3), parse_poly("X0*X1", 4))
        assert v.conclusion is Conclusion.INCONCLUSIVE
        assert v.degZ == 1 and v.threshold == -2
        assert not v.comparison.contradiction
        # the singular line X0 = X1 = 0 is not contained in R = V(X2*X3)
        assert v.annotations["sing_locus_avoids_R"] is True

    def test_three_planes_in_p3(self):
        v = analyze(power_map(3), coordinate_product(3, 3), AnalysisConfig(seed=3))
        assert v.conclusion is Conclusion.CONTRADICTION_BY_DELTA_BOUND and v.degZ == 3

    def test_iterate_recorded(self):
        v = analyze(power_map(2, m=3), parse_poly("X0*X1", 3), AnalysisConfig(iterate=2))
        assert v.m == 9 and v.iterate_used == 2
        assert v.conclusion is Conclusion.CONTRADICTION_BY_DELTA_BOUND

    def test_degz_override_past_threshold(self):
        cfg = AnalysisConfig(degz_override=int(bound_threshold(3, 2)) + 3, trials=0)
        v = analyze(power_map(3), parse_poly("X0*X1", 4), cfg)
        assert v.conclusion is Conclusion.INCONCLUSIVE and v.annotations["degZ_overridden"]

    def test_degz_override_ignored_for_degree_n(self):
        # d = n is decided by the degree-n rule whatever deg Z is
        v = analyze(power_map(2), parse_poly("X0*X1", 3), AnalysisConfig(degz_override=7))
        assert v.conclusion is Conclusion.CONTRADICTION_BY_DELTA_BOUND

    def test_input_checks(self):
        with pytest.raises(ValueError):
            analyze(power_map(2), parse_poly("X0", 4))
        with pytest.raises(ValueError):
            analyze(power_map(2), parse_poly("X0 + X1^2", 3))
        with pytest.raises(NotSquarefreeError):
            analyze(power_map(2), parse_poly("X0^2", 3))

    def test_budget_before_invariance_has_no_partial(self):
        with configured(GroebnerConfig(max_basis=1)):
            with pytest.raises(BudgetExceeded) as info:
                analyze(power_map(3), coordinate_product(3, 3))
        assert getattr(info.value, "partial", None) is None

    def test_budget_carries_partial_verdict(self):
        with configured(GroebnerConfig(max_coeff_bits=24)):
            with pytest.raises(BudgetExceeded) as info:
                analyze(power_map(3), coordinate_product(3, 3))
        partial = info.value.partial
        assert partial.invariant and partial.ramification is not None

    @settings(max_examples=10, deadline=None)
    @given(nonzero_rationals, st.sampled_from([1, 2, 3]).map(Fraction))
    def test_scale_free(self, a, b):
        for n, F in ((2, parse_poly("X0*X1", 3)), (3, parse_poly("X0*X1", 4)), (2, parse_poly("X0*X2 - X1^2", 3))):
            base = analyze(power_map(n), F, AnalysisConfig(trials=0))
            scaled = analyze(power_map(n, scale=b), F * a, AnalysisConfig(trials=0))
            assert (scaled.conclusion, scaled.degZ) == (base.conclusion, base.degZ)


class TestClassifyP3:
    def test_requires_p3(self):
        with pytest.raises(ValueError):
            classify_p3(power_map(2), parse_poly("X0", 3))

    def test_hyperplane(self):
        assert classify_p3(power_map(3), parse_poly("X0", 4)).conclusion is Conclusion.HYPERPLANE_OK

    def test_quadric_rule_only_when_invariant(self):
        smooth = classify_p3(power_map(3), parse_poly("X0*X3 - X1*X2", 4))
        assert smooth.conclusion is Conclusion.NOT_INVARIANT
        assert all(r.provenance == COMPUTED for r in smooth.rules_fired)
        pair = classify_p3(power_map(3), parse_poly("X0*X1", 4))
        assert pair.conclusion is Conclusion.EXCLUDED_BY_CITED_RESULT and pair.exclusion == "P3 d = 2"
        assert pair.rules_fired[-1].provenance == CITED

    def test_cubic(self):
        v = classify_p3(power_map(3), coordinate_product(3, 3))
        assert v.conclusion is Conclusion.CONTRADICTION_BY_DELTA_BOUND and v.delta_cap == 1

    def test_quartic_rule_only_when_invariant(self):
        v = classify_p3(power_map(3), coordinate_product(3, 4))
        assert v.conclusion is Conclusion.EXCLUDED_BY_CITED_RESULT and v.exclusion == "d = n+1"
        fermat = classify_p3(power_map(3), parse_poly("X0^4 + X1^4 + X2^4 + X3^4", 4))
        assert fermat.conclusion is Conclusion.NOT_INVARIANT

    def test_agrees_with_analyze(self):
        for F in (parse_poly("X0", 4), coordinate_product(3, 3), coordinate_product(3, 4), parse_poly("X0 + X1", 4)):
            assert classify_p3(power_map(3), F).conclusion is analyze(power_map(3), F).conclusion
