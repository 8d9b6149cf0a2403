
import pytest
import sympy
from hypothesis import given, settings

from helpers import homogeneous_polynomials, nonzero_rationals, symbols, to_sympy
from invdiv.endo import (
    EndomorphismError,
    NotSquarefreeError,
    component_avoids_R,
    is_squarefree,
    is_totally_invariant,
    is_totally_invariant_subvariety,
    iterate,
    log_ramification,
    ramification_degree_identity,
    validate,
)
from invdiv.idealeng import Ideal, proj_profile
from invdiv.polyring import Polynomial, parse_poly


def forms(nvars, *texts):
    return [parse_poly(t, nvars) for t in texts]


def squaring(n):
    return validate([Polynomial.var(n + 1, i) ** 2 for i in range(n + 1)])


def I(nvars, *gens):
    return Ideal(forms(nvars, *gens), nvars)


class TestValidate:
    def test_squaring(self):
        f = validate(forms(3, "X0^2", "X1^2", "X2^2"))
        assert (f.n, f.m) == (2, 2)

    def test_common_zero(self):
        with pytest.raises(EndomorphismError) as info:
            validate(forms(3, "X0^2", "X0*X1", "X1^2"))
        w = info.value.witness
        assert (w["dimension"], w["degree"]) == (0, 1)

    def test_degree_mismatch(self):
        with pytest.raises(EndomorphismError, match="degree mismatch"):
            validate(forms(3, "X0", "X1^2", "X2^2"))

    def test_degree_zero(self):
        with pytest.raises(EndomorphismError):
            validate(forms(2, "1", "2"))

    def test_arity(self):
        with pytest.raises(EndomorphismError):
            validate(forms(3, "X0^2", "X1^2"))

    @settings(max_examples=40, deadline=None)
    @given(homogeneous_polynomials(nvars=2, degree=2, max_terms=3), homogeneous_polynomials(nvars=2, degree=2, max_terms=3))
    def test_binary_forms_against_gcd(self, a, b):
        # two binary forms share a projective zero iff their gcd is nonconstant
        x = symbols(2)
        g = sympy.gcd(to_sympy(a, x), to_sympy(b, x))
        expect_common = sympy.Poly(g, *x).total_degree() > 0
        try:
            validate([a, b])
            common = False
        except EndomorphismError:
            common = True
        assert common == expect_common
        assert common == (not proj_profile(Ideal([a, b], 2)).empty)


class TestIterate:
    def test_squares(self):
        f = squaring(2)
        g = iterate(f, 2)
        assert g.m == 4 and g.forms == tuple(Polynomial.var(3, i) ** 4 for i in range(3))
        assert iterate(f, 1) == f
        assert iterate(f, 3).m == 8

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            iterate(squaring(2), 0)


class TestInvariance:
    def test_coordinate_line(self):
        cert = is_totally_invariant(squaring(2), parse_poly("X0", 3))
        assert cert.invariant and cert.scalar == 1

    def test_conic_fails_second_division(self):
        cert = is_totally_invariant(squaring(2), parse_poly("X0*X2 - X1^2", 3))
        assert not cert.invariant
        assert cert.failed_stage == 2

    def test_coordinate_triangle(self):
        cert = is_totally_invariant(squaring(2), parse_poly("X0*X1*X2", 3))
        assert cert.invariant and cert.scalar == 1

    def test_smooth_quadric_in_p3(self):
        # (X0X3 - X1X2) o sq = (X0X3 - X1X2)(X0X3 + X1X2): one division succeeds
        cert = is_totally_invariant(squaring(3), parse_poly("X0*X3 - X1*X2", 4))
        assert not cert.invariant and cert.failed_stage == 2

    def test_sum_hyperplane(self):
        cert = is_totally_invariant(squaring(3), parse_poly("X0 + X1", 4))
        assert not cert.invariant and cert.failed_stage == 1

    def test_binary_second_division(self):
        # (X0 - X1) o f = (X0 - X1)(X0 + X1)
        f = validate(forms(2, "X0^2", "X1^2"))
        cert = is_totally_invariant(f, parse_poly("X0 - X1", 2))
        assert not cert.invariant and cert.failed_stage == 2

    def test_rejects_bad_divisors(self):
        f = squaring(2)
        with pytest.raises(NotSquarefreeError):
            is_totally_invariant(f, parse_poly("X0^2", 3))
        with pytest.raises(ValueError):
            is_totally_invariant(f, parse_poly("0", 3))
        with pytest.raises(ValueError):
            is_totally_invariant(f, parse_poly("X0 + X1^2", 3))

    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_iterate_scalar(self, l):
        f = validate(forms(3, "2*X0^2", "X1^2", "X2^2"))
        F = parse_poly("X0", 3)
        c = is_totally_invariant(f, F).scalar
        assert c == 2
        m = f.m
        cert = is_totally_invariant(iterate(f, l), F)
        assert cert.invariant
        assert cert.scalar == c ** ((m**l - 1) // (m - 1))

    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_iterate_triangle(self, l):
        f = validate(forms(3, "X0^2", "-X1^2", "3*X2^2"))
        F = parse_poly("X0*X1*X2", 3)
        c = is_totally_invariant(f, F).scalar
        assert c == -3
        assert is_totally_invariant(iterate(f, l), F).scalar == c ** ((2**l - 1) // 1)

    @settings(max_examples=20, deadline=None)
    @given(nonzero_rationals, nonzero_rationals)
    def test_rescaling(self, a, b):
        f = squaring(2)
        scaled = validate([g * b for g in f.forms])
        for text in ("X0", "X0*X1*X2", "X0*X2 - X1^2"):
            F = parse_poly(text, 3)
            assert is_totally_invariant(f, F).invariant == is_totally_invariant(scaled, F * a).invariant


class TestSubvariety:
    def test_coordinate_line(self):
        assert is_totally_invariant_subvariety(squaring(3), I(4, "X0", "X1"))

    def test_point_with_extra_preimage(self):
        assert not is_totally_invariant_subvariety(squaring(2), I(3, "X0 - X1", "X2"))

    def test_empty(self):
        assert is_totally_invariant_subvariety(squaring(2), I(3, "X0", "X1", "X2"))


class TestRamification:
    def test_coordinate_line(self):
        r = log_ramification(squaring(2), parse_poly("X0", 3))
        assert r.jac == parse_poly("8*X0*X1*X2", 3)
        assert r.effective and r.log_residual == parse_poly("8*X1*X2", 3)
        assert r.residual_degree == 2
        assert r.divisor_multiplicity_of_F == 1

    def test_triangle(self):
        r = log_ramification(squaring(2), parse_poly("X0*X1*X2", 3))
        assert r.effective and r.log_residual == parse_poly("8", 3)

    def test_degree_audit(self):
        r = log_ramification(squaring(2), parse_poly("X0", 3))
        assert r.jac.total_degree == (2 + 1) * (2 - 1) == 3

    def test_failed_division_reported(self):
        r = log_ramification(squaring(2), parse_poly("X0 + X1", 3))
        assert not r.effective and r.failed_stage == 1 and r.log_residual is None

    @pytest.mark.parametrize(
        "n, m, F",
        [(2, 2, "X0"), (2, 2, "X0*X1"), (2, 2, "X0*X1*X2"), (3, 2, "X0*X1"), (2, 3, "X0*X2"), (3, 3, "X1*X2*X3")],
    )
    def test_divisor_degree_bookkeeping(self, n, m, F):
        f = validate([Polynomial.var(n + 1, i) ** m for i in range(n + 1)])
        F = parse_poly(F, n + 1)
        assert is_totally_invariant(f, F)
        r = log_ramification(f, F)
        d = F.is_homogeneous()
        assert r.jac.total_degree == (n + 1) * (m - 1)
        assert ramification_degree_identity(n, m, d, r.residual_degree)

    def test_avoids_R(self):
        r = log_ramification(squaring(2), parse_poly("X0", 3))
        assert not component_avoids_R(r, I(3, "X0", "X1"))
        assert component_avoids_R(r, I(3, "X0", "X1 - X2"))
        const = log_ramification(squaring(2), parse_poly("X0*X1*X2", 3))
        assert component_avoids_R(const, I(3, "X0", "X1"))


class TestSquarefree:
    @pytest.mark.parametrize("text, expected", [("X0*X1", True), ("X0^2*X1", False), ("X0*X2 - X1^2", True), ("(X0 + X1)^2", False)])
    def test_examples(self, text, expected):
        assert is_squarefree(parse_poly(text, 3)) is expected

    @settings(max_examples=20, deadline=None)
    @given(homogeneous_polynomials(nvars=3, degree=1, max_terms=3), homogeneous_polynomials(nvars=3, degree=2, max_terms=3))
    def test_square_factor_detected(self, a, b):
        assert not is_squarefree(a * a * b)
