"""Zero-dimensional loci: quotient algebras, distinct-point counts, generic
linear sections, and rational points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..linalg import (
    IncrementalBasis,
    random_invertible,
    random_matrix,
    rank,
    upoly_squarefree_part,
)
from ..polyring import Polynomial
from .ideal import Ideal, proj_profile

# coefficient box for "general position" choices
BOX = 10**4
MAX_RETRIES = 8
MAX_QUOTIENT_DIM = 20000


class PositiveDimensionalError(ValueError):
    """A zero-dimensional locus was required."""


class DegenerateSectionError(RuntimeError):
    """Repeated random choices all landed in special position."""


def standard_monomials(ideal: Ideal) -> list[tuple[int, ...]]:
    """Monomials outside the initial ideal (finite for 0-dim ideals)."""
    lms = ideal.leading_monomials()
    n = ideal.nvars
    if any(sum(m) == 0 for m in lms):
        return []
    for i in range(n):
        if not any(m[i] and sum(m) == m[i] for m in lms):
            raise PositiveDimensionalError("affine ideal is not zero-dimensional")
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                e = list(m)
                e[i] += 1
                e = tuple(e)
                if e in seen or any(all(a <= b for a, b in zip(l, e)) for l in lms):
                    continue
                seen.add(e)
                nxt.append(e)
        if len(seen) > MAX_QUOTIENT_DIM:
            raise PositiveDimensionalError("quotient algebra too large")
        frontier = nxt
    return sorted(seen, key=lambda m: (sum(m), m))


def minimal_polynomial(ideal: Ideal, var: int) -> list[Fraction]:
    """Monic generator of I cap Q[x_var], constant term first (0-dim I)."""
    monos = standard_monomials(ideal)
    if not monos:
        return [Fraction(1)]
    index = {m: k for k, m in enumerate(monos)}
    n = ideal.nvars
    x = Polynomial.var(n, var)

    def vector(p: Polynomial) -> list[Fraction]:
        v = [Fraction(0)] * len(monos)
        for m, c in p.terms.items():
            v[index[m]] = c
        return v

    basis = IncrementalBasis(len(monos))
    power = Polynomial.constant(n, 1)
    while True:
        dep = basis.add(vector(power))
        if dep is not None:
            return [-c for c in dep] + [Fraction(1)]
        power = ideal.normal_form(power * x)


def _univariate(coeffs: Sequence[Fraction], nvars: int, var: int) -> Polynomial:
    terms = {}
    for k, c in enumerate(coeffs):
        e = [0] * nvars
        e[var] = k
        terms[tuple(e)] = c
    return Polynomial(nvars, terms)


def radical_quotient_dimension(ideal: Ideal) -> int:
    """dim_Q of Q[x]/rad(I) for a 0-dim affine ideal.

    rad(I) = I + (squarefree parts of the eliminants in each variable).
    """
    n = ideal.nvars
    extra = [
        _univariate(upoly_squarefree_part(minimal_polynomial(ideal, i)), n, i)
        for i in range(n)
    ]
    return len(standard_monomials(ideal + extra))


@dataclass(frozen=True)
class PointCount:
    count: int
    seed: int
    attempts: int


def count_distinct_points_detailed(ideal: Ideal, seed: int = 0, max_retries: int = MAX_RETRIES) -> PointCount:
    prof = proj_profile(ideal)
    if prof.dimension < 0:
        return PointCount(0, seed, 0)
    if prof.dimension > 0:
        raise PositiveDimensionalError(f"V(I) has dimension {prof.dimension}")
    n = ideal.nvars
    if n == 1:
        return PointCount(1, seed, 0)
    rng = random.Random(seed)
    for attempt in range(1, max_retries + 1):
        a = random_invertible(rng, n, BOX)
        forms = [Polynomial.linear_form(row) for row in a]
        moved = ideal.pullback(forms)
        # no point may sit on the hyperplane X0 = 0
        if not proj_profile(moved + [Polynomial.var(n, 0)]).empty:
            continue
        aff = Ideal([g.dehomogenize(0) for g in moved.generators], n - 1)
        eliminant = minimal_polynomial(aff, n - 2)
        count = len(upoly_squarefree_part(eliminant)) - 1
        # the last coordinate must separate the points
        if count == radical_quotient_dimension(aff):
            return PointCount(count, seed, attempt)
    raise DegenerateSectionError(f"no generic coordinate change found in {max_retries} attempts")


def count_distinct_points(ideal: Ideal, seed: int = 0) -> int:
    """Number of distinct points of a zero-dimensional V(I) in projective space."""
    return count_distinct_points_detailed(ideal, seed).count


def linear_maps(matrix: Sequence[Sequence[Fraction]]) -> list[Polynomial]:
    """Row i of the matrix becomes the linear form substituted for X_i."""
    return [Polynomial.linear_form(row) for row in matrix]


@dataclass(frozen=True)
class Section:
    ideal: Ideal
    matrix: list[list[Fraction]]


def generic_section(ideal: Ideal, dim: int, rng: random.Random) -> Section:
    """Restrict V(I) to a random linear subspace of dimension ``dim``.

    The subspace is the image of a random (n+1) x (dim+1) matrix, so the
    restricted ideal lives in dim+1 variables.
    """
    n1 = ideal.nvars
    while True:
        m = random_matrix(rng, n1, dim + 1, BOX)
        if rank(m) == dim + 1:
            break
    return Section(ideal.pullback(linear_maps(m)), m)


@dataclass(frozen=True)
class ReducedDegree:
    dimension: int
    degree: int
    seed: int
    attempts: int


def reduced_top_degree(ideal: Ideal, seed: int = 0, max_retries: int = MAX_RETRIES) -> ReducedDegree:
    """Degree of the reduced top-dimensional part of V(I): distinct points on
    a generic linear section of complementary dimension."""
    prof = proj_profile(ideal)
    if prof.empty:
        return ReducedDegree(-1, 0, seed, 0)
    n = ideal.nvars - 1
    rng = random.Random(seed)
    for attempt in range(1, max_retries + 1):
        sec = generic_section(ideal, n - prof.dimension, rng)
        if proj_profile(sec.ideal).dimension != 0:
            continue
        sub_seed = rng.randrange(2**32)
        try:
            pc = count_distinct_points_detailed(sec.ideal, sub_seed)
        except DegenerateSectionError:
            continue
        return ReducedDegree(prof.dimension, pc.count, seed, attempt)
    raise DegenerateSectionError(f"no generic section found in {max_retries} attempts")


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Distinct rational roots of a univariate polynomial, ascending."""
    import sympy

    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    roots = poly.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def rational_points_affine(ideal: Ideal) -> list[tuple[Fraction, ...]]:
    """All rational points of a zero-dimensional affine V(I)."""
    n = ideal.nvars
    if ideal.is_unit():
        return []
    if n == 0:
        return [()]
    pts = []
    for r in rational_roots(minimal_polynomial(ideal, n - 1)):
        sub = Ideal(
            [g.substitute({n - 1: r}).drop_variables([n - 1]) for g in ideal.generators],
            n - 1,
        )
        pts.extend(q + (r,) for q in rational_points_affine(sub))
    return sorted(pts)


def rational_points_projective(ideal: Ideal) -> list[tuple[Fraction, ...]]:
    """Rational points of a zero-dimensional projective V(I), normalized so
    the first nonzero coordinate is 1."""
    n = ideal.nvars
    if n == 0:
        return []
    if proj_profile(ideal).dimension > 0:
        raise PositiveDimensionalError("projective locus is not finite")
    chart = Ideal([g.dehomogenize(0) for g in ideal.generators], n - 1)
    pts = [(Fraction(1),) + p for p in rational_points_affine(chart)]
    if n > 1:
        rest = Ideal([g.substitute({0: 0}).drop_variables([0]) for g in ideal.generators], n - 1)
        pts.extend((Fraction(0),) + p for p in rational_points_projective(rest))
    return pts
