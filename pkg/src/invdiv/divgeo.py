"""Singularities of a hypersurface D = V(F) in P^n.

Covers the singular locus, the degree of its codimension-two part Z (the
non-normal locus of a reduced hypersurface), tangent-cone normal-crossing
tests at rational points, and sampled evidence that D has only normal
crossings at general points of Z.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .idealeng import (
    Ideal,
    ProjectiveProfile,
    count_distinct_points,
    generic_section,
    proj_profile,
    rational_points_projective,
    reduced_top_degree,
)
from .polyring import Polynomial

Point = tuple[Fraction, ...]


def normalize_point(p: Sequence) -> Point:
    """Scale so the first nonzero coordinate is 1."""
    pt = tuple(Fraction(x) for x in p)
    lead = next((x for x in pt if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(x / lead for x in pt)


def singular_locus(F: Polynomial) -> Ideal:
    """Ideal of all partial derivatives; F itself is redundant since
    sum X_i dF/dX_i = deg(F) F in characteristic zero."""
    if F.is_homogeneous() is None:
        raise ValueError("F must be a nonzero homogeneous form")
    if F.is_constant():
        raise ValueError("F must be nonconstant")
    return Ideal(F.gradient(), F.nvars)


@dataclass(frozen=True)
class SingularityReport:
    n: int
    sing_ideal: Ideal
    sing_profile: ProjectiveProfile
    z_degree: int
    z_is_pure_expected_dim: bool
    section_seed: int
    section_attempts: int


def nonnormal_degree(F: Polynomial, seed: int = 0) -> SingularityReport:
    """Degree of the reduced (n-2)-dimensional part of Sing(V(F))."""
    n = F.nvars - 1
    sing = singular_locus(F)
    prof = proj_profile(sing)
    if prof.dimension < n - 2:
        return SingularityReport(n, sing, prof, 0, True, seed, 0)
    red = reduced_top_degree(sing, seed)
    return SingularityReport(n, sing, prof, red.degree, prof.dimension == n - 2, seed, red.attempts)


# -- local analysis at a point ---------------------------------------------


class NCStatus(str, enum.Enum):
    SMOOTH = "Smooth"
    NORMAL_CROSSING = "NormalCrossing"
    NOT_NORMAL_CROSSING = "NotNormalCrossing"
    INDETERMINATE = "Indeterminate"


class PointNotOnDivisor(ValueError):
    pass


@dataclass(frozen=True)
class LocalModel:
    """F near p: chart index, affine coordinates of p, and the translated
    dehomogenized equation g with g(0) = 0."""

    chart: int
    affine_point: Point
    fb: Polynomial
    g: Polynomial
    multiplicity: int

    def lowest_part(self) -> Polynomial:
        return self.g.homogeneous_parts()[self.multiplicity]


def chart_of(p: Sequence) -> int:
    return next(i for i, x in enumerate(p) if x)


def local_model(F: Polynomial, p: Sequence) -> LocalModel:
    pt = normalize_point(p)
    if len(pt) != F.nvars:
        raise ValueError(f"point has {len(pt)} coordinates, F has {F.nvars} variables")
    chart = chart_of(pt)
    a = tuple(x / pt[chart] for i, x in enumerate(pt) if i != chart)
    fb = F.dehomogenize(chart)
    n = fb.nvars
    shift = [Polynomial.var(n, j) + a[j] for j in range(n)]
    g = fb.compose(shift) if n else fb
    if g.is_zero():
        raise ValueError("F is identically zero")
    mult = min(sum(m) for m in g.terms)
    return LocalModel(chart, a, fb, g, mult)


def quadratic_form_matrix(q: Polynomial) -> list[list[Fraction]]:
    n = q.nvars
    mat = [[Fraction(0)] * n for _ in range(n)]
    for m, c in q.terms.items():
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            mat[i][i] += c
        else:
            mat[i][j] += c / 2
            mat[j][i] += c / 2
    return mat


def essential_rank(form: Polynomial) -> int:
    """Number of linear forms needed to write a homogeneous form: the rank of
    its (k-1)-th order partial derivatives."""
    k = form.is_homogeneous()
    if not k:
        return 0
    n = form.nvars
    rows = []
    for idx in itertools.combinations_with_replacement(range(n), k - 1):
        d = form
        for i in idx:
            d = d.partial(i)
        rows.append([d.terms.get(tuple(int(j == i) for j in range(n)), Fraction(0)) for i in range(n)])
    return linalg.rank(rows)


def binary_discriminant(mat: list[list[Fraction]]) -> Fraction:
    """b^2 - 4ac of the rank-2 quadratic form on a nonsingular 2x2 principal
    block; its square class decides whether the branches are rational."""
    n = len(mat)
    for i, j in itertools.combinations(range(n), 2):
        det = mat[i][i] * mat[j][j] - mat[i][j] ** 2
        if det:
            return -4 * det
    raise ValueError("quadratic form has rank below 2")


@dataclass(frozen=True)
class NCCertificate:
    point: Point
    status: NCStatus
    tangent_cone_rank: int
    multiplicity: int
    branch_disc: Fraction | None
    chart: int


def nc_certificate(F: Polynomial, p: Sequence) -> NCCertificate:
    """Classify D = V(F) at a rational point by its tangent cone.

    Multiplicity 1 is smooth; multiplicity 2 with a rank-2 quadratic part is a
    normal crossing (two distinct branches over C); anything else is not.
    """
    pt = normalize_point(p)
    if F.evaluate(pt):
        raise PointNotOnDivisor(f"F does not vanish at {format_point(pt)}")
    loc = local_model(F, pt)
    lowest = loc.lowest_part()
    rk = essential_rank(lowest)
    disc = None
    if loc.multiplicity == 1:
        status = NCStatus.SMOOTH
    elif loc.multiplicity == 2 and rk == 2:
        status = NCStatus.NORMAL_CROSSING
        disc = binary_discriminant(quadratic_form_matrix(lowest))
    else:
        status = NCStatus.NOT_NORMAL_CROSSING
    return NCCertificate(pt, status, rk, loc.multiplicity, disc, loc.chart)


def format_point(p: Sequence) -> str:
    return "(" + ":".join(str(Fraction(x)) for x in p) + ")"


# -- sampling the normal-crossing assumption --------------------------------


@dataclass(frozen=True)
class AssumptionReport:
    trials: int
    seed: int
    vacuous: bool
    samples: tuple[NCCertificate, ...] = ()
    indeterminate: int = 0
    sections: int = 0
    witnesses: tuple[NCCertificate, ...] = field(default=())

    @property
    def normal_crossing(self) -> int:
        return sum(s.status is NCStatus.NORMAL_CROSSING for s in self.samples)

    @property
    def passed(self) -> bool:
        return not self.witnesses


def sample_assumption(F: Polynomial, trials: int = 16, seed: int = 0) -> AssumptionReport:
    """Empirical check that D has normal crossings at sampled rational points
    of the (n-2)-dimensional part of its singular locus.  Evidence only."""
    n = F.nvars - 1
    sing = singular_locus(F)
    prof = proj_profile(sing)
    if prof.dimension < n - 2:
        return AssumptionReport(trials, seed, True)
    if prof.dimension > n - 2:
        raise ValueError("singular locus has a divisorial part: F is not squarefree")
    rng = random.Random(seed)
    seen: dict[Point, NCCertificate] = {}
    indeterminate = 0
    sections = 0
    budget = 1 if n == 2 else 4 * trials
    while len(seen) < trials and sections < budget:
        sections += 1
        if n == 2:
            # Z is finite: take all of it
            sec_ideal, matrix = sing, None
        else:
            sec = generic_section(sing, 2, rng)
            sec_ideal, matrix = sec.ideal, sec.matrix
            if proj_profile(sec_ideal).dimension != 0:
                continue
        pts = rational_points_projective(sec_ideal)
        total = count_distinct_points(sec_ideal, rng.randrange(2**32))
        indeterminate += total - len(pts)
        for t in pts:
            q = normalize_point(t if matrix is None else linalg.mat_vec(matrix, t))
            if q not in seen and len(seen) < trials:
                seen[q] = nc_certificate(F, q)
    samples = tuple(seen.values())
    witnesses = tuple(s for s in samples if s.status is NCStatus.NOT_NORMAL_CROSSING)
    return AssumptionReport(trials, seed, False, samples, indeterminate, sections, witnesses)
