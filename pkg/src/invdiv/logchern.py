"""Second Chern class bookkeeping for the twisted logarithmic cotangent
sheaf of a divisor of degree d in P^n, and pointwise ranks of the n+1
global sections d(X_i F)/F.

All Chern numbers are integer coefficients of H^2 on P^n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .divgeo import NCStatus, chart_of, local_model, nc_certificate, normalize_point, quadratic_form_matrix
from .polyring import Polynomial


@dataclass(frozen=True)
class ChernParams:
    n: int
    d: int
    m: int = 1
    degZ: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if self.degZ < 0:
            raise ValueError("degZ must be nonnegative")


def _base_twice(n: int, d: int) -> int:
    # 2 * ((n+1)(n-2d)/2 + d^2)
    return (n + 1) * (n - 2 * d) + 2 * d * d


@dataclass(frozen=True)
class C2Twist:
    value: int
    degZ: int

    @property
    def coefficient(self) -> int:
        """H^2-coefficient of c2(Omega(log D)(m)) with [Z] = degZ H^2."""
        return self.value - self.degZ


def c2_log_twist(p: ChernParams) -> C2Twist:
    n, d, m = p.n, p.d, p.m
    twice = _base_twice(n, d) - 2 * (n - 1) * (n + 1 - d) * m + n * (n - 1) * m * m
    if twice % 2:
        raise ArithmeticError(f"non-integral c2 for n={n}, d={d}, m={m}")
    return C2Twist(twice // 2, p.degZ)


def c2_pullback_restricted(p: ChernParams) -> int:
    """c2 of the pulled-back (log sheaf)(1) restricted to S = f^{-1}(plane)."""
    if p.m < 1:
        raise ValueError("m must be positive")
    return ((p.d - 1) ** 2 - p.degZ) * p.m**p.n


@dataclass(frozen=True)
class C2Comparison:
    n: int
    d: int
    degZ: int
    lhs_m_poly: tuple[int, ...]
    rhs_m_poly: tuple[int, ...]
    leading_lhs: int
    leading_rhs: int
    leading_inequality: bool
    equality: bool
    subleading_coefficient: int
    contradiction: bool


def _poly_in_m(coeffs: dict[int, int], n: int) -> tuple[int, ...]:
    return tuple(coeffs.get(k, 0) for k in range(n + 1))


def c2_comparison(n: int, d: int, degZ: int) -> C2Comparison:
    """Compare both sides of the c2 inequality as polynomials in m.

    lhs = ((d-1)^2 - degZ) m^n;  rhs = (base - degZ) m^(n-2)
    - (n-1)(n+1-d) m^(n-1) + n(n-1)/2 m^n.  Holding for all large m forces
    the m^n inequality; at equality the negative m^(n-1) term of rhs - lhs
    is a contradiction.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if d == n + 1:
        raise ValueError("d = n+1 is excluded for a prime divisor")
    if not 1 <= d <= n:
        raise ValueError(f"d must lie in 1..n, got {d}")
    base = _base_twice(n, d) // 2
    lhs = _poly_in_m({n: (d - 1) ** 2 - degZ}, n)
    rhs_terms: dict[int, int] = {}
    for k, c in ((n - 2, base - degZ), (n - 1, -(n - 1) * (n + 1 - d)), (n, n * (n - 1) // 2)):
        rhs_terms[k] = rhs_terms.get(k, 0) + c
    rhs = _poly_in_m(rhs_terms, n)
    lead_l, lead_r = lhs[n], rhs[n]
    sub = rhs[n - 1] - lhs[n - 1]
    leading_ok = lead_l <= lead_r
    equality = lead_l == lead_r
    contradiction = (not leading_ok) or (equality and sub < 0)
    return C2Comparison(n, d, degZ, lhs, rhs, lead_l, lead_r, leading_ok, equality, sub, contradiction)


def eventually_negative(coeffs: Sequence[int]) -> bool:
    """Sign of a polynomial in m for all large m: its top nonzero coefficient."""
    top = next((c for c in reversed(coeffs) if c), 0)
    return top < 0


def chern_identity_check(range_n: Iterable[int], range_d: Iterable[int] | None = None) -> bool:
    """The m = 1 twist collapses to (d-1)^2: integer check over the ranges,
    then once as a polynomial identity in formal n, d."""
    ns = list(range_n)
    if not ns:
        raise ValueError("empty range")
    for n in ns:
        ds = list(range_d) if range_d is not None else range(1, n + 2)
        for d in ds:
            if c2_log_twist(ChernParams(n, d, 1)).value != (d - 1) ** 2:
                return False
    return formal_identity_residue().is_zero()


def formal_identity_residue() -> Polynomial:
    """(n+1)(n-2d)/2 + d^2 - (n-1)(n+1-d) + n(n-1)/2 - (d-1)^2 in Q[n, d]."""
    N = Polynomial.var(2, 0)
    D = Polynomial.var(2, 1)
    half = Fraction(1, 2)
    expr = (N + 1) * (N - 2 * D) * half + D * D - (N - 1) * (N + 1 - D) + N * (N - 1) * half
    return expr - (D - 1) ** 2


# -- global sections of Omega(log D)(1) at a point --------------------------


class BasisTag(str, enum.Enum):
    OFF_DIVISOR = "OffDivisor"
    SMOOTH_POINT = "SmoothPoint"
    NC_POINT = "NCPoint"


class NotNormalCrossingError(ValueError):
    pass


@dataclass(frozen=True)
class LogSectionMatrix:
    chart: int
    point: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    basis_tag: BasisTag
    pivot: int | None
    rank: int
    rank_is_lower_bound: bool


def log_section_matrix(F: Polynomial, p: Sequence) -> LogSectionMatrix:
    """Evaluate the sections d(X_i F)/F, i = 0..n, in a local frame at p.

    In the affine chart X_c = 1 they read df_b/f_b (for i = c) and
    Y_i df_b/f_b + dY_i.  Row i is the section of X_i.
    """
    pt = normalize_point(p)
    n = F.nvars - 1
    chart = chart_of(pt)
    a = tuple(x / pt[chart] for i, x in enumerate(pt) if i != chart)
    fb = F.dehomogenize(chart)
    grad = [g.evaluate(a) for g in fb.gradient()]
    val = fb.evaluate(a)
    # Y-value of the section X_i at p; the chart section has value 1
    yvals = []
    k = 0
    for i in range(n + 1):
        if i == chart:
            yvals.append((None, Fraction(1)))
        else:
            yvals.append((k, a[k]))
            k += 1

    if val:
        # frame dY_1..dY_n; df_b/f_b = sum grad_j / f_b dY_j
        logd = [g / val for g in grad]
        rows = []
        for j, y in yvals:
            row = [y * c for c in logd]
            if j is not None:
                row[j] += 1
            rows.append(tuple(row))
        return LogSectionMatrix(chart, pt, tuple(rows), BasisTag.OFF_DIVISOR, None, linalg.rank(rows), False)

    cert = nc_certificate(F, pt)
    if cert.status is NCStatus.SMOOTH:
        # frame (df_b/f_b, dY_j for j != pivot); dY_pivot = -sum grad_j/grad_pivot dY_j on D
        pivot = next(j for j, g in enumerate(grad) if g)
        others = [j for j in range(n) if j != pivot]
        pivot_row = [-grad[j] / grad[pivot] for j in others]
        rows = []
        for j, y in yvals:
            row = [y] + [Fraction(0)] * len(others)
            if j is not None:
                if j == pivot:
                    for s, c in enumerate(pivot_row):
                        row[1 + s] += c
                else:
                    row[1 + others.index(j)] += 1
            rows.append(tuple(row))
        return LogSectionMatrix(chart, pt, tuple(rows), BasisTag.SMOOTH_POINT, pivot, linalg.rank(rows), False)

    if cert.status is not NCStatus.NORMAL_CROSSING:
        raise NotNormalCrossingError(f"D is not a normal crossing at this point ({cert.status.value})")
    # frame (du1/u1, du2/u2, transverse differentials).  Both residues of
    # the section X_i equal its Y-value.  dY_j contributes only its class
    # modulo the span of the branch forms; the dh/h part of df_b/f_b needs
    # higher-order data and is left out, hence a lower bound.
    loc = local_model(F, pt)
    q = quadratic_form_matrix(loc.lowest_part())
    red, pivots = linalg.rref(q)
    free = [c for c in range(n) if c not in pivots]
    rows = []
    for j, y in yvals:
        row = [y, y] + [Fraction(0)] * len(free)
        if j is not None:
            # class of e_j modulo the row space of q, read off the free columns
            v = [Fraction(int(c == j)) for c in range(n)]
            for r, pc in zip(red, pivots):
                if v[pc]:
                    f = v[pc]
                    v = [x - f * z for x, z in zip(v, r)]
            for s, c in enumerate(free):
                row[2 + s] += v[c]
        rows.append(tuple(row))
    return LogSectionMatrix(chart, pt, tuple(rows), BasisTag.NC_POINT, None, linalg.rank(rows), True)
