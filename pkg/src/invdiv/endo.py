"""Endomorphisms of projective space given by n+1 forms of a common degree."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .idealeng import Ideal, proj_profile, radical_member, reduced_top_degree
from .polyring import Polynomial, exact_divide, jacobian_det


class EndomorphismError(ValueError):
    """The forms do not define an endomorphism of P^n."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class NotSquarefreeError(ValueError):
    pass


@dataclass(frozen=True)
class Endomorphism:
    n: int
    m: int
    forms: tuple[Polynomial, ...]

    def pullback(self, F: Polynomial) -> Polynomial:
        """F composed with the map, i.e. f^*F."""
        return F.compose(self.forms)

    def __str__(self) -> str:
        return "(" + ", ".join(str(f) for f in self.forms) + ")"


def validate(forms: Sequence[Polynomial], base_seed: int = 0) -> Endomorphism:
    forms = tuple(forms)
    if not forms:
        raise EndomorphismError("no forms given")
    nv = forms[0].nvars
    if len(forms) != nv or any(f.nvars != nv for f in forms):
        raise EndomorphismError(f"need {nv} forms in {nv} variables, got {len(forms)}")
    if nv < 2:
        raise EndomorphismError("projective dimension must be at least 1")
    degs = [f.is_homogeneous() for f in forms]
    if any(d is None for d in degs):
        bad = [i for i, d in enumerate(degs) if d is None]
        raise EndomorphismError(f"forms {bad} are not homogeneous (or zero)")
    if len(set(degs)) != 1:
        raise EndomorphismError(f"degree mismatch: {degs}", {"degrees": degs})
    m = degs[0]
    if m == 0:
        raise EndomorphismError("forms of degree 0 do not define a morphism")
    base = Ideal(forms)
    prof = proj_profile(base)
    if not prof.empty:
        red = reduced_top_degree(base, base_seed)
        raise EndomorphismError(
            f"forms have a common zero: base locus of dimension {prof.dimension}",
            {"dimension": red.dimension, "degree": red.degree, "scheme_degree": prof.degree},
        )
    return Endomorphism(nv - 1, m, forms)


def iterate(f: Endomorphism, l: int) -> Endomorphism:
    """The l-fold composite f o ... o f, of degree m^l."""
    if l < 1:
        raise ValueError("iterate count must be positive")
    forms = f.forms
    for _ in range(l - 1):
        forms = tuple(g.compose(forms) for g in f.forms)
    return Endomorphism(f.n, f.m**l, forms)


def is_squarefree(F: Polynomial) -> bool:
    """A form is squarefree iff its singular locus has codimension >= 2 in P^n."""
    n = F.nvars - 1
    return proj_profile(Ideal(F.gradient(), F.nvars)).dimension <= n - 2


@dataclass(frozen=True)
class InvarianceCertificate:
    invariant: bool
    scalar: Fraction | None
    failed_stage: int | None
    stages: int

    def __bool__(self) -> bool:
        return self.invariant


def _check_divisor(F: Polynomial, nvars: int) -> int:
    if F.is_zero():
        raise ValueError("divisor form is zero")
    if F.nvars != nvars:
        raise ValueError(f"divisor lives in {F.nvars} variables, map in {nvars}")
    d = F.is_homogeneous()
    if d is None:
        raise ValueError("divisor form is not homogeneous")
    if d == 0:
        raise ValueError("divisor form is constant")
    return d


def is_totally_invariant(f: Endomorphism, F: Polynomial, check_squarefree: bool = True) -> InvarianceCertificate:
    """Decide F o f = c * F^m by m successive exact divisions by F."""
    _check_divisor(F, f.n + 1)
    if check_squarefree and not is_squarefree(F):
        raise NotSquarefreeError("divisor form has a repeated factor")
    rest = f.pullback(F)
    for stage in range(1, f.m + 1):
        q = exact_divide(rest, F)
        if q is None:
            return InvarianceCertificate(False, None, stage, f.m)
        rest = q
    if not rest.is_constant():
        return InvarianceCertificate(False, None, f.m + 1, f.m)
    return InvarianceCertificate(True, rest.constant_value(), None, f.m)


def is_totally_invariant_subvariety(f: Endomorphism, ideal: Ideal) -> bool:
    """Set-theoretic f^{-1}(V(I)) = V(I) by two-sided radical membership."""
    if not ideal.is_homogeneous():
        raise ValueError("ideal must be homogeneous")
    pulled = ideal.pullback(list(f.forms))
    return all(radical_member(g, ideal) for g in pulled.generators) and all(
        radical_member(g, pulled) for g in ideal.generators
    )


class RamificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class RamificationData:
    jac: Polynomial
    divisor_multiplicity_of_F: int
    log_residual: Polynomial | None
    effective: bool
    failed_stage: int | None

    @property
    def residual_degree(self) -> int | None:
        if self.log_residual is None:
            return None
        return int(self.log_residual.total_degree)


def log_ramification(f: Endomorphism, F: Polynomial) -> RamificationData:
    """Split the Jacobian determinant as F^(m-1) times the residual cutting R."""
    _check_divisor(F, f.n + 1)
    jac = jacobian_det(list(f.forms))
    if jac.is_zero():
        raise RamificationError("Jacobian determinant vanishes identically")
    # multiplicity of F in jac, capped for reporting
    a = 0
    rest = jac
    while True:
        q = exact_divide(rest, F)
        if q is None:
            break
        a += 1
        rest = q
    residual = jac
    for stage in range(1, f.m):
        q = exact_divide(residual, F)
        if q is None:
            return RamificationData(jac, a, None, False, stage)
        residual = q
    return RamificationData(jac, a, residual, True, None)


def ramification_degree_identity(n: int, m: int, d: int, residual_degree: int) -> bool:
    """(n+1)(m-1) = deg R + (m-1) d, and deg R = (m-1)(n+1-d)."""
    return (n + 1) * (m - 1) == residual_degree + (m - 1) * d and residual_degree == (m - 1) * (n + 1 - d)


def component_avoids_R(ram: RamificationData, z_ideal: Ideal) -> bool:
    """True iff V(Z) is not contained in the support of R."""
    if not ram.effective or ram.log_residual is None:
        raise RamificationError("ramification divisor was not computed as effective")
    return not radical_member(ram.log_residual, z_ideal)
