"""Polynomial ideals with a cached reduced Groebner basis."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

from ..polyring import Polynomial
from . import groebner as gb
from .hilbert import hilbert_dimension_degree, hilbert_polynomial


@dataclass(frozen=True)
class ProjectiveProfile:
    """Dimension and degree of V(I) in P^(nvars-1); dimension -1 is empty."""

    dimension: int
    degree: int

    @property
    def empty(self) -> bool:
        return self.dimension < 0

    def as_tuple(self) -> tuple[int, int]:
        return self.dimension, self.degree


class Ideal:
    """Ideal of Q[X0..X{nvars-1}] given by generators.

    The reduced Groebner basis for each monomial order is computed at most
    once per instance and cached; racing threads may both compute it but
    store identical values.
    """

    __slots__ = ("nvars", "generators", "_cache")

    def __init__(self, generators: Iterable[Polynomial], nvars: int | None = None):
        gens = tuple(generators)
        if nvars is None:
            if not gens:
                raise ValueError("need nvars for an empty generator list")
            nvars = gens[0].nvars
        if any(g.nvars != nvars for g in gens):
            raise ValueError("generators live in different rings")
        nonzero = tuple(g for g in gens if not g.is_zero())
        self.nvars = nvars
        self.generators = nonzero or (Polynomial.zero(nvars),)
        self._cache: dict[str, tuple[Polynomial, ...]] = {}

    @classmethod
    def unit(cls, nvars: int) -> "Ideal":
        return cls([Polynomial.constant(nvars, 1)])

    @classmethod
    def irrelevant(cls, nvars: int) -> "Ideal":
        return cls([Polynomial.var(nvars, i) for i in range(nvars)])

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.generators)})"

    def groebner(self, order: str | gb.MonomialOrder | None = None) -> tuple[Polynomial, ...]:
        """Reduced basis; the default order comes from the active config."""
        order = gb.get_order(order or gb.current_config().order)
        cached = self._cache.get(order.name)
        if cached is None:
            cached = gb.groebner(self.generators, order)
            self._cache[order.name] = cached
        return cached

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def is_unit(self) -> bool:
        basis = self.groebner()
        return len(basis) == 1 and basis[0].is_constant() and not basis[0].is_zero()

    def is_homogeneous(self) -> bool:
        return all(g.is_zero() or g.is_homogeneous() is not None for g in self.generators)

    def leading_monomials(self, order: str | gb.MonomialOrder | None = None) -> list[tuple[int, ...]]:
        order = gb.get_order(order or gb.current_config().order)
        return [max(g.terms, key=order.key) for g in self.groebner(order) if not g.is_zero()]

    def normal_form(self, p: Polynomial, order: str | gb.MonomialOrder | None = None) -> Polynomial:
        order = gb.get_order(order or gb.current_config().order)
        basis = [dict(g.terms) for g in self.groebner(order) if not g.is_zero()]
        return Polynomial._raw(self.nvars, gb.reduce_terms(dict(p.terms), basis, order))

    def __contains__(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(g in self for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.nvars == other.nvars and self.groebner("grevlex") == other.groebner("grevlex")

    def __add__(self, other: "Ideal | Iterable[Polynomial]") -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.generators + tuple(extra), self.nvars)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.generators for b in other.generators], self.nvars)

    def pullback(self, maps: Sequence[Polynomial]) -> "Ideal":
        """The ideal generated by g(maps) for generators g."""
        target = maps[0].nvars
        return Ideal([g.compose(maps) for g in self.generators], target)

    def profile(self) -> ProjectiveProfile:
        return proj_profile(self)


def groebner_basis(ideal: Ideal, order: str | gb.MonomialOrder | None = None) -> tuple[Polynomial, ...]:
    return ideal.groebner(order)


def normal_form(p: Polynomial, ideal: Ideal) -> Polynomial:
    return ideal.normal_form(p)


def eliminate(ideal: Ideal, k: int) -> Ideal:
    """Intersection of the ideal with Q[X_k, ..., X_{n-1}], in n-k variables."""
    order = gb.elimination_order(k)
    kept = []
    for g in ideal.groebner(order):
        if g.is_zero():
            continue
        lm = max(g.terms, key=order.key)
        if not any(lm[:k]):
            kept.append(g.drop_variables(range(k)))
    if not kept:
        return Ideal([Polynomial.zero(ideal.nvars - k)], ideal.nvars - k)
    return Ideal(kept, ideal.nvars - k)


def _with_tag(ideal_gens: Iterable[Polynomial], nvars: int) -> list[Polynomial]:
    # shift into a ring with a new first variable t
    return [g.embed(nvars + 1, list(range(1, nvars + 1))) for g in ideal_gens]


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """I cap J as the t-free part of t*I + (1-t)*J."""
    n = a.nvars
    t = Polynomial.var(n + 1, 0)
    gens = [t * g for g in _with_tag(a.generators, n)]
    gens += [(1 - t) * g for g in _with_tag(b.generators, n)]
    return eliminate(Ideal(gens, n + 1), 1)


def saturate_principal(ideal: Ideal, g: Polynomial) -> Ideal:
    """(I : g^inf) = (I + (1 - t*g)) cap Q[X]."""
    n = ideal.nvars
    if g.is_zero():
        return Ideal.unit(n)
    t = Polynomial.var(n + 1, 0)
    (gt,) = _with_tag([g], n)
    gens = _with_tag(ideal.generators, n) + [1 - t * gt]
    return eliminate(Ideal(gens, n + 1), 1)


def saturate(ideal: Ideal, other: Ideal) -> Ideal:
    """(I : J^inf) as the intersection of the saturations by each generator of J."""
    parts = [saturate_principal(ideal, g) for g in other.generators if not g.is_zero()]
    if not parts:
        # (I : 0) is the whole ring
        return Ideal.unit(ideal.nvars)
    result = parts[0]
    for p in parts[1:]:
        result = intersect(result, p)
    return Ideal(result.groebner(), ideal.nvars)


def radical_member(p: Polynomial, ideal: Ideal) -> bool:
    """True iff p vanishes on V(I): 1 lies in I + (1 - t*p)."""
    n = ideal.nvars
    if p.is_zero():
        return True
    t = Polynomial.var(n + 1, 0)
    (pt,) = _with_tag([p], n)
    return Ideal(_with_tag(ideal.generators, n) + [1 - t * pt], n + 1).is_unit()


def proj_profile(ideal: Ideal) -> ProjectiveProfile:
    """Projective dimension and degree from the Hilbert polynomial of the
    initial ideal; the degree is the top-dimensional multiplicity.

    Any monomial order works here since the ideal is homogeneous.
    """
    if not ideal.is_homogeneous():
        raise ValueError("proj_profile needs homogeneous generators")
    n = ideal.nvars
    if ideal.is_zero():
        return ProjectiveProfile(n - 1, 1)
    lms = ideal.leading_monomials()
    krull, mult = hilbert_dimension_degree(lms, n)
    if krull <= 0:
        return ProjectiveProfile(-1, 0)
    dim = krull - 1
    hp = hilbert_polynomial(lms, n)
    degree = hp[-1] * factorial(dim)
    assert degree == mult, "Hilbert polynomial disagrees with the series numerator"
    return ProjectiveProfile(dim, int(degree))


def hilbert_polynomial_of(ideal: Ideal):
    return hilbert_polynomial(ideal.leading_monomials(), ideal.nvars)
