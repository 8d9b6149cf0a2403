"""Buchberger's algorithm with the sugar strategy and Gebauer-Moeller pair
elimination.

The kernel works on plain ``dict[exponent, coefficient]`` maps.  Coefficients
are Fractions for the exact run, or ints reduced mod a prime for the
optional modular probe.  Resource caps come from the active
:class:`GroebnerConfig` (see :func:`configured`).
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from ..polyring import Polynomial

Exponent = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit a configured resource cap."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class MonomialOrder:
    name: str
    key: Callable[[Exponent], tuple]

    def __repr__(self) -> str:
        return f"MonomialOrder({self.name!r})"


def _grevlex(m: Exponent) -> tuple:
    return (sum(m),) + tuple(-e for e in reversed(m))


def _lex(m: Exponent) -> tuple:
    return m


GREVLEX = MonomialOrder("grevlex", _grevlex)
LEX = MonomialOrder("lex", _lex)


def elimination_order(k: int) -> MonomialOrder:
    """Product of grevlex on the first k variables and grevlex on the rest."""

    def key(m: Exponent) -> tuple:
        return _grevlex(m[:k]) + _grevlex(m[k:])

    return MonomialOrder(f"elim{k}", key)


def get_order(order: str | MonomialOrder) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    if order == "grevlex":
        return GREVLEX
    if order == "lex":
        return LEX
    if order.startswith("elim"):
        return elimination_order(int(order[4:]))
    raise ValueError(f"unknown monomial order {order!r}")


@dataclass
class GroebnerStats:
    bases: int = 0
    pairs_reduced: int = 0
    probes: int = 0
    probe_mismatches: int = 0


@dataclass(frozen=True)
class GroebnerConfig:
    order: str = "grevlex"
    max_basis: int | None = None
    max_coeff_bits: int | None = None
    modular_probe: bool = False
    probe_seed: int = 0
    stats: GroebnerStats = field(default_factory=GroebnerStats, compare=False)


_CONFIG: contextvars.ContextVar[GroebnerConfig] = contextvars.ContextVar(
    "groebner_config", default=GroebnerConfig()
)


def current_config() -> GroebnerConfig:
    return _CONFIG.get()


@contextlib.contextmanager
def configured(config: GroebnerConfig) -> Iterator[GroebnerConfig]:
    token = _CONFIG.set(config)
    try:
        yield config
    finally:
        _CONFIG.reset(token)


# -- kernel -----------------------------------------------------------------


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Exponent, b: Exponent) -> bool:
    return not any(x and y for x, y in zip(a, b))


class _Field:
    """Coefficient arithmetic: exact rationals, or integers mod a prime."""

    def __init__(self, prime: int | None):
        self.p = prime

    def inv(self, a):
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)


class _Poly:
    """Sorted working polynomial: terms in decreasing order."""

    __slots__ = ("terms", "lm", "lc", "sugar")

    def __init__(self, terms: list[tuple[Exponent, object]], sugar: int):
        self.terms = terms
        self.lm, self.lc = terms[0]
        self.sugar = sugar


def _reduce(
    p: dict,
    basis: Sequence[_Poly],
    key: Callable,
    fld: _Field,
) -> dict:
    """Full normal form of p modulo basis."""
    p = dict(p)
    heap = [(_neg(key(m)), m) for m in p]
    heapq.heapify(heap)
    out: dict = {}
    P = fld.p
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        g = next((g for g in basis if _divides(g.lm, m)), None)
        if g is None:
            out[m] = c
            continue
        q = c * fld.inv(g.lc) if P is None else (c * fld.inv(g.lc)) % P
        u = tuple(a - b for a, b in zip(m, g.lm))
        for gm, gc in g.terms[1:]:
            k = tuple(a + b for a, b in zip(u, gm))
            old = p.get(k)
            if old is None:
                v = -q * gc
                if P is not None:
                    v %= P
                if v:
                    p[k] = v
                    heapq.heappush(heap, (_neg(key(k)), k))
            else:
                v = old - q * gc
                if P is not None:
                    v %= P
                if v:
                    p[k] = v
                else:
                    del p[k]
    return out


def _neg(k: tuple) -> tuple:
    return tuple(-x for x in k)


def _to_poly(terms: dict, key: Callable, sugar: int) -> _Poly:
    items = sorted(terms.items(), key=lambda t: key(t[0]), reverse=True)
    return _Poly(items, sugar)


def _monic(terms: dict, key: Callable, fld: _Field) -> dict:
    lm = max(terms, key=key)
    inv = fld.inv(terms[lm])
    if fld.p is None:
        return {m: c * inv for m, c in terms.items()}
    return {m: (c * inv) % fld.p for m, c in terms.items()}


def _spoly(f: _Poly, g: _Poly, fld: _Field) -> tuple[dict, int]:
    lcm = _lcm(f.lm, g.lm)
    uf = tuple(a - b for a, b in zip(lcm, f.lm))
    ug = tuple(a - b for a, b in zip(lcm, g.lm))
    cf = fld.inv(f.lc)
    cg = fld.inv(g.lc)
    out: dict = {}
    P = fld.p
    for m, c in f.terms[1:]:
        k = tuple(a + b for a, b in zip(m, uf))
        out[k] = out.get(k, 0) + c * cf
    for m, c in g.terms[1:]:
        k = tuple(a + b for a, b in zip(m, ug))
        out[k] = out.get(k, 0) - c * cg
    if P is not None:
        out = {k: v % P for k, v in out.items()}
    sugar = max(f.sugar + sum(uf), g.sugar + sum(ug))
    return {k: v for k, v in out.items() if v}, sugar


def _coeff_bits(terms: dict) -> int:
    best = 0
    for c in terms.values():
        if isinstance(c, Fraction):
            best = max(best, c.numerator.bit_length(), c.denominator.bit_length())
        else:
            best = max(best, int(c).bit_length())
    return best


def buchberger(
    generators: Sequence[dict],
    nvars: int,
    order: MonomialOrder,
    prime: int | None = None,
    config: GroebnerConfig | None = None,
) -> list[dict]:
    """Reduced Groebner basis of the ideal spanned by ``generators``.

    Returns monic term maps sorted by decreasing leading monomial; the zero
    ideal gives an empty list.
    """
    cfg = config or current_config()
    key = order.key
    fld = _Field(prime)
    if prime is not None:
        generators = [
            {m: (c.numerator * pow(c.denominator, -1, prime)) % prime for m, c in g.items()}
            for g in generators
        ]
        generators = [{m: c for m, c in g.items() if c} for g in generators]

    polys: list[_Poly] = []
    active: list[int] = []
    pairs: list[tuple[int, int]] = []

    def check_budget() -> None:
        if cfg.max_basis is not None and len(active) > cfg.max_basis:
            raise BudgetExceeded(
                f"basis size exceeded {cfg.max_basis}",
                {"basis_size": len(active), "pending_pairs": len(pairs), "order": order.name},
            )

    def check_bits(terms: dict) -> None:
        if cfg.max_coeff_bits is None or prime is not None:
            return
        bits = _coeff_bits(terms)
        if bits > cfg.max_coeff_bits:
            raise BudgetExceeded(
                f"coefficient size {bits} bits exceeded {cfg.max_coeff_bits}",
                {"basis_size": len(active), "pending_pairs": len(pairs), "order": order.name},
            )

    def update(h: int) -> None:
        nonlocal active, pairs
        hp = polys[h]
        C = [g for g in active]
        D: list[int] = []
        while C:
            g1 = C.pop()
            l1 = _lcm(hp.lm, polys[g1].lm)
            if _coprime(hp.lm, polys[g1].lm) or not any(
                _divides(_lcm(hp.lm, polys[g2].lm), l1) for g2 in C + D
            ):
                D.append(g1)
        E = [g for g in D if not _coprime(hp.lm, polys[g].lm)]
        kept = []
        for a, b in pairs:
            lab = _lcm(polys[a].lm, polys[b].lm)
            if (
                _divides(hp.lm, lab)
                and _lcm(polys[a].lm, hp.lm) != lab
                and _lcm(hp.lm, polys[b].lm) != lab
            ):
                continue
            kept.append((a, b))
        pairs = kept + [(g, h) for g in E]
        active = [g for g in active if not _divides(hp.lm, polys[g].lm)] + [h]

    seeds = []
    for g in generators:
        if g:
            seeds.append(_to_poly(_monic(g, key, fld), key, max(sum(m) for m in g)))
    # sort inputs so that small leading terms enter first
    seeds.sort(key=lambda p: key(p.lm))
    for s in seeds:
        red = _reduce(dict(s.terms), [polys[i] for i in active], key, fld)
        if not red:
            continue
        red = _monic(red, key, fld)
        check_bits(red)
        polys.append(_to_poly(red, key, s.sugar))
        update(len(polys) - 1)
        check_budget()

    while pairs:
        # sugar selection, ties broken by the smaller lcm
        best = min(
            range(len(pairs)),
            key=lambda i: (
                _pair_sugar(polys, pairs[i]),
                key(_lcm(polys[pairs[i][0]].lm, polys[pairs[i][1]].lm)),
            ),
        )
        a, b = pairs.pop(best)
        s, sugar = _spoly(polys[a], polys[b], fld)
        cfg.stats.pairs_reduced += 1
        if not s:
            continue
        red = _reduce(s, [polys[i] for i in active], key, fld)
        if not red:
            continue
        red = _monic(red, key, fld)
        check_bits(red)
        polys.append(_to_poly(red, key, sugar))
        update(len(polys) - 1)
        check_budget()

    # reduced basis: drop redundant leading terms, then interreduce
    G = [polys[i] for i in active]
    G = [g for g in G if not any(h is not g and _divides(h.lm, g.lm) and h.lm != g.lm for h in G)]
    uniq: dict[Exponent, _Poly] = {}
    for g in G:
        uniq.setdefault(g.lm, g)
    G = list(uniq.values())
    out = []
    for i, g in enumerate(G):
        others = G[:i] + G[i + 1:]
        red = _reduce(dict(g.terms), others, key, fld)
        out.append(_monic(red, key, fld))
    out.sort(key=lambda t: key(max(t, key=key)), reverse=True)
    cfg.stats.bases += 1
    return out


def _pair_sugar(polys: list[_Poly], pair: tuple[int, int]) -> int:
    f, g = polys[pair[0]], polys[pair[1]]
    lcm = _lcm(f.lm, g.lm)
    return max(f.sugar + sum(lcm) - sum(f.lm), g.sugar + sum(lcm) - sum(g.lm))


def reduce_terms(p: dict, basis: Sequence[dict], order: MonomialOrder) -> dict:
    key = order.key
    polys = [_to_poly(g, key, 0) for g in basis if g]
    return _reduce(p, polys, key, _Field(None))


# -- Polynomial-level entry points ----------------------------------------

_WORD_PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
    2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
)


def modular_probe(gens: Sequence[Polynomial], order: MonomialOrder, seed: int = 0) -> list[Exponent]:
    """Leading monomials of the reduced basis modulo a random word-sized
    prime.  A prediction only: unlucky primes can differ from the exact run."""
    rng = random.Random(seed)
    prime = rng.choice(_WORD_PRIMES)
    nvars = gens[0].nvars
    cfg = current_config()
    basis = buchberger([dict(g.terms) for g in gens], nvars, order, prime=prime,
                       config=GroebnerConfig(stats=GroebnerStats()))
    cfg.stats.probes += 1
    return [max(t, key=order.key) for t in basis]


def groebner(gens: Sequence[Polynomial], order: str | MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
    """Reduced Groebner basis as Polynomials; the zero ideal yields ``(0,)``."""
    order = get_order(order)
    if not gens:
        raise ValueError("need at least one generator")
    nvars = gens[0].nvars
    cfg = current_config()
    predicted = None
    if cfg.modular_probe:
        predicted = modular_probe(gens, order, cfg.probe_seed)
    basis = buchberger([dict(g.terms) for g in gens], nvars, order, config=cfg)
    if predicted is not None:
        actual = [max(t, key=order.key) for t in basis]
        if actual != predicted:
            cfg.stats.probe_mismatches += 1
    if not basis:
        return (Polynomial.zero(nvars),)
    return tuple(Polynomial._raw(nvars, t) for t in basis)
