"""Exact sparse multivariate polynomials over the rationals.

A polynomial in ``nvars`` variables X0, ..., X{nvars-1} is a mapping from
exponent tuples to nonzero :class:`fractions.Fraction` coefficients::

    X0^2*X3 - X1^2*X2   ->   {(2, 0, 0, 1): 1, (0, 2, 1, 0): -1}

The zero polynomial has an empty term map.  Values are immutable; every
operation returns a new polynomial.  Printing uses graded reverse
lexicographic order with X0 > X1 > ..., so equal polynomials print
identically.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

# exponents are machine-width naturals
MAX_EXPONENT = 2**63 - 1
NEG_INF = float("-inf")

ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}


class ParseError(ValueError):
    """Syntax error in polynomial text; ``position`` is the 0-based column."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at column {position + 1}")
        self.position = position
        self.text = text


def grevlex_key(m: Exponent) -> tuple:
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(m),) + tuple(-e for e in reversed(m))


class Polynomial:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent {exps} does not have {nvars} entries")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if any(e > MAX_EXPONENT for e in exps):
                    raise OverflowError("exponent exceeds machine width")
                c = Fraction(c)
                if c:
                    clean[exps] = c
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Scalar = 1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def linear_form(cls, coeffs: Sequence[Scalar]) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    # -- basic accessors ----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    @property
    def total_degree(self) -> int | float:
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self._terms), default=0)

    def is_homogeneous(self) -> int | None:
        """Common total degree of all terms, or None (also for zero)."""
        degs = {sum(m) for m in self._terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def sorted_terms(self, key=grevlex_key) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, key=grevlex_key) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=key)
        return m, self._terms[m]

    def content_normalized(self) -> "Polynomial":
        """Scalar multiple with leading grevlex coefficient 1."""
        if not self._terms:
            return self
        _, c = self.leading_term()
        return self * (1 / c)

    def homogeneous_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for m, c in self._terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: Polynomial._raw(self.nvars, t) for d, t in parts.items()}

    def coefficient_bits(self) -> int:
        return max(
            (max(c.numerator.bit_length(), c.denominator.bit_length()) for c in self._terms.values()),
            default=0,
        )

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Polynomial.zero(self.nvars)
        if self.total_degree + other.total_degree > MAX_EXPONENT:
            raise OverflowError("product degree exceeds machine width")
        out: dict[Exponent, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if self._terms and self.total_degree * k > MAX_EXPONENT:
            raise OverflowError("power degree exceeds machine width")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps: Exponent, c: Scalar = 1) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(m, exps)): v * c for m, v in self._terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self.nvars, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------

    def partial(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Polynomial._raw(self.nvars, out)

    def gradient(self) -> list["Polynomial"]:
        return [self.partial(i) for i in range(self.nvars)]

    def __call__(self, *point: Scalar) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x**e
            total += v
        return total

    def compose(self, maps: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``maps[i]`` for variable i."""
        if len(maps) != self.nvars:
            raise ValueError(f"arity mismatch: {self.nvars} variables, {len(maps)} maps")
        if not maps:
            return self
        target = maps[0].nvars
        if any(q.nvars != target for q in maps):
            raise ValueError("maps must share a common variable set")
        powers: list[list[Polynomial]] = [[Polynomial.constant(target, 1)] for _ in maps]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * maps[i])
            return cache[e]

        acc: dict[Exponent, Fraction] = {}
        for m, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for k, v in term._terms.items():
                acc[k] = acc.get(k, 0) + v
        return Polynomial._raw(target, {k: v for k, v in acc.items() if v})

    def substitute(self, values: Mapping[int, Scalar]) -> "Polynomial":
        """Plug constants into some variables; the variable count is kept."""
        out: dict[Exponent, Fraction] = {}
        for m, c in self._terms.items():
            e = list(m)
            for i, v in values.items():
                if e[i]:
                    c = c * Fraction(v) ** e[i]
                    e[i] = 0
            if c:
                k = tuple(e)
                out[k] = out.get(k, 0) + c
        return Polynomial._raw(self.nvars, {k: v for k, v in out.items() if v})

    def drop_variables(self, idx: Iterable[int]) -> "Polynomial":
        """Remove variables that do not occur in any term."""
        idx = sorted(set(idx))
        keep = [i for i in range(self.nvars) if i not in idx]
        out = {}
        for m, c in self._terms.items():
            if any(m[i] for i in idx):
                raise ValueError("cannot drop a variable that occurs in the polynomial")
            out[tuple(m[i] for i in keep)] = c
        return Polynomial._raw(len(keep), out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Rename variable i to ``positions[i]`` in a ring with ``nvars`` variables."""
        out = {}
        for m, c in self._terms.items():
            e = [0] * nvars
            for i, k in enumerate(m):
                e[positions[i]] += k
            out[tuple(e)] = c
        return Polynomial._raw(nvars, out)

    def dehomogenize(self, chart: int) -> "Polynomial":
        if self.is_homogeneous() is None and self._terms:
            raise ValueError("dehomogenize needs a homogeneous polynomial")
        return self.substitute({chart: 1}).drop_variables([chart])

    def homogenize(self, position: int = 0) -> "Polynomial":
        """Insert a new variable at ``position`` making every term of top degree."""
        d = self.total_degree
        out = {}
        for m, c in self._terms.items():
            e = list(m)
            e.insert(position, d - sum(m))
            out[tuple(e)] = c
        return Polynomial._raw(self.nvars + 1, out)

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                f"X{i}" if e == 1 else f"X{i}^{e}" for i, e in enumerate(m) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {str(self)!r})"


# -- free functions mirroring the methods ----------------------------------


def is_homogeneous(p: Polynomial) -> int | None:
    return p.is_homogeneous()


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    return p.partial(i)


def compose(p: Polynomial, maps: Sequence[Polynomial]) -> Polynomial:
    return p.compose(maps)


def dehomogenize(p: Polynomial, chart: int) -> Polynomial:
    if not 0 <= chart < p.nvars:
        raise IndexError(f"chart {chart} out of range")
    return p.dehomogenize(chart)


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Return t with p == q*t, or None when q does not divide p.

    Division with remainder by the single divisor q under grevlex; {q} is a
    Groebner basis of (q) so the remainder vanishes exactly when q | p.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    lm, lc = q.leading_term()
    tail = [(m, c) for m, c in q._terms.items() if m != lm]
    rem = dict(p._terms)
    quot: dict[Exponent, Fraction] = {}
    while rem:
        m = max(rem, key=grevlex_key)
        if any(a < b for a, b in zip(m, lm)):
            return None
        c = rem.pop(m) / lc
        u = tuple(a - b for a, b in zip(m, lm))
        quot[u] = c
        for tm, tc in tail:
            k = tuple(a + b for a, b in zip(u, tm))
            v = rem.get(k, 0) - c * tc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return Polynomial._raw(p.nvars, quot)


def jacobian_matrix(maps: Sequence[Polynomial]) -> list[list[Polynomial]]:
    return [[f.partial(j) for j in range(f.nvars)] for f in maps]


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along rows with memoized minors."""
    size = len(matrix)
    if size == 0:
        raise ValueError("empty matrix")
    nv = matrix[0][0].nvars

    @lru_cache(maxsize=None)
    def minor(cols: tuple[int, ...]) -> Polynomial:
        row = size - len(cols)
        if not cols:
            return Polynomial.constant(nv, 1)
        acc = Polynomial.zero(nv)
        for k, j in enumerate(cols):
            entry = matrix[row][j]
            if entry.is_zero():
                continue
            sub = minor(cols[:k] + cols[k + 1:])
            acc = acc + entry * sub if k % 2 == 0 else acc - entry * sub
        return acc

    return minor(tuple(range(size)))


def jacobian_det(maps: Sequence[Polynomial]) -> Polynomial:
    """Determinant of the matrix of partial derivatives of a square system."""
    if not maps:
        raise ValueError("empty system")
    nv = maps[0].nvars
    if len(maps) != nv or any(f.nvars != nv for f in maps):
        raise ValueError(f"arity mismatch: {len(maps)} maps in {nv} variables")
    degs = {f.is_homogeneous() for f in maps}
    if None in degs or len(degs) != 1:
        raise ValueError("entries must be homogeneous of a common degree")
    return determinant(jacobian_matrix(maps))


# -- parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.pos = 0

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        return ParseError(msg, self.pos if pos is None else pos, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected integer")
        return int(self.text[start:self.pos])

    def parse(self) -> Polynomial:
        if not self.text.strip():
            raise self.error("empty polynomial", 0)
        p = self.expression()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return p

    def expression(self) -> Polynomial:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        acc = self.term() * sign
        while self.peek() and self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            acc = acc + self.term() * sign
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            where = self.pos
            k = self.integer()
            if k <= 0:
                raise self.error("exponent must be a positive integer", where)
            if k > MAX_EXPONENT:
                raise OverflowError("exponent exceeds machine width")
            base = base**k
        return base

    def atom(self) -> Polynomial:
        c = self.peek()
        start = self.pos
        if not c:
            raise self.error("unexpected end of input")
        if c == "(":
            self.pos += 1
            inner = self.expression()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return inner
        if c.isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.pos += 1
                where = self.pos
                den = self.integer()
                if den == 0:
                    raise self.error("zero denominator", where)
                return Polynomial.constant(self.nvars, Fraction(num, den))
            return Polynomial.constant(self.nvars, num)
        if c == "X":
            self.pos += 1
            if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                raise self.error("expected variable index after 'X'")
            i = self.integer()
            return self._variable(i, start)
        if c in ALIASES:
            self.pos += 1
            if self.pos < len(self.text) and (self.text[self.pos].isalnum()):
                raise self.error(f"unknown identifier starting with {c!r}", start)
            return self._variable(ALIASES[c], start)
        raise self.error(f"unexpected {c!r}")

    def _variable(self, i: int, start: int) -> Polynomial:
        if i >= self.nvars:
            raise self.error(f"variable index {i} out of range for {self.nvars} variables", start)
        return Polynomial.var(self.nvars, i)


def parse_poly(text: str, nvars: int) -> Polynomial:
    """Parse polynomial text such as ``"X0^2*X3 - 1/2*X1^2*X2"``."""
    return _Parser(text, nvars).parse()


def poly_gcd_content(p: Polynomial) -> Fraction:
    """Positive rational c with p/c having coprime integer coefficients."""
    if p.is_zero():
        return Fraction(0)
    nums = [c.numerator for c in p.terms.values()]
    dens = [c.denominator for c in p.terms.values()]
    g = 0
    for a in nums:
        g = math.gcd(g, a)
    lcm = 1
    for b in dens:
        lcm = lcm * b // math.gcd(lcm, b)
    return Fraction(g, lcm)
