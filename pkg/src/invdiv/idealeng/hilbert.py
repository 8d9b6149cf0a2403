"""Hilbert series and Hilbert polynomials of monomial ideals.

For a monomial ideal M in k[X0..X{n-1}] the Hilbert series of k[X]/M is
N(t) / (1-t)^n with an integer numerator N.  N is computed by the
inclusion-exclusion recursion N(M' + (m)) = N(M') - t^deg(m) N(M' : m).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

Exponent = tuple[int, ...]


def _minimalize(gens: Iterable[Exponent]) -> list[Exponent]:
    gens = sorted(set(gens), key=sum)
    out: list[Exponent] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _shift(a: list[int], k: int) -> list[int]:
    return [0] * k + a if a else []


def hilbert_numerator(gens: Sequence[Exponent], nvars: int) -> list[int]:
    """Numerator N(t) (constant term first) of the Hilbert series of k[X]/M."""
    memo: dict[tuple, list[int]] = {}

    def rec(ms: tuple[Exponent, ...]) -> list[int]:
        if ms in memo:
            return memo[ms]
        if not ms:
            res = [1]
        elif any(sum(m) == 0 for m in ms):
            res = []
        elif all(
            not any(x and y for x, y in zip(ms[i], ms[j]))
            for i in range(len(ms))
            for j in range(i + 1, len(ms))
        ):
            # pairwise coprime generators: a regular sequence
            res = [1]
            for m in ms:
                res = _poly_mul(res, _poly_sub([1], _shift([1], sum(m))))
        else:
            last = ms[-1]
            rest = ms[:-1]
            colon = _minimalize(tuple(max(a - b, 0) for a, b in zip(g, last)) for g in rest)
            res = _poly_sub(rec(rest), _shift(rec(tuple(sorted(colon))), sum(last)))
        memo[ms] = res
        return res

    return rec(tuple(sorted(_minimalize(gens))))


def divide_by_one_minus_t(num: list[int]) -> tuple[list[int], int]:
    """Write num = (1-t)^k * q with q(1) != 0; return (q, k)."""
    k = 0
    q = list(num)
    while q and sum(q) == 0:
        # synthetic division by (1 - t): q = (1 - t) * r  =>  r_i = sum_{j<=i} q_j
        r = []
        acc = 0
        for c in q[:-1]:
            acc += c
            r.append(acc)
        q = r
        while q and q[-1] == 0:
            q.pop()
        k += 1
    return q, k


def hilbert_dimension_degree(gens: Sequence[Exponent], nvars: int) -> tuple[int, int]:
    """(Krull dimension of k[X]/M, multiplicity); (0-dim ring) has degree
    equal to its vector-space dimension, the unit ideal gives (-1, 0)."""
    num = hilbert_numerator(gens, nvars)
    if not num:
        return -1, 0
    q, k = divide_by_one_minus_t(num)
    return nvars - k, sum(q)


def hilbert_polynomial(gens: Sequence[Exponent], nvars: int) -> list[Fraction]:
    """Coefficients (constant first) of the Hilbert polynomial in t."""
    num = hilbert_numerator(gens, nvars)
    if not num:
        return []
    q, k = divide_by_one_minus_t(num)
    dim = nvars - k
    if dim == 0:
        return []
    # H(t) = sum_i q_i * C(t - i + dim - 1, dim - 1)
    coeffs = [Fraction(0)] * dim
    for i, qi in enumerate(q):
        if not qi:
            continue
        # expand C(t - i + dim - 1, dim - 1) = prod_{j=1}^{dim-1} (t - i + j) / (dim-1)!
        poly = [Fraction(1)]
        for j in range(1, dim):
            a = j - i
            poly = [Fraction(0)] + poly
            for s in range(len(poly) - 1):
                poly[s] += a * poly[s + 1]
        scale = Fraction(qi, factorial(dim - 1))
        for s, c in enumerate(poly):
            coeffs[s] += scale * c
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def hilbert_function_bruteforce(gens: Sequence[Exponent], nvars: int, t: int) -> int:
    """Number of degree-t monomials outside M (direct enumeration)."""
    gens = _minimalize(gens)

    def monomials(n: int, d: int):
        if n == 1:
            yield (d,)
            return
        for a in range(d, -1, -1):
            for rest in monomials(n - 1, d - a):
                yield (a,) + rest

    return sum(
        1
        for m in monomials(nvars, t)
        if not any(all(a <= b for a, b in zip(g, m)) for g in gens)
    )


def evaluate_hilbert_polynomial(coeffs: Sequence[Fraction], t: int) -> Fraction:
    return sum((c * t**i for i, c in enumerate(coeffs)), Fraction(0))


__all__ = [
    "hilbert_numerator",
    "hilbert_dimension_degree",
    "hilbert_polynomial",
    "hilbert_function_bruteforce",
    "evaluate_hilbert_polynomial",
    "divide_by_one_minus_t",
]
