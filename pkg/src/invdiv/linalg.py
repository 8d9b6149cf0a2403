"""Dense linear algebra over Q with exact Fractions.

Matrices are lists of rows.  Only what the geometry code needs: row
reduction, rank, inverse, determinant, and univariate polynomial helpers
(coefficient lists, lowest degree first).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def determinant(rows: Sequence[Sequence]) -> Fraction:
    m = to_matrix(rows)
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, n):
            if m[i][col]:
                f = m[i][col] / m[col][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


def inverse(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_matrix(rows))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(x) * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def random_matrix(rng: random.Random, nrows: int, ncols: int, box: int) -> Matrix:
    return [[Fraction(rng.randint(-box, box)) for _ in range(ncols)] for _ in range(nrows)]


def random_invertible(rng: random.Random, n: int, box: int) -> Matrix:
    while True:
        a = random_matrix(rng, n, n, box)
        if determinant(a):
            return a


class IncrementalBasis:
    """Row-reduced span of vectors, for detecting the first linear dependency."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[int, list[Fraction], list[Fraction]]] = []
        self.count = 0

    def reduce(self, v: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
        """Return (residual, combination) with v = residual + sum comb_i * added_i."""
        v = list(v)
        comb = [Fraction(0)] * self.count
        for col, row, rcomb in self.rows:
            f = v[col]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
                for i, c in enumerate(rcomb):
                    comb[i] += f * c
        return v, comb

    def add(self, v: Sequence[Fraction]) -> list[Fraction] | None:
        """Add v; if v is dependent, return its coefficients on earlier vectors."""
        res, comb = self.reduce(v)
        col = next((i for i, x in enumerate(res) if x), None)
        if col is None:
            return comb
        inv = 1 / res[col]
        row = [x * inv for x in res]
        # row = (v - sum comb_i added_i) / res[col]
        rcomb = [-c * inv for c in comb] + [inv]
        self.count += 1
        self.rows = [(c, r, rc + [Fraction(0)]) for c, r, rc in self.rows]
        # keep rows fully reduced against the new pivot
        new_rows = []
        for c, r, rc in self.rows:
            f = r[col]
            if f:
                r = [a - f * b for a, b in zip(r, row)]
                rc = [a - f * b for a, b in zip(rc, rcomb)]
            new_rows.append((c, r, rc))
        new_rows.append((col, row, rcomb))
        self.rows = new_rows
        return None


# -- univariate polynomials as coefficient lists (constant term first) ------


def upoly_trim(p: Sequence[Fraction]) -> list[Fraction]:
    p = [Fraction(x) for x in p]
    while p and not p[-1]:
        p.pop()
    return p


def upoly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = upoly_trim(a)
    b = upoly_trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                r[k + j] -= c * bj
    return upoly_trim(q), upoly_trim(r)


def upoly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = upoly_trim(a), upoly_trim(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if not a:
        return a
    return [x / a[-1] for x in a]


def upoly_derivative(p: Sequence[Fraction]) -> list[Fraction]:
    return upoly_trim([i * Fraction(c) for i, c in enumerate(p)][1:])


def upoly_squarefree_part(p: Sequence[Fraction]) -> list[Fraction]:
    p = upoly_trim(p)
    if len(p) <= 1:
        return p
    g = upoly_gcd(p, upoly_derivative(p))
    q = upoly_divmod(p, g)[0]
    return [x / q[-1] for x in q]
