"""Exact linear algebra over the rationals.

Small dense helpers on lists of ``Fraction``/``int``; sizes here never exceed
a handful of rows, so plain Gaussian elimination is the right tool.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def _rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(_rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of the square system ``a @ x = b``."""
    n = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [m[i][n] for i in range(n)]


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    fr = [Fraction(x) for x in vec]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector")
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)
