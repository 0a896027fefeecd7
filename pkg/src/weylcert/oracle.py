"""Slow, independent reference implementations used to cross-check the fast paths.

Nothing here shares code with the dominance-order or Freudenthal machinery:
hull membership is a rational linear program, orbits come from applying every
signed permutation, and exterior ranks come from listing subsets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from . import linalg
from .criteria import RankProfile
from .errors import OracleScaleError
from .rootsys import RootSystem, Weight

MAX_POINTS = 10_000
MAX_RANK = 6
MAX_SUBSETS = 10**6
MAX_GRID = 5_000

Vector = Sequence[Fraction]


def _as_fracs(v) -> tuple[Fraction, ...]:
    if isinstance(v, Weight):
        return v.coords
    return tuple(Fraction(x) for x in v)


def _feasible(cols: list[tuple[Fraction, ...]], rhs: list[Fraction]) -> bool:
    """Is ``A t = rhs, t >= 0`` solvable?  Phase-one simplex with Bland's rule."""
    m = len(rhs)
    n = len(cols)
    # tableau rows: [A | I | b], with b made nonnegative
    rows = []
    for i in range(m):
        sign = -1 if rhs[i] < 0 else 1
        row = [sign * c[i] for c in cols] + [Fraction(int(j == i)) for j in range(m)] + [sign * rhs[i]]
        rows.append(row)
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimize the sum of artificials, as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded; cannot happen for phase one
            break
        p = best[1]
        piv = rows[p][enter]
        rows[p] = [x / piv for x in rows[p]]
        for i in range(m):
            if i != p and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[p])]
        f = cost[enter]
        cost = [a - f * b for a, b in zip(cost, rows[p])]
        basis[p] = enter
    return cost[width] == 0


def _check_scale(npoints: int, rank: int) -> None:
    if npoints > MAX_POINTS:
        raise OracleScaleError(f"{npoints} points exceeds the oracle limit of {MAX_POINTS}")
    if rank > MAX_RANK:
        raise OracleScaleError(f"rank {rank} exceeds the oracle limit of {MAX_RANK}")


def hull_membership_exact(points: Sequence, mu) -> bool:
    """Exact test of ``mu in conv(points)`` by linear feasibility over the rationals."""
    pts = sorted({_as_fracs(p) for p in points})
    target = _as_fracs(mu)
    if not pts:
        return False
    _check_scale(len(pts), len(target))
    if target in pts:
        return True
    for i, x in enumerate(target):
        lo = min(p[i] for p in pts)
        hi = max(p[i] for p in pts)
        if not lo <= x <= hi:
            return False
    cols = [p + (Fraction(1),) for p in pts]
    return _feasible(cols, list(target) + [Fraction(1)])


@dataclass(frozen=True)
class HullOracle:
    """Convex hull of a finite point set with its facets found by brute force."""

    points: tuple[tuple[Fraction, ...], ...]
    facets: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = field(default=(), repr=False)

    @classmethod
    def build(cls, points: Sequence, max_subsets: int = 200_000) -> "HullOracle":
        pts = tuple(sorted({_as_fracs(p) for p in points}))
        if not pts:
            raise OracleScaleError("empty point set")
        r = len(pts[0])
        _check_scale(len(pts), r)
        if comb(len(pts), r) > max_subsets:
            raise OracleScaleError(f"facet enumeration over C({len(pts)}, {r}) subsets is too large")
        facets = set()
        for sub in itertools.combinations(pts, r):
            # affine hyperplane (n, b) with n.p = b on the subset
            ns = linalg.nullspace([list(p) + [Fraction(-1)] for p in sub], r + 1)
            if len(ns) != 1:
                continue
            vec = ns[0]
            n, b = tuple(vec[:r]), vec[r]
            if all(x == 0 for x in n):
                continue
            vals = [sum(a * c for a, c in zip(n, p)) - b for p in pts]
            if all(v <= 0 for v in vals):
                facets.add(_normalize(n, b))
            elif all(v >= 0 for v in vals):
                facets.add(_normalize(tuple(-x for x in n), -b))
        if not facets:
            raise OracleScaleError("point set is not full-dimensional")
        return cls(pts, tuple(sorted(facets)))

    def __contains__(self, mu) -> bool:
        x = _as_fracs(mu)
        return all(sum(a * c for a, c in zip(n, x)) <= b for n, b in self.facets)


def _normalize(n: tuple[Fraction, ...], b: Fraction) -> tuple[tuple[Fraction, ...], Fraction]:
    scale = next(abs(x) for x in n if x != 0)
    return tuple(x / scale for x in n), b / scale


def orbit_naive(rs: RootSystem, lam: Weight) -> set[Weight]:
    """Apply every element of W, written as a signed permutation, to ``lam``."""
    r = rs.rank
    if r > MAX_RANK:
        raise OracleScaleError(f"rank {r} exceeds the oracle limit of {MAX_RANK}")
    out = set()
    for perm in itertools.permutations(range(r)):
        for signs in itertools.product((1, -1), repeat=r):
            if rs.family == "D" and signs.count(-1) % 2:
                continue
            out.add(Weight(tuple(signs[i] * lam.coords2[perm[i]] for i in range(r))))
    return out


def exterior_rank_naive(p: RankProfile) -> int:
    """Rank of the induced diagonal operator on the k-th exterior power, listing a basis."""
    if p.k > p.n:
        raise OracleScaleError(f"k={p.k} exceeds n={p.n}")
    if comb(p.n, p.k) > MAX_SUBSETS:
        raise OracleScaleError(f"C({p.n}, {p.k}) exceeds {MAX_SUBSETS}")
    n0, npos, nneg = p.eigen_mults
    eig = [0] * n0 + [1] * npos + [-1] * nneg
    return sum(1 for sub in itertools.combinations(eig, p.k) if sum(sub) != 0)


def weight_support_naive(rs: RootSystem, lam: Weight) -> set[Weight]:
    """``conv(W lam) ∩ (lam + Q)`` by scanning a bounding box with the LP hull test."""
    orb = orbit_naive(rs, lam)
    bound = max(abs(c) for c in lam.coords2)
    if (2 * bound + 1) ** rs.rank > MAX_GRID:
        raise OracleScaleError(f"grid of side {2 * bound + 1} in rank {rs.rank} is too large")
    pts = [w.coords for w in orb]
    norm = lam.dot4(lam)
    out = set()
    for c in itertools.product(range(-bound, bound + 1), repeat=rs.rank):
        mu = Weight(c)
        # the hull lies in the ball through its vertices
        if mu.dot4(mu) > norm or not _same_coset(rs, lam, mu):
            continue
        if hull_membership_exact(pts, mu):
            out.add(mu)
    return out


def _same_coset(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    if any((a - b) % 2 for a, b in zip(lam.coords2, mu.coords2)):
        return False
    return all(c.denominator == 1 for c in rs.simple_coefficients(lam - mu))
