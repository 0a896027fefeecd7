"""Saturated weight systems, Freudenthal multiplicities and the reality indicator."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import WeylcertError
from .rootsys import RootSystem, Weight, build_root_system, pairing
from .weyl import dominant_coords, orbit_coords

Coords = tuple[int, ...]


def _dominated(rs: RootSystem, lam2: Coords, mu2: Coords) -> bool:
    _, rows = rs.simple_dual_int
    diff = [a - b for a, b in zip(lam2, mu2)]
    return all(sum(x * d for x, d in zip(row, diff)) >= 0 for row in rows)


def conv_membership(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    """Is ``mu`` in the convex hull of ``W lam``?

    Equivalent to ``lam - dom(mu)`` being a nonnegative combination of simple
    roots, which is how it is computed.
    """
    return _dominated(rs, lam.coords2, dominant_coords(rs.family, mu.coords2))


def _height(rs: RootSystem, lam2: Coords, mu2: Coords) -> int:
    den, rows = rs.simple_dual_int
    diff = [a - b for a, b in zip(lam2, mu2)]
    return sum(sum(x * d for x, d in zip(row, diff)) for row in rows) // den


@lru_cache(maxsize=256)
def _dominant_multiplicities(family: str, rank: int, lam2: Coords) -> tuple[tuple[Coords, int], ...]:
    rs = build_root_system(family, rank)
    fam = rs.family
    pos = [a.coords2 for a in rs.positive_roots]

    # dominant weights of the saturated set, reached by subtracting positive roots
    found = {lam2}
    stack = [lam2]
    while stack:
        mu = stack.pop()
        for a in pos:
            nu = dominant_coords(fam, tuple(x - y for x, y in zip(mu, a)))
            if nu not in found and _dominated(rs, lam2, nu):
                found.add(nu)
                stack.append(nu)

    order = sorted(found, key=lambda m: (_height(rs, lam2, m), m))
    rho = rs.rho.coords2
    lr = [x + y for x, y in zip(lam2, rho)]
    top = sum(x * x for x in lr)
    mult: dict[Coords, int] = {}
    for mu in order:
        if mu == lam2:
            mult[mu] = 1
            continue
        num = 0
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                m = mult.get(dominant_coords(fam, nu))
                if m is None:
                    break
                num += m * sum(x * y for x, y in zip(nu, a))
                k += 1
        mr = [x + y for x, y in zip(mu, rho)]
        den = top - sum(x * x for x in mr)
        q, rem = divmod(2 * num, den)
        if rem:
            raise ArithmeticError(f"non-integral multiplicity at {mu}")
        mult[mu] = q
    return tuple((mu, mult[mu]) for mu in order)


@dataclass(frozen=True)
class WeightSystem:
    lam: Weight
    support: tuple[Weight, ...] = field(repr=False)
    multiplicity: dict = field(repr=False, compare=False)
    delta: int
    rs: RootSystem = field(repr=False)
    dominant: tuple[tuple[Weight, int], ...] = field(repr=False, default=())

    @property
    def set_count(self) -> int:
        return len(self.support)

    @property
    def multiset_count(self) -> int:
        return sum(self.multiplicity.values())

    def __contains__(self, mu: object) -> bool:
        return mu in self.multiplicity

    def __len__(self) -> int:
        return len(self.support)


def weight_system(rs: RootSystem, lam: Weight) -> WeightSystem:
    """The weight support of the irreducible module with highest weight ``lam``."""
    rs.check_weight(lam)
    if not rs.is_dominant(lam):
        raise WeylcertError(f"{lam} is not dominant")
    dom = _dominant_multiplicities(rs.family, rs.rank, lam.coords2)
    mult: dict[Weight, int] = {}
    for mu2, m in dom:
        for c in orbit_coords(rs.family, mu2):
            mult[Weight(c)] = m
    support = tuple(sorted(mult))
    delta = 1 if lam.is_zero() else delta_indicator(rs, lam)
    return WeightSystem(
        lam=lam,
        support=support,
        multiplicity=mult,
        delta=delta,
        rs=rs,
        dominant=tuple((Weight(mu2), m) for mu2, m in dom),
    )


def freudenthal_multiplicity(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    rs.check_weight(lam)
    if not rs.is_dominant(lam):
        raise WeylcertError(f"{lam} is not dominant")
    if not rs.in_weight_lattice(mu):
        return 0
    target = dominant_coords(rs.family, mu.coords2)
    for mu2, m in _dominant_multiplicities(rs.family, rs.rank, lam.coords2):
        if mu2 == target:
            return m
    return 0


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """Product over positive roots of ``(lam + rho, a^vee) / (rho, a^vee)``."""
    rho = rs.rho
    lr = lam + rho
    out = Fraction(1)
    for a in rs.positive_roots:
        out *= Fraction(lr.dot4(a), rho.dot4(a))
    if out.denominator != 1:
        raise ArithmeticError("non-integral dimension")
    return int(out)


def is_self_dual(rs: RootSystem, lam: Weight) -> bool:
    if rs.family in ("B", "C") or rs.rank % 2 == 0:
        return True
    c = rs.fundamental_coefficients(lam)
    return c[-1] == c[-2]


def delta_indicator(rs: RootSystem, lam: Weight) -> int:
    """1 for an orthogonal irreducible, 2 for symplectic or non-self-dual."""
    if lam.is_zero():
        raise WeylcertError("the trivial representation is excluded")
    if not is_self_dual(rs, lam):
        return 2
    two_rho_check = sum(pairing(lam, a) for a in rs.positive_roots)
    return 1 if int(two_rho_check) % 2 == 0 else 2


class LatticeFlags(NamedTuple):
    in_P: bool
    in_Q: bool


def lattice_membership(rs: RootSystem, mu: Weight) -> LatticeFlags:
    if mu.rank != rs.rank:
        return LatticeFlags(False, False)
    in_p = all(pairing(mu, a).denominator == 1 for a in rs.simple_roots)
    in_q = in_p and all(c.denominator == 1 for c in rs.simple_coefficients(mu))
    return LatticeFlags(in_p, in_q)
