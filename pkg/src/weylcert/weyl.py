"""Weyl group action: signed permutations (even sign changes for D)."""
from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .errors import WeylcertError
from .rootsys import RootSystem, Weight, pairing

Coords = tuple[int, ...]


def dominant_coords(family: str, c2: Coords) -> Coords:
    a = sorted((abs(x) for x in c2), reverse=True)
    if family == "D" and a and a[-1] != 0:
        if sum(1 for x in c2 if x < 0) % 2:
            a[-1] = -a[-1]
    return tuple(a)


def simple_reflection_coords(family: str, i: int, c: Coords) -> Coords:
    """Apply the i-th simple reflection (0-based) to doubled coordinates."""
    r = len(c)
    if i < r - 1:
        lst = list(c)
        lst[i], lst[i + 1] = lst[i + 1], lst[i]
        return tuple(lst)
    if family == "D":
        return c[:-2] + (-c[-1], -c[-2])
    return c[:-1] + (-c[-1],)


def orbit_coords(family: str, c: Coords) -> set[Coords]:
    r = len(c)
    seen = {c}
    queue = deque([c])
    while queue:
        cur = queue.popleft()
        for i in range(r):
            nxt = simple_reflection_coords(family, i, cur)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def dominant_representative(rs: RootSystem, mu: Weight) -> Weight:
    """The unique element of ``W mu`` in the closed fundamental chamber."""
    rs.check_weight(mu)
    return Weight(dominant_coords(rs.family, mu.coords2))


def apply_simple_reflection(rs: RootSystem, i: int, mu: Weight) -> Weight:
    return Weight(simple_reflection_coords(rs.family, i, mu.coords2))


def reflect(rs: RootSystem, alpha: Weight, mu: Weight) -> Weight:
    """``s_alpha(mu) = mu - (mu, alpha^vee) alpha``."""
    if alpha not in rs.root_set:
        raise WeylcertError(f"{alpha} is not a root of {rs.label}")
    k = pairing(mu, alpha)
    if k.denominator == 1:
        return mu - int(k) * alpha
    # outside P the result may leave the doubled-integer grid
    coords = [x - k * a for x, a in zip(mu.coords, alpha.coords)]
    return Weight.from_coords(coords)


@dataclass(frozen=True)
class OrbitSet:
    dominant: Weight
    elements: tuple[Weight, ...] = field(repr=False)
    rs: RootSystem = field(repr=False)
    normalized: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Weight]:
        return iter(self.elements)

    def __contains__(self, mu: object) -> bool:
        return mu in self._members

    @property
    def _members(self) -> frozenset[Weight]:
        cache = self.__dict__.get("_member_cache")
        if cache is None:
            cache = frozenset(self.elements)
            object.__setattr__(self, "_member_cache", cache)
        return cache


def orbit(rs: RootSystem, lam: Weight) -> OrbitSet:
    """``W lam`` by breadth-first closure under the simple reflections."""
    rs.check_weight(lam)
    dom = dominant_coords(rs.family, lam.coords2)
    normalized = dom != lam.coords2
    if normalized:
        warnings.warn(f"{lam} is not dominant; using {Weight(dom)}", stacklevel=2)
    elems = tuple(Weight(c) for c in sorted(orbit_coords(rs.family, dom)))
    return OrbitSet(Weight(dom), elems, rs, normalized)
