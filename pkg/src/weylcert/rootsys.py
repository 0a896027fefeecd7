"""Root systems of types B, C and D in explicit epsilon-coordinates.

Weights are stored with doubled integer coordinates so that the half-integral
spinor weights of types B and D are exact.  Everything downstream (orbits,
weight systems, hyperplane counts) works on these integer tuples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from . import linalg
from .errors import LatticeError, ParseError, RankBoundsError, UnsupportedTypeError, WeylcertError

FAMILIES = ("B", "C", "D")
MIN_RANK = {"B": 2, "C": 3, "D": 4}


@dataclass(frozen=True, order=True, slots=True)
class Weight:
    """A point of the weight lattice; ``coords2[i] / 2`` is the i-th coordinate."""

    coords2: tuple[int, ...]

    @classmethod
    def from_coords(cls, coords: Iterable) -> "Weight":
        out = []
        for x in coords:
            d = Fraction(x) * 2
            if d.denominator != 1:
                raise LatticeError(f"coordinate {x} is not half-integral")
            out.append(int(d))
        return cls(tuple(out))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank: int, i: int, scale: int = 1) -> "Weight":
        """``scale * eps_{i+1}`` (``i`` is 0-based)."""
        c = [0] * rank
        c[i] = 2 * scale
        return cls(tuple(c))

    @property
    def rank(self) -> int:
        return len(self.coords2)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.coords2)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords2, other.coords2)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords2, other.coords2)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords2))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords2))

    __rmul__ = __mul__

    def dot(self, other: "Weight") -> Fraction:
        return Fraction(sum(a * b for a, b in zip(self.coords2, other.coords2)), 4)

    def dot4(self, other: "Weight") -> int:
        """Four times the inner product, always an integer."""
        return sum(a * b for a, b in zip(self.coords2, other.coords2))

    def is_zero(self) -> bool:
        return not any(self.coords2)

    def __str__(self) -> str:
        return format_coords(self.coords2)


def format_coords(coords2: Sequence[int]) -> str:
    return ",".join(str(c // 2) if c % 2 == 0 else f"{c}/2" for c in coords2)


def pairing(mu: Weight, alpha: Weight) -> Fraction:
    """``(mu, alpha^vee) = 2 (mu, alpha) / (alpha, alpha)``."""
    den = alpha.dot4(alpha)
    if den == 0:
        raise WeylcertError("pairing with the zero vector")
    return Fraction(2 * mu.dot4(alpha), den)


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    roots: tuple[Weight, ...] = field(repr=False)
    positive_roots: tuple[Weight, ...] = field(repr=False)
    simple_roots: tuple[Weight, ...] = field(repr=False)
    fundamental_weights: tuple[Weight, ...] = field(repr=False)
    weyl_order: int = field(repr=False)
    pq_index: int = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @cached_property
    def root_set(self) -> frozenset[Weight]:
        return frozenset(self.roots)

    @cached_property
    def root_sums(self) -> frozenset[Weight]:
        """``Delta + Delta`` (all ordered sums, including ``a + a``)."""
        return frozenset(a + b for a in self.roots for b in self.roots)

    @cached_property
    def _simple_dual(self) -> list[list[Fraction]]:
        # row i maps doubled coords to the coefficient of alpha_i
        st = [[Fraction(a.coords2[k], 2) for a in self.simple_roots] for k in range(self.rank)]
        cols = []
        for k in range(self.rank):
            e = [Fraction(int(k == j)) for j in range(self.rank)]
            cols.append(linalg.solve(st, e))
        return [[cols[k][i] / 2 for k in range(self.rank)] for i in range(self.rank)]

    def simple_coefficients(self, mu: Weight) -> tuple[Fraction, ...]:
        """Coefficients ``c`` with ``mu = sum c_i alpha_i``."""
        x = mu.coords2
        return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in self._simple_dual)

    @cached_property
    def simple_dual_int(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """``(den, rows)``: ``den * coeff_i(mu) = rows[i] . mu.coords2``."""
        den = 1
        for row in self._simple_dual:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        return den, tuple(tuple(int(x * den) for x in row) for row in self._simple_dual)

    def cartan_matrix(self) -> list[list[int]]:
        return [[int(pairing(a, b)) for b in self.simple_roots] for a in self.simple_roots]

    def dynkin_edges(self) -> set[frozenset[int]]:
        n = self.rank
        return {
            frozenset((i, j))
            for i in range(n)
            for j in range(i + 1, n)
            if self.simple_roots[i].dot4(self.simple_roots[j]) != 0
        }

    def fundamental_coefficients(self, mu: Weight) -> tuple[Fraction, ...]:
        return tuple(pairing(mu, a) for a in self.simple_roots)

    def from_fundamental(self, coeffs: Sequence[int]) -> Weight:
        if len(coeffs) != self.rank:
            raise WeylcertError(f"expected {self.rank} coefficients, got {len(coeffs)}")
        out = Weight.zero(self.rank)
        for c, phi in zip(coeffs, self.fundamental_weights):
            out = out + int(c) * phi
        return out

    def in_weight_lattice(self, mu: Weight) -> bool:
        if mu.rank != self.rank:
            return False
        par = {c % 2 for c in mu.coords2}
        if len(par) > 1:
            return False
        if self.family == "C" and par == {1}:
            return False
        return True

    def check_weight(self, mu: Weight) -> None:
        if mu.rank != self.rank:
            raise LatticeError(f"weight has rank {mu.rank}, system has rank {self.rank}")
        if not self.in_weight_lattice(mu):
            raise LatticeError(f"{mu} is not in the weight lattice of {self.label}")

    def is_dominant(self, mu: Weight) -> bool:
        return all(pairing(mu, a) >= 0 for a in self.simple_roots)

    @cached_property
    def rho(self) -> Weight:
        out = Weight.zero(self.rank)
        for phi in self.fundamental_weights:
            out = out + phi
        return out

    def lattice_invariants(self) -> tuple[int, ...]:
        """Invariant factors of Q inside P (simple roots in the fundamental basis)."""
        m = Matrix(self.cartan_matrix())
        return tuple(abs(int(x)) for x in invariant_factors(m))

    def simple_system(self) -> "SimpleSubsystem":
        return make_subsystem(self, self.simple_roots)


def _roots(family: str, r: int) -> list[Weight]:
    out = []
    for i, j in itertools.combinations(range(r), 2):
        for si in (1, -1):
            for sj in (1, -1):
                c = [0] * r
                c[i], c[j] = 2 * si, 2 * sj
                out.append(Weight(tuple(c)))
    if family in ("B", "C"):
        scale = 1 if family == "B" else 2
        for i in range(r):
            for s in (1, -1):
                out.append(Weight.unit(r, i, s * scale))
    return out


def _simple_roots(family: str, r: int) -> list[Weight]:
    out = []
    for i in range(r - 1):
        c = [0] * r
        c[i], c[i + 1] = 2, -2
        out.append(Weight(tuple(c)))
    if family == "B":
        out.append(Weight.unit(r, r - 1))
    elif family == "C":
        out.append(Weight.unit(r, r - 1, 2))
    else:
        c = [0] * r
        c[r - 2], c[r - 1] = 2, 2
        out.append(Weight(tuple(c)))
    return out


@lru_cache(maxsize=None)
def build_root_system(family: str, r: int) -> RootSystem:
    family = family.upper()
    if family not in FAMILIES:
        raise UnsupportedTypeError(f"unsupported family {family!r}; expected one of B, C, D")
    if not isinstance(r, int) or r < MIN_RANK[family]:
        raise RankBoundsError(f"{family} requires rank >= {MIN_RANK[family]}, got {r}")
    roots = sorted(set(_roots(family, r)))
    simple = _simple_roots(family, r)
    # generic interior point of the chamber; D needs x_{r-1} > |x_r|
    generic = Weight(tuple(2 * (r - i) for i in range(r)))
    positive = tuple(a for a in roots if a.dot4(generic) > 0)

    # fundamental weights: (phi_i, alpha_j^vee) = delta_ij, solved in doubled coords
    corows = [[Fraction(2 * c, a.dot4(a)) for c in a.coords2] for a in simple]
    fws = []
    for i in range(r):
        e = [Fraction(int(i == j)) for j in range(r)]
        fws.append(_from_doubled(linalg.solve(corows, e)))
    factorial = 1
    for k in range(2, r + 1):
        factorial *= k
    weyl = 2**r * factorial if family in ("B", "C") else 2 ** (r - 1) * factorial
    rs = RootSystem(
        family=family,
        rank=r,
        roots=tuple(roots),
        positive_roots=positive,
        simple_roots=tuple(simple),
        fundamental_weights=tuple(fws),
        weyl_order=weyl,
        pq_index=0,
    )
    index = 1
    for f in rs.lattice_invariants():
        index *= f
    object.__setattr__(rs, "pq_index", index)
    return rs


def _from_doubled(sol: Sequence[Fraction]) -> Weight:
    out = []
    for s in sol:
        if s.denominator != 1:
            raise LatticeError("fundamental weight is not half-integral")
        out.append(int(s))
    return Weight(tuple(out))


# --- simple subsystems -------------------------------------------------------


@dataclass(frozen=True)
class SimpleSubsystem:
    roots: tuple[Weight, ...]
    family: str | None
    rank: int
    components: tuple[str, ...] = ()

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def label(self) -> str:
        return "+".join(self.components) if self.components else "empty"


def _cartan(roots: Sequence[Weight]) -> list[list[int]]:
    return [[int(pairing(a, b)) for b in roots] for a in roots]


def _components(roots: Sequence[Weight]) -> list[list[int]]:
    n = len(roots)
    seen: set[int] = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if w not in seen and roots[v].dot4(roots[w]) != 0:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _orderings(roots: Sequence[Weight]) -> tuple[str | None, list[list[int]]]:
    """Type letter of a connected diagram and all its standard numberings."""
    n = len(roots)
    if n == 1:
        return "A", [[0]]
    a = _cartan(roots)
    adj = {i: [j for j in range(n) if j != i and a[i][j] != 0] for i in range(n)}
    bond = {(i, j): a[i][j] * a[j][i] for i in range(n) for j in adj[i]}
    if sum(len(v) for v in adj.values()) // 2 != n - 1:
        return None, []
    if any(m > 2 for m in bond.values()):
        return None, []
    degrees = [len(adj[i]) for i in range(n)]

    def walk(start: int, avoid: set[int]) -> list[int]:
        path, prev, cur = [start], None, start
        while True:
            nxt = [j for j in adj[cur] if j != prev and j not in avoid]
            if not nxt:
                return path
            prev, cur = cur, nxt[0]
            path.append(cur)

    if max(degrees) <= 2:
        ends = [i for i in range(n) if degrees[i] == 1]
        paths = [walk(e, set()) for e in ends]
        doubles = [(i, j) for (i, j), m in bond.items() if m == 2]
        if not doubles:
            return "A", paths
        if len(doubles) != 2:  # one undirected double bond counted twice
            return None, []
        p = next(p for p in paths if frozenset(p[-2:]) == frozenset(doubles[0]))
        if n > 2 and frozenset(p[:2]) == frozenset(doubles[0]):
            return None, []
        if n > 2 and any(frozenset(p[k : k + 2]) == frozenset(doubles[0]) for k in range(1, n - 2)):
            return None, []
        if n == 2:
            # rank two double bond: long root first
            p = sorted(range(2), key=lambda i: -roots[i].dot4(roots[i]))
            return "B", [p]
        last_short = roots[p[-1]].dot4(roots[p[-1]]) < roots[p[-2]].dot4(roots[p[-2]])
        return ("B" if last_short else "C"), [p]
    if any(m != 1 for m in bond.values()):
        return None, []
    branch = [i for i in range(n) if degrees[i] == 3]
    if len(branch) != 1 or max(degrees) > 3:
        return None, []
    b = branch[0]
    arms = [walk(j, {b}) for j in adj[b]]
    arms.sort(key=len)
    if len(arms[0]) != 1 or len(arms[1]) != 1:
        return None, []
    out = []
    for long_i in range(3):
        if len(arms[long_i]) != len(arms[2]):
            continue
        others = [arms[k][0] for k in range(3) if k != long_i]
        head = list(reversed(arms[long_i])) + [b]
        out.append(head + others)
        out.append(head + others[::-1])
    return "D", out


def make_subsystem(rs: RootSystem | None, roots: Sequence[Weight]) -> SimpleSubsystem:
    """Classify ``roots`` (assumed a simple system) and put each component in standard order.

    Among the admissible numberings the one whose roots come earliest in the
    ambient simple system (then lowest height) is kept, so subsets of the
    ambient system keep their ambient order.
    """
    roots = list(roots)
    if not roots:
        return SimpleSubsystem((), None, 0, ())

    def key(w: Weight):
        if rs is None:
            return (0, 0, tuple(-c for c in w.coords2))
        coeffs = rs.simple_coefficients(w)
        support = [i for i, c in enumerate(coeffs) if c != 0]
        return (min(support) if support else -1, sum(coeffs), tuple(-c for c in w.coords2))

    comps = _components(roots)
    ordered: list[tuple[tuple, str, list[Weight]]] = []
    for comp in comps:
        sub = [roots[i] for i in comp]
        letter, orders = _orderings(sub)
        if letter is None:
            seq = sorted(sub, key=key)
            ordered.append((tuple(key(w) for w in seq), f"?{len(sub)}", seq))
            continue
        best = min(([sub[i] for i in o] for o in orders), key=lambda s: [key(w) for w in s])
        ordered.append((tuple(key(w) for w in best), f"{letter}{len(sub)}", best))
    ordered.sort(key=lambda t: t[0])
    flat = tuple(w for _, _, seq in ordered for w in seq)
    labels = tuple(lab for _, lab, _ in ordered)
    family = labels[0][0] if len(labels) == 1 and not labels[0].startswith("?") else None
    return SimpleSubsystem(flat, family, len(flat), labels)


def boundary_subset(pi: SimpleSubsystem) -> tuple[Weight, ...]:
    """Distinguished boundary roots of an indecomposable B, C or D system (standard order)."""
    if not pi.connected or pi.family not in FAMILIES:
        raise UnsupportedTypeError(f"boundary subset is tabulated for B, C, D only, got {pi.label}")
    n = pi.rank
    s = pi.roots
    if pi.family == "B":
        return (s[0],) if n >= 5 else (s[0], s[-1])
    if pi.family == "C":
        return (s[0], s[1])
    if n >= 7:
        return (s[0],)
    return (s[0], s[n - 2], s[n - 1])


def pc_family(rs: RootSystem) -> list[SimpleSubsystem]:
    """All connected induced subdiagrams of the Dynkin diagram with ``r - 2`` vertices."""
    r = rs.rank
    if r <= 2:
        raise RankBoundsError("the family of order r-2 subsystems needs r > 2")
    edges = rs.dynkin_edges()
    out = []
    for combo in itertools.combinations(range(r), r - 2):
        chosen = set(combo)
        start = combo[0]
        seen, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for w in chosen:
                if w not in seen and frozenset((v, w)) in edges:
                    seen.add(w)
                    stack.append(w)
        if seen == chosen:
            out.append(make_subsystem(rs, [rs.simple_roots[i] for i in combo]))
    return out


def subsystem_simple_system(rs: RootSystem, normal: Sequence[int]) -> SimpleSubsystem:
    """Simple system of ``Delta ∩ H`` for the hyperplane ``H = normal^perp``.

    ``normal`` is given in ordinary (undoubled) coordinates.
    """
    pos = [a for a in rs.positive_roots if sum(c * n for c, n in zip(a.coords2, normal)) == 0]
    pos_set = set(pos)
    decomposable = {a + b for a, b in itertools.combinations(pos, 2)} & pos_set
    simple = [a for a in pos if a not in decomposable]
    return make_subsystem(rs, simple)


# --- text format -------------------------------------------------------------


def parse_weight(text: str, rs: RootSystem | None = None, rank: int | None = None) -> Weight:
    """Parse ``"1/2,1/2,1/2"`` (epsilon-coordinates) or ``"fw:0,0,1"``."""
    raw = text
    offset = 0
    fundamental = False
    stripped = raw.lstrip()
    offset = len(raw) - len(stripped)
    if stripped.startswith("fw:"):
        fundamental = True
        offset += 3
        stripped = stripped[3:]
    values: list[Fraction] = []
    pos = offset
    for tok in stripped.split(","):
        t = tok.strip()
        if not t:
            raise ParseError("empty coordinate", pos)
        try:
            v = Fraction(t)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot parse {t!r} as a rational", pos) from None
        values.append(v)
        pos += len(tok) + 1
    expected = rs.rank if rs is not None else rank
    if expected is not None and len(values) != expected:
        raise ParseError(f"expected {expected} entries, got {len(values)}", offset)
    if fundamental:
        if rs is None:
            raise ParseError("fundamental-weight coefficients need a root system", 0)
        if any(v.denominator != 1 for v in values):
            raise ParseError("fundamental-weight coefficients must be integers", offset)
        return rs.from_fundamental([int(v) for v in values])
    try:
        return Weight.from_coords(values)
    except LatticeError as exc:
        raise ParseError(str(exc), offset) from None
