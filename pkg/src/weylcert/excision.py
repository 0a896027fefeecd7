"""Hyperplanes through weights and the counts of roots and weights they cut away."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import linalg
from .errors import CertificateInvalidError, HyperplaneRankError, ParseError, WeylcertError
from .rootsys import RootSystem, Weight, pairing, parse_weight
from .weightset import WeightSystem


@dataclass(frozen=True)
class Hyperplane:
    """``{x : (x, normal) = 0}`` with a primitive integral normal (first nonzero entry positive)."""

    normal: tuple[int, ...]
    generators: tuple[Weight, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.normal) - 1

    def value(self, mu: Weight) -> int:
        # twice (mu, normal); only its sign/zero-ness matters
        return sum(a * b for a, b in zip(mu.coords2, self.normal))

    def contains(self, mu: Weight) -> bool:
        return self.value(mu) == 0

    def __str__(self) -> str:
        return "normal:" + ",".join(map(str, self.normal))


def hyperplane_from_normal(normal: Sequence) -> Hyperplane:
    try:
        return Hyperplane(linalg.primitive(normal))
    except ValueError:
        raise WeylcertError("hyperplane normal must be nonzero") from None


def span_hyperplane(vectors: Sequence[Weight]) -> Hyperplane:
    """The hyperplane spanned by ``vectors``; fails unless the span has codimension one."""
    if not vectors:
        raise WeylcertError("need at least one vector")
    r = vectors[0].rank
    rows = [list(v.coords2) for v in vectors]
    rk = linalg.rank(rows)
    if rk != r - 1:
        raise HyperplaneRankError(rk, r - 1)
    (n,) = linalg.nullspace(rows, r)
    return Hyperplane(linalg.primitive(n), tuple(vectors))


def roots_off(rs: RootSystem, h: Hyperplane) -> int:
    """``|Delta \\ H|``; equals ``dim [xi, g]`` for ``xi`` spanning the line orthogonal to ``H``."""
    return sum(1 for a in rs.roots if h.value(a) != 0)


def roots_on(rs: RootSystem, h: Hyperplane) -> int:
    return len(rs.roots) - roots_off(rs, h)


class ExcisionCount(NamedTuple):
    set_count: int
    multiset_count: int


def weights_off(ws: WeightSystem, h: Hyperplane) -> ExcisionCount:
    n = m = 0
    for mu, k in ws.multiplicity.items():
        if h.value(mu) != 0:
            n += 1
            m += k
    return ExcisionCount(n, m)


def weights_on(ws: WeightSystem, h: Hyperplane) -> ExcisionCount:
    off = weights_off(ws, h)
    return ExcisionCount(ws.set_count - off.set_count, ws.multiset_count - off.multiset_count)


def sxa_lower_bound(ws: WeightSystem, h: Hyperplane, alpha: Weight, k: Iterable[Weight]) -> int:
    """Lower bound ``sum_{x in K} (x, alpha^vee)`` for ``|<Lambda> \\ H|``.

    Valid when ``alpha`` is a root off ``H`` and no two points of ``K`` lie on
    a common line parallel to ``alpha``.
    """
    k = list(dict.fromkeys(k))
    if alpha not in ws.rs.root_set:
        raise CertificateInvalidError(f"{alpha} is not a root")
    if h.contains(alpha):
        raise CertificateInvalidError(f"root {alpha} lies in the hyperplane")
    for x in k:
        if x not in ws:
            raise CertificateInvalidError(f"{x} is not in the weight system")
    # group by the alpha-line through x: two points share a line iff x - y is parallel to alpha
    seen: dict[tuple, Weight] = {}
    for x in k:
        key = _line_key(x, alpha)
        if key in seen:
            raise CertificateInvalidError(
                f"{seen[key]} and {x} differ by a multiple of {alpha}", pair=(seen[key], x)
            )
        seen[key] = x
    total = sum((pairing(x, alpha) for x in k), Fraction(0))
    return int(total)


def _line_key(x: Weight, alpha: Weight) -> tuple:
    # projection onto alpha^perp, scaled to stay integral
    n = alpha.dot4(alpha)
    d = x.dot4(alpha)
    return tuple(n * xi - d * ai for xi, ai in zip(x.coords2, alpha.coords2))


def gamma_half_bound(s: Iterable[Weight], p: int, h: Hyperplane) -> int:
    """``|S \\ H| >= |S| / 2`` for a set closed under negating coordinate ``p`` (0-based)
    that avoids the hyperplane ``x_p = 0``, provided ``eps_p`` is not in ``H``."""
    s = set(s)
    if h.normal[p] == 0:
        raise CertificateInvalidError(f"eps_{p + 1} lies in the hyperplane")
    for x in s:
        if x.coords2[p] == 0:
            raise CertificateInvalidError(f"{x} has zero coordinate {p + 1}")
        c = list(x.coords2)
        c[p] = -c[p]
        if Weight(tuple(c)) not in s:
            raise CertificateInvalidError(f"set is not closed under the sign change of coordinate {p + 1}: {x}")
    return len(s) // 2


def parse_hyperplane(text: str, rs: RootSystem) -> Hyperplane:
    """``"normal:1,-1,0,0"`` or ``"span:<weight>;<weight>;..."``."""
    t = text.strip()
    if t.startswith("normal:"):
        body = t[len("normal:"):]
        vals = []
        pos = len("normal:")
        for tok in body.split(","):
            try:
                vals.append(Fraction(tok.strip()))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"cannot parse {tok.strip()!r}", pos) from None
            pos += len(tok) + 1
        if len(vals) != rs.rank:
            raise ParseError(f"expected {rs.rank} entries, got {len(vals)}", len("normal:"))
        return hyperplane_from_normal(vals)
    if t.startswith("span:"):
        return span_hyperplane(parse_weight_list(t[len("span:"):], rs, offset=len("span:")))
    raise ParseError("hyperplane must start with 'normal:' or 'span:'", 0)


def parse_weight_list(text: str, rs: RootSystem, offset: int = 0) -> list[Weight]:
    out = []
    pos = offset
    for chunk in text.split(";"):
        if chunk.strip():
            try:
                out.append(parse_weight(chunk, rs))
            except ParseError as exc:
                raise ParseError(str(exc).rsplit(" (at", 1)[0], pos + exc.position) from None
        pos += len(chunk) + 1
    return out
