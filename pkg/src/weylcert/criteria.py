"""Non-smoothness certificates, rank formulas and the obstruction scan.

A certificate is a subset ``Omega`` of the orbit ``Lambda = W lam`` spanning a
hyperplane ``H`` such that

* ``delta * ||<Lambda> \\ H|| > |Delta \\ H| + 6`` (multiset count on the left),
* no difference of two elements of ``Omega`` is a root,
* if ``delta == 1``: ``2 lam`` avoids ``Delta ∪ (Delta + Delta)`` and no sum of
  two elements of ``Omega`` is a root.
"""
from __future__ import annotations

import itertools
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Iterable, Sequence

from . import linalg
from .errors import HyperplaneRankError, WeylcertError
from .excision import Hyperplane, hyperplane_from_normal, roots_off, span_hyperplane, weights_off
from .rootsys import RootSystem, Weight, build_root_system, pairing
from .weightset import WeightSystem, delta_indicator, weight_system
from .weyl import dominant_coords, orbit

log = logging.getLogger(__name__)

# Representations of complex simple groups known to be polar; carried as data only.
POLAR_REPRESENTATIONS = (
    {"group": "any simple", "representation": "adjoint"},
    {"group": "SO_n", "representation": "R_phi1"},
    {"group": "SO_n", "representation": "R_2phi1"},
    {"group": "Sp_2r", "representation": "R_phi2"},
    {"group": "Sp_2r", "representation": "2 R_phi1"},
    {"group": "Sp_8", "representation": "R_phi4"},
    {"group": "Spin_10", "representation": "R_phi5 + R'_phi5"},
    {"group": "Spin_16", "representation": "R_phi8"},
)

CLAUSES = ("codim1", "inequality", "difference_free", "two_lambda", "sum_free")


@dataclass(frozen=True)
class Certificate:
    family: str
    rank: int
    lam: Weight
    omega: tuple[Weight, ...]
    hyperplane: Hyperplane | None
    delta: int
    weights_off_set: int
    weights_off_multiset: int
    roots_off: int
    flags: dict = field(compare=False)
    reason: str | None = None
    pair: tuple[Weight, Weight] | None = None

    @property
    def valid(self) -> bool:
        return self.reason is None

    @property
    def verdict(self) -> str:
        return "valid" if self.valid else f"invalid({self.reason})"

    @property
    def lhs(self) -> int:
        return self.delta * self.weights_off_multiset

    @property
    def rhs(self) -> int:
        return self.roots_off + 6

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "omega": [str(w) for w in sorted(self.omega)],
            "normal": list(self.hyperplane.normal) if self.hyperplane else None,
            "lhs": self.lhs if self.hyperplane else None,
            "rhs": self.rhs if self.hyperplane else None,
            "delta": self.delta,
            "flags": {k: self.flags[k] for k in CLAUSES},
            "verdict": self.verdict,
        }
        if self.hyperplane:
            out["weights_off_set"] = self.weights_off_set
            out["weights_off_multiset"] = self.weights_off_multiset
            out["roots_off"] = self.roots_off
        if self.pair:
            out["pair"] = [str(w) for w in self.pair]
        return out


def check_two_lambda(rs: RootSystem, lam: Weight) -> bool:
    """True iff ``2 lam`` is neither a root nor a sum of two roots."""
    two = 2 * lam
    return two not in rs.root_set and two not in rs.root_sums


def _in_orbit(rs: RootSystem, lam: Weight, x: Weight) -> bool:
    return rs.in_weight_lattice(x) and dominant_coords(rs.family, x.coords2) == lam.coords2


def check_nosm(ws: WeightSystem, omega: Iterable[Weight]) -> Certificate:
    """Evaluate every certificate clause for ``Omega`` exactly."""
    rs = ws.rs
    lam = ws.lam
    omega = tuple(dict.fromkeys(omega))
    if not omega:
        raise WeylcertError("omega must be nonempty")
    for x in omega:
        if not _in_orbit(rs, lam, x):
            raise WeylcertError(f"{x} is not in the orbit of {lam}")
    delta = ws.delta
    flags = dict.fromkeys(CLAUSES, False)
    reasons: list[tuple[str, Any]] = []

    try:
        h = span_hyperplane(omega)
        flags["codim1"] = True
    except HyperplaneRankError:
        h = None
        reasons.append(("rank", None))

    w_set = w_multi = r_off = 0
    if h is not None:
        w_set, w_multi = weights_off(ws, h)
        r_off = roots_off(rs, h)
        flags["inequality"] = delta * w_multi > r_off + 6
        if not flags["inequality"]:
            reasons.append(("inequality", None))

    diff_pair = next(
        ((x, y) for x, y in itertools.permutations(omega, 2) if x - y in rs.root_set), None
    )
    flags["difference_free"] = diff_pair is None
    if diff_pair:
        reasons.append(("omega-difference-in-Delta", diff_pair))

    flags["two_lambda"] = check_two_lambda(rs, lam)
    sum_pair = next(
        ((x, y) for x, y in itertools.combinations_with_replacement(omega, 2) if x + y in rs.root_set),
        None,
    )
    flags["sum_free"] = sum_pair is None
    if delta == 1:
        if not flags["two_lambda"]:
            reasons.append(("two-lambda", None))
        if sum_pair:
            reasons.append(("omega-sum-in-Delta", sum_pair))

    reason, pair = reasons[0] if reasons else (None, None)
    return Certificate(
        family=rs.family,
        rank=rs.rank,
        lam=lam,
        omega=omega,
        hyperplane=h,
        delta=delta,
        weights_off_set=w_set,
        weights_off_multiset=w_multi,
        roots_off=r_off,
        flags=flags,
        reason=reason,
        pair=pair,
    )


@dataclass(frozen=True)
class BmsCheck:
    holds: bool
    lhs: int
    rhs: int
    set_count: int
    multiset_count: int
    roots_off: int


def check_bms(ws: WeightSystem, h: Hyperplane) -> BmsCheck:
    """Does ``delta * ||<Lambda> \\ H|| <= |Delta \\ H| + 6`` hold?  (It must fail to obstruct.)"""
    s, m = weights_off(ws, h)
    ro = roots_off(ws.rs, h)
    lhs = ws.delta * m
    return BmsCheck(lhs <= ro + 6, lhs, ro + 6, s, m, ro)


# --- exterior powers ---------------------------------------------------------


@dataclass(frozen=True)
class RankProfile:
    """A semisimple operator on ``C^n`` with eigenvalues 0, +1, -1, acting on the k-th exterior power."""

    n: int
    k: int
    eigen_mults: tuple[int, int, int]

    def __post_init__(self):
        if any(x < 0 for x in self.eigen_mults) or sum(self.eigen_mults) != self.n:
            raise WeylcertError(f"multiplicities {self.eigen_mults} do not add up to {self.n}")
        if self.k < 0:
            raise WeylcertError("k must be nonnegative")


def exterior_rank(p: RankProfile) -> int:
    """``C(n, k)`` minus the number of zero-sum k-subsets of the eigenvalue multiset."""
    if p.k > p.n:
        raise WeylcertError(f"k={p.k} exceeds n={p.n}")
    n0, npos, nneg = p.eigen_mults
    kernel = sum(comb(n0, p.k - 2 * b) * comb(npos, b) * comb(nneg, b) for b in range(p.k // 2 + 1))
    return comb(p.n, p.k) - kernel


def tautological_profile(rs: RootSystem, alpha: Weight, k: int) -> RankProfile:
    """Eigenvalue profile of ``h_alpha`` on the defining representation (dimension 2r+1 or 2r)."""
    weights = []
    for i in range(rs.rank):
        weights += [Weight.unit(rs.rank, i), Weight.unit(rs.rank, i, -1)]
    if rs.family == "B":
        weights.append(Weight.zero(rs.rank))
    vals = [pairing(w, alpha) for w in weights]
    if any(v not in (-1, 0, 1) for v in vals):
        raise WeylcertError(f"h_alpha has eigenvalues outside {{0, 1, -1}} for alpha={alpha}")
    mults = (vals.count(0), vals.count(1), vals.count(-1))
    return RankProfile(len(weights), k, mults)


@dataclass(frozen=True)
class RankContradiction:
    exterior_rank: int
    bracket_dim: int
    delta: int
    weights_off_multiset: int

    @property
    def bound(self) -> Fraction:
        return Fraction(self.bracket_dim + 6, self.delta)

    @property
    def contradiction(self) -> bool:
        return self.exterior_rank > self.bound

    @property
    def weight_contradiction(self) -> bool:
        """The same comparison using the rank read off the module's own weights."""
        return self.weights_off_multiset > self.bound

    @property
    def exterior_matches_weights(self) -> bool:
        return self.exterior_rank == self.weights_off_multiset


def rank_contradiction(rs: RootSystem, lam: Weight, alpha: Weight, degree: int) -> RankContradiction:
    """Compare the rank of ``h_alpha`` on the ``degree``-th exterior power of the defining
    representation with ``(|Delta \\ alpha^perp| + 6) / delta``.

    ``weights_off_multiset`` is the rank computed directly from the weights of
    the irreducible module; ``exterior_matches_weights`` tells whether the
    module really is that exterior power.
    """
    profile = tautological_profile(rs, alpha, degree)
    h = hyperplane_from_normal(alpha.coords)
    ws = weight_system(rs, lam)
    return RankContradiction(
        exterior_rank=exterior_rank(profile),
        bracket_dim=roots_off(rs, h),
        delta=ws.delta,
        weights_off_multiset=weights_off(ws, h).multiset_count,
    )


# --- witness templates -------------------------------------------------------


def _eps(r: int, i: int, k: int = 1) -> Weight:
    return Weight.unit(r, i - 1, k)


def _flip_last(w: Weight) -> Weight:
    return Weight(w.coords2[:-1] + (-w.coords2[-1],))


def witness_templates(rs: RootSystem, lam: Weight) -> list[tuple[str, tuple[Weight, ...]]]:
    """Explicit ``Omega`` constructions known for particular highest weights."""
    r, fam = rs.rank, rs.family
    phi = rs.fundamental_weights
    out: list[tuple[str, tuple[Weight, ...]]] = []

    def fw(*idx: int) -> Weight:
        w = Weight.zero(r)
        for i in idx:
            w = w + phi[i - 1]
        return w

    if fam in ("B", "C") and r > 2:
        shift = 2 if fam == "B" else 3
        for c, target in ((0, fw(1, r)), (1, fw(2, r)), (2, fw(1, 2, r))):
            if lam == target:
                top = phi[r - 1] + c * _eps(r, 1)
                omega = tuple(top - _eps(r, j, shift) for j in range(2, r + 1))
                out.append((f"{fam.lower()}-top-shift-c{c}", omega))
    if fam == "B" and r == 6 and lam == fw(6):
        p = phi[5]
        e = lambda *idx: sum((_eps(6, i) for i in idx), Weight.zero(6))  # noqa: E731
        omega = (-p, p - e(1, 2), p - e(3, 4), p - e(5), p - e(2, 3, 6))
        out.append(("b6-half-spin", omega))
    if fam == "B" and r == 4 and lam == fw(3):
        out.append(("b4-third", tuple(phi[2] - _eps(4, j, 2) for j in (1, 2, 3))))
    if fam == "C" and r in (4, 5) and lam == fw(r - 1):
        out.append(("c-penultimate", tuple(phi[r - 2] - _eps(r, j, 2) for j in range(1, r))))
    if fam == "C" and r == 3 and lam == fw(3):
        out.append(("c3-last", (_eps(3, 1) + _eps(3, 2) + _eps(3, 3), -_eps(3, 1) - _eps(3, 2) + _eps(3, 3))))
    if fam == "D":
        base = tuple(phi[r - 1] - _eps(r, j, 2) for j in range(2, r + 1))
        if lam == fw(1, r - 1):
            out.append(("d-vector-half-spin", base))
        if lam == fw(1, r):
            out.append(("d-vector-half-spin-flipped", tuple(_flip_last(w) for w in base)))
        if r == 7 and lam in (fw(6), fw(7)):
            e = lambda *idx: sum((_eps(7, i) for i in idx), Weight.zero(7))  # noqa: E731
            p = phi[6]
            omega0 = (e(1, 2, 5), e(3, 4, 5), e(1, 4, 6), e(2, 3, 6), e(5, 6, 7))
            omega = (-p,) + tuple(p - w for w in omega0)
            if lam == fw(7):
                omega = tuple(_flip_last(w) for w in omega)
            out.append(("d7-half-spin", omega))
    return out


# --- scan --------------------------------------------------------------------


@dataclass(frozen=True)
class ScanResult:
    family: str
    rank: int
    lambda_fw: tuple[int, ...]
    verdict: str
    certificate: Certificate | None
    source: str | None
    evaluations: int
    runtime_ms: float = field(compare=False, default=0.0)

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "family": self.family,
            "rank": self.rank,
            "lambda_fw": list(self.lambda_fw),
            "verdict": self.verdict,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "source": self.source,
            "evaluations": self.evaluations,
        }
        if timings:
            out["runtime_ms"] = round(self.runtime_ms, 3)
        return out


OBSTRUCTED, SURVIVOR, INCONCLUSIVE = "OBSTRUCTED", "SURVIVOR", "INCONCLUSIVE"


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def take(self) -> bool:
        if self.limit is not None and self.used >= self.limit:
            return False
        self.used += 1
        return True


def dominant_weights_up_to(rs: RootSystem, coeff_sum_bound: int) -> list[tuple[int, ...]]:
    out = []
    for total in range(1, coeff_sum_bound + 1):
        for bars in itertools.combinations(range(total + rs.rank - 1), rs.rank - 1):
            parts, prev = [], -1
            for b in bars + (total + rs.rank - 1,):
                parts.append(b - prev - 1)
                prev = b
            out.append(tuple(parts))
    return sorted(out)


def search_certificate(
    ws: WeightSystem, budget: _Budget, omega_max: int | None = None, seed: int | None = None
) -> tuple[Certificate | None, bool]:
    """Look for a certificate among bases of hyperplanes spanned by orbit elements.

    Returns ``(certificate, complete)``.  Any valid ``Omega`` contains a valid
    linearly independent subset of size ``r - 1``, and the clauses are
    W-invariant, so it suffices to search bases containing ``lam`` itself.
    """
    rs, lam, delta = ws.rs, ws.lam, ws.delta
    r = rs.rank
    if delta == 1:
        if not budget.take():
            return None, False
        if not check_two_lambda(rs, lam):
            return None, True
    if omega_max is not None and omega_max < r - 1:
        return None, False
    roots = rs.root_set

    def compatible(x: Weight, y: Weight) -> bool:
        if x - y in roots:
            return False
        return not (delta == 1 and x + y in roots)

    cands = [
        x for x in orbit(rs, lam) if x != lam and compatible(lam, x) and not (delta == 1 and 2 * x in roots)
    ]
    if seed is not None:
        random.Random(seed).shuffle(cands)
    tried: dict[tuple[int, ...], bool] = {}

    def dfs(chosen: list[Weight], start: int):
        if len(chosen) == r - 1:
            rows = [list(w.coords2) for w in chosen]
            (n,) = linalg.nullspace(rows, r)
            h = Hyperplane(linalg.primitive(n))
            if h.normal in tried:
                return None
            _, m = weights_off(ws, h)
            ok = delta * m > roots_off(rs, h) + 6
            tried[h.normal] = ok
            if ok:
                cert = check_nosm(ws, chosen)
                if cert.valid:
                    return cert
            return None
        for i in range(start, len(cands)):
            x = cands[i]
            if not budget.take():
                raise _BudgetExhausted
            if not all(compatible(x, y) for y in chosen):
                continue
            nxt = chosen + [x]
            if linalg.rank([list(w.coords2) for w in nxt]) != len(nxt):
                continue
            found = dfs(nxt, i + 1)
            if found:
                return found
        return None

    try:
        return dfs([lam], 0), True
    except _BudgetExhausted:
        return None, False


class _BudgetExhausted(Exception):
    pass


def scan_one(
    rs: RootSystem,
    lambda_fw: Sequence[int],
    budget: int | None = None,
    omega_max: int | None = None,
    use_templates: bool = True,
    seed: int | None = None,
) -> ScanResult:
    t0 = time.perf_counter()
    lam = rs.from_fundamental(lambda_fw)
    ws = weight_system(rs, lam)
    b = _Budget(budget)
    cert, source, complete = None, None, True
    if use_templates:
        for name, omega in witness_templates(rs, lam):
            if omega_max is not None and len(omega) > omega_max:
                continue
            if not b.take():
                complete = False
                break
            c = check_nosm(ws, omega)
            if c.valid:
                cert, source = c, f"template:{name}"
                break
    if cert is None and complete:
        cert, complete = search_certificate(ws, b, omega_max, seed)
        if cert is not None:
            source = "search"
    if cert is not None:
        # re-validate from scratch before reporting
        fresh = check_nosm(weight_system(rs, lam), cert.omega)
        if not fresh.valid:
            raise AssertionError("certificate failed re-validation")
        verdict = OBSTRUCTED
    else:
        verdict = SURVIVOR if complete else INCONCLUSIVE
    return ScanResult(
        rs.family,
        rs.rank,
        tuple(lambda_fw),
        verdict,
        cert,
        source,
        b.used,
        (time.perf_counter() - t0) * 1000,
    )


def _scan_worker(args):
    family, rank, fw, budget, omega_max, use_templates, seed = args
    return scan_one(build_root_system(family, rank), fw, budget, omega_max, use_templates, seed)


def scan(
    rs: RootSystem,
    coeff_sum_bound: int,
    budget: int | None = None,
    omega_max: int | None = None,
    use_templates: bool = True,
    workers: int | None = None,
    seed: int | None = None,
) -> list[ScanResult]:
    """Try to obstruct every nonzero dominant weight with coefficient sum <= bound.

    SURVIVOR means the search finished without a certificate; it says nothing
    about smoothness.  An exhausted budget yields INCONCLUSIVE instead.
    """
    if coeff_sum_bound < 1:
        raise WeylcertError("coefficient-sum bound must be at least 1")
    if omega_max is None:
        omega_max = rs.rank + 1
    if workers is None:
        workers = int(os.environ.get("WEYLCERT_THREADS", "1") or 1)
    todo = [
        (rs.family, rs.rank, fw, budget, omega_max, use_templates, seed)
        for fw in dominant_weights_up_to(rs, coeff_sum_bound)
    ]
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_worker, todo))
    else:
        results = [_scan_worker(t) for t in todo]
    if budget == 0:
        log.warning("zero search budget: every weight is inconclusive")
    return sorted(results, key=lambda res: res.lambda_fw)
