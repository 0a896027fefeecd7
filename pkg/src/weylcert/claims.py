"""The claims manifest: named quantitative statements recomputed from scratch.

Each manifest entry names a computation ``kind`` with its parameters, an
expected value and a relation (``eq`` by default).  Dict-valued results are
compared only on the keys the entry lists.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import oracle
from .criteria import RankProfile, check_nosm, check_two_lambda, exterior_rank, tautological_profile
from .errors import OracleScaleError, WeylcertError
from .excision import (
    hyperplane_from_normal,
    roots_off,
    roots_on,
    span_hyperplane,
    sxa_lower_bound,
    weights_off,
    weights_on,
)
from .rootsys import (
    RootSystem,
    Weight,
    boundary_subset,
    build_root_system,
    pairing,
    parse_weight,
    pc_family,
    subsystem_simple_system,
)
from .weightset import delta_indicator, lattice_membership, weight_system
from .weyl import orbit

RELATIONS: dict[str, Callable[[Any, Any], bool]] = {
    "eq": lambda a, b: a == b,
    "ge": lambda a, b: a >= b,
    "gt": lambda a, b: a > b,
    "le": lambda a, b: a <= b,
}


@dataclass(frozen=True)
class ClaimResult:
    id: str
    family: str
    description: str
    expected: Any
    relation: str
    computed: Any
    status: str
    oracle: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out = {
            "id": self.id,
            "family": self.family,
            "description": self.description,
            "expected": self.expected,
            "relation": self.relation,
            "computed": self.computed,
            "status": self.status,
        }
        if self.oracle is not None:
            out["oracle"] = self.oracle
        return out


def default_manifest_path() -> Path:
    return Path(str(resources.files("weylcert") / "data" / "claims.json"))


def load_manifest(path: str | Path | None = None) -> list[dict]:
    p = Path(path) if path else default_manifest_path()
    data = json.loads(p.read_text(encoding="utf-8"))
    claims = data["claims"] if isinstance(data, dict) else data
    seen = set()
    for c in claims:
        for key in ("id", "family", "kind", "expected"):
            if key not in c:
                raise WeylcertError(f"claim {c.get('id', '?')} lacks {key!r}")
        if c["id"] in seen:
            raise WeylcertError(f"duplicate claim id {c['id']}")
        seen.add(c["id"])
    return claims


# --- computations ------------------------------------------------------------


def _rs(c: dict) -> RootSystem:
    return build_root_system(c["family"], c["rank"])


def _lam(rs: RootSystem, c: dict) -> Weight:
    return parse_weight(c["lambda"], rs)


def _hyper(rs: RootSystem, c: dict):
    if "normal" in c:
        return hyperplane_from_normal(c["normal"])
    if "span" in c:
        return span_hyperplane([parse_weight(w, rs) for w in c["span"]])
    raise WeylcertError(f"claim {c['id']} needs a hyperplane")


def _simple_indices(rs: RootSystem, roots) -> list[int]:
    return sorted(rs.simple_roots.index(a) + 1 for a in roots)


def _k_root_count(c):
    return len(_rs(c).roots)


def _k_positive_root_count(c):
    return len(_rs(c).positive_roots)


def _k_pq_index(c):
    return _rs(c).pq_index


def _k_weyl_order(c):
    return _rs(c).weyl_order


def _k_boundary(c):
    rs = _rs(c)
    return _simple_indices(rs, boundary_subset(rs.simple_system()))


def _k_pc_family(c):
    rs = _rs(c)
    return [_simple_indices(rs, m.roots) for m in pc_family(rs)]


def _k_pc_union(c):
    rs = _rs(c)
    return sorted({i for m in pc_family(rs) for i in _simple_indices(rs, m.roots)})


def _k_subsystem(c):
    rs = _rs(c)
    return subsystem_simple_system(rs, c["normal"]).label


def _k_orbit_size(c):
    rs = _rs(c)
    return len(orbit(rs, _lam(rs, c)))


def _k_support_size(c):
    rs = _rs(c)
    return weight_system(rs, _lam(rs, c)).set_count


def _k_dimension(c):
    rs = _rs(c)
    return weight_system(rs, _lam(rs, c)).multiset_count


def _k_delta(c):
    rs = _rs(c)
    return delta_indicator(rs, _lam(rs, c))


def _k_lattice(c):
    rs = _rs(c)
    flags = lattice_membership(rs, _lam(rs, c))
    return {"in_P": flags.in_P, "in_Q": flags.in_Q}


def _k_two_lambda(c):
    rs = _rs(c)
    return check_two_lambda(rs, _lam(rs, c))


def _k_roots_off(c):
    rs = _rs(c)
    return roots_off(rs, _hyper(rs, c))


def _k_roots_on(c):
    rs = _rs(c)
    return roots_on(rs, _hyper(rs, c))


def _k_support_split(c):
    rs = _rs(c)
    ws = weight_system(rs, _lam(rs, c))
    h = _hyper(rs, c)
    off, on = weights_off(ws, h), weights_on(ws, h)
    return {"off": off.set_count, "on": on.set_count, "off_multiset": off.multiset_count}


def _k_orbit_split(c):
    rs = _rs(c)
    h = _hyper(rs, c)
    orb = orbit(rs, _lam(rs, c))
    on = sum(1 for x in orb if h.contains(x))
    return {"off": len(orb) - on, "on": on}


def _k_certificate(c):
    rs = _rs(c)
    ws = weight_system(rs, _lam(rs, c))
    cert = check_nosm(ws, [parse_weight(w, rs) for w in c["omega"]])
    return {
        "verdict": cert.verdict,
        "normal": list(cert.hyperplane.normal) if cert.hyperplane else None,
        "lhs": cert.lhs,
        "rhs": cert.rhs,
        "delta": cert.delta,
        "all_roots_plus_6": len(rs.roots) + 6,
        **{f"flag_{k}": v for k, v in cert.flags.items()},
    }


def _k_exterior_rank(c):
    return exterior_rank(RankProfile(c["n"], c["k"], tuple(c["mults"])))


def _k_tautological_rank(c):
    rs = _rs(c)
    alpha = rs.simple_roots[c["alpha"] - 1]
    return exterior_rank(tautological_profile(rs, alpha, c["k"]))


def _k_module_rank(c):
    """Rank of ``h_alpha`` on the irreducible module: its weights off ``alpha^perp``."""
    rs = _rs(c)
    ws = weight_system(rs, _lam(rs, c))
    alpha = rs.simple_roots[c["alpha"] - 1]
    return weights_off(ws, hyperplane_from_normal(alpha.coords)).multiset_count


def _k_pairing_sum(c):
    rs = _rs(c)
    alpha = parse_weight(c["alpha"], rs)
    return int(sum(pairing(parse_weight(w, rs), alpha) for w in c["points"]))


def _d_pair_k(rs: RootSystem, p: int, q: int) -> list[Weight]:
    r = rs.rank
    e = lambda i, s=1: Weight.unit(r, i, s)  # noqa: E731
    rest = [i for i in range(r) if i not in (p, q)]
    out = []
    for a in (p, q):
        for i in rest:
            for j in rest:
                if i < j:
                    for si in (1, -1):
                        for sj in (1, -1):
                            out.append(e(a) + e(i, si) + e(j, sj))
    for i in rest:
        for si in (1, -1):
            out.append(e(p) + e(q) + e(i, si))
    return out


def _k_d_pair_bound(c):
    """Lower bound for weights off ``H = span({lam} ∪ Pi')`` from a root ``eps_p + eps_q`` off H."""
    rs = _rs(c)
    lam = _lam(rs, c)
    ws = weight_system(rs, lam)
    pi = [rs.simple_roots[i - 1] for i in c["pi_prime"]]
    h = span_hyperplane([lam, *pi])
    r = rs.rank
    p, q = next(
        (p, q) for p in range(r) for q in range(p + 1, r) if not h.contains(Weight.unit(r, p) + Weight.unit(r, q))
    )
    alpha = Weight.unit(r, p) + Weight.unit(r, q)
    bound = sxa_lower_bound(ws, h, alpha, _d_pair_k(rs, p, q))
    off = weights_off(ws, h).set_count
    return {"bound": bound, "bound_le_count": bound <= off, "exceeds_roots_plus_6": off > roots_off(rs, h) + 6}


KINDS: dict[str, Callable[[dict], Any]] = {
    "root_count": _k_root_count,
    "positive_root_count": _k_positive_root_count,
    "pq_index": _k_pq_index,
    "weyl_order": _k_weyl_order,
    "boundary": _k_boundary,
    "pc_family": _k_pc_family,
    "pc_union": _k_pc_union,
    "subsystem": _k_subsystem,
    "orbit_size": _k_orbit_size,
    "support_size": _k_support_size,
    "dimension": _k_dimension,
    "delta": _k_delta,
    "lattice": _k_lattice,
    "two_lambda": _k_two_lambda,
    "roots_off": _k_roots_off,
    "roots_on": _k_roots_on,
    "support_split": _k_support_split,
    "orbit_split": _k_orbit_split,
    "certificate": _k_certificate,
    "exterior_rank": _k_exterior_rank,
    "tautological_rank": _k_tautological_rank,
    "module_rank": _k_module_rank,
    "pairing_sum": _k_pairing_sum,
    "d_pair_bound": _k_d_pair_bound,
}


# --- oracle cross-checks -----------------------------------------------------


def _oracle_value(c: dict) -> Any:
    kind = c["kind"]
    if kind == "orbit_size":
        rs = _rs(c)
        return len(oracle.orbit_naive(rs, _lam(rs, c)))
    if kind == "support_size":
        rs = _rs(c)
        return len(oracle.weight_support_naive(rs, _lam(rs, c)))
    if kind == "exterior_rank":
        return oracle.exterior_rank_naive(RankProfile(c["n"], c["k"], tuple(c["mults"])))
    if kind == "tautological_rank":
        rs = _rs(c)
        alpha = rs.simple_roots[c["alpha"] - 1]
        return oracle.exterior_rank_naive(tautological_profile(rs, alpha, c["k"]))
    raise KeyError(kind)


def _oracle_status(c: dict, computed: Any) -> str:
    try:
        value = _oracle_value(c)
    except KeyError:
        return "n/a"
    except OracleScaleError:
        return "skipped"
    return "agree" if value == computed else f"disagree({value})"


# --- evaluation --------------------------------------------------------------


def _compare(expected: Any, computed: Any, relation: str) -> bool:
    if isinstance(expected, dict) and isinstance(computed, dict):
        return all(k in computed and RELATIONS[relation](computed[k], v) for k, v in expected.items())
    return RELATIONS[relation](computed, expected)


def evaluate(claim: dict, with_oracle: bool = False) -> ClaimResult:
    relation = claim.get("relation", "eq")
    if relation not in RELATIONS:
        raise WeylcertError(f"claim {claim['id']}: unknown relation {relation!r}")
    try:
        fn = KINDS[claim["kind"]]
    except KeyError:
        raise WeylcertError(f"claim {claim['id']}: unknown kind {claim['kind']!r}") from None
    computed = fn(claim)
    if isinstance(computed, dict) and isinstance(claim["expected"], dict):
        shown = {k: computed.get(k) for k in claim["expected"]}
    else:
        shown = computed
    ok = _compare(claim["expected"], computed, relation)
    ora = _oracle_status(claim, computed) if with_oracle else None
    if ora is not None and ora.startswith("disagree"):
        ok = False
    return ClaimResult(
        id=claim["id"],
        family=claim["family"],
        description=claim.get("description", ""),
        expected=claim["expected"],
        relation=relation,
        computed=shown,
        status="pass" if ok else "fail",
        oracle=ora,
    )


def verify(claims: list[dict], only: str | None = None, with_oracle: bool = False) -> list[ClaimResult]:
    picked = [c for c in claims if only is None or c["family"] == only.upper()]
    return [evaluate(c, with_oracle) for c in sorted(picked, key=lambda c: c["id"])]


def format_diff(res: ClaimResult) -> str:
    return (
        f"--- {res.id} expected ({res.relation})\n"
        f"+++ {res.id} computed\n"
        f"- {json.dumps(res.expected, sort_keys=True)}\n"
        f"+ {json.dumps(res.computed, sort_keys=True)}"
    )
