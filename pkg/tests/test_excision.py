from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylcert import (
    CertificateInvalidError,
    HyperplaneRankError,
    ParseError,
    Weight,
    build_root_system,
    hyperplane_from_normal,
    orbit,
    pairing,
    roots_off,
    span_hyperplane,
    sxa_lower_bound,
    weight_system,
    weights_off,
)
from weylcert.excision import gamma_half_bound, parse_hyperplane, roots_on, weights_on
from weylcert.weyl import apply_simple_reflection


def w(*xs):
    return Weight.from_coords(xs)


def test_span_examples():
    rs = build_root_system("B", 4)
    phi3 = rs.fundamental_weights[2]
    h = span_hyperplane([phi3 - Weight.unit(4, j, 2) for j in range(3)])
    assert h.normal == (0, 0, 0, 1)
    for r in (5, 6):
        for c in (0, 1, 2):
            rs = build_root_system("C", r)
            top = rs.fundamental_weights[-1] + c * Weight.unit(r, 0)
            h = span_hyperplane([top - Weight.unit(r, j, 3) for j in range(1, r)])
            # (r - 4) x1 = (c + 1)(x2 + ... + xr), up to scale
            target = hyperplane_from_normal([r - 4] + [-(c + 1)] * (r - 1))
            assert h.normal == target.normal


def test_span_rank_error():
    with pytest.raises(HyperplaneRankError) as exc:
        span_hyperplane([w(1, 0, 0), w(2, 0, 0)])
    assert exc.value.rank == 1
    with pytest.raises(HyperplaneRankError):
        span_hyperplane([w(1, 0, 0), w(0, 1, 0), w(0, 0, 1)])


def test_normal_canonical():
    assert hyperplane_from_normal([-2, 4, 0]).normal == (1, -2, 0)
    assert hyperplane_from_normal(["1/2", "-1/2"]).normal == (1, -1)
    with pytest.raises(ValueError):
        hyperplane_from_normal([0, 0])


def test_roots_off_examples():
    assert roots_off(build_root_system("C", 3), hyperplane_from_normal([1, -1, 0])) == 14
    d4 = build_root_system("D", 4)
    h = hyperplane_from_normal([1, 1, 1, 1])
    assert roots_off(d4, h) == 12
    assert roots_on(d4, h) == 12
    assert roots_off(build_root_system("B", 3), hyperplane_from_normal([1, -1, 0])) == 14


def test_weights_off_examples():
    rs = build_root_system("B", 6)
    ws = weight_system(rs, rs.fundamental_weights[-1])
    h = hyperplane_from_normal([1, -1, 1, -1, 0, 0])
    assert weights_off(ws, h).set_count == 40
    assert weights_on(ws, h).set_count == 24

    rs = build_root_system("D", 7)
    ws = weight_system(rs, rs.fundamental_weights[5])
    assert weights_off(ws, hyperplane_from_normal([1, -1, 1, -1, 0, 0, 0])).set_count == 40

    rs = build_root_system("B", 3)
    ws = weight_system(rs, rs.from_fundamental([1, 0, 1]))
    h = hyperplane_from_normal([2, 1, 1])
    assert weights_on(ws, h).set_count == 6
    assert weights_off(ws, h).set_count == 26
    # the zero-free weights come with multiplicity: set and multiset counts differ
    assert weights_off(ws, h).multiset_count == 38


@st.composite
def hyper_case(draw):
    family = draw(st.sampled_from("BCD"))
    rank = draw(st.integers({"B": 2, "C": 3, "D": 4}[family], 5))
    rs = build_root_system(family, rank)
    normal = draw(st.lists(st.integers(-3, 3), min_size=rank, max_size=rank).filter(any))
    coeffs = draw(st.lists(st.integers(0, 1), min_size=rank, max_size=rank))
    return rs, hyperplane_from_normal(normal), rs.from_fundamental(coeffs)


@given(hyper_case(), st.integers(1, 5))
def test_counts_are_complementary_and_scale_free(case, scale):
    rs, h, lam = case
    ws = weight_system(rs, lam)
    assert roots_off(rs, h) + roots_on(rs, h) == len(rs.roots)
    off, on = weights_off(ws, h), weights_on(ws, h)
    assert off.set_count + on.set_count == ws.set_count
    assert off.multiset_count + on.multiset_count == ws.multiset_count
    scaled = hyperplane_from_normal([scale * c for c in h.normal])
    assert roots_off(rs, scaled) == roots_off(rs, h)


@given(hyper_case(), st.integers(0, 2**32 - 1))
def test_roots_off_is_w_invariant(case, seed):
    rs, h, _ = case
    rng = random.Random(seed)
    word = [rng.randrange(rs.rank) for _ in range(rng.randint(0, 12))]
    n = Weight(h.normal)
    for i in word:
        n = apply_simple_reflection(rs, i, n)
    # W permutes Delta, so moving H by w keeps the count
    assert roots_off(rs, hyperplane_from_normal(n.coords)) == roots_off(rs, h)


def _d_k0(r, p, q):
    """The vectors (3 eps_i +- eps_j) / 2 for {i, j} = {p, q}."""
    out = []
    for i, j in ((p, q), (q, p)):
        for s in (1, -1):
            x = [0] * r
            x[i], x[j] = 3, s
            out.append(Weight(tuple(x)))
    return out


def test_sxa_d_type_k0_sum():
    alpha = Weight.unit(4, 0) + Weight.unit(4, 1)
    assert sum(pairing(x, alpha) for x in _d_k0(4, 0, 1)) == 6


def test_sxa_empty_and_errors():
    rs = build_root_system("B", 3)
    ws = weight_system(rs, rs.from_fundamental([1, 0, 1]))
    h = hyperplane_from_normal([2, 1, 1])
    alpha = w(1, 0, 0)
    assert sxa_lower_bound(ws, h, alpha, []) == 0
    with pytest.raises(CertificateInvalidError) as exc:
        sxa_lower_bound(ws, h, alpha, [w("3/2", "1/2", "1/2"), w("-1/2", "1/2", "1/2")])
    assert exc.value.pair is not None
    with pytest.raises(CertificateInvalidError):
        sxa_lower_bound(ws, h, w(0, 1, -1), [])
    with pytest.raises(CertificateInvalidError):
        sxa_lower_bound(ws, h, w(1, 1, 1), [])
    with pytest.raises(CertificateInvalidError):
        sxa_lower_bound(ws, h, alpha, [w("5/2", "1/2", "1/2")])


def _random_normal(rng, rank):
    while True:
        v = [rng.randint(-3, 3) for _ in range(rank)]
        if any(v):
            return hyperplane_from_normal(v)


def test_sxa_never_exceeds_count_seeded():
    rng = random.Random(20240601)
    for _ in range(200):
        family = rng.choice("BCD")
        rank = rng.randint({"B": 2, "C": 3, "D": 4}[family], 5)
        rs = build_root_system(family, rank)
        coeffs = [rng.randint(0, 1) for _ in range(rank)]
        ws = weight_system(rs, rs.from_fundamental(coeffs))
        h = _random_normal(rng, rank)
        alphas = [a for a in rs.roots if not h.contains(a)]
        if not alphas:
            continue
        alpha = rng.choice(alphas)
        n = alpha.dot4(alpha)
        k, lines = [], set()
        for x in rng.sample(list(ws.support), len(ws.support)):
            key = tuple(n * a - x.dot4(alpha) * b for a, b in zip(x.coords2, alpha.coords2))
            if key not in lines and rng.random() < 0.7:
                lines.add(key)
                k.append(x)
        assert sxa_lower_bound(ws, h, alpha, k) <= weights_off(ws, h).set_count


def _gamma_closed(rng, rank, p, pool):
    base = [x for x in pool if x.coords2[p] != 0]
    picked = rng.sample(base, min(len(base), rng.randint(1, 12)))
    out = set()
    for x in picked:
        out.add(x)
        c = list(x.coords2)
        c[p] = -c[p]
        out.add(Weight(tuple(c)))
    return out


def test_gamma_half_bound_seeded():
    rng = random.Random(7)
    checked = 0
    while checked < 200:
        family = rng.choice("BCD")
        rank = rng.randint({"B": 2, "C": 3, "D": 4}[family], 5)
        rs = build_root_system(family, rank)
        ws = weight_system(rs, rs.from_fundamental([rng.randint(0, 1) for _ in range(rank)]))
        h = _random_normal(rng, rank)
        p = rng.randrange(rank)
        if h.normal[p] == 0:
            continue
        s = _gamma_closed(rng, rank, p, list(ws.support) + list(rs.roots))
        if not s:
            continue
        bound = gamma_half_bound(s, p, h)
        assert bound <= sum(1 for x in s if not h.contains(x))
        checked += 1


def test_gamma_half_bound_errors():
    h = hyperplane_from_normal([1, 1, 0])
    s = {w(1, 1, 0), w(-1, 1, 0)}
    assert gamma_half_bound(s, 0, h) == 1
    with pytest.raises(CertificateInvalidError):
        gamma_half_bound(s, 2, h)
    with pytest.raises(CertificateInvalidError):
        gamma_half_bound({w(1, 1, 0)}, 0, h)
    with pytest.raises(CertificateInvalidError):
        gamma_half_bound({w(0, 1, 0)}, 0, h)


def test_sxa_d_lah_sum():
    # sum over the weights (eps_p or eps_q) + eps_i + eps_j off {p, q}, and eps_p + eps_q + eps_i
    from weylcert.claims import _d_pair_k

    for r in range(4, 8):
        rs = build_root_system("D", r)
        alpha = Weight.unit(r, 0) + Weight.unit(r, 1)
        k = _d_pair_k(rs, 0, 1)
        total = sum(pairing(x, alpha) for x in k)
        assert total == 4 * (r - 2) ** 2


def test_parse_hyperplane():
    rs = build_root_system("B", 3)
    assert parse_hyperplane("normal:2,1,1", rs).normal == (2, 1, 1)
    h = parse_hyperplane("span:1,0,0;0,1,-1", rs)
    assert h.normal == (0, 1, 1)
    with pytest.raises(ParseError):
        parse_hyperplane("plane:1,0,0", rs)
    with pytest.raises(ParseError) as exc:
        parse_hyperplane("normal:1,q,0", rs)
    assert exc.value.position == 9
    with pytest.raises(ParseError) as exc:
        parse_hyperplane("span:1,0,0;0,z,1", rs)
    assert exc.value.position == 13


def test_orbit_split_d4():
    rs = build_root_system("D", 4)
    lam = rs.from_fundamental([1, 0, 1, 0])
    h = hyperplane_from_normal([1, 1, 1, 1])
    orb = orbit(rs, lam)
    on = sum(1 for x in orb if h.contains(x))
    assert (len(orb), on, len(orb) - on) == (32, 8, 24)
