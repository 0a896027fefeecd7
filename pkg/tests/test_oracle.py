from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylcert import OracleScaleError, Weight, build_root_system, conv_membership, orbit, weight_system
from weylcert.criteria import RankProfile, dominant_weights_up_to, exterior_rank
from weylcert.oracle import (
    HullOracle,
    exterior_rank_naive,
    hull_membership_exact,
    orbit_naive,
    weight_support_naive,
)


def w(*xs):
    return Weight.from_coords(xs)


def lattice_grid(family: str, rank: int, bound: int = 3):
    """All weights with every coordinate in [-bound, bound]."""
    parities = (0,) if family == "C" else (0, 1)
    for parity in parities:
        vals = [v for v in range(-2 * bound, 2 * bound + 1) if v % 2 == parity]
        for c in itertools.product(vals, repeat=rank):
            yield Weight(c)


GRID_SYSTEMS = [("B", 2, 3), ("B", 3, 2), ("C", 3, 2), ("D", 4, 1)]


@pytest.mark.parametrize("family,rank,bound", GRID_SYSTEMS)
def test_conv_membership_matches_hull_oracle(family, rank, bound):
    rs = build_root_system(family, rank)
    grid = list(lattice_grid(family, rank))
    for fw in dominant_weights_up_to(rs, bound):
        lam = rs.from_fundamental(fw)
        pts = list(orbit(rs, lam))
        if len(pts) < rank + 1:
            continue
        hull = HullOracle.build(pts)
        for mu in grid:
            assert conv_membership(rs, lam, mu) == (mu in hull), (fw, mu)


@pytest.mark.parametrize("family,rank", [("B", 2), ("B", 3), ("C", 3), ("D", 4)])
def test_lp_and_facet_oracles_agree(family, rank):
    rs = build_root_system(family, rank)
    rng = random.Random(rank)
    grid = list(lattice_grid(family, rank))
    for fw in dominant_weights_up_to(rs, 1):
        lam = rs.from_fundamental(fw)
        pts = list(orbit(rs, lam))
        if len(pts) < rank + 1:
            continue
        hull = HullOracle.build(pts)
        for mu in rng.sample(grid, 40):
            assert hull_membership_exact(pts, mu) == (mu in hull)


def test_hull_membership_examples():
    pts = [w(1, 1), w(1, -1), w(-1, 1), w(-1, -1)]
    assert hull_membership_exact(pts, w(1, 1))
    assert hull_membership_exact(pts, w(1, 0))
    assert not hull_membership_exact(pts, w(2, 2))
    assert not hull_membership_exact(pts, w("3/2", 0))


def test_oracle_scale_limits():
    with pytest.raises(OracleScaleError):
        hull_membership_exact([Weight((0,) * 7)], Weight((0,) * 7))
    with pytest.raises(OracleScaleError):
        orbit_naive(build_root_system("B", 7), Weight.unit(7, 0))
    with pytest.raises(OracleScaleError):
        exterior_rank_naive(RankProfile(40, 10, (20, 10, 10)))
    with pytest.raises(OracleScaleError):
        b5 = build_root_system("B", 5)
        weight_support_naive(b5, b5.from_fundamental([1, 0, 0, 0, 1]))


@st.composite
def orbit_case(draw):
    family = draw(st.sampled_from("BCD"))
    rank = draw(st.integers({"B": 2, "C": 3, "D": 4}[family], 6))
    coeffs = draw(st.lists(st.integers(0, 2), min_size=rank, max_size=rank))
    rs = build_root_system(family, rank)
    return rs, rs.from_fundamental(coeffs)


@given(orbit_case())
def test_orbit_matches_naive(case):
    rs, lam = case
    assert set(orbit(rs, lam)) == orbit_naive(rs, lam)


def test_orbit_naive_examples():
    b3 = build_root_system("B", 3)
    assert len(orbit_naive(b3, b3.fundamental_weights[2])) == 8
    c3 = build_root_system("C", 3)
    assert len(orbit_naive(c3, c3.fundamental_weights[0])) == 6
    assert orbit_naive(b3, Weight.zero(3)) == {Weight.zero(3)}


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12), st.integers(0, 6))
def test_exterior_rank_matches_naive(n0, npos, nneg, k):
    n = n0 + npos + nneg
    if k > n:
        return
    p = RankProfile(n, k, (n0, npos, nneg))
    try:
        naive = exterior_rank_naive(p)
    except OracleScaleError:
        return
    assert exterior_rank(p) == naive


@pytest.mark.parametrize(
    "family,rank,fw",
    [
        ("B", 2, (1, 1)),
        ("B", 2, (0, 3)),
        ("B", 3, (1, 0, 1)),
        ("B", 3, (0, 1, 1)),
        ("C", 3, (0, 1, 1)),
        ("C", 3, (2, 0, 0)),
        ("D", 4, (1, 0, 1, 0)),
        ("D", 4, (0, 1, 0, 0)),
        ("D", 4, (0, 0, 1, 1)),
    ],
)
def test_weight_support_matches_naive(family, rank, fw):
    rs = build_root_system(family, rank)
    lam = rs.from_fundamental(fw)
    assert set(weight_system(rs, lam).support) == weight_support_naive(rs, lam)
