from __future__ import annotations

import pytest

from conftest import systems
from weylcert import (
    ParseError,
    RankBoundsError,
    UnsupportedTypeError,
    Weight,
    boundary_subset,
    build_root_system,
    pairing,
    parse_weight,
    pc_family,
    subsystem_simple_system,
)
from weylcert.rootsys import make_subsystem


def w(*xs):
    return Weight.from_coords(xs)


@pytest.mark.parametrize("family,rank", systems(8))
def test_root_counts_and_lattice_index(family, rank):
    rs = build_root_system(family, rank)
    expected = 2 * rank * rank if family in "BC" else 2 * rank * (rank - 1)
    assert len(rs.roots) == expected
    assert len(set(rs.roots)) == expected
    assert len(rs.positive_roots) == expected // 2
    assert rs.pq_index == (4 if family == "D" else 2)


@pytest.mark.parametrize("family,rank", systems(7))
def test_fundamental_weights_are_dual_to_coroots(family, rank):
    rs = build_root_system(family, rank)
    for i, phi in enumerate(rs.fundamental_weights):
        for j, alpha in enumerate(rs.simple_roots):
            assert pairing(phi, alpha) == (1 if i == j else 0)


@pytest.mark.parametrize("family,rank", systems(6))
def test_root_pairings_are_integral(family, rank):
    rs = build_root_system(family, rank)
    for a in rs.roots:
        for b in rs.simple_roots:
            assert pairing(a, b).denominator == 1


@pytest.mark.parametrize("family,rank", systems(6))
def test_cartan_matrix_matches_type(family, rank):
    rs = build_root_system(family, rank)
    assert make_subsystem(rs, rs.simple_roots).label == f"{family}{rank}"


def test_weyl_orders():
    assert build_root_system("B", 3).weyl_order == 48
    assert build_root_system("C", 4).weyl_order == 384
    assert build_root_system("D", 4).weyl_order == 192


def test_b3_counts():
    rs = build_root_system("B", 3)
    assert len(rs.roots) == 18
    assert len(rs.positive_roots) == 9


def test_c3_conventions():
    rs = build_root_system("C", 3)
    assert rs.simple_roots[2] == w(0, 0, 2)
    assert rs.fundamental_weights[2] == w(1, 1, 1)


def test_simple_root_conventions():
    assert build_root_system("B", 4).simple_roots[-1] == w(0, 0, 0, 1)
    assert build_root_system("D", 4).simple_roots[-1] == w(0, 0, 1, 1)
    for fam, r in (("B", 4), ("C", 4), ("D", 5)):
        rs = build_root_system(fam, r)
        for i in range(r - 1):
            assert rs.simple_roots[i] == Weight.unit(r, i) - Weight.unit(r, i + 1)


@pytest.mark.parametrize("family,rank", [("B", 1), ("C", 2), ("D", 3), ("A", 3)])
def test_rank_out_of_bounds(family, rank):
    with pytest.raises(ValueError):
        build_root_system(family, rank)


def test_pairing_examples():
    rs = build_root_system("B", 5)
    assert pairing(rs.fundamental_weights[-1], rs.simple_roots[-1]) == 1
    # coroot of alpha_{r-1} + alpha_r is 2 eps_{r-1}, which is 2 alpha_{r-1}^vee + alpha_r^vee
    a = rs.simple_roots[3] + rs.simple_roots[4]
    assert a == w(0, 0, 0, 1, 0)
    for mu in rs.fundamental_weights:
        assert pairing(mu, a) == 2 * pairing(mu, rs.simple_roots[3]) + pairing(mu, rs.simple_roots[4])


def test_pairing_zero_root():
    with pytest.raises(ValueError):
        pairing(w(1, 0), Weight.zero(2))


def _boundary_indices(rs):
    return sorted(rs.simple_roots.index(a) + 1 for a in boundary_subset(rs.simple_system()))


@pytest.mark.parametrize("family,rank", systems(10))
def test_boundary_table(family, rank):
    rs = build_root_system(family, rank)
    got = _boundary_indices(rs)
    if family == "B":
        assert got == ([1] if rank >= 5 else [1, rank])
    elif family == "C":
        assert got == [1, 2]
    else:
        assert got == ([1] if rank >= 7 else [1, rank - 1, rank])


def test_boundary_rejects_type_a():
    rs = build_root_system("B", 5)
    with pytest.raises(UnsupportedTypeError):
        boundary_subset(make_subsystem(rs, rs.simple_roots[:3]))


def _pc(rs):
    return sorted(sorted(rs.simple_roots.index(a) + 1 for a in m.roots) for m in pc_family(rs))


def test_pc_family_examples():
    assert _pc(build_root_system("B", 4)) == [[1, 2], [2, 3], [3, 4]]
    assert _pc(build_root_system("D", 5)) == [[1, 2, 3], [2, 3, 4], [2, 3, 5], [3, 4, 5]]


@pytest.mark.parametrize("family,rank", [fr for fr in systems(8) if fr[1] > 2])
def test_pc_family_covers_pi(family, rank):
    rs = build_root_system(family, rank)
    members = pc_family(rs)
    assert len({m.roots for m in members}) == len(members)
    for m in members:
        assert m.rank == rank - 2
        assert m.connected
    assert {a for m in members for a in m.roots} == set(rs.simple_roots)


def test_pc_family_needs_rank_three():
    with pytest.raises(RankBoundsError):
        pc_family(build_root_system("B", 2))


@pytest.mark.parametrize("rank", [4, 5, 6])
def test_subsystem_b(rank):
    rs = build_root_system("B", rank)
    s = rs.simple_roots
    normal = [0] * (rank - 1) + [1]
    sub = subsystem_simple_system(rs, normal)
    assert sub.label == f"B{rank - 1}"
    assert set(sub.roots) == set(s[: rank - 2]) | {s[rank - 2] + s[rank - 1]}


@pytest.mark.parametrize("rank", [4, 5])
def test_subsystem_c(rank):
    rs = build_root_system("C", rank)
    s = rs.simple_roots
    sub = subsystem_simple_system(rs, [0] * (rank - 1) + [1])
    assert sub.label == f"C{rank - 1}"
    assert set(sub.roots) == set(s[: rank - 2]) | {2 * s[rank - 2] + s[rank - 1]}


@pytest.mark.parametrize("rank", [5, 6])
def test_subsystem_d(rank):
    rs = build_root_system("D", rank)
    s = rs.simple_roots
    normal = list((s[rank - 2] - s[rank - 1]).coords)
    sub = subsystem_simple_system(rs, normal)
    assert sub.label == f"D{rank - 1}"
    assert set(sub.roots) == set(s[: rank - 2]) | {s[rank - 3] + s[rank - 2] + s[rank - 1]}


def test_subsystem_empty():
    rs = build_root_system("B", 3)
    assert subsystem_simple_system(rs, [1, 2, 4]).roots == ()


def test_parse_weight_formats():
    rs = build_root_system("B", 3)
    assert parse_weight("1/2,1/2,1/2", rs) == rs.fundamental_weights[2]
    assert parse_weight("fw:0,0,1", rs) == rs.fundamental_weights[2]
    assert parse_weight(" fw: 1, 0, 0", rs) == w(1, 0, 0)


@pytest.mark.parametrize("text,pos", [("1,x,0", 2), ("1,,0", 2), ("fw:1,0", 3), ("1/3,0,0", 0)])
def test_parse_weight_errors(text, pos):
    rs = build_root_system("B", 3)
    with pytest.raises(ParseError) as exc:
        parse_weight(text, rs)
    assert exc.value.position == pos
