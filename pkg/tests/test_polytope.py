from fractions import Fraction
from itertools import combinations, permutations

import pytest

from permsplit import (
    DomainError,
    LinearConstraint,
    bruhat_leq,
    enumerate_vertices,
    faces_2d,
    flag_polytope_vertices,
    identity,
    is_bip,
    longest,
    lpm_new,
    lpm_bases,
    matroid_from_bases,
    permutahedron_edges,
    permutahedron_facets,
    permutahedron_vertices,
    to_set_matroid,
    uniform_matroid,
)
from permsplit.polytope import (
    BruhatInterval,
    _matrix_rank_int,
    affine_rank,
    constraint_from_json,
    constraint_to_json,
    is_permutation_point,
    point_from_json,
    point_to_json,
)


def test_vertices():
    assert len(permutahedron_vertices(3)) == 6
    assert len(permutahedron_vertices(4)) == 24
    assert permutahedron_vertices(1) == ((1,),)


def test_facets():
    f3 = permutahedron_facets(3)
    assert len(f3) == 7  # 2^3 - 2 facets plus the ambient equality
    assert len([c for c in permutahedron_facets(4) if c.sense == ">="]) == 14
    wanted = LinearConstraint(frozenset({1, 2}), ">=", Fraction(3))
    assert wanted in permutahedron_facets(4)
    # every permutation satisfies every facet
    for p in permutahedron_vertices(4):
        assert all(c.satisfied_by(p) for c in permutahedron_facets(4))


def test_edges():
    assert len(permutahedron_edges(3)) == 6
    assert len(permutahedron_edges(4)) == 36  # 24 vertices, 3-regular
    assert frozenset({(1, 2, 3), (2, 1, 3)}) in permutahedron_edges(3)
    for n in (3, 4, 5):
        import math

        assert len(permutahedron_edges(n)) == math.factorial(n) * (n - 1) // 2


def test_edges_match_tight_facet_geometry():
    # adjacency iff the common tight facets leave a one-dimensional face
    n = 4
    facets = [c for c in permutahedron_facets(n) if c.sense == ">="]

    def tight(p):
        return {
            i
            for i, c in enumerate(facets)
            if sum(p[j - 1] for j in c.support) == c.level
        }

    geom = set()
    perms = permutahedron_vertices(n)
    for a in range(len(perms)):
        for b in range(a + 1, len(perms)):
            common = tight(perms[a]) & tight(perms[b])
            rows = [
                [1 if j in facets[t].support else 0 for j in range(1, n + 1)]
                for t in common
            ]
            rows.append([1] * n)
            if _matrix_rank_int(rows) == n - 1:
                geom.add(frozenset({perms[a], perms[b]}))
    assert geom == set(permutahedron_edges(n))


def test_faces_2d_counts():
    f4 = faces_2d(4)
    assert sum(1 for f in f4 if f.shape == "hexagon") == 8
    assert sum(1 for f in f4 if f.shape == "square") == 6
    f3 = faces_2d(3)
    assert len(f3) == 1 and f3[0].shape == "hexagon"


def test_faces_2d_extremes():
    hexa = next(
        f for f in faces_2d(4) if f.blocks == ((2, 3, 4), (1,))
    )
    assert hexa.lo == (1, 2, 3, 4) and hexa.hi == (1, 4, 3, 2)
    # the declared extremes really are Bruhat least/greatest on every face
    for f in faces_2d(4):
        for v in f.vertices:
            assert bruhat_leq(f.lo, v) and bruhat_leq(v, f.hi)
    # vertex counts by shape
    for f in faces_2d(5):
        assert len(f.vertices) == (6 if f.shape == "hexagon" else 4)


def test_flag_polytope_vertices_uniform():
    for n in (3, 4, 5):
        pts = flag_polytope_vertices([uniform_matroid(k, n) for k in range(1, n + 1)])
        assert pts == {tuple(p) for p in permutahedron_vertices(n)}
    assert (3, 2, 1) in flag_polytope_vertices(
        [uniform_matroid(k, 3) for k in (1, 2, 3)]
    )  # the chain 1 c 12 c 123


def test_flag_polytope_vertices_named():
    flag = [
        to_set_matroid(lpm_new(4, (2,), (4,))),
        to_set_matroid(lpm_new(4, (1, 2), (2, 4))),
        to_set_matroid(lpm_new(4, (1, 2, 4), (2, 3, 4))),
        uniform_matroid(4, 4),
    ]
    pts = flag_polytope_vertices(flag)
    assert (3, 4, 1, 2) in pts and (1, 3, 2, 4) in pts
    assert len(pts) == 10


def test_flag_polytope_segment():
    flag = [
        matroid_from_bases(3, [{1}, {3}]),
        matroid_from_bases(3, [{1, 2}, {2, 3}]),
        uniform_matroid(3, 3),
    ]
    assert flag_polytope_vertices(flag) == {(1, 2, 3), (3, 2, 1)}


def test_flag_polytope_rejects_non_quotients():
    with pytest.raises(DomainError):
        flag_polytope_vertices([uniform_matroid(2, 4), uniform_matroid(1, 4)])


def test_is_bip():
    assert is_bip(permutahedron_vertices(4)) == BruhatInterval(identity(4), longest(4))
    assert is_bip([(1, 2, 3), (3, 2, 1)]) is None  # a segment, not an interval
    ten = [
        (1, 3, 2, 4), (1, 3, 4, 2), (1, 4, 2, 3), (1, 4, 3, 2), (2, 3, 1, 4),
        (2, 4, 1, 3), (3, 1, 2, 4), (3, 1, 4, 2), (3, 2, 1, 4), (3, 4, 1, 2),
    ]
    assert is_bip(ten) == BruhatInterval((1, 3, 2, 4), (3, 4, 1, 2))
    with pytest.raises(DomainError):
        is_bip([(1, 2, 2)])


def test_is_bip_round_trip_exhaustive():
    for n in (3, 4):
        for u in permutations(range(1, n + 1)):
            for v in permutations(range(1, n + 1)):
                if bruhat_leq(u, v):
                    iv = BruhatInterval(u, v)
                    assert is_bip(iv.members()) == iv


def test_enumerate_vertices_permutahedra():
    for n in (2, 3, 4):
        enum = enumerate_vertices(permutahedron_facets(n), n)
        assert set(enum.points) == {tuple(p) for p in permutahedron_vertices(n)}
        assert enum.diagnostic is None


def test_enumerate_vertices_cut_cell():
    cut = list(permutahedron_facets(4)) + [
        LinearConstraint(frozenset({1, 2}), "<=", Fraction(4))
    ]
    enum = enumerate_vertices(cut, 4)
    assert all(is_permutation_point(p) for p in enum.points)
    members = [tuple(int(x) for x in p) for p in enum.points]
    assert is_bip(members) == BruhatInterval(identity(4), (3, 1, 4, 2))


def test_enumerate_vertices_integer_cut_creates_no_vertices():
    # an integer level never crosses an edge strictly (edge sums move by at
    # most one), so the cut keeps permutation vertices only; the square face
    # it splits is crossed along a diagonal
    cut = list(permutahedron_facets(4)) + [
        LinearConstraint(frozenset({1, 2}), "<=", Fraction(5))
    ]
    enum = enumerate_vertices(cut, 4)
    assert all(is_permutation_point(p) for p in enum.points)
    assert len(enum.points) == 16


def test_enumerate_vertices_fractional_cut():
    cut = list(permutahedron_facets(4)) + [
        LinearConstraint(frozenset({1, 2}), "<=", Fraction(9, 2))
    ]
    enum = enumerate_vertices(cut, 4)
    stray = [p for p in enum.points if not is_permutation_point(p)]
    assert stray  # fractional vertices where edges cross the half-integer level
    assert (1, Fraction(7, 2), 2, Fraction(7, 2)) in enum.points


def test_enumerate_vertices_empty_system():
    cons = list(permutahedron_facets(3)) + [
        LinearConstraint(frozenset({1}), ">=", Fraction(99))
    ]
    enum = enumerate_vertices(cons, 3)
    assert enum.points == () and enum.diagnostic == "empty-or-unbounded"


def test_affine_rank():
    assert affine_rank([(1, 2, 3)]) == 0
    assert affine_rank([(1, 2, 3), (2, 1, 3)]) == 1
    assert affine_rank([tuple(p) for p in permutahedron_vertices(4)]) == 3


def test_point_and_constraint_json():
    p = (1, Fraction(7, 2), 2, Fraction(7, 2))
    assert point_to_json(p) == ["1", "7/2", "2", "7/2"]
    assert point_from_json(point_to_json(p)) == p
    c = LinearConstraint(frozenset({1, 3}), ">=", Fraction(3))
    assert constraint_from_json(constraint_to_json(c)) == c


def test_lpm_basis_count_matches_dp():
    from permsplit.verify import lattice_path_count

    for n in (4, 6):
        for k in (1, 2, 3):
            for u in combinations(range(1, n + 1), k):
                for l in combinations(range(1, n + 1), k):
                    if all(a <= b for a, b in zip(u, l)):
                        m = lpm_new(n, u, l)
                        assert len(lpm_bases(m)) == lattice_path_count(u, l, n)
