import itertools

import numpy as np

from p5fiber import polytope as P


def test_census_counts():
    c = P.census()
    assert c["facet_count"] == 16
    assert set(c["degrees"]) == {10}
    assert c["orthogonal_pairs"] == 80
    assert c["ideal_tangent_pairs"] == 40
    assert c["clique_counts"] == {"1": 16, "2": 80, "3": 160, "4": 120, "5": 16}
    assert c["max_clique"] == 5
    assert c["symmetry_order"] == 1920


def test_cliques_against_brute_force():
    for k in range(1, 7):
        brute = [
            s for s in itertools.combinations(range(16), k)
            if all(P.adjacent(a, b) for a, b in itertools.combinations(s, 2))
        ]
        assert brute == (P.cliques(k) if k <= 5 else [])


def test_pair_classes_match_minkowski_and_klein_geometry():
    fs = P.facets()
    for F, G in itertools.combinations(fs, 2):
        cls = P.classify_pair(F, G)
        pairing = P.minkowski_pairing(F, G)
        a, b = np.array(F.signs, float), np.array(G.signs, float)
        # closest point of the codimension-2 plane {a.x = 1, b.x = 1} to the origin
        x, *_ = np.linalg.lstsq(np.vstack([a, b]), np.ones(2), rcond=None)
        r2 = float(x @ x)
        if cls is P.PairClass.ORTHOGONAL:
            assert pairing == 0
            assert r2 < 1 - 1e-9
            # Lorentzian angle between the normals (eps, 1)
            cos = (a @ b - 1) / np.sqrt((a @ a - 1) * (b @ b - 1))
            assert abs(cos) < 1e-9
        else:
            assert cls is P.PairClass.IDEAL_TANGENT
            assert pairing == -4
            assert abs(r2 - 1) < 1e-9


def test_facet_parsing_round_trip_and_unicode_minus():
    for i in range(16):
        assert P.parse_facet(P.facet_label(i)) == i
    assert P.parse_facet("−−+++") == P.parse_facet("--+++")


def test_symmetries_are_distinct_automorphisms():
    perms = P.symmetry_facet_permutations()
    assert len(set(perms)) == 1920
    assert all(P.is_automorphism(p) for p in perms)


def test_ideal_vertex_stars():
    for p in P.ideal_vertices():
        star = P.ideal_vertex_star(p)
        assert len(star) == 8
        pairs = P.star_pairs(p)
        assert sorted(x for pr in pairs for x in pr) == sorted(star)
        for a, b in itertools.combinations(star, 2):
            assert P.adjacent(a, b) == ((min(a, b), max(a, b)) not in pairs)
