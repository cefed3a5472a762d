import networkx as nx

from p5fiber import polytope as P
from p5fiber.cubulation import boundary_compatibility, vertex_link
from p5fiber.tessellation import Tessellation, cusp_orbits


def test_counts_match_independent_clique_enumeration(cub):
    g = nx.Graph(P.adjacency_graph()[1])
    sizes = [len(c) for c in nx.enumerate_all_cliques(g)]
    n = [sizes.count(k) for k in range(1, 6)]
    expected = [256] + [256 * n[k - 1] >> k for k in range(1, 6)]
    assert cub.complex.counts() == expected == [256, 2048, 5120, 5120, 1920, 128]


def test_boundary_squares_to_zero_and_euler(cub):
    cc = cub.complex.chain_complex()
    cc.check_gf2()
    assert cub.complex.euler_characteristic() == 0
    assert sum((-1) ** k * b for k, b in enumerate(cc.betti("GF2"))) == 0


def test_signed_boundary_on_cusp_tori(cub):
    cusps = cusp_orbits(Tessellation(cub.coloring))
    for cu in (cusps[0], cusps[-1]):
        from p5fiber.tessellation import cusp_section_complex

        cc = cusp_section_complex(cu, verify=False).chain_complex(signed=True)
        cc.check_signed()
        assert cc.betti("Q") == [1, 4, 6, 4, 1]


def test_vertex_link_is_the_clique_complex(cub):
    link = vertex_link(cub, 0)
    want = {frozenset(c) for c in P.all_cliques()}
    assert link == want


def test_cusp_tori_sit_in_the_cubulation(cub):
    for cu in cusp_orbits(Tessellation(cub.coloring)):
        assert boundary_compatibility(cub, cu)["ok"]
