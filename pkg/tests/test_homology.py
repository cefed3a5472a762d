import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from p5fiber.complexes import grid_torus, standard_cube, torus_complex
from p5fiber.homology import BoundaryError, ChainComplex, gf2_rank, rational_rank, simplicial_chain_complex


def gf2_rank_numpy(rows, ncols):
    m = np.array([[r >> j & 1 for j in range(ncols)] for r in rows], dtype=np.uint8).reshape(len(rows), ncols)
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, m.shape[0]) if m[i, c]), None)
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        for i in range(m.shape[0]):
            if i != rank and m[i, c]:
                m[i] ^= m[rank]
        rank += 1
    return rank


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, (1 << 12) - 1), max_size=14))
def test_gf2_rank_matches_dense_elimination(rows):
    assert gf2_rank(rows) == gf2_rank_numpy(rows, 12)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=6))
def test_rational_rank_matches_sympy(cols):
    sparse = [{i: v for i, v in enumerate(c) if v} for c in cols]
    assert rational_rank(sparse) == sympy.Matrix(cols).rank()


@pytest.mark.parametrize(
    "cx, betti",
    [
        (torus_complex(1), [1, 1]),
        (torus_complex(2), [1, 2, 1]),
        (torus_complex(3), [1, 3, 3, 1]),
        (standard_cube(3), [1, 0, 0, 0]),
        (grid_torus(2, 3), [1, 2, 1]),
    ],
)
def test_betti_of_known_spaces_over_both_fields(cx, betti):
    cc = cx.chain_complex(signed=True)
    assert cc.betti("GF2") == betti
    assert cc.betti("Q") == betti
    assert cc.euler_characteristic() == sum((-1) ** k * b for k, b in enumerate(betti))


def test_triangle_boundary_is_a_circle():
    cc = simplicial_chain_complex([(0, 1), (1, 2), (0, 2), (0,), (1,), (2,)], signed=True)
    assert cc.betti("GF2") == [1, 1]
    assert cc.betti("Q") == [1, 1]


def test_projective_plane_distinguishes_fields():
    # 6-vertex triangulation of RP^2
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    simplices = set()
    for t in tris:
        simplices |= {t, t[:2], t[1:], (t[0], t[2]), (t[0],), (t[1],), (t[2],)}
    cc = simplicial_chain_complex([tuple(sorted(s)) for s in simplices], signed=True)
    assert cc.betti("GF2") == [1, 1, 1]
    assert cc.betti("Q") == [1, 0, 0]


def test_nonzero_boundary_square_is_rejected():
    cc = ChainComplex([1, 1, 1], [[0], [1], [1]])
    with pytest.raises(BoundaryError):
        cc.betti("GF2")
