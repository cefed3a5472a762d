from collections import Counter

from p5fiber.coloring import search_colorings
from p5fiber.complexes import torus_complex
from p5fiber.tessellation import (
    Tessellation,
    cusp_census,
    cusp_orbits,
    cusp_rank_profile,
    cusp_section_complex,
    verify_torus,
)


def test_copies_and_gluing(config):
    t = Tessellation(config[0])
    assert t.copies == 256
    assert t.glued_pair_count() == 2048 == len(list(t.glued_pairs()))
    for lam, f in t.glued_pairs():
        assert t.glue(*t.glue(lam, f)) == (lam, f)


def test_cusp_census_of_shipped_coloring(config):
    census = cusp_census(Tessellation(config[0]))
    assert census["total"] == 40
    assert census["by_class"] == {"large": 8, "small": 32}
    tiles = Counter((c["size_class"], c["orbit_size"]) for c in census["cusps"])
    assert tiles == {("large", 256): 8, ("small", 16): 32}


def test_orbits_match_rank_on_other_palettes():
    for c in (9, 12, 16):
        (col,) = search_colorings(c, seed=c)
        t = Tessellation(col)
        cusps = cusp_orbits(t)  # raises if BFS and rank disagree
        ranks = cusp_rank_profile(col)
        assert len(cusps) == sum(1 << (c - r) for r in ranks)


def test_every_cusp_section_is_a_four_torus(config):
    for cu in cusp_orbits(Tessellation(config[0])):
        cx = cusp_section_complex(cu, verify=False)
        assert verify_torus(cx, cu.tiles) == [1, 4, 6, 4, 1]


def test_torus_battery_rejects_a_three_torus():
    import pytest

    from p5fiber.tessellation import TorusCheckError

    with pytest.raises(TorusCheckError):
        verify_torus(torus_complex(3))
