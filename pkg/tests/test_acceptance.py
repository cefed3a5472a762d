"""Acceptance criteria, one check per criterion; each prints a single PASS/FAIL line.

Run with pytest, or directly: ``python tests/test_acceptance.py``.
"""
import itertools
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import cubulation, pipeline, shipped_config  # noqa: E402

from p5fiber import polytope as P  # noqa: E402
from p5fiber.coloring import Coloring, is_proper, search_colorings, torsion_witness  # noqa: E402
from p5fiber.fixtures import torus_map  # noqa: E402
from p5fiber.game import (  # noqa: E402
    CoorientationSystem,
    Partition,
    all_partitions,
    classify_square,
    evaluate_partition,
    square_oracle,
    survey_json,
    survey_partitions,
)
from p5fiber.homology import gf2_rank  # noqa: E402
from p5fiber.morse import find_bad_families, level_set, primitive_lift  # noqa: E402
from p5fiber.tessellation import (  # noqa: E402
    Tessellation,
    _closure,
    cusp_census,
    cusp_orbits,
    cusp_section_complex,
    star_generators,
    verify_torus,
)

_survey = {}


def survey(jobs=1):
    if jobs not in _survey:
        _survey[jobs] = survey_partitions(shipped_config()[0], seed=0, jobs=jobs)
    return _survey[jobs]


# -- criteria: each returns (ok, detail) -------------------------------------------


def c01():
    c = P.census()
    got = (c["facet_count"], set(c["degrees"]), c["orthogonal_pairs"], c["ideal_tangent_pairs"],
           c["max_clique"], c["symmetry_order"])
    ok = got == (16, {10}, 80, 40, 5, 1920)
    return ok, "facets={} degree={} orthogonal={} tangent={} max_clique={} |G|={}".format(
        got[0], sorted(got[1]), *got[2:])


def c02():
    fs = P.facets()
    exact = klein = 0
    for F, G in itertools.combinations(fs, 2):
        cls = P.classify_pair(F, G)
        want = {P.PairClass.ORTHOGONAL: 0, P.PairClass.IDEAL_TANGENT: -4}[cls]
        exact += P.minkowski_pairing(F, G) == want
        a, b = np.array(F.signs, float), np.array(G.signs, float)
        x, *_ = np.linalg.lstsq(np.vstack([a, b]), np.ones(2), rcond=None)
        r2 = float(x @ x)
        if cls is P.PairClass.ORTHOGONAL:
            klein += r2 < 1 - 1e-9
        else:
            klein += abs(r2 - 1) < 1e-9
    return exact == klein == 120, f"minkowski agrees {exact}/120, klein agrees {klein}/120"


def c03():
    found = search_colorings(8, seed=0)
    proper8 = bool(found) and is_proper(found[0])
    none_small = all(search_colorings(c) == [] for c in range(1, 5))
    rng = random.Random(3)
    perms = P.symmetry_facet_permutations()
    agree = 0
    for k in range(1000):
        if k % 2:
            col = found[0].relabel(rng.choice(perms))
            shuffle = list(range(1, 9))
            rng.shuffle(shuffle)
            col = Coloring(tuple(shuffle[x - 1] for x in col.colors), 8)
            if rng.random() < 0.5:
                colors = list(col.colors)
                colors[rng.randrange(16)] = rng.randint(1, 8)
                col = Coloring(tuple(colors), 8)
        else:
            col = Coloring(tuple(rng.randint(1, 8) for _ in range(16)), 8)
        agree += (torsion_witness(col) is not None) == (not is_proper(col))
    ok = proper8 and none_small and agree == 1000
    return ok, f"proper 8-coloring found={proper8}, none for c<=4={none_small}, torsion<->improper {agree}/1000"


def c04():
    col = shipped_config()[0]
    t = Tessellation(col)
    rng = random.Random(4)
    perms = P.symmetry_facet_permutations()
    checked = 0
    for k in range(100):
        c = 8 + k % 3
        (base,) = search_colorings(c, seed=k)
        rc = base.relabel(rng.choice(perms))
        rt = Tessellation(rc)
        for p in P.ideal_vertices():
            gens = star_generators(rc, p)
            r = gf2_rank(gens)
            orbit = _closure(rng.randrange(rt.copies), gens)
            assert len(orbit) == 1 << r
        cusp_orbits(rt)  # cross-checks every orbit and the cusp count against the rank
        checked += 1
    census = cusp_census(t)
    tiles = sorted({(x["size_class"], x["orbit_size"]) for x in census["cusps"]})
    ok = (t.copies == 256 and t.glued_pair_count() == 2048 and checked == 100 and census["total"] == 40
          and census["by_class"] == {"large": 8, "small": 32} and tiles == [("large", 256), ("small", 16)])
    return ok, (f"copies={t.copies} glued={t.glued_pair_count()} orbit checks on {checked} colorings, "
                f"cusps={census['by_class']} tiles={tiles}")


def c05():
    cusps = cusp_orbits(Tessellation(shipped_config()[0]))
    passed = 0
    for cu in cusps:
        cx = cusp_section_complex(cu, verify=False)
        passed += cx.euler_characteristic() == 0 and verify_torus(cx, cu.tiles) == [1, 4, 6, 4, 1]
    return passed == len(cusps) == 40, f"{passed}/{len(cusps)} sections: chi=0, Betti (1,4,6,4,1)"


def c06():
    cub = cubulation()
    g = nx.Graph(P.adjacency_graph()[1])
    sizes = [len(c) for c in nx.enumerate_all_cliques(g)]
    n = [sizes.count(k) for k in range(1, 6)]
    want = [256] + [(256 * n[k - 1]) >> k for k in range(1, 6)]
    cc = cub.complex.chain_complex()
    try:
        cc.check_gf2()
        dd = True
    except Exception:
        dd = False
    counts = cub.complex.counts()
    chi = cub.complex.euler_characteristic()
    ok = counts == want and counts[:2] == [256, 2048] and dd and chi == 0
    return ok, f"counts={counts} expected={want} dd=0:{dd} chi={chi}"


def c07():
    col = shipped_config()[0]
    squares = cubulation().squares()
    rng = random.Random(7)
    parts = all_partitions(8)
    agree = total = independent = 0
    for _ in range(50):
        part = rng.choice(parts)
        sys_ = CoorientationSystem(col, part, rng.getrandbits(16))
        other = sys_.with_base(rng.getrandbits(16))
        same = True
        for lam, (F, G) in squares:
            cls = classify_square(sys_, lam, F, G)
            agree += (cls == "good") == square_oracle(sys_, lam, F, G)[0]
            same &= square_oracle(other, lam, F, G)[0] == (cls == "good")
            total += 1
        independent += same
    ok = agree == total and independent == 50
    return ok, f"classification = oracle on {agree}/{total} squares; base-state independent in {independent}/50"


def c08():
    rows = survey()
    both = [r["partition"] for r in rows if r["bad_squares"] == 0 and r["cusp_condition"]]
    single = next(r for r in rows if r["partition"] == "1|2|3|4|5|6|7|8")
    col, part, base = shipped_config()
    again = [evaluate_partition(col, Partition.parse(r["partition"], 8), seed=0)["cusp_condition"]
             for r in rows[:5]]
    mod4 = next(r for r in rows if r["partition"] == str(part))
    families = find_bad_families(cubulation(), CoorientationSystem(col, part, base))
    deterministic = survey_json(rows) == survey_json(survey_partitions(col, seed=0))
    ok = (len(rows) == 4140 and not both and single["bad_squares"] == 0 and not single["cusp_condition"]
          and single["strategy"] == "exhaustive" and len(families) == mod4["bad_squares"] == 512
          and deterministic and again == [r["cusp_condition"] for r in rows[:5]])
    return ok, (f"{len(rows)} partitions, perfect partitions={both}; singleton: 0 bad squares, cusp condition "
                f"fails on all {single['base_states_examined']} base states; mod-4: {len(families)} bad squares "
                f"in admissible families; deterministic={deterministic}")


def c09():
    report, _, timings = pipeline()
    links = report["links"]
    pl = report["pl_map"]
    ok = (report["subdivision"]["shared_faces_ok"] and pl["affine"] and pl["nonconstant"]
          and pl["discrete_image"] == ["0", "1/2"] and links["inconclusive"] == 0
          and links["certified"] == 2 * links["vertices"])
    return ok, (f"subdivided {report['bad_squares']} bad squares -> counts {report['subdivision']['counts']}; "
                f"Morse conditions on {sum(pl['cells_checked'])} cells; {links['certified']} links certified "
                f"and replayed ({links['original_vertices']} original + {links['center_vertices']} center "
                f"vertices), inconclusive={links['inconclusive']}")


def c10():
    report, _, _ = pipeline()
    classes = report["cusps"]["classes"]
    large = [k for k in classes if k["size_class"] == "large"]
    small = [k for k in classes if k["size_class"] == "small"]
    ok_large = all(sum(1 for v in k["vector"] if v) == 1 for k in large)
    ok_small = all(all(abs(v) == 1 for v in k["normalized"]) for k in small)
    nonzero = all(any(k["vector"]) for k in classes)
    ok = ok_large and ok_small and nonzero and len(large) == 8 and len(small) == 32
    raw = sorted({(k["size_class"], tuple(sorted(map(abs, k["vector"])))) for k in classes})
    return ok, (f"large: one nonzero component in {sum(1 for k in large if sum(map(bool, k['vector'])) == 1)}/8; "
                f"small: (+-1,+-1,+-1,+-1) after gcd in {sum(1 for k in small if set(map(abs, k['normalized'])) == {1})}/32; "
                f"raw |vector| patterns {raw}")


def c11():
    fib = level_set(primitive_lift(torus_map(2)), Fraction(1, 2))
    t2 = fib.components() == 1 and fib.betti() == [1, 1]
    report, _, _ = pipeline()
    raw = report["fiber"]["level_set"]
    prim = report["fiber"]["primitive_lift"]
    ok = (t2 and prim["pi0"] == 1 and prim["euler_from_counts"] == prim["euler_from_betti"]
          and raw["euler_from_counts"] == raw["euler_from_betti"])
    return ok, (f"T2: pi0={fib.components()} Betti={fib.betti()}; 5-dim fiber at t=1/4 of the primitive map "
                f"(period {prim['period']}): pi0={prim['pi0']} chi={prim['euler_from_counts']} "
                f"(Betti {prim['betti_gf2']}); level set of f itself: pi0={raw['pi0']}")


def c12():
    a = json.dumps(pipeline(1)[:2], sort_keys=True)
    b = json.dumps(pipeline(2)[:2], sort_keys=True)
    s1 = survey_json(survey(1))
    s2 = survey_json(survey(2))
    ok = a == b and s1 == s2
    return ok, f"morse report+certificates identical at jobs=1,2: {a == b} ({len(a)} bytes); survey identical: {s1 == s2}"


CRITERIA = [
    (1, "polytope census", c01, 1),
    (2, "pair classification", c02, 1),
    (3, "colorings and torsion", c03, 10),
    (4, "tessellation and cusps", c04, 30),
    (5, "cusp tori", c05, 30),
    (6, "cubulation", c06, 30),
    (7, "square classification", c07, 60),
    (8, "partition survey", c08, 30 * 60),
    (9, "morse pipeline", c09, 60 * 60),
    (10, "cusp restriction classes", c10, None),
    (11, "fiber", c11, 30 * 60),
    (12, "determinism", c12, None),
]


def check(n):
    _, title, fn, budget = CRITERIA[n - 1]
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    in_time = budget is None or elapsed < budget
    limit = "" if budget is None else f" < {budget}s"
    line = f"[{'PASS' if ok and in_time else 'FAIL'}] C{n:02d} {title}: {detail} ({elapsed:.2f}s{limit})"
    return ok and in_time, line


@pytest.mark.parametrize("n", [c[0] for c in CRITERIA])
def test_criterion(n, capsys):
    ok, line = check(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [check(n) for n, *_ in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
