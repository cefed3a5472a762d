import random
from functools import lru_cache

import pytest

from p5fiber import polytope as P
from p5fiber.game import (
    CoorientationSystem,
    Partition,
    PartitionError,
    all_partitions,
    bad_facet_pairs,
    base_state_string,
    bell_triangle,
    classify_square,
    edge_well_defined,
    evaluate_partition,
    parse_base_state,
    restricted_growth_strings,
    square_oracle,
    survey_partitions,
)


@lru_cache(maxsize=None)
def survey(col):
    return survey_partitions(col)


def test_partition_enumeration_matches_bell_numbers():
    for n in range(1, 9):
        rgs = list(restricted_growth_strings(n))
        assert len(rgs) == len(set(rgs)) == bell_triangle(n)
    assert len(all_partitions(8)) == 4140


def test_partition_parsing():
    p = Partition.parse("1,5|2,6|3,7|4,8", 8)
    assert p == Partition.modular(8, 4)
    assert Partition.parse("1,2", 4).blocks == ((1, 2), (3,), (4,))
    with pytest.raises(PartitionError):
        Partition.parse("1,1|2", 2)


def test_crossing_a_facet_flips_it(system):
    for lam in range(0, 256, 37):
        for f in range(16):
            assert edge_well_defined(system, lam, f)


def test_classification_agrees_with_oracle_on_random_systems(config, cub):
    col = config[0]
    rng = random.Random(11)
    parts = all_partitions(8)
    squares = cub.squares()
    for _ in range(4):
        sys = CoorientationSystem(col, rng.choice(parts), rng.getrandbits(16))
        for lam, (F, G) in rng.sample(squares, 600):
            assert (classify_square(sys, lam, F, G) == "good") == square_oracle(sys, lam, F, G)[0]


def test_bad_squares_of_mod4_are_saddles(system, cub):
    bad = set(bad_facet_pairs(system))
    assert len(bad) == 8
    for lam, (F, G) in cub.squares():
        good, wrap = square_oracle(system, lam, F, G)
        assert good == ((F, G) not in bad)
        assert wrap == 0


def test_mod4_and_singleton_rows(config):
    col, part, base = config
    row = evaluate_partition(col, part)
    assert row["bad_squares"] == 512 and row["family_check"] and row["cusp_condition"]
    single = evaluate_partition(col, Partition.singletons(8))
    assert single["bad_squares"] == 0 and not single["cusp_condition"]


def test_survey_finds_no_perfect_partition(config):
    rows = survey(config[0])
    assert len(rows) == 4140
    assert not [r for r in rows if r["bad_squares"] == 0 and r["cusp_condition"]]
    assert [r["partition"] for r in rows if r["bad_squares"] == 0] == ["1|2|3|4|5|6|7|8"]


def test_survey_is_deterministic_across_jobs(config):
    assert survey(config[0]) == survey_partitions(config[0], jobs=2)


def test_base_state_round_trip():
    for s in (0, 45808, 0xFFFF):
        assert parse_base_state(base_state_string(s)) == s
    from p5fiber.game import base_state_text

    assert parse_base_state(base_state_text(1234)) == 1234
    assert P.NFACETS == len(base_state_string(0))
