from functools import lru_cache

import pytest

from p5fiber.cli import data_text, default_coloring
from p5fiber.cubulation import Cubulation
from p5fiber.game import CoorientationSystem, Partition, parse_base_state


@lru_cache(maxsize=None)
def shipped_config():
    col = default_coloring()
    part = Partition.modular(8, 4)
    base = parse_base_state(data_text("base_state_mod4.txt"))
    return col, part, base


@lru_cache(maxsize=None)
def cubulation():
    return Cubulation(shipped_config()[0])


@lru_cache(maxsize=None)
def pipeline(jobs=1):
    from p5fiber.morse.pipeline import run_morse

    col, part, base = shipped_config()
    return run_morse(col, part, base, seed=0, jobs=jobs)


@pytest.fixture(scope="session")
def config():
    return shipped_config()


@pytest.fixture(scope="session")
def system(config):
    col, part, base = config
    return CoorientationSystem(col, part, base)


@pytest.fixture(scope="session")
def cub():
    return cubulation()
