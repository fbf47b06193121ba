import random

import pytest

from dolgachev import PlaneConfig, Smoothing, build_surface
from dolgachev.cohomology import ExtTable


@pytest.fixture(scope="session")
def model31():
    return build_surface(3, 1)


@pytest.fixture(scope="session")
def smoothing(model31):
    return Smoothing(model31)


@pytest.fixture(scope="session")
def plane():
    return PlaneConfig.default()


@pytest.fixture(scope="session")
def ext_table(smoothing, plane):
    return ExtTable(smoothing, plane=plane).table()


def random_admissible(model, rng: random.Random, spread=4):
    """Random divisor class satisfying the descent conditions (n = 3)."""
    d = model.zero()
    for i in range(model.rank):
        c = rng.randint(-spread, spread)
        if c:
            d = d + c * model._unit(i)
    e2, e3 = model.curve("E2"), model.curve("E3")
    d = d - model.intersect(d, e2) * e3
    t = (-model.intersect(d, model.curve("C2"))) % 3
    d = d + t * model.curve("F1")
    if model.intersect(d, model.curve("C1")) % 2:
        d = d + model.curve("H")
    rep = model.is_admissible(d)
    assert rep.ok
    return d
