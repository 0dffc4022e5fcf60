import random

import numpy as np
import pytest
from hypothesis import settings

from hamcut import BallMixture, ColoredInstance, MeasureModel
from hamcut.balance import is_balanced
from hamcut.generate import random_instance, random_sizes

# Exact-arithmetic examples can exceed hypothesis' default deadline on a
# loaded machine; the suite has its own global timeout expectations.
settings.register_profile("hamcut", deadline=None)
settings.load_profile("hamcut")


def make_instance(d, classes):
    return ColoredInstance.from_lists(d, classes)


def verify_cut(inst, cut):
    """Independent re-verification of every CutResult guarantee."""
    d = inst.d
    sides = {p: cut.separator.side_of(p) for p in inst.points()}
    assert all(s != 0 for s in sides.values()), "separator touches a point"
    minus = [0] * (d + 1)
    plus = [0] * (d + 1)
    for color, cls in enumerate(inst.classes):
        for p in cls:
            if sides[p] < 0:
                minus[color] += 1
            else:
                plus[color] += 1
    assert tuple(minus) == cut.minus_tally
    assert tuple(plus) == cut.plus_tally
    m, p = sum(minus), sum(plus)
    assert m > 0 and p > 0 and m % d == 0 and p % d == 0
    assert is_balanced(minus, d) and is_balanced(plus, d)


@pytest.fixture
def four_point_instance():
    """Two colors of the running example: X1={(0,0),(9,7)}, X2={(1,5)}, X3={(8,2)}."""
    return make_instance(2, [[(0, 0), (9, 7)], [(1, 5)], [(8, 2)]])


def random_balanced_ball_model(d, rng, radius_range=(0.05, 0.3)):
    while True:
        omega = rng.dirichlet(np.full(d + 1, 5.0))
        if omega.max() <= 1.0 / d - 1e-3:
            break
    colors = []
    for i in range(d + 1):
        k = int(rng.integers(1, 4))
        centers = rng.uniform(-1.0, 1.0, size=(k, d))
        weights = rng.uniform(0.2, 1.0, size=k)
        weights = weights / weights.sum() * omega[i]
        colors.append(BallMixture(centers, weights, float(rng.uniform(*radius_range))))
    return MeasureModel(d, tuple(colors))


def seeded_instances(d, count, n_range, seed_base):
    """Deterministic batch of general-position instances with random sizes."""
    out = []
    for i in range(count):
        rng = random.Random(f"{seed_base}:{i}")
        n = rng.randint(*n_range)
        sizes = random_sizes(d, n, rng)
        out.append(random_instance(d, n, sizes, seed=seed_base + i))
    return out


@pytest.fixture(scope="session")
def instances_d2_500():
    return seeded_instances(2, 500, (2, 30), seed_base=10_000)


@pytest.fixture(scope="session")
def instances_d3_200():
    return seeded_instances(3, 200, (2, 10), seed_base=20_000)
