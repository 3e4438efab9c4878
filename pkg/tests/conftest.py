import random

import pytest

from jacnewton import linalg
from jacnewton.newton import NewtonDiagram
from jacnewton.triangulate import Simplex

E8 = [(2, 0, 0), (0, 3, 0), (0, 0, 5)]
COUNTER = [
    (2, 0, 0, 0), (0, 2, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1),
    (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 3, 0), (0, 0, 0, 3),
]
# f = xy + xz + 2yz + z^2 with the vertex names used for its two triangulations
A, B, C, D = (0, 1, 1), (0, 0, 2), (1, 0, 1), (1, 1, 0)
TWOSIMP = [A, B, C, D]
TWOSIMP_LEFT = [(A, C, D), (A, B, C)]
TWOSIMP_RIGHT = [(A, B, D), (B, C, D)]


def fukui(delta):
    pts = [(2, 2, 2, 2), (1, 0, 8, 0), (0, 1, 0, 8), (8, 0, 0, 1), (0, 8, 1, 0)]
    if delta:
        pts.append((0, 4, 4, 0))
    return pts


def random_convenient_support(rng, dim, extra=4, axis_max=7, inner_max=4):
    """A convenient support whose points all have exponent sum >= 2."""
    pts = [tuple(rng.randint(2, axis_max) if j == i else 0 for j in range(dim)) for i in range(dim)]
    for _ in range(rng.randint(0, extra)):
        p = tuple(rng.randint(0, inner_max) for _ in range(dim))
        if sum(p) >= 2:
            pts.append(p)
    return pts


def random_coordinate_simplex(rng, hi=6):
    """A lattice simplex of dimension |I| - 1 spanning R^I for a random I."""
    dim = rng.randint(1, 4)
    while True:
        coords = sorted(rng.sample(range(dim), rng.randint(1, dim)))
        verts = []
        for _ in coords:
            v = [0] * dim
            for i in coords:
                v[i] = rng.randint(0, hi)
            verts.append(tuple(v))
        S = Simplex(tuple(verts))
        if S.coords == tuple(coords) and linalg.rank(list(S.vertices)) == len(coords):
            return S


@pytest.fixture(scope="session")
def e8():
    return NewtonDiagram(E8)


@pytest.fixture(scope="session")
def counter():
    return NewtonDiagram(COUNTER)


@pytest.fixture(scope="session")
def twosimp():
    return NewtonDiagram(TWOSIMP)


@pytest.fixture(scope="session")
def fukui0():
    return NewtonDiagram(fukui(0))


@pytest.fixture(scope="session")
def fukui1():
    return NewtonDiagram(fukui(1))


@pytest.fixture
def rng():
    return random.Random(20240601)
