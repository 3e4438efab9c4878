import itertools
import random
from fractions import Fraction
from math import factorial, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacnewton import lattice, linalg, lp


def minors_volume(simplex):
    """``s! Vol_s`` of a lattice simplex: gcd of maximal minors of its edges."""
    base = simplex[0]
    edges = [[a - b for a, b in zip(p, base)] for p in simplex[1:]]
    if not edges:
        return 1
    g = 0
    for cols in itertools.combinations(range(len(base)), len(edges)):
        g = gcd(g, linalg.int_det([[e[c] for c in cols] for e in edges]))
    return g


def shoelace_hull_area(points):
    """Area of the convex hull of planar points (monotone chain + shoelace)."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return Fraction(0)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    twice = sum(hull[i][0] * hull[i - 1][1] - hull[i - 1][0] * hull[i][1] for i in range(len(hull)))
    return Fraction(abs(twice), 2)


def is_extreme(p, others):
    """``p`` is a vertex iff it is not a convex combination of the others."""
    if not others:
        return True
    A = [[q[i] for q in others] for i in range(len(p))] + [[1] * len(others)]
    return lp.minimize([0] * len(others), A_eq=A, b_eq=list(p) + [1]) is None


def random_points(rng, k, dim, hi=4):
    return [tuple(rng.randint(0, hi) for _ in range(dim)) for _ in range(k)]


# -- frames ------------------------------------------------------------------


def test_saturated_frame_examples():
    frame = lattice.saturated_frame([(2, 0, 0), (0, 3, 0), (0, 0, 5)])
    assert frame.rank == 2
    coords = [frame.coords(p) for p in [(0, 3, 0), (0, 0, 5)]]
    edges = [[a - b for a, b in zip(c, frame.coords((2, 0, 0)))] for c in coords]
    assert abs(linalg.det(edges)) == 1
    assert lattice.saturated_frame([(0, 0)]).rank == 0
    assert lattice.saturated_frame([(0, 0, 0), (2, 0, 0)]).basis in (((1, 0, 0),), ((-1, 0, 0),))


def test_frame_coordinates_of_lattice_points_are_integral(rng):
    for _ in range(30):
        pts = random_points(rng, 4, 4)
        frame = lattice.saturated_frame(pts)
        for p in pts:
            assert all(Fraction(x).denominator == 1 for x in frame.coords(p))


# -- hulls -------------------------------------------------------------------


def test_convex_hull_examples():
    square = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)]
    assert sorted(lattice.convex_hull(square).vertices) == [(0, 0), (0, 2), (2, 0), (2, 2)]
    assert len(lattice.convex_hull([(0, 0), (1, 1), (2, 2), (3, 3)]).vertices) == 2
    counter = [
        (2, 0, 0, 0), (0, 2, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1),
        (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 3, 0), (0, 0, 0, 3),
    ]
    assert len(lattice.convex_hull(counter).vertices) == 8


def test_hull_vertices_match_extremality_oracle():
    rng = random.Random(11)
    for _ in range(60):
        dim = rng.randint(1, 3)
        pts = sorted(set(random_points(rng, rng.randint(1, 8), dim)))
        verts = {tuple(int(x) for x in v) for v in lattice.convex_hull(pts).vertices}
        expected = {p for p in pts if is_extreme(p, [q for q in pts if q != p])}
        assert verts == expected


# -- volumes -----------------------------------------------------------------


def test_volume_examples():
    assert lattice.normalized_volume([(2, 0, 0), (0, 3, 0), (0, 0, 5)]) == Fraction(1, 2)
    assert lattice.normalized_volume([(2, 0, 0), (0, 0, 5)]) == 1
    for s in range(4):
        simplex = [tuple(int(i == j) for j in range(s + 1)) for i in range(s + 1)]
        assert lattice.normalized_volume(simplex) == Fraction(1, factorial(s))
    assert lattice.normalized_volume([(3, 4)]) == 1


def test_simplex_volume_matches_minors_oracle():
    rng = random.Random(3)
    done = 0
    while done < 100:
        dim = rng.randint(2, 4)
        s = rng.randint(1, dim)
        simplex = random_points(rng, s + 1, dim, hi=5)
        if lattice.affine_dim(simplex) != s:
            continue
        done += 1
        assert factorial(s) * lattice.normalized_volume(simplex) == minors_volume(simplex)


def test_planar_volume_matches_shoelace():
    rng = random.Random(4)
    for _ in range(60):
        pts = random_points(rng, rng.randint(3, 7), 2, hi=6)
        area = shoelace_hull_area(pts)
        if area:
            assert lattice.normalized_volume(pts) == area


unimodular = st.sampled_from(
    [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 2, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        [[1, 0, -3], [0, 1, 1], [0, 0, 1]],
        [[2, 1, 0], [1, 1, 0], [0, 0, 1]],
    ]
)
point3 = st.tuples(*(st.integers(-3, 3),) * 3)


@settings(max_examples=50, deadline=None)
@given(st.lists(point3, min_size=1, max_size=6), unimodular, point3)
def test_volume_is_unimodular_invariant(pts, U, shift):
    moved = [tuple(sum(U[i][j] * p[j] for j in range(3)) + shift[i] for i in range(3)) for p in pts]
    assert lattice.normalized_volume(moved) == lattice.normalized_volume(pts)


def test_volume_in_dim():
    assert lattice.volume_in_dim([(0, 0), (1, 1)], 2) == 0
    with pytest.raises(ValueError):
        lattice.volume_in_dim([(0, 0), (1, 0), (0, 1)], 1)


# -- Minkowski sums and mixed volumes ----------------------------------------


def test_minkowski_sum():
    P = lattice.convex_hull([(0, 0), (1, 0)])
    Q = lattice.convex_hull([(0, 0), (0, 1)])
    assert sorted(lattice.minkowski_sum(P, Q).vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    pt = lattice.convex_hull([(2, 3)])
    assert sorted(lattice.minkowski_sum(P, pt).vertices) == [(2, 3), (3, 3)]


def test_mixed_volume_examples():
    seg0, seg1 = [(0, 0), (1, 0)], [(0, 0), (0, 1)]
    assert lattice.mixed_volume([(seg0, 1), (seg1, 1)], 2) == Fraction(1, 2)
    tri = [(2, 0, 0), (0, 3, 0), (0, 0, 5)]
    assert lattice.mixed_volume([(tri, 2)], 2) == lattice.normalized_volume(tri)
    assert lattice.mixed_volume([([(1, 1)], 1), ([(1, 1)], 1)], 2) == 0
    with pytest.raises(ValueError):
        lattice.mixed_volume([(seg0, 1)], 2)


def test_mixed_volume_of_bodies_off_a_common_plane_vanishes():
    seg0, seg1 = [(0, 0, 0), (1, 0, 0)], [(0, 0, 0), (0, 1, 0)]
    seg2 = [(0, 0, 0), (0, 0, 1)]
    assert lattice.mixed_volume([(seg0, 1), (seg1, 1)], 2) == Fraction(1, 2)
    assert lattice.mixed_volume([(seg0, 1), (seg1 + seg2, 1)], 2) == 0
