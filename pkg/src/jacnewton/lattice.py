"""Exact lattice-polytope geometry.

Volumes are lattice-normalized: an ``s``-dimensional polytope is measured in
its own affine hull, scaled so that a fundamental parallelepiped of the
saturated lattice of that hull has volume 1.  A lattice ``s``-simplex thus
has volume ``|det| / s!`` where ``det`` is taken in a saturated basis.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import linalg


def _vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class AffineLatticeFrame:
    """An origin plus a basis of the saturated direction lattice."""

    origin: tuple
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)

    def coords(self, point):
        """Coordinates of ``point - origin`` in the basis (exact rationals).

        Raises ValueError for points off the affine hull.
        """
        diff = _vec_sub(point, self.origin)
        if not self.basis:
            if any(diff):
                raise ValueError(f"{point} is not in the affine hull")
            return ()
        cols = [[b[i] for b in self.basis] for i in range(len(diff))]
        y = linalg.solve(cols, diff)
        if y is None:
            raise ValueError(f"{point} is not in the affine hull")
        return tuple(y)


def saturated_frame(points):
    """Frame of the affine hull of ``points`` with a saturated lattice basis."""
    points = [tuple(Fraction(x) for x in p) for p in points]
    if not points:
        raise ValueError("need at least one point")
    origin = points[0]
    diffs = [_vec_sub(p, origin) for p in points[1:]]
    basis = linalg.saturate(diffs, len(origin))
    return AffineLatticeFrame(origin, tuple(tuple(b) for b in basis))


def _simplex_det(coords, simplex):
    base = coords[simplex[0]]
    return linalg.det([_vec_sub(coords[i], base) for i in simplex[1:]])


class PlacingTriangulation:
    """Placing (beneath-beyond) triangulation of points in ``Q^r``.

    Points are inserted in the given order.  A point outside the current
    affine hull is coned over every simplex; a point inside the hull but
    beyond some boundary facets is coned over exactly those facets; other
    points are skipped.  ``simplices`` holds index tuples of maximal cells.
    """

    def __init__(self, coords):
        self.coords = [tuple(Fraction(x) for x in c) for c in coords]
        self.dim = -1
        self.simplices = []
        self.boundary = {}
        self.used = []
        self._planes = {}
        for i in range(len(self.coords)):
            self._insert(i)

    def _barycentric(self, simplex, p):
        cols = [list(self.coords[i]) + [1] for i in simplex]
        A = [[c[k] for c in cols] for k in range(len(cols[0]))]
        return linalg.solve(A, list(self.coords[p]) + [1])

    def _beyond(self, facet, apex, p):
        r = len(self.coords[p])
        if self.dim == r and r > 0:
            key = facet
            if key not in self._planes:
                pts = sorted(facet)
                base = self.coords[pts[0]]
                normal = linalg.cofactor_normal([_vec_sub(self.coords[i], base) for i in pts[1:]])
                off = sum(a * b for a, b in zip(normal, base))
                if sum(a * b for a, b in zip(normal, self.coords[apex])) > off:
                    normal = [-a for a in normal]
                    off = -off
                self._planes[key] = (normal, off)
            normal, off = self._planes[key]
            return sum(a * b for a, b in zip(normal, self.coords[p])) > off
        lam = self._barycentric(tuple(sorted(facet)) + (apex,), p)
        return lam[-1] < 0

    def _insert(self, p):
        if self.dim == -1:
            self.dim = 0
            self.simplices = [(p,)]
            self.boundary = {frozenset(): p}
            self.used.append(p)
            return
        if self._barycentric(self.simplices[0], p) is None:
            new_boundary = {facet | {p}: apex for facet, apex in self.boundary.items()}
            for s in self.simplices:
                new_boundary[frozenset(s)] = p
            self.simplices = [s + (p,) for s in self.simplices]
            self.boundary = new_boundary
            self._planes = {}
            self.dim += 1
            self.used.append(p)
            return
        visible = [f for f, apex in self.boundary.items() if self._beyond(f, apex, p)]
        if not visible:
            return
        visible_set = set(visible)
        ridge_count = {}
        for f in visible:
            for v in f:
                ridge = f - {v}
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        for f in visible:
            self.simplices.append(tuple(sorted(f)) + (p,))
        new_boundary = {f: a for f, a in self.boundary.items() if f not in visible_set}
        for f in visible:
            for v in f:
                ridge = f - {v}
                if ridge_count[ridge] == 1:
                    new_boundary[ridge | {p}] = v
        self.boundary = new_boundary
        self.used.append(p)

    def volume(self):
        """Sum of ``|det|`` over maximal cells, i.e. ``r! Vol_r``."""
        if self.dim <= 0:
            return Fraction(1) if self.dim == 0 else Fraction(0)
        return sum(abs(_simplex_det(self.coords, s)) for s in self.simplices)


@dataclass(frozen=True)
class RationalPolytope:
    """A polytope given by its irredundant vertex set."""

    vertices: tuple
    dim: int
    _facets: tuple = field(default=None, compare=False, repr=False)

    @property
    def ambient_dim(self):
        return len(self.vertices[0])

    def facets(self):
        """Facets as ``(vertex_tuple)`` lists, in the polytope's own hull."""
        return self._facets


def _hull_data(points):
    """Vertices, dimension and facet vertex sets of ``conv(points)``."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    frame = saturated_frame(pts)
    coords = [frame.coords(p) for p in pts]
    r = frame.rank
    if r == 0:
        return [pts[0]], 0, ()
    tri = PlacingTriangulation(coords)
    # group boundary simplices by supporting hyperplane
    planes = {}
    for facet, apex in tri.boundary.items():
        idx = sorted(facet)
        if r == 1:
            key = (idx[0],)
        else:
            base = coords[idx[0]]
            normal = linalg.cofactor_normal([_vec_sub(coords[i], base) for i in idx[1:]])
            normal = linalg.primitive(linalg.clear_denominators(normal))
            off = sum(a * b for a, b in zip(normal, base))
            if sum(a * b for a, b in zip(normal, coords[apex])) < off:
                normal = [-a for a in normal]
                off = -off
            key = (tuple(normal), off)
        planes.setdefault(key, set()).update(idx)
    # a point is a vertex iff the facets through it pin it down
    facet_sets = []
    for key, idx in planes.items():
        if r == 1:
            facet_sets.append(frozenset(idx))
            continue
        normal, off = key
        on = frozenset(
            i for i in tri.used if sum(a * b for a, b in zip(normal, coords[i])) == off
        )
        facet_sets.append(on)
    vertices = []
    for i in tri.used:
        through = [k for k, f in zip(planes, facet_sets) if i in f]
        if r == 1:
            if through:
                vertices.append(i)
            continue
        if linalg.rank([list(k[0]) for k in through]) == r:
            vertices.append(i)
    vset = set(vertices)
    facets = tuple(
        tuple(pts[i] for i in sorted(f & vset)) for f in facet_sets
    )
    return [pts[i] for i in sorted(vertices)], r, facets


def convex_hull(points):
    """Irredundant V-description of the convex hull of rational points."""
    verts, dim, facets = _hull_data(points)
    return RationalPolytope(tuple(verts), dim, facets)


def normalized_volume(P):
    """``Vol_s(P)`` for ``s = dim P``; ``Vol_0`` of a point is 1."""
    pts = P.vertices if isinstance(P, RationalPolytope) else P
    pts = [tuple(Fraction(x) for x in p) for p in pts]
    frame = saturated_frame(pts)
    coords = [frame.coords(p) for p in pts]
    tri = PlacingTriangulation(coords)
    return tri.volume() / factorial(frame.rank)


def affine_dim(points):
    points = [tuple(Fraction(x) for x in p) for p in points]
    return linalg.rank([_vec_sub(p, points[0]) for p in points[1:]]) if len(points) > 1 else 0


def volume_in_dim(points, s):
    """``Vol_s`` of ``conv(points)``, zero when the hull has lower dimension."""
    d = affine_dim(points)
    if d < s:
        return Fraction(0)
    if d > s:
        raise ValueError(f"hull has dimension {d} > {s}")
    return normalized_volume(points)


def minkowski_sum(P, Q):
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("Minkowski sum of polytopes in different dimensions")
    return convex_hull([tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices])


def _scaled_sum(bodies, counts):
    """Vertex candidates of ``sum_i counts[i] * bodies[i]``."""
    pts = [tuple(Fraction(0) for _ in bodies[0][0])]
    for verts, c in zip(bodies, counts):
        if c == 0:
            continue
        pts = {tuple(a + c * b for a, b in zip(p, q)) for p in pts for q in verts}
        if len(pts) > 64:
            pts = convex_hull(pts).vertices
    return list(pts)


def mixed_volume(bodies, s):
    """Mixed volume ``V_s`` normalized so that ``V_s(K, ..., K) = Vol_s(K)``.

    ``bodies`` is a list of ``(polytope_or_points, multiplicity)``.  Evaluated
    by inclusion-exclusion over sub-multisets; bodies that do not fit in a
    common ``s``-plane (after translation) give 0.
    """
    verts = []
    mults = []
    for K, k in bodies:
        pts = K.vertices if isinstance(K, RationalPolytope) else K
        verts.append([tuple(Fraction(x) for x in p) for p in pts])
        mults.append(int(k))
    if sum(mults) != s:
        raise ValueError(f"multiplicities sum to {sum(mults)}, expected {s}")
    if s == 0:
        return Fraction(1)
    if affine_dim(_scaled_sum(verts, [1] * len(verts))) > s:
        return Fraction(0)
    total = Fraction(0)
    for sub in itertools.product(*(range(k + 1) for k in mults)):
        size = sum(sub)
        if size == 0:
            continue
        weight = 1
        for k, a in zip(mults, sub):
            weight *= comb(k, a)
        vol = volume_in_dim(_scaled_sum(verts, sub), s)
        if vol:
            total += (-1) ** (s - size) * weight * vol
    return total / factorial(s)


def lattice_points_in(predicate, lower, upper):
    """All integer points ``p`` with ``lower <= p <= upper`` and ``predicate(p)``.

    Enumerated in lexicographic order.
    """
    ranges = [range(int(lo), int(hi) + 1) for lo, hi in zip(lower, upper)]
    return [p for p in itertools.product(*ranges) if predicate(p)]
