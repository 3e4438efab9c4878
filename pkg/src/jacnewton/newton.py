"""Newton polyhedra of power series supports.

A support is a finite set of exponent vectors in ``Z_{>=0}^{n+1}``.  The
Newton polyhedron is ``conv(support) + R_{>=0}^{n+1}`` and the Newton diagram
is the union of its compact faces.  Weight vectors have entries in the
positive integers or ``INF``; an ``INF`` entry kills every monomial involving
that variable.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, gcd

from . import lattice, linalg, lp
from .kn import INF, is_inf


class DiagramError(ValueError):
    pass


# -- weight vectors ----------------------------------------------------------


@dataclass(frozen=True)
class WeightVector:
    """A primitive weight vector over ``Z_{>0} ∪ {INF}``."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(INF if is_inf(x) or x == "inf" else int(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        finite = [x for x in entries if not is_inf(x)]
        if not finite:
            raise ValueError("a weight vector needs a finite entry")
        if any(x <= 0 for x in finite):
            raise ValueError(f"weights must be positive: {entries}")
        g = 0
        for x in finite:
            g = gcd(g, x)
        if g != 1:
            raise ValueError(f"weight vector {entries} is not primitive")

    @classmethod
    def primitive_from(cls, entries):
        """Divide the finite entries by their gcd."""
        finite = [x for x in entries if not is_inf(x)]
        g = 0
        for x in finite:
            g = gcd(g, int(x))
        return cls(tuple(x if is_inf(x) else int(x) // g for x in entries))

    @property
    def sedentarity(self):
        return frozenset(i for i, x in enumerate(self.entries) if is_inf(x))

    @property
    def finite_coords(self):
        return tuple(i for i, x in enumerate(self.entries) if not is_inf(x))

    def __call__(self, u):
        """``v(u) = sum v_i u_i`` with ``INF * 0 = 0``."""
        total = 0
        for x, a in zip(self.entries, u):
            if a == 0:
                continue
            if is_inf(x):
                return INF
            total += x * a
        return total

    def __len__(self):
        return len(self.entries)

    def sort_key(self):
        return tuple((1, 0) if is_inf(x) else (0, x) for x in self.entries)

    def __str__(self):
        return "(" + ",".join("inf" if is_inf(x) else str(x) for x in self.entries) + ")"

    def to_json(self):
        return ["inf" if is_inf(x) else x for x in self.entries]


def wedge(support, v):
    """``min`` of ``v`` over the Newton polyhedron, ``INF`` if every point is killed."""
    values = [v(u) for u in support]
    finite = [x for x in values if not is_inf(x)]
    return min(finite) if finite else INF


def wedge_linear(v):
    """``wedge`` for a generic linear form: the smallest finite weight."""
    return min(x for x in v.entries if not is_inf(x))


# -- faces -------------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    """A compact face of a Newton diagram.

    ``coords`` is the set of coordinates that are nonzero on the relative
    interior.  ``normal``, ``m`` and ``n`` are set for coordinate facets only.
    """

    vertices: tuple
    coords: tuple
    dim: int
    normal: WeightVector = None
    m: int = None
    n: int = None
    points: tuple = field(default=(), compare=False, repr=False)

    @property
    def is_coordinate_facet(self):
        return self.dim == len(self.coords) - 1

    @property
    def axial(self):
        """``M(F) = m / n`` for a coordinate facet."""
        if self.normal is None:
            raise DiagramError("only coordinate facets carry a maximal axial number")
        return Fraction(self.m, self.n)

    def contains(self, other):
        return set(other.vertices) <= set(self.points or self.vertices)

    def to_json(self):
        out = {
            "vertices": [list(v) for v in self.vertices],
            "coords": list(self.coords),
            "dim": self.dim,
        }
        if self.normal is not None:
            out.update(normal=self.normal.to_json(), m=self.m, n=self.n, M=str(self.axial))
        return out


def _nonzero_coords(points):
    return tuple(sorted({i for p in points for i, x in enumerate(p) if x}))


def _dominated_filter(points):
    """Drop points that dominate another point coordinatewise."""
    pts = sorted(set(points), key=sum)
    keep = []
    for p in pts:
        if not any(all(a >= b for a, b in zip(p, q)) for q in keep):
            keep.append(p)
    return keep


def compact_facets(points, dim):
    """Compact facets of ``conv(points) + R_{>=0}^dim``.

    Returns ``{normal: minimizing points}`` with primitive positive integer
    normals.  Candidate normals come from affinely independent ``dim``-subsets
    of the non-dominated points.
    """
    pts = _dominated_filter(points)
    if dim == 1:
        return {(1,): [min(pts)]} if pts else {}
    out = {}
    for combo in itertools.combinations(pts, dim):
        base = combo[0]
        diffs = [[a - b for a, b in zip(p, base)] for p in combo[1:]]
        normal = linalg.int_cofactor_normal(diffs)
        if not any(normal):
            continue
        if normal[0] < 0 or (normal[0] == 0 and any(x < 0 for x in normal)):
            normal = [-x for x in normal]
        if any(x <= 0 for x in normal):
            continue
        normal = tuple(linalg.primitive(normal))
        if normal in out:
            continue
        level = sum(a * b for a, b in zip(normal, base))
        values = [sum(a * b for a, b in zip(normal, p)) for p in pts]
        if min(values) < level:
            continue
        out[normal] = [p for p, val in zip(pts, values) if val == level]
    return out


def _restrict(points, coords):
    """Points supported in ``coords``, projected to those coordinates."""
    cs = set(coords)
    return [
        tuple(p[i] for i in coords)
        for p in points
        if all(x == 0 or i in cs for i, x in enumerate(p))
    ]


def _embed(normal, coords, dim):
    entries = [INF] * dim
    for i, x in zip(coords, normal):
        entries[i] = x
    return WeightVector(tuple(entries))


def coordinate_facet_normals(points, dim):
    """Primitive normals of all coordinate facets of the diagram of ``points``."""
    normals = []
    for size in range(1, dim + 1):
        for coords in itertools.combinations(range(dim), size):
            restricted = _restrict(points, coords)
            if not restricted:
                continue
            for normal in compact_facets(restricted, size):
                normals.append(_embed(normal, coords, dim))
    return normals


# -- the diagram -------------------------------------------------------------


class NewtonDiagram:
    """The Newton diagram of a support set, with its compact face lattice."""

    def __init__(self, support):
        pts = sorted({tuple(int(x) for x in p) for p in support})
        if not pts:
            raise DiagramError("empty support")
        dim = len(pts[0])
        if dim == 0 or any(len(p) != dim for p in pts):
            raise DiagramError("support points must share one positive dimension")
        if any(x < 0 for p in pts for x in p):
            raise DiagramError("exponents must be nonnegative")
        if any(not any(p) for p in pts):
            raise DiagramError("the series must vanish at the origin")
        self.support = tuple(pts)
        self.dim = dim
        self.n = dim - 1

    def __repr__(self):
        return f"NewtonDiagram({list(self.support)})"

    # faces

    @cached_property
    def _minimal_support(self):
        return _dominated_filter(self.support)

    def _facets_of_polyhedron(self):
        """Facets of the full polyhedron as (support points on it, ray coords)."""
        facets = []
        for size in range(1, self.dim + 1):
            for coords in itertools.combinations(range(self.dim), size):
                proj = [tuple(p[i] for i in coords) for p in self._minimal_support]
                rays = frozenset(range(self.dim)) - set(coords)
                for normal in compact_facets(proj, size):
                    w = [0] * self.dim
                    for i, x in zip(coords, normal):
                        w[i] = x
                    values = [sum(a * b for a, b in zip(w, p)) for p in self.support]
                    low = min(values)
                    on = frozenset(p for p, val in zip(self.support, values) if val == low)
                    facets.append((on, rays))
        return facets

    @cached_property
    def faces(self):
        """All compact faces, ordered by dimension, coordinates and vertices."""
        facets = self._facets_of_polyhedron()
        seen = set(facets)
        frontier = list(seen)
        while frontier:
            new = []
            for a in frontier:
                for b in facets:
                    c = (a[0] & b[0], a[1] & b[1])
                    if c[0] and c not in seen:
                        seen.add(c)
                        new.append(c)
            frontier = new
        compact = {pts for pts, rays in seen if not rays}
        faces = [self._make_face(pts) for pts in compact]
        return sorted(faces, key=lambda f: (-f.dim, f.coords, f.vertices))

    def _make_face(self, pts):
        pts = sorted(pts)
        hull = lattice.convex_hull(pts)
        vertices = tuple(sorted(tuple(int(x) for x in v) for v in hull.vertices))
        coords = _nonzero_coords(vertices)
        face = Face(vertices, coords, hull.dim, points=tuple(pts))
        if face.is_coordinate_facet:
            normal = self._facet_normal(vertices, coords)
            face = Face(
                vertices,
                coords,
                hull.dim,
                normal=normal,
                m=wedge(self.support, normal),
                n=wedge_linear(normal),
                points=tuple(pts),
            )
        return face

    def _facet_normal(self, vertices, coords):
        local = [tuple(v[i] for i in coords) for v in vertices]
        if len(coords) == 1:
            return _embed((1,), coords, self.dim)
        base = local[0]
        # pick an affinely independent subset spanning the facet
        chosen = [base]
        for p in local[1:]:
            trial = chosen + [p]
            if linalg.rank([[a - b for a, b in zip(q, base)] for q in trial[1:]]) == len(trial) - 1:
                chosen = trial
            if len(chosen) == len(coords):
                break
        diffs = [[a - b for a, b in zip(q, base)] for q in chosen[1:]]
        normal = linalg.int_cofactor_normal(diffs)
        if normal[0] < 0:
            normal = [-x for x in normal]
        return _embed(tuple(linalg.primitive(normal)), coords, self.dim)

    @cached_property
    def coordinate_facets(self):
        return [f for f in self.faces if f.is_coordinate_facet]

    def faces_in(self, coords):
        """Compact faces lying in the coordinate subspace ``R^coords``."""
        cs = set(coords)
        return [f for f in self.faces if set(f.coords) <= cs]

    def face_of(self, v):
        """The face ``K_f(v)``, or None when ``wedge(v) = INF``."""
        low = wedge(self.support, v)
        if is_inf(low):
            return None
        pts = frozenset(u for u in self.support if v(u) == low)
        return self._make_face(pts)

    @cached_property
    def is_convenient(self):
        return all(
            any(p[i] > 0 and sum(p) == p[i] for p in self.support) for i in range(self.dim)
        )

    @cached_property
    def multiplicity(self):
        return min(sum(p) for p in self.support)

    # maximal axial numbers

    def axial(self, v):
        """``M(v)`` for a weight vector or coordinate facet."""
        if isinstance(v, Face):
            return v.axial
        low = wedge(self.support, v)
        if is_inf(low):
            raise DiagramError(f"wedge of {v} is infinite")
        return Fraction(low, wedge_linear(v))

    def maximal_axial_diagram(self):
        if not self.coordinate_facets:
            raise DiagramError("the diagram has no coordinate facet")
        return max(f.axial for f in self.coordinate_facets)

    def min_axial(self, face):
        """Minimum of ``M`` over weight vectors whose face contains ``face``.

        For each coordinate ``i`` solve the exact LP
        ``min v(u0)`` over ``v`` in the closed normal cone with
        ``v_j >= v_i = 1``; finite weights suffice because infinite ones are
        limits of large finite ones.
        """
        return self._min_axial_cache(face.vertices)

    def _min_axial_cache(self, vertices):
        cache = self.__dict__.setdefault("_min_axial", {})
        if vertices not in cache:
            cache[vertices] = _closed_cone_min_axial(self._minimal_support, vertices, self.dim)
        return cache[vertices]

    def s_alpha(self, alpha):
        """Faces whose union is ``s_alpha``: those with ``min_axial <= alpha``."""
        alpha = Fraction(alpha)
        return [f for f in self.faces if self.min_axial(f) <= alpha]


def _closed_cone_min_axial(support, vertices, dim):
    u0 = vertices[0]
    A_ub, b_ub = [], []
    for u in support:
        d = [a - b for a, b in zip(u, u0)]
        if any(d):
            A_ub.append([-x for x in d])
            b_ub.append(sum(d))
    A_eq, b_eq = [], []
    for w in vertices[1:]:
        d = [a - b for a, b in zip(w, u0)]
        A_eq.append(d)
        b_eq.append(-sum(d))
    best = None
    for i in range(dim):
        pin = [int(j == i) for j in range(dim)]
        res = lp.minimize(list(u0), A_ub, b_ub, A_eq + [pin], b_eq + [0])
        if res is None:
            continue
        value = res.value + sum(u0)
        if best is None or value < best:
            best = value
    if best is None:
        raise DiagramError(f"{vertices} is not a compact face")
    return best


# -- Newton numbers ----------------------------------------------------------


@dataclass(frozen=True)
class Pyramid:
    """``conv({0} ∪ base)`` as a full-dimensional body in ``R^coords``."""

    base: tuple
    coords: tuple

    @property
    def dim(self):
        return len(self.coords)

    def lattice_distance(self):
        """Value of the primitive normal of the base on the base."""
        local = [tuple(p[i] for i in self.coords) for p in self.base]
        if len(self.coords) == 1:
            return local[0][0]
        base = local[0]
        chosen = [base]
        for p in local[1:]:
            trial = chosen + [p]
            if linalg.rank([[a - b for a, b in zip(q, base)] for q in trial[1:]]) == len(trial) - 1:
                chosen = trial
        diffs = [[a - b for a, b in zip(q, base)] for q in chosen[1:]]
        normal = linalg.primitive(linalg.int_cofactor_normal(diffs))
        return abs(sum(a * b for a, b in zip(normal, base)))

    def normalized_volume(self):
        """``|J|! Vol_|J|``, via ``m * s! Vol_s(base)``."""
        s = self.dim - 1
        return self.lattice_distance() * factorial(s) * lattice.normalized_volume(self.base)


@dataclass(frozen=True)
class GammaMinusRegion:
    """Union of segments from the origin to a union of faces."""

    pyramids: tuple
    has_origin: bool


def gamma_minus_region(faces):
    """Pyramid decomposition of ``S_-`` for the union ``S`` of ``faces``.

    Only full-dimensional pyramids ``conv(0, K ∩ R^J)`` are kept; everything
    else has measure zero in every coordinate subspace.
    """
    found = {}
    for face in faces:
        for size in range(1, len(face.coords) + 1):
            for coords in itertools.combinations(face.coords, size):
                cs = set(coords)
                base = tuple(v for v in face.vertices if all(x == 0 or i in cs for i, x in enumerate(v)))
                if not base or lattice.affine_dim(base) != size - 1:
                    continue
                found.setdefault(frozenset(base), Pyramid(base, coords))
    pyramids = tuple(sorted(found.values(), key=lambda p: (-p.dim, p.coords, p.base)))
    return GammaMinusRegion(pyramids, bool(faces))


def newton_number_unsigned(region):
    """``sum_J |J|! Vol_|J|(S ∩ R^J)``, the ``J = ∅`` term being 1 if ``0 ∈ S``."""
    total = Fraction(int(region.has_origin))
    for p in region.pyramids:
        total += p.normalized_volume()
    return total


def newton_number_signed(region, n):
    """Alternating version ``sum_J (-1)^(n+1-|J|) |J|! Vol_|J|(S ∩ R^J)``."""
    total = Fraction((-1) ** (n + 1) * int(region.has_origin))
    for p in region.pyramids:
        total += (-1) ** (n + 1 - p.dim) * p.normalized_volume()
    return total


def milnor_number_kouchnirenko(diagram):
    if not diagram.is_convenient:
        raise DiagramError("the Milnor number formula needs a convenient diagram")
    return int(newton_number_signed(gamma_minus_region(diagram.faces), diagram.n))


def newton_number_threshold(diagram, signed=False):
    """Least ``alpha`` with ``nu(s_alpha(Gamma)_-) = nu(Gamma_-)``.

    ``signed`` selects the alternating (Kouchnirenko) Newton number instead
    of the plain sum of volumes.
    """
    if signed:
        def nu(region):
            return newton_number_signed(region, diagram.n)
    else:
        nu = newton_number_unsigned
    full = nu(gamma_minus_region(diagram.faces))
    for alpha in sorted({diagram.min_axial(f) for f in diagram.faces}):
        if nu(gamma_minus_region(diagram.s_alpha(alpha))) == full:
            return alpha
    raise DiagramError("unreachable: s_alpha exhausts the diagram")
