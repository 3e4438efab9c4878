"""Triangulations of Newton diagrams and the polygons built from them.

A triangulation is stored with all of its faces.  The empty simplex is never
stored; functions that accept it take ``None``.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import lattice, linalg, lp
from .jacobian import lojasiewicz
from .kn import KNElement, Slope
from .newton import DiagramError


class TriangulationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Simplex:
    """A lattice simplex given by its (sorted) vertices."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(sorted({tuple(int(x) for x in v) for v in self.vertices}))
        object.__setattr__(self, "vertices", verts)

    @property
    def dim(self):
        return len(self.vertices) - 1

    @property
    def coords(self):
        """Coordinates that are nonzero on the relative interior."""
        return tuple(sorted({i for v in self.vertices for i, x in enumerate(v) if x}))

    @property
    def is_coordinate(self):
        return self.dim == len(self.coords) - 1

    def faces(self):
        """All nonempty faces, the simplex itself included."""
        for k in range(1, len(self.vertices) + 1):
            for sub in itertools.combinations(self.vertices, k):
                yield Simplex(sub)

    def issubset(self, other):
        return set(self.vertices) <= set(other.vertices)

    def to_json(self):
        return [list(v) for v in self.vertices]

    def __str__(self):
        return "conv{" + ", ".join("(" + ",".join(map(str, v)) + ")" for v in self.vertices) + "}"


def cap(simplex):
    """Lattice points ``sum l_i v_i`` with every ``0 < l_i < 1``; 1 for ``None``.

    Counted by walking the finite group of coset representatives of the
    vertex lattice inside the saturated lattice of the linear span.
    """
    if simplex is None:
        return 1
    verts = [list(v) for v in simplex.vertices]
    N = len(verts[0])
    basis = linalg.saturate(verts, N)
    if len(basis) != len(verts):
        raise ValueError(f"{simplex} has linearly dependent vertices")
    cols = [[b[i] for b in basis] for i in range(N)]
    M = [linalg.solve(cols, v) for v in verts]
    gens = [tuple(x % 1 for x in row) for row in linalg.inverse(M)]
    zero = tuple(Fraction(0) for _ in verts)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for lam in frontier:
            for g in gens:
                mu = tuple((a + b) % 1 for a, b in zip(lam, g))
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        frontier = nxt
    return sum(1 for lam in seen if all(lam))


def cap_bounding_box(simplex):
    """Reference count of :func:`cap` by scanning the integer bounding box."""
    if simplex is None:
        return 1
    verts = simplex.vertices
    N = len(verts[0])
    cols = [[v[i] for v in verts] for i in range(N)]
    upper = [sum(max(v[i], 0) for v in verts) for i in range(N)]
    lower = [sum(min(v[i], 0) for v in verts) for i in range(N)]

    def inside(p):
        lam = linalg.solve(cols, list(p))
        return lam is not None and all(0 < x < 1 for x in lam)

    return len(lattice.lattice_points_in(inside, lower, upper))


def _in_hull(point, vertices):
    if point in vertices:
        return True
    A = [[v[i] for v in vertices] for i in range(len(point))] + [[1] * len(vertices)]
    b = list(point) + [1]
    return lp.minimize([0] * len(vertices), A_eq=A, b_eq=b) is not None


def _improper_pair(P, Q):
    """True when ``conv P`` and ``conv Q`` meet outside their common face."""
    for i in range(len(P.vertices[0])):
        if max(v[i] for v in P.vertices) < min(v[i] for v in Q.vertices):
            return False
        if max(v[i] for v in Q.vertices) < min(v[i] for v in P.vertices):
            return False
    shared = set(P.vertices) & set(Q.vertices)
    if shared == set(P.vertices) or shared == set(Q.vertices):
        return False
    k, l = len(P.vertices), len(Q.vertices)
    N = len(P.vertices[0])
    A = [[p[i] for p in P.vertices] + [-q[i] for q in Q.vertices] for i in range(N)]
    A.append([1] * k + [0] * l)
    A.append([0] * k + [1] * l)
    b = [0] * N + [1, 1]
    c = [-int(p not in shared) for p in P.vertices] + [-int(q not in shared) for q in Q.vertices]
    res = lp.minimize(c, A_eq=A, b_eq=b)
    return res is not None and res.value < 0


@dataclass
class Validation:
    ok: bool
    problem: str = ""
    cells: tuple = ()

    def __bool__(self):
        return self.ok


def _membership(diagram, points):
    """Map each point to the indices of the compact faces containing it."""
    diagram_vertices = {v for f in diagram.faces for v in f.vertices}
    out = {}
    for p in points:
        found = set()
        for idx, face in enumerate(diagram.faces):
            if p in face.vertices:
                found.add(idx)
            elif p in diagram_vertices:
                continue
            elif set(i for i, x in enumerate(p) if x) <= set(face.coords) and _in_hull(p, face.vertices):
                found.add(idx)
        out[p] = found
    return out


def _maximal_faces(diagram):
    faces = diagram.faces
    return [
        f for f in faces
        if not any(g is not f and g.dim > f.dim and set(f.vertices) <= set(g.vertices) for g in faces)
    ]


def validate(cells, diagram):
    """Check that ``cells`` (with their faces) triangulate the diagram."""
    simplices = []
    for c in cells:
        S = c if isinstance(c, Simplex) else Simplex(tuple(c))
        if len(S.vertices) != len(c.vertices if isinstance(c, Simplex) else c):
            return Validation(False, "repeated vertex", (S,))
        if any(len(v) != diagram.dim for v in S.vertices):
            return Validation(False, "vertex of the wrong dimension", (S,))
        if lattice.affine_dim(S.vertices) != S.dim:
            return Validation(False, "vertices are affinely dependent", (S,))
        simplices.append(S)
    if not simplices:
        return Validation(False, "no cells")
    closed = {F for S in simplices for F in S.faces()}
    maximal = sorted(S for S in closed if not any(S != T and S.issubset(T) for T in closed))
    points = sorted({v for S in maximal for v in S.vertices})
    member = _membership(diagram, points)
    for p in points:
        if not member[p]:
            return Validation(False, f"vertex {p} is not on the diagram")
    home = {}
    for S in maximal:
        common = set.intersection(*(member[v] for v in S.vertices))
        if not common:
            return Validation(False, "cell does not lie in a face of the diagram", (S,))
        home[S] = common
    for P, Q in itertools.combinations(maximal, 2):
        if _improper_pair(P, Q):
            return Validation(False, "cells meet outside a common face", (P, Q))
    faces = diagram.faces
    for face in _maximal_faces(diagram):
        idx = faces.index(face)
        inside = [S for S in maximal if idx in home[S] and S.dim == face.dim]
        covered = sum((lattice.normalized_volume(S.vertices) for S in inside), Fraction(0))
        if covered != lattice.normalized_volume(face.vertices):
            return Validation(False, f"cells do not cover the face {list(face.vertices)}")
    return Validation(True, cells=tuple(sorted(closed, key=lambda S: (S.dim, S.vertices))))


@dataclass
class Triangulation:
    """A validated triangulation of a Newton diagram, with all faces."""

    diagram: object
    cells: tuple
    coordinate: dict = field(default_factory=dict)

    @classmethod
    def from_cells(cls, diagram, cells):
        check = validate(cells, diagram)
        if not check:
            detail = "; ".join(str(S) for S in check.cells)
            raise TriangulationError(check.problem + (f": {detail}" if detail else ""))
        coordinate = {}
        for S in check.cells:
            if not S.is_coordinate:
                continue
            F = next(
                (
                    F for F in diagram.coordinate_facets
                    if F.coords == S.coords and all(F.normal(v) == F.m for v in S.vertices)
                ),
                None,
            )
            if F is None:
                raise TriangulationError(f"no coordinate facet contains {S}")
            coordinate[S] = (F.m, F.n)
        return cls(diagram, check.cells, coordinate)

    @property
    def maximal(self):
        return [S for S in self.cells if not any(S != T and S.issubset(T) for T in self.cells)]

    def index(self, simplex):
        return self.cells.index(simplex)

    def to_json(self):
        return {"cells": [S.to_json() for S in self.maximal]}

    @classmethod
    def from_json(cls, diagram, data):
        if not isinstance(data, dict) or "cells" not in data:
            raise TriangulationError('a triangulation file needs a "cells" list')
        cells = []
        for cell in data["cells"]:
            if any(isinstance(x, bool) or not isinstance(x, int) for v in cell for x in v):
                raise TriangulationError(f"cell {cell} has a non-integer coordinate")
            cells.append(Simplex(tuple(tuple(v) for v in cell)))
        return cls.from_cells(diagram, cells)


def default_triangulation(diagram):
    """Placing triangulation of every maximal face, vertices in lex order.

    One global insertion order makes the triangulations of two faces agree
    on their common face.
    """
    cells = []
    for face in _maximal_faces(diagram):
        verts = sorted(face.vertices)
        frame = lattice.saturated_frame(verts)
        tri = lattice.PlacingTriangulation([frame.coords(v) for v in verts])
        for simplex in tri.simplices:
            cells.append(Simplex(tuple(verts[i] for i in simplex)))
    return Triangulation.from_cells(diagram, cells)


def cn(T, base=None):
    """The relative combinatorial Newton polygon of ``T`` over ``base``."""
    if base is not None and base not in T.cells:
        raise TriangulationError(f"{base} is not a cell of the triangulation")
    n = T.diagram.n
    total = KNElement()
    for S, (m, nn) in T.coordinate.items():
        if base is not None and not base.issubset(S):
            continue
        coeff = Fraction((-1) ** (n - S.dim), m)
        total = total + KNElement.from_pair(m, nn).scale(coeff)
    return total


def aj_via_cap(T):
    total = cn(T, None).scale(cap(None))
    for S in T.cells:
        c = cap(S)
        if c:
            total = total + cn(T, S).scale(c)
    return total


def t_ne(T):
    """Cells whose ``Cap`` and relative polygon are both nonzero."""
    return [S for S in T.cells if cap(S) and cn(T, S)]


def f_ne(T, cells=None):
    """Coordinate facets certified by some cell of :func:`t_ne`."""
    if cells is None:
        cells = t_ne(T)
    member = _membership(T.diagram, sorted({v for S in cells for v in S.vertices}))
    faces = T.diagram.faces
    out = []
    for F in T.diagram.coordinate_facets:
        idx = faces.index(F)
        for S in cells:
            if all(idx in member[v] for v in S.vertices) and cn(T, S).degree() >= Slope.of(F.axial):
                out.append(F)
                break
    return out


def bko_exceptional(face, n):
    """Whether a facet of dimension ``n`` is exceptional in the BKO sense."""
    if face.dim != n:
        raise DiagramError(f"expected a facet of dimension {n}, got {face.dim}")
    verts = face.vertices
    dim = len(verts[0])
    for j in range(dim):
        off = [v for v in verts if v[j] != 0]
        if len(off) != 1:
            continue
        (u,) = off
        if u[j] != 1:
            continue
        rest = [i for i in range(dim) if i != j and u[i]]
        if len(rest) <= 1:
            return True
    return False


@dataclass
class BkoReport:
    facets: list
    predicted: Fraction
    loj: object

    @property
    def match(self):
        if self.predicted is None:
            return None
        return self.predicted == self.loj.value

    def to_json(self):
        return {
            "facets": [
                {"normal": F.normal.to_json(), "M": str(F.axial), "exceptional": exc}
                for F, exc in self.facets
            ],
            "predicted": None if self.predicted is None else str(self.predicted),
            "actual": str(self.loj.value),
            "morse_exception": self.loj.morse_exception,
            "match": self.match,
        }


def bko_report(diagram, loj=None):
    if loj is None:
        loj = lojasiewicz(diagram)
    facets = [(F, bko_exceptional(F, diagram.n)) for F in diagram.coordinate_facets if F.dim == diagram.n]
    values = [F.axial - 1 for F, exc in facets if not exc]
    return BkoReport(facets, max(values) if values else None, loj)


@dataclass
class ConjectureReport:
    bko: BkoReport
    loj: object
    t_ne: list
    f_ne: list
    value_cells: Fraction
    value_facets: Fraction
    applicable: bool

    @property
    def match(self):
        if self.value_cells is None or self.value_facets is None:
            return None
        return self.value_cells == self.loj.value and self.value_facets == self.loj.value

    def to_json(self):
        def fmt(x):
            return None if x is None else str(x)

        return {
            "loj": fmt(self.loj.value),
            "morse_exception": self.loj.morse_exception,
            "bko": self.bko.to_json(),
            "conjecture_a": {
                "applicable": self.applicable,
                "t_ne": [S.to_json() for S in self.t_ne],
                "f_ne": [F.normal.to_json() for F in self.f_ne],
                "value_cells": fmt(self.value_cells),
                "value_facets": fmt(self.value_facets),
                "match": self.match,
            },
        }


def conjecture_reports(diagram, T=None):
    if T is None:
        T = default_triangulation(diagram)
    loj = lojasiewicz(diagram)
    cells = t_ne(T)
    facets = f_ne(T, cells)
    degs = [cn(T, S).degree().as_fraction() for S in cells]
    value_cells = max(degs) - 1 if degs else None
    value_facets = max(F.axial for F in facets) - 1 if facets else None
    # the conjecture excludes Morse points (L = 1) when n is odd
    applicable = diagram.n % 2 == 0 or loj.value != 1
    return ConjectureReport(bko_report(diagram, loj), loj, cells, facets, value_cells, value_facets, applicable)
