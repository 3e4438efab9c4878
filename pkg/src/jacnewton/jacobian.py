"""Jacobian and alternating Jacobian polygons of Newton nondegenerate series.

Everything here is combinatorial: the polygons are read off the Newton
diagram via lattice volumes and mixed volumes.  Newton nondegeneracy and
isolatedness of the singularity are assumed, never checked.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import lattice
from .kn import KNElement, Slope
from .newton import (
    Face,
    WeightVector,
    coordinate_facet_normals,
    milnor_number_kouchnirenko,
    wedge,
    wedge_linear,
)


def _check_level(diagram, d):
    if not 0 <= d <= diagram.n:
        raise ValueError(f"level d={d} outside 0..{diagram.n}")


def _faces_for(diagram, v):
    coords = v.finite_coords
    low = wedge(diagram.support, v)
    kf = [u for u in diagram.support if v(u) == low]
    kf = [tuple(x) for x in lattice.convex_hull(kf).vertices]
    top = min(v.entries[i] for i in coords)
    kg = [tuple(int(i == j) for j in range(diagram.dim)) for i in coords if v.entries[i] == top]
    return kf, kg


def w_mixed(diagram, v, d):
    """The mixed-volume weight ``W^(d+1)(v)`` attached to a primitive vector."""
    _check_level(diagram, d)
    if not isinstance(v, WeightVector):
        v = WeightVector(tuple(v))
    return _w_cached(diagram, v, d)


def _w_cached(diagram, v, d):
    cache = diagram.__dict__.setdefault("_w_cache", {})
    key = (v, d)
    if key not in cache:
        cache[key] = _w(diagram, v, d)
    return cache[key]


def _w(diagram, v, d):
    s = diagram.n - len(v.sedentarity)
    c = diagram.n - d
    kf, kg = _faces_for(diagram, v)
    if c == 0:
        return factorial(s) * lattice.volume_in_dim(kf, s)
    total = Fraction(0)
    for k in range(c, s + 1):
        bodies = [(kf, s - k), (kg, k)]
        total += comb(k - 1, c - 1) * factorial(s) * lattice.mixed_volume(bodies, s)
    return total


def _sum_normals(diagram):
    """Normals of the coordinate facets of the diagram of ``f * g``."""
    cache = diagram.__dict__
    if "_fg_normals" not in cache:
        basis = [tuple(int(i == j) for j in range(diagram.dim)) for i in range(diagram.dim)]
        pts = {tuple(a + b for a, b in zip(u, e)) for u in diagram.support for e in basis}
        normals = coordinate_facet_normals(sorted(pts), diagram.dim)
        cache["_fg_normals"] = sorted(set(normals), key=WeightVector.sort_key)
    return cache["_fg_normals"]


def aj_mixed(diagram, d):
    """``AJ^(d+1)`` as a sum over the normals of the diagram of ``f g``."""
    _check_level(diagram, d)
    total = KNElement()
    n = diagram.n
    for v in _sum_normals(diagram):
        w = _w_cached(diagram, v, d)
        if not w:
            continue
        if w.denominator != 1:
            raise ArithmeticError(f"non-integral weight {w} at {v}")
        s = n - len(v.sedentarity)
        m, nv = wedge(diagram.support, v), wedge_linear(v)
        total = total + KNElement.from_pair(m, nv).scale((-1) ** (n - s) * w)
    return total


def aj_volume(diagram):
    """``AJ = AJ^(n+1)`` as a sum over the coordinate facets of the diagram."""
    total = KNElement()
    n = diagram.n
    for F in diagram.coordinate_facets:
        s = F.dim
        weight = factorial(s) * lattice.normalized_volume(F.vertices)
        total = total + KNElement.from_pair(F.m, F.n).scale((-1) ** (n - s) * weight)
    return total


def aj(diagram, d=None, method="mixed"):
    """The alternating Jacobian polygon ``AJ^(d+1)``; ``d`` defaults to ``n``.

    ``method="volume"`` is only available at the top level and uses the facet
    volumes directly; the default sums mixed-volume weights over the normals
    of the diagram of ``f`` times a generic linear form.
    """
    if d is None:
        d = diagram.n
    _check_level(diagram, d)
    if method == "volume":
        if d != diagram.n:
            raise ValueError("the volume formula only gives the top level")
        return aj_volume(diagram)
    if method != "mixed":
        raise ValueError(f"unknown method {method!r}")
    return aj_mixed(diagram, d)


def jacobian_polygon(diagram, d=None):
    """``J^(d+1) = AJ^(d+1) + AJ^(d)`` with ``AJ^(0) = 0``."""
    if d is None:
        d = diagram.n
    _check_level(diagram, d)
    if d == 0:
        return aj(diagram, 0)
    return aj(diagram, d) + aj(diagram, d - 1)


@dataclass(frozen=True)
class LojResult:
    value: Fraction
    morse_exception: bool
    witness_facet: Face = None

    def to_json(self):
        out = {"loj": str(self.value), "morse_exception": self.morse_exception}
        if self.witness_facet is not None:
            out["witness_facet"] = self.witness_facet.to_json()
        return out


def lojasiewicz(diagram):
    """Łojasiewicz exponent: ``deg AJ - 1``, or 1 in the odd Morse case."""
    top = aj_volume(diagram)
    if not top:
        return LojResult(Fraction(1), True)
    deg = top.degree()
    witness = next(
        (F for F in diagram.coordinate_facets if Slope.of(F.axial) == deg), None
    )
    return LojResult(deg.as_fraction() - 1, False, witness)


# -- consistency report ------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class PropertyReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "ok": self.ok,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def _breakpoints(*elements):
    pts = set()
    for A in elements:
        pts |= A.support()
    return sorted(pts)


def property_report(diagram):
    """Check the inequalities a nondegenerate isolated singularity must satisfy.

    A failure on an input asserted to be nondegenerate points at a bad input
    or a bug.
    """
    rep = PropertyReport()
    n = diagram.n
    levels = [aj(diagram, d) for d in range(n + 1)]
    jac = [jacobian_polygon(diagram, d) for d in range(n + 1)]
    top_vol = aj_volume(diagram)
    rep.add("volume and mixed formulas agree", top_vol == levels[n], f"{top_vol} vs {levels[n]}")

    A = levels[n]
    if A:
        heights = [h for _, h in A.virtual_vertices()]
        rep.add(
            "virtual vertices in upper half plane",
            all(h >= 0 for h in heights),
            ",".join(str(h) for h in heights),
        )
        low = [str(a) for a in A.support() if A.truncate_geq(a).height() < 0]
        rep.add("truncations of AJ have height >= 0", not low, ",".join(low))
    if diagram.is_convenient:
        mu = milnor_number_kouchnirenko(diagram)
        rep.add("length of AJ = Milnor number + (-1)^n", A.length() == mu + (-1) ** n, f"{A.length()} vs {mu}")
    for d in range(1, n + 1):
        h, ell = jac[d].height(), levels[d - 1].length()
        rep.add(
            f"height of J^({d + 1}) matches length of AJ^({d})",
            h == ell - (-1) ** (d - 1),
            f"{h} vs {ell}",
        )
    for d in range(n + 1):
        J = jac[d]
        rep.add(
            f"J^({d + 1}) effective with slopes >= 2",
            all(a > 0 for _, a in J.items()) and all(b >= 2 for b in J.support()),
            str(J),
        )
        ad = levels[d]
        if not ad:
            continue
        degJ = J.degree()
        bad = []
        for alpha in _breakpoints(ad, J) + [None]:
            if alpha is None:
                ell = Fraction(0)
                above = True
            else:
                ell = ad.truncate_geq(alpha).length()
                above = alpha > degJ
            if ell < 0 or (ell == 0) != above:
                bad.append(str(alpha))
        rep.add(f"length of truncations of AJ^({d + 1})", not bad, ",".join(bad))
        rep.add(f"lc AJ^({d + 1}) > 0", ad.leading_coeff() > 0, str(ad.leading_coeff()))
        rep.add(f"deg AJ^({d + 1}) = deg J^({d + 1})", ad.degree() == degJ, f"{ad.degree()} vs {degJ}")
        if d >= 1 and levels[d - 1]:
            rep.add(
                f"deg J^({d + 1}) >= deg J^({d})",
                degJ >= jac[d - 1].degree(),
                f"{degJ} vs {jac[d - 1].degree()}",
            )
    for d in range(1, n + 1):
        upper, lower = jac[d], jac[d - 1]
        bad = []
        for alpha in _breakpoints(upper, lower):
            up, lo = upper.truncate_geq(alpha), lower.truncate_geq(alpha)
            if up.height() < lo.length() - lo.height():
                bad.append(f"hlh@{alpha}")
            a = alpha.as_fraction()
            lhs, rhs = up.length(), (a - 1) * lo.length()
            strict = alpha < upper.degree()
            if lhs < rhs or (strict and lhs == rhs):
                bad.append(f"mono@{alpha}")
        rep.add(f"level inequalities J^({d + 1}) vs J^({d})", not bad, ",".join(bad))
    return rep
