"""The Grothendieck group of Newton polygons.

An element is a finite combination ``sum a_alpha {alpha}`` of reduced-slope
generators, where ``{m/n} = [m; n]`` is the Newton polygon of ``x^m + y^n``
for coprime ``m, n`` and the two boundary generators are ``{0} = [1; inf]``
and ``{inf} = [inf; 1]``.  Coefficients are Fractions; elements produced from
Newton diagrams have integer coefficients, the combinatorial Newton polygons
of a triangulation have rational ones.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd


@total_ordering
class _ExtInfinity:
    """Signed infinity for extended integers; never a float."""

    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "inf" if self.sign > 0 else "-inf"

    def __eq__(self, other):
        return isinstance(other, _ExtInfinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("ext-inf", self.sign))

    def __lt__(self, other):
        if isinstance(other, _ExtInfinity):
            return self.sign < other.sign
        return self.sign < 0

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __mul__(self, c):
        if isinstance(c, _ExtInfinity):
            return INF if c.sign == self.sign else NEG_INF
        if c > 0:
            return self
        if c < 0:
            return -self
        raise ArithmeticError("0 * infinity is undefined")

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, _ExtInfinity) and other.sign != self.sign:
            raise ArithmeticError("inf - inf is undefined")
        return self

    __radd__ = __add__


INF = _ExtInfinity(1)
NEG_INF = _ExtInfinity(-1)


def is_inf(x):
    return isinstance(x, _ExtInfinity)


@total_ordering
@dataclass(frozen=True)
class Slope:
    """A point of ``Q_{>=0} ∪ {inf}`` stored as a reduced fraction.

    ``inf`` is stored as ``1/0`` and ``0`` as ``0/1``; comparison by
    cross-multiplication then orders all three kinds consistently.
    """

    num: int
    den: int

    def __post_init__(self):
        if self.num < 0 or self.den < 0 or (self.num == 0 and self.den == 0):
            raise ValueError(f"invalid slope {self.num}/{self.den}")
        if gcd(self.num, self.den) != 1:
            raise ValueError(f"slope {self.num}/{self.den} is not reduced")

    @classmethod
    def of(cls, value):
        """Build a slope from an int, Fraction, string or ``INF``."""
        if isinstance(value, Slope):
            return value
        if is_inf(value):
            if value.sign < 0:
                raise ValueError("slopes are nonnegative")
            return cls(1, 0)
        if isinstance(value, str):
            if value.strip() in ("inf", "∞"):
                return cls(1, 0)
            value = Fraction(value.strip())
        q = Fraction(value)
        return cls(q.numerator, q.denominator)

    @property
    def is_infinite(self):
        return self.den == 0

    @property
    def is_zero(self):
        return self.num == 0

    def as_fraction(self):
        if self.is_infinite:
            raise ValueError("infinite slope has no rational value")
        return Fraction(self.num, self.den)

    def __lt__(self, other):
        if other is NEG_INF:
            # the degree of the zero polygon lies below every slope
            return False
        other = Slope.of(other)
        return self.num * other.den < other.num * self.den

    def __str__(self):
        if self.is_infinite:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"Slope({self})"


ZERO_SLOPE = Slope(0, 1)
INF_SLOPE = Slope(1, 0)


def _ext_nat(x):
    if is_inf(x):
        if x.sign < 0:
            raise ValueError("negative infinity is not an extended natural")
        return INF
    if isinstance(x, str) and x.strip() in ("inf", "∞"):
        return INF
    x = Fraction(x)
    if x.denominator != 1 or x < 0:
        raise ValueError(f"{x} is not a nonnegative integer")
    return int(x)


class KNElement:
    """An element of the group of Newton polygons, in canonical form.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for alpha, a in (coeffs or {}).items():
            a = Fraction(a)
            if a != 0:
                alpha = Slope.of(alpha)
                clean[alpha] = clean.get(alpha, Fraction(0)) + a
                if clean[alpha] == 0:
                    del clean[alpha]
        self._coeffs = dict(sorted(clean.items()))

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def generator(cls, alpha):
        return cls({Slope.of(alpha): 1})

    @classmethod
    def from_pair(cls, m, n):
        """The polygon ``[m; n]`` of ``x^m + y^n``, using ``[cm; cn] = c [m; n]``."""
        m, n = _ext_nat(m), _ext_nat(n)
        if is_inf(m) and is_inf(n):
            raise ValueError("[inf; inf] is not a generator")
        if m == 0 or n == 0:
            raise ValueError(f"[{m}; {n}] is not a generator: entries must be positive")
        if is_inf(n):
            return cls({ZERO_SLOPE: m})
        if is_inf(m):
            return cls({INF_SLOPE: n})
        g = gcd(m, n)
        return cls({Slope(m // g, n // g): g})

    # -- group structure --------------------------------------------------

    def items(self):
        return self._coeffs.items()

    def coeff(self, alpha):
        return self._coeffs.get(Slope.of(alpha), Fraction(0))

    def __add__(self, other):
        out = dict(self._coeffs)
        for alpha, a in other._coeffs.items():
            out[alpha] = out.get(alpha, Fraction(0)) + a
        return KNElement(out)

    def __neg__(self):
        return KNElement({alpha: -a for alpha, a in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return KNElement({alpha: c * a for alpha, a in self._coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._coeffs
        return isinstance(other, KNElement) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __bool__(self):
        return bool(self._coeffs)

    # -- invariants -------------------------------------------------------

    def support(self):
        return frozenset(self._coeffs)

    def degree(self):
        """Largest slope in the support; ``NEG_INF`` for the zero element."""
        if not self._coeffs:
            return NEG_INF
        return max(self._coeffs)

    def leading_coeff(self):
        if not self._coeffs:
            raise ValueError("the zero element has no leading coefficient")
        return self._coeffs[self.degree()]

    def truncate_geq(self, alpha):
        alpha = Slope.of(alpha)
        return KNElement({b: a for b, a in self._coeffs.items() if b >= alpha})

    def truncate_lt(self, alpha):
        alpha = Slope.of(alpha)
        return KNElement({b: a for b, a in self._coeffs.items() if b < alpha})

    def _linear(self, infinite_at, finite_part):
        a_inf = self._coeffs.get(infinite_at, 0)
        if a_inf:
            return INF * a_inf
        return sum((finite_part(b) * a for b, a in self._coeffs.items()), Fraction(0))

    def height(self):
        """``h``, extending ``h([m; n]) = n`` linearly."""
        # {alpha} = [num; den] for finite nonzero alpha, {inf} = [inf; 1]
        return self._linear(ZERO_SLOPE, lambda b: b.den if not b.is_infinite else 1)

    def length(self):
        """``l``, extending ``l([m; n]) = m`` linearly."""
        return self._linear(INF_SLOPE, lambda b: b.num if not b.is_zero else 1)

    @property
    def is_integral(self):
        return all(a.denominator == 1 for a in self._coeffs.values())

    def virtual_vertices(self):
        """The points ``(l(A_{<alpha}), h(A_{>=alpha}))`` ordered by increasing alpha."""
        if is_inf(self.height()) or is_inf(self.length()):
            raise ValueError("virtual vertices need finite height and length")
        points = []
        below = KNElement()
        above = self
        points.append((Fraction(0), above.height()))
        for alpha, a in self._coeffs.items():
            term = KNElement({alpha: a})
            below = below + term
            above = above - term
            p = (below.length(), above.height())
            if p != points[-1]:
                points.append(p)
        return points

    def realize_polygon(self):
        """Vertices of the actual Newton polygon of a nonnegative element.

        Computed as the Minkowski sum of the generator polygons, independently
        of :meth:`virtual_vertices`.
        """
        if any(a < 0 for a in self._coeffs.values()):
            raise ValueError("only nonnegative elements are Newton polygons")
        if not self.is_integral:
            raise ValueError("only integral elements are Newton polygons")
        points = [(0, 0)]
        for alpha, a in self._coeffs.items():
            if alpha.is_zero:
                pieces = [(1, 0)]
            elif alpha.is_infinite:
                pieces = [(0, 1)]
            else:
                pieces = [(alpha.num, 0), (0, alpha.den)]
            for _ in range(int(a)):
                points = newton_polygon_vertices(
                    [(p[0] + q[0], p[1] + q[1]) for p in points for q in pieces]
                )
        return [(Fraction(x), Fraction(y)) for x, y in points]

    # -- presentation -----------------------------------------------------

    def to_records(self):
        """Serialize as ``[{"alpha": ..., "coeff": ...}]`` with ascending slopes."""
        return [{"alpha": str(alpha), "coeff": str(a)} for alpha, a in self._coeffs.items()]

    @classmethod
    def from_records(cls, records):
        return cls({Slope.of(r["alpha"]): Fraction(r["coeff"]) for r in records})

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for alpha, a in sorted(self._coeffs.items(), reverse=True):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            c = "" if mag == 1 else f"{mag}"
            parts.append(f"{sign} {c}{{{alpha}}}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"KNElement({self})"


def newton_polygon_vertices(points):
    """Compact vertices of ``conv(points) + R^2_{>=0}``, from the y-axis side.

    Vertices are listed by increasing first coordinate (decreasing second).
    """
    pts = sorted(set(points))
    # keep, for each x, the lowest y, then the staircase of strict minima
    stair = []
    for x, y in pts:
        if stair and stair[-1][0] == x:
            continue
        if not stair or y < stair[-1][1]:
            stair.append((x, y))
    hull = []
    for p in stair:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below segment hull[-2] -> p
            cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull
