"""Acceptance criteria, one PASS/FAIL line per criterion.

Every comparison is exact.  Run with ``pytest tests/test_acceptance.py -v``;
the summary lines are printed even when output capture is on.
"""

import itertools
import json
import random
import time
from fractions import Fraction
from math import factorial

import pytest

from conftest import (
    COUNTER,
    E8,
    TWOSIMP,
    TWOSIMP_LEFT,
    TWOSIMP_RIGHT,
    A,
    B,
    C,
    D,
    fukui,
    random_convenient_support,
    random_coordinate_simplex,
)
from jacnewton import lattice, linalg
from jacnewton.jacobian import aj, aj_mixed, aj_volume, jacobian_polygon, lojasiewicz
from jacnewton.kn import KNElement, Slope
from jacnewton.newton import (
    NewtonDiagram,
    Pyramid,
    gamma_minus_region,
    newton_number_signed,
    newton_number_threshold,
)
from jacnewton.triangulate import (
    Simplex,
    Triangulation,
    aj_via_cap,
    bko_report,
    cap,
    conjecture_reports,
    default_triangulation,
    f_ne,
    t_ne,
)

G = KNElement.generator
RANDOM_DIAGRAMS = 210
RANDOM_POLYTOPES = 120
RANDOM_SIMPLICES = 120


@pytest.fixture
def record(capsys):
    def emit(criterion, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        return ok

    return emit


# -- 1. E8 -------------------------------------------------------------------


def test_criterion_1_e8(record):
    start = time.perf_counter()
    diagram = NewtonDiagram(E8)
    poly = aj(diagram)
    loj = lojasiewicz(diagram)
    verts = poly.virtual_vertices()
    mixed = json.dumps(aj_mixed(diagram, 2).to_records())
    volume = json.dumps(aj_volume(diagram).to_records())
    elapsed = time.perf_counter() - start
    ok = (
        poly == G(5).scale(2) - G(3) + G(2)
        and loj.value == 4
        and verts == [(0, 2), (2, 1), (-1, 2), (9, 0)]
        and all(h >= 0 for _, h in verts)
        and mixed == volume
        and elapsed < 1
    )
    assert record("1 E8 golden", ok, f"AJ = {poly}, L = {loj.value}, {elapsed:.2f} s")


# -- 2. Fukui ----------------------------------------------------------------


def test_criterion_2_fukui(record):
    start = time.perf_counter()
    expected = {
        0: {
            3: G(Fraction(455, 47)).scale(8),
            2: G(8) + G(9).scale(40) + G(Fraction(28, 3)).scale(2),
            1: G(8).scale(2) + G(9).scale(4),
        },
        1: {
            3: G(Fraction(28, 3)).scale(57) + G(Fraction(455, 47)).scale(4),
            2: G(8).scale(4) + G(9).scale(29) + G(Fraction(28, 3)).scale(4),
            1: G(8).scale(4) + G(9).scale(2),
        },
    }
    bad = []
    for delta, levels in expected.items():
        diagram = NewtonDiagram(fukui(delta))
        for d, value in levels.items():
            got = aj(diagram, d)
            if got != value:
                bad.append(f"f{delta} AJ^({d + 1}) = {got}")
        L = lojasiewicz(diagram).value
        if L != Fraction(408, 47):
            bad.append(f"f{delta} L = {L}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    assert record("2 Fukui golden", ok, "; ".join(bad) or f"L = 408/47 for both, {elapsed:.2f} s")


# -- 3. the counterexample ---------------------------------------------------


def test_criterion_3_counterexample(record):
    start = time.perf_counter()
    diagram = NewtonDiagram(COUNTER)
    top = {F.normal.entries: F.axial for F in diagram.coordinate_facets if F.dim == diagram.n}
    poly = aj(diagram)
    loj = lojasiewicz(diagram)
    report = bko_report(diagram, loj)
    elapsed = time.perf_counter() - start
    ok = (
        top == {(1, 1, 1, 1): 2, (2, 2, 1, 1): 3}
        and poly == 0
        and loj.value == 1
        and loj.morse_exception
        and report.predicted == 2
        and report.match is False
        and elapsed < 10
    )
    detail = f"BKO predicts {report.predicted}, L = {loj.value}, {elapsed:.2f} s"
    assert record("3 counterexample", ok, detail)


# -- 4. twosimp --------------------------------------------------------------


def test_criterion_4_twosimp(record):
    start = time.perf_counter()
    diagram = NewtonDiagram(TWOSIMP)
    left = Triangulation.from_cells(diagram, [Simplex(c) for c in TWOSIMP_LEFT])
    right = Triangulation.from_cells(diagram, [Simplex(c) for c in TWOSIMP_RIGHT])
    all_facets = {F.vertices for F in diagram.coordinate_facets}
    checks = [
        t_ne(left) == [Simplex((A, C, D))],
        {F.vertices for F in f_ne(left)} == {tuple(sorted((A, B, C, D)))},
        t_ne(right) == [Simplex((B,))],
        {F.vertices for F in f_ne(right)} == all_facets and len(all_facets) == 4,
        aj_via_cap(left) == aj_via_cap(right) == G(2),
    ]
    values = []
    for T in (left, right):
        report = conjecture_reports(diagram, T)
        values += [report.value_cells, report.value_facets]
        checks.append(report.loj.value == 1)
    checks.append(values == [1, 1, 1, 1])
    elapsed = time.perf_counter() - start
    ok = all(checks) and elapsed < 1
    assert record("4 twosimp", ok, f"Conjecture A values {', '.join(map(str, values))}, {elapsed:.2f} s")


# -- 5. randomized properties ------------------------------------------------


class Sample:
    """Everything criterion 5 needs about one random diagram."""

    def __init__(self, support):
        self.support = support
        self.diagram = NewtonDiagram(support)
        n = self.diagram.n
        self.aj = aj(self.diagram)
        self.jac = [jacobian_polygon(self.diagram, d) for d in range(n + 1)]
        self.loj = lojasiewicz(self.diagram)
        self.mu = newton_number_signed(gamma_minus_region(self.diagram.faces), n)
        self.cap = aj_via_cap(default_triangulation(self.diagram))
        self.threshold = newton_number_threshold(self.diagram)
        self.threshold_signed = newton_number_threshold(self.diagram, signed=True)


@pytest.fixture(scope="module")
def samples():
    rng = random.Random(20240601)
    start = time.perf_counter()
    out = []
    for i in range(RANDOM_DIAGRAMS):
        dim = 2 + i % 3
        out.append(Sample(random_convenient_support(rng, dim)))
    return out, time.perf_counter() - start


def failures(samples, predicate):
    return [s.support for s in samples if not predicate(s)]


def describe(bad, total):
    shown = "; ".join(str(s) for s in bad[:3])
    return f"{total - len(bad)}/{total} diagrams" + (f", e.g. {shown}" if bad else "")


def test_criterion_5a_length(samples, record):
    data, _ = samples
    bad = failures(data, lambda s: s.aj.length() == s.mu + (-1) ** s.diagram.n)
    assert record("5a length of AJ = signed Newton number + (-1)^n", not bad, describe(bad, len(data)))


def test_criterion_5b_cap_formula(samples, record):
    data, _ = samples
    bad = failures(data, lambda s: s.cap == s.aj)
    assert record("5b aj_via_cap(default triangulation) = aj", not bad, describe(bad, len(data)))


def test_criterion_5c_effective(samples, record):
    data, _ = samples

    def effective(s):
        return all(
            all(c >= 0 for _, c in J.items()) and all(a >= Slope.of(2) for a in J.support())
            for J in s.jac
        )

    bad = failures(data, effective)
    assert record("5c J coefficients >= 0 with slopes >= 2", not bad, describe(bad, len(data)))


def truncations_ok(poly):
    if not poly:
        return True
    deg = poly.degree().as_fraction()
    for alpha in sorted(poly.support()) + [Slope.of(deg + 1)]:
        T = poly.truncate_geq(alpha)
        h, ell = T.height(), T.length()
        if h < 0 or ell < 0 or (ell == 0) != (alpha > poly.degree()):
            return False
    return True


def test_criterion_5d_truncations(samples, record):
    data, _ = samples
    bad = failures(data, lambda s: truncations_ok(s.aj))
    assert record("5d truncations of AJ have h >= 0, l >= 0, l = 0 iff alpha > deg", not bad, describe(bad, len(data)))


def test_criterion_5e_degrees(samples, record):
    data, _ = samples
    # AJ vanishes exactly in the odd-dimensional Morse case, where it has no degree
    live = [s for s in data if s.aj]
    bad = failures(live, lambda s: s.aj.degree() == s.jac[-1].degree())
    skipped = len(data) - len(live)
    assert record("5e deg AJ = deg J", not bad, describe(bad, len(live)) + f", {skipped} with AJ = 0 skipped")


def test_criterion_5f_unsigned_threshold(samples, record):
    data, elapsed = samples
    bad = failures(data, lambda s: s.threshold - 1 == s.loj.value)
    counter = NewtonDiagram([(7, 0), (0, 6), (4, 1)])
    detail = describe(bad, len(data)) + (
        f"; x^7 + y^6 + x^4 y has threshold {newton_number_threshold(counter)} but L = {lojasiewicz(counter).value}"
    )
    record("5 runtime under 5 minutes", elapsed < 300, f"{elapsed:.1f} s for {len(data)} diagrams")
    assert record("5f unsigned Newton number threshold - 1 = L", not bad, detail)


def test_criterion_5f_signed_threshold(samples, record):
    data, _ = samples
    bad = failures(data, lambda s: s.threshold_signed - 1 == s.loj.value)
    assert record("5f' signed Newton number threshold - 1 = L", not bad, describe(bad, len(data)))


# -- 6. geometry oracles -----------------------------------------------------


def polytope(rng, dim):
    return [tuple(rng.randint(0, 3) for _ in range(dim)) for _ in range(rng.randint(1, 5))]


def minkowski_points(*bodies):
    return [tuple(map(sum, zip(*choice))) for choice in itertools.product(*bodies)]


def polarization(bodies, s):
    """Mixed volume from volumes of all partial Minkowski sums."""
    total = Fraction(0)
    for size in range(1, s + 1):
        for subset in itertools.combinations(bodies, size):
            total += (-1) ** (s - size) * lattice.volume_in_dim(minkowski_points(*subset), s)
    return total / factorial(s)


def test_criterion_6a_mixed_volumes(record):
    rng = random.Random(6)
    start = time.perf_counter()
    bad = []
    for i in range(RANDOM_POLYTOPES):
        s = 1 + i % 3
        bodies = [polytope(rng, s) for _ in range(s)]
        V = lattice.mixed_volume([(K, 1) for K in bodies], s)
        if V != polarization(bodies, s):
            bad.append(f"inclusion-exclusion {bodies}")
        if any(lattice.mixed_volume([(K, 1) for K in perm], s) != V for perm in itertools.permutations(bodies)):
            bad.append(f"symmetry {bodies}")
        K = bodies[0]
        if lattice.mixed_volume([(K, s)], s) != lattice.volume_in_dim(K, s):
            bad.append(f"diagonal {K}")
        extra = polytope(rng, s)
        split = lattice.mixed_volume([(extra, 1)] + [(L, 1) for L in bodies[1:]], s)
        joined = lattice.mixed_volume([(minkowski_points(K, extra), 1)] + [(L, 1) for L in bodies[1:]], s)
        if joined != V + split:
            bad.append(f"additivity {bodies} + {extra}")
        c = rng.randint(2, 3)
        scaled = [tuple(c * x for x in p) for p in K]
        if lattice.mixed_volume([(scaled, 1)] + [(L, 1) for L in bodies[1:]], s) != c * V:
            bad.append(f"homogeneity {bodies}")
        vectors = [tuple(rng.randint(-3, 3) for _ in range(s)) for _ in range(s)]
        segments = [[(0,) * s, v] for v in vectors]
        if lattice.mixed_volume([(seg, 1) for seg in segments], s) != Fraction(abs(linalg.det(vectors)), factorial(s)):
            bad.append(f"determinant {vectors}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    detail = "; ".join(bad[:3]) or f"{RANDOM_POLYTOPES} random families in dimension 1-3, {elapsed:.1f} s"
    assert record("6a mixed volume oracles", ok, detail)


def test_criterion_6b_cap_pyramid(record):
    rng = random.Random(66)
    start = time.perf_counter()
    bad = []
    for _ in range(RANDOM_SIMPLICES):
        S = random_coordinate_simplex(rng)
        s = S.dim
        m = Pyramid(S.vertices, S.coords).lattice_distance()
        lhs = m * factorial(s) * lattice.normalized_volume(S.vertices)
        rhs = cap(None) + sum(cap(T) for T in S.faces())
        det = abs(linalg.int_det([[v[i] for i in S.coords] for v in S.vertices]))
        if not lhs == rhs == det:
            bad.append(f"{S}: {lhs} vs {rhs} vs {det}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    detail = "; ".join(bad[:3]) or f"{RANDOM_SIMPLICES} random coordinate simplices, {elapsed:.1f} s"
    assert record("6b Cap pyramid identity", ok, detail)
