"""A small exact linear programming solver.

Two-phase tableau simplex over Fractions with Bland's anticycling rule.  The
problems solved in this package have at most a few dozen constraints in at
most six variables, so a dense tableau is fine.
"""

from dataclasses import dataclass
from fractions import Fraction


class Unbounded(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple


def _pivot(T, basis, r, c):
    piv = T[r][c]
    T[r] = [a / piv for a in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, T[r])]
    basis[r] = c


def _run(T, basis, cost, allowed):
    """Minimize ``cost`` over the tableau ``T`` (last column = rhs)."""
    m = len(T)
    while True:
        # reduced costs: c_j - c_B B^-1 A_j
        entering = None
        for j in allowed:
            if j in basis:
                continue
            red = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m))
            if red < 0:
                entering = j
                break
        if entering is None:
            return
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise Unbounded("objective is unbounded below")
        _pivot(T, basis, best[1], entering)


def minimize(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()):
    """Minimize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    Returns an :class:`LPResult`, or None when the problem is infeasible.
    Raises :class:`Unbounded` when the minimum is ``-inf``.
    """
    n = len(c)
    rows = []
    n_slack = len(A_ub)
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(int(i == k)) for i in range(n_slack)]
        rows.append(([Fraction(x) for x in a] + slack, Fraction(b)))
    for a, b in zip(A_eq, b_eq):
        rows.append(([Fraction(x) for x in a] + [Fraction(0)] * n_slack, Fraction(b)))
    nv = n + n_slack
    if not rows:
        if any(Fraction(x) < 0 for x in c):
            raise Unbounded("objective is unbounded below")
        return LPResult(Fraction(0), tuple(Fraction(0) for _ in range(n)))
    m = len(rows)
    T = []
    for i, (a, b) in enumerate(rows):
        if b < 0:
            a, b = [-x for x in a], -b
        art = [Fraction(int(i == k)) for k in range(m)]
        T.append(a + art + [b])
    basis = [nv + i for i in range(m)]
    total = nv + m
    phase1 = [Fraction(0)] * nv + [Fraction(1)] * m
    _run(T, basis, phase1, range(total))
    if sum(T[i][-1] for i in range(m) if basis[i] >= nv) != 0:
        return None
    # drive remaining (zero-valued) artificials out of the basis
    for i in range(m):
        if basis[i] >= nv:
            j = next((j for j in range(nv) if T[i][j] != 0 and j not in basis), None)
            if j is not None:
                _pivot(T, basis, i, j)
    keep = [i for i in range(m) if basis[i] < nv]
    T = [T[i][:nv] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    cost = [Fraction(x) for x in c] + [Fraction(0)] * n_slack
    _run(T, basis, cost, range(nv))
    x = [Fraction(0)] * nv
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    value = sum(cost[j] * x[j] for j in range(nv))
    return LPResult(value, tuple(x[:n]))
