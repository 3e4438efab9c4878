"""Exact linear algebra over the integers and the rationals.

Matrices are plain lists of rows.  Nothing here touches floating point.
"""

from fractions import Fraction
from math import gcd


def _frac_rows(M):
    return [[Fraction(x) for x in row] for row in M]


def row_echelon(M):
    """Reduced row echelon form of M over Q.

    Returns ``(R, pivots)`` where ``pivots`` lists the pivot column of each
    nonzero row of ``R``.
    """
    R = _frac_rows(M)
    if not R:
        return R, []
    ncols = len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        R[r] = [x / piv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(M):
    return len(row_echelon(M)[1])


def solve(A, b):
    """Solve ``A x = b`` exactly for a matrix of full column rank.

    The system may be overdetermined.  Returns the unique solution as a list
    of Fractions, or None if the system is inconsistent.
    """
    if not A:
        return []
    k = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = row_echelon(aug)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("matrix does not have full column rank")
    return [R[i][k] for i in range(k)]


def det(M):
    """Determinant of a square matrix (Fractions, Gaussian elimination)."""
    A = _frac_rows(M)
    n = len(A)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        piv = A[c][c]
        result *= piv
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / piv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return result


def hermite_normal_form(M):
    """Row-style Hermite normal form of an integer matrix.

    Returns ``(H, U)`` with ``U`` unimodular and ``U M = H``; ``H`` is in row
    echelon form with positive pivots and entries above each pivot reduced
    modulo it.  Zero rows of ``H`` come last.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [[int(x) for x in row] for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid on column c among rows r.. until a single nonzero entry remains
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def integer_kernel(M, ncols=None):
    """Lattice basis (as rows) of ``{x in Z^N : M x = 0}``."""
    if ncols is None:
        ncols = len(M[0])
    if not M:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    MT = [[M[i][j] for i in range(len(M))] for j in range(ncols)]
    H, U = hermite_normal_form(MT)
    return [U[i] for i in range(ncols) if not any(H[i])]


def primitive(vec):
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        return list(vec)
    return [x // g for x in vec]


def clear_denominators(vec):
    """Smallest positive integer multiple of a rational vector, as ints."""
    den = 1
    for x in vec:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in vec]


def saturate(rows, ncols):
    """Basis of ``span_Q(rows) ∩ Z^N``; rows may be rational."""
    ints = [clear_denominators(r) for r in rows if any(r)]
    if not ints:
        return []
    return integer_kernel(integer_kernel(ints, ncols), ncols)


def cofactor_normal(vectors):
    """Generalized cross product of ``N-1`` vectors in ``Q^N``.

    The result is orthogonal to every input vector and is zero exactly when
    the inputs are linearly dependent.
    """
    N = len(vectors) + 1
    out = []
    for j in range(N):
        minor = [[v[k] for k in range(N) if k != j] for v in vectors]
        d = det(minor) if minor else Fraction(1)
        out.append(d if j % 2 == 0 else -d)
    return out


def int_det(M):
    """Determinant of a square integer matrix by fraction-free elimination."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def int_cofactor_normal(vectors):
    """Integer version of :func:`cofactor_normal`."""
    N = len(vectors) + 1
    out = []
    for j in range(N):
        minor = [[v[k] for k in range(N) if k != j] for v in vectors]
        d = int_det(minor)
        out.append(d if j % 2 == 0 else -d)
    return out


def inverse(M):
    """Inverse of a square rational matrix; raises ValueError when singular."""
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R[:n]]
