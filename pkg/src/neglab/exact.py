"""Exact linear algebra over Z and Q.

Everything here works on lists of lists of ``int`` or ``Fraction`` and never
touches floating point.  Integer matrices go through Bareiss' fraction-free
elimination; rational systems are solved with ordinary Gaussian elimination
over ``Fraction``.
"""

from fractions import Fraction
from math import lcm


def _copy(matrix):
    return [list(row) for row in matrix]


def _integral_rows(matrix):
    """Scale each row of a rational matrix to integers (rank preserving)."""
    out = []
    for row in matrix:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def is_square(matrix):
    n = len(matrix)
    return all(len(row) == n for row in matrix)


def is_symmetric(matrix):
    n = len(matrix)
    if not is_square(matrix):
        return False
    return all(matrix[i][j] == matrix[j][i] for i in range(n) for j in range(i + 1, n))


def determinant(matrix):
    """Determinant of a square integer or rational matrix."""
    n = len(matrix)
    if n == 0:
        return 1
    if not is_square(matrix):
        raise ValueError("determinant of a non-square matrix")
    if any(isinstance(x, Fraction) and x.denominator != 1 for row in matrix for x in row):
        scale = 1
        rows = []
        for row in matrix:
            den = 1
            for x in row:
                den = lcm(den, Fraction(x).denominator)
            scale *= den
            rows.append([int(Fraction(x) * den) for x in row])
        return Fraction(_bareiss_det(rows), scale)
    return _bareiss_det([[int(x) for x in row] for row in matrix])


def _bareiss_det(a):
    n = len(a)
    a = _copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def leading_minors(matrix):
    """Leading principal minors of an integer matrix, in order.

    One Bareiss pass without row exchanges: after step k the pivot equals the
    (k+1)-th leading minor.  If a minor vanishes the pass cannot continue, so
    the returned list stops at (and includes) the first zero.
    """
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return minors


def rank(matrix):
    """Rank over Q, by fraction-free elimination."""
    if not matrix or not matrix[0]:
        return 0
    a = _integral_rows(matrix)
    rows, cols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pivot = a[r][c]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[i][j] * pivot - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = pivot
        r += 1
        if r == rows:
            break
    return r


def solve(matrix, rhs):
    """Solve the square system ``matrix @ x = rhs`` exactly.

    Raises ``ZeroDivisionError`` when the matrix is singular.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c] * inv
                for j in range(c, n + 1):
                    a[i][j] -= f * a[c][j]
    return [a[i][n] / a[i][i] for i in range(n)]
