"""Exact linear algebra over Q: elimination, solves, nullspaces.

Pivoting is deterministic (first nonzero column, then smallest row index)
so that every run of the package produces identical output.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularSystem

Matrix = list[list[Fraction]]


def _copy(rows: Matrix) -> Matrix:
    return [list(map(Fraction, r)) for r in rows]


def rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.  Returns (matrix, pivot column indices)."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= len(m):
            break
        pivot_row = None
        for r in range(row, len(m)):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        inv = Fraction(1) / m[row][col]
        m[row] = [c * inv for c in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    return m, pivots


def solve_exact(a: Matrix, b: list[Fraction]) -> list[Fraction]:
    """Solve a x = b exactly, any shape.

    Raises SingularSystem when the system is inconsistent or the solution
    is not unique.
    """
    if len(a) != len(b):
        raise ValueError("matrix/vector size mismatch")
    if not a:
        raise SingularSystem("empty system")
    ncols = len(a[0])
    aug = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        raise SingularSystem("inconsistent system")
    if len(pivots) < ncols:
        raise SingularSystem("underdetermined system")
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = red[r][ncols]
    return x


def nullspace(a: Matrix) -> list[list[Fraction]]:
    """Basis of the right nullspace of a, one vector per free column.

    The basis is the standard one read off the RREF: free column j gives
    the vector with 1 in slot j, so output order is deterministic.
    """
    if not a:
        return []
    ncols = len(a[0])
    red, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, col in enumerate(pivots):
            v[col] = -red[r][f]
        basis.append(v)
    return basis


def leading_principal_minors(h: Matrix) -> list[Fraction]:
    """Determinants of the leading principal blocks of a square matrix.

    Uses elimination without pivoting; the k-th pivot is the ratio of
    consecutive minors, valid while the previous minors are nonzero.  If a
    pivot vanishes the corresponding minor is 0 and the list stops there,
    which is all the quasi-definiteness check needs.
    """
    n = len(h)
    m = _copy(h)
    minors: list[Fraction] = []
    prod = Fraction(1)
    for k in range(n):
        pivot = m[k][k]
        if pivot == 0:
            minors.append(Fraction(0))
            return minors
        prod *= pivot
        minors.append(prod)
        for i in range(k + 1, n):
            if m[i][k] != 0:
                factor = m[i][k] / pivot
                row_i, row_k = m[i], m[k]
                for j in range(k, n):
                    row_i[j] -= factor * row_k[j]
    return minors
