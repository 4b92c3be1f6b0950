"""
Exact matrices over Q, held as numpy object arrays of Fractions.

Entries may also be Polynomials where only ring operations are needed
(products, sums, solving against a constant system matrix).
"""

from fractions import Fraction

import numpy as np

from .exceptions import SingularSystem
from .polyalg import format_rational


def matrix(rows):
    """Object array with ints promoted to Fractions."""
    rows = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in rows]
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def zeros(rows, cols=None):
    out = np.empty((rows, rows if cols is None else cols), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n):
    out = zeros(n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def diagonal(values):
    out = zeros(len(values))
    for i, x in enumerate(values):
        out[i, i] = x
    return out


def vector(values):
    out = np.empty(len(values), dtype=object)
    for i, x in enumerate(values):
        out[i] = Fraction(x) if isinstance(x, int) else x
    return out


def is_zero(m):
    return all(x == 0 for x in np.ravel(m))


def equal(a, b):
    return a.shape == b.shape and is_zero(a - b)


def format_matrix(m):
    """Row-major nested list of canonical rationals."""
    def entry(x):
        return format_rational(x) if isinstance(x, (int, Fraction)) else str(x)

    return "[" + ", ".join("[" + ", ".join(entry(x) for x in row) + "]" for row in m) + "]"


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------

def row_echelon(m, t=None):
    """Reduced row echelon form of a Fraction matrix.

    Row operations are mirrored on ``t`` when given. Returns
    ``(reduced, pivot_columns, t)``.
    """
    m = matrix(m) if not isinstance(m, np.ndarray) else m.copy()
    t = None if t is None else t.copy()
    n_rows, n_cols = m.shape
    pivots = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if m[i_row, piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            m[[piv_r, i_row]] = m[[i_row, piv_r]]
            if t is not None:
                t[[piv_r, i_row]] = t[[i_row, piv_r]]
        fp = m[piv_r, piv_c]
        m[piv_r] = m[piv_r] / fp
        if t is not None:
            t[piv_r] = t[piv_r] / fp
        for r in range(n_rows):
            fr = m[r, piv_c]
            if r == piv_r or fr == 0:
                continue
            m[r] = m[r] - fr * m[piv_r]
            if t is not None:
                t[r] = t[r] - fr * t[piv_r]
        pivots.append(piv_c)
        piv_r += 1
    return m, pivots, t


def rank(m):
    if np.size(m) == 0:
        return 0
    return len(row_echelon(m)[1])


def nullspace(m, n_cols=None):
    """Basis of the kernel, one Fraction vector per free column."""
    m = matrix(m) if not isinstance(m, np.ndarray) else m
    if m.shape[0] == 0:
        return [vector([Fraction(int(i == j)) for i in range(n_cols)]) for j in range(n_cols)]
    reduced, pivots, _ = row_echelon(m)
    n_cols = reduced.shape[1]
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        sol = [Fraction(0)] * n_cols
        sol[free] = Fraction(1)
        for r, piv_c in enumerate(pivots):
            sol[piv_c] = -reduced[r, free]
        basis.append(vector(sol))
    return basis


def solve(a, b):
    """Unique solution of ``a @ x = b`` for a Fraction matrix ``a``.

    ``b`` may hold Polynomials; only the elimination matrix is rational.
    """
    a = matrix(a) if not isinstance(a, np.ndarray) else a
    n_rows, n_cols = a.shape
    reduced, pivots, t = row_echelon(a, identity(n_rows))
    if len(pivots) != n_cols:
        raise SingularSystem(f"system of rank {len(pivots)} in {n_cols} unknowns")
    y = t @ vector(list(b))
    for r in range(len(pivots), n_rows):
        if y[r] != 0:
            raise SingularSystem(f"inconsistent equation {r}: {y[r]} = 0")
    x = [None] * n_cols
    for r, piv_c in enumerate(pivots):
        x[piv_c] = y[r]
    return x


def inverse(a):
    a = matrix(a) if not isinstance(a, np.ndarray) else a
    n = a.shape[0]
    reduced, pivots, t = row_echelon(a, identity(n))
    if len(pivots) != n:
        raise SingularSystem("matrix is not invertible")
    return t
