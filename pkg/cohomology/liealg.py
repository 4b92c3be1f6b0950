"""
Exact sl_n: principal triples, regularity, Kostant sections, root data and
the two conjugator solvers.

Matrices are numpy object arrays (see ``linalg``). The solvers only divide by
rational numbers, so they also run with Polynomial entries.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .exceptions import ContextMismatch, InvalidElement, NonRegularError
from .polyalg import PARAM, RationalFunction, RingContext, Variable

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LieElement:
    """A traceless rational n x n matrix."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise InvalidElement("matrix is not square")
        if sum(rows[i][i] for i in range(n)):
            raise InvalidElement("matrix is not traceless")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_matrix(cls, m):
        return cls(tuple(tuple(row) for row in m))

    @classmethod
    def zero(cls, n):
        return cls(((0,) * n,) * n)

    @classmethod
    def unit(cls, n, i, j):
        """E_ij for i != j."""
        if i == j:
            raise InvalidElement("diagonal units are not traceless")
        m = linalg.zeros(n)
        m[i, j] = Fraction(1)
        return cls.from_matrix(m)

    @property
    def n(self):
        return len(self.entries)

    @property
    def matrix(self):
        return linalg.matrix(self.entries)

    def _check(self, other):
        if not isinstance(other, LieElement):
            return False
        if other.n != self.n:
            raise ContextMismatch(f"sl_{self.n} and sl_{other.n} elements do not mix")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return LieElement.from_matrix(self.matrix + other.matrix)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return LieElement.from_matrix(self.matrix - other.matrix)

    def __neg__(self):
        return LieElement.from_matrix(-self.matrix)

    def __rmul__(self, c):
        return LieElement.from_matrix(self.matrix * Fraction(c))

    def is_zero(self):
        return not any(any(row) for row in self.entries)

    def __str__(self):
        return linalg.format_matrix(self.entries)


def bracket(a, b):
    """[a, b] = ab - ba."""
    if a.n != b.n:
        raise ContextMismatch(f"sl_{a.n} and sl_{b.n} elements do not mix")
    A, B = a.matrix, b.matrix
    return LieElement.from_matrix(A @ B - B @ A)


def adjoint_weight(x, h):
    """Eigenvalue of ad_h on x, or ``None`` when x is not a weight vector."""
    hx = bracket(h, x)
    for row_x, row_hx in zip(x.entries, hx.entries):
        for a, b in zip(row_x, row_hx):
            if a:
                lam = b / a
                return lam if hx == lam * x else None
    return None


# ---------------------------------------------------------------------------
# Basis, regularity, centralizers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def sl_basis(n):
    """E_ij (i != j, row-major) followed by H_i = E_ii - E_{i+1,i+1}."""
    basis = [LieElement.unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    for i in range(n - 1):
        m = linalg.zeros(n)
        m[i, i], m[i + 1, i + 1] = Fraction(1), Fraction(-1)
        basis.append(LieElement.from_matrix(m))
    return tuple(basis)


def coordinates(x):
    """Coordinates of x in ``sl_basis``."""
    n = x.n
    coords = [x.entries[i][j] for i in range(n) for j in range(n) if i != j]
    running = Fraction(0)
    for i in range(n - 1):
        running += x.entries[i][i]
        coords.append(running)
    return coords


def ad_matrix(x):
    columns = [coordinates(bracket(x, b)) for b in sl_basis(x.n)]
    return linalg.matrix([list(row) for row in zip(*columns)])


def centralizer(x):
    """Basis of the kernel of ad_x."""
    basis = sl_basis(x.n)
    out = []
    for vec in linalg.nullspace(ad_matrix(x)):
        m = linalg.zeros(x.n)
        for c, b in zip(vec, basis):
            m = m + c * b.matrix
        out.append(LieElement.from_matrix(m))
    return out


def is_regular(x):
    """dim ker(ad_x) == n - 1."""
    dim = x.n * x.n - 1
    return dim - linalg.rank(ad_matrix(x)) == x.n - 1


# ---------------------------------------------------------------------------
# Principal triple
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrincipalTriple:
    n: int
    e: LieElement
    h: LieElement
    f: LieElement


@lru_cache(maxsize=None)
def principal_triple(n):
    """e superdiagonal ones, h = diag(n-1, n-3, ..., 1-n), f_{i+1,i} = i(n-i)."""
    if n < 2:
        raise InvalidElement("sl_n needs n >= 2")
    e, h, f = linalg.zeros(n), linalg.zeros(n), linalg.zeros(n)
    for i in range(n - 1):
        e[i, i + 1] = Fraction(1)
        f[i + 1, i] = Fraction((i + 1) * (n - i - 1))
    for i in range(n):
        h[i, i] = Fraction(n - 1 - 2 * i)
    return PrincipalTriple(n, *(LieElement.from_matrix(m) for m in (e, h, f)))


# ---------------------------------------------------------------------------
# Torus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorusElement:
    """diag(0, v1, ..., v_{n-1}) - (sum v)/n * I; coordinates may be Polynomials."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coords", tuple(Fraction(c) if isinstance(c, int) else c for c in self.coords)
        )

    @property
    def n(self):
        return len(self.coords) + 1

    @classmethod
    def from_diagonal(cls, diag):
        return cls(tuple(d - diag[0] for d in diag[1:]))

    @classmethod
    def symbolic(cls, ctx, names):
        return cls(tuple(ctx.var(name) for name in names))

    def diagonal(self):
        shift = sum(self.coords, Fraction(0)) / self.n
        return (-shift,) + tuple(v - shift for v in self.coords)

    def matrix(self):
        return linalg.diagonal(self.diagonal())

    def lie(self):
        return LieElement.from_matrix(self.matrix())

    def vanishing_root(self):
        """First (i, j) with d_i == d_j, or ``None`` if regular."""
        d = self.diagonal()
        for i, j in itertools.combinations(range(self.n), 2):
            if d[i] == d[j]:
                return i, j
        return None

    def is_regular(self):
        return self.vanishing_root() is None

    def evaluate(self, values):
        return TorusElement(tuple(c.evaluate(values) if hasattr(c, "evaluate") else c for c in self.coords))


def torus_context(n, prefix="v"):
    return RingContext(tuple(Variable(f"{prefix}{i}", 2, PARAM) for i in range(1, n)))


def weyl_orbit(w):
    """All diagonal permutations of w, deduplicated, in v-coordinates."""
    seen = {}
    for perm in itertools.permutations(w.diagonal()):
        image = TorusElement.from_diagonal(perm)
        seen.setdefault(image.coords, image)
    return list(seen.values())


# ---------------------------------------------------------------------------
# Root data (type A)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootData:
    n: int

    @property
    def rank(self):
        return self.n - 1

    def simple_root(self, i, w):
        """alpha_i(w) = d_i - d_{i+1} (1-based)."""
        self._check(i)
        d = w.diagonal()
        return d[i - 1] - d[i]

    def coroot(self, i):
        self._check(i)
        m = linalg.zeros(self.n)
        m[i - 1, i - 1], m[i, i] = Fraction(1), Fraction(-1)
        return LieElement.from_matrix(m)

    def cartan(self, j, k):
        """b_jk = alpha_j(h_k)."""
        h = self.coroot(k).entries
        self._check(j)
        return int(h[j - 1][j - 1] - h[j][j])

    def cartan_matrix(self):
        return [[self.cartan(j, k) for k in range(1, self.n)] for j in range(1, self.n)]

    def _check(self, i):
        if not 1 <= i <= self.rank:
            raise InvalidElement(f"simple root index {i} outside 1..{self.rank}")


# ---------------------------------------------------------------------------
# Kostant section
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KostantSection:
    """S = e + span(basis); basis[k] multiplies c_{k+2} and has ad_h-weight -2(k+1)."""

    n: int
    basis: tuple
    params: tuple
    weights: tuple

    def point(self, values):
        """e + sum c_k b_k for rational or Polynomial values."""
        m = principal_triple(self.n).e.matrix
        for c, b in zip(values, self.basis):
            m = m + c * b.matrix
        return m

    def coordinates(self, m):
        """Section coordinates read off the last row."""
        n = self.n
        return [m[n - 1, n - 1 - k] for k in range(1, n)]

    def contains(self, m):
        return linalg.is_zero(m - self.point(self.coordinates(m)))


@lru_cache(maxsize=None)
def kostant_section(n):
    """Kernel of ad_f split by subdiagonal, lowest-row entry normalized to 1."""
    f = principal_triple(n).f
    basis = []
    for k in range(1, n):
        positions = [(i + k, i) for i in range(n - k)]
        targets = [(i + k + 1, i) for i in range(n - k - 1)]
        if targets:
            columns = []
            for p, q in positions:
                image = bracket(f, LieElement.unit(n, p, q)).entries
                columns.append([image[r][c] for r, c in targets])
            system = linalg.matrix([list(row) for row in zip(*columns)])
            (vec,) = linalg.nullspace(system)
        else:
            vec = [Fraction(1)]
        vec = [x / vec[-1] for x in vec]
        m = linalg.zeros(n)
        for (p, q), x in zip(positions, vec):
            m[p, q] = x
        basis.append(LieElement.from_matrix(m))
    params = tuple(f"c{k}" for k in range(2, n + 1))
    return KostantSection(n, tuple(basis), params, tuple(2 * k for k in range(2, n + 1)))


# ---------------------------------------------------------------------------
# Conjugators
# ---------------------------------------------------------------------------

def solve_unipotent_conjugator(w):
    """Upper unitriangular M with M w M^-1 = e + w.

    Superdiagonal by superdiagonal: M_ij (d_j - d_i) = M_{i+1,j}.
    """
    root = w.vanishing_root()
    if root is not None:
        i, j = root
        raise NonRegularError(f"d{j + 1} - d{i + 1}")
    d = w.diagonal()
    n = w.n
    M = linalg.identity(n)
    for k in range(1, n):
        for i in range(n - k):
            j = i + k
            M[i, j] = M[i + 1, j] / (d[j] - d[i])
    return M


def unipotent_conjugator_symbolic(n, ctx=None):
    """Closed form M_ij = 1 / prod_{k=i}^{j-1} (d_j - d_k) over Q(v)."""
    ctx = ctx or torus_context(n)
    d = TorusElement.symbolic(ctx, ctx.names).diagonal()
    M = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            if j < i:
                M[i, j] = RationalFunction(ctx.zero(), ctx.one())
                continue
            den = ctx.one()
            for k in range(i, j):
                den = den * (d[j] - d[k])
            M[i, j] = RationalFunction(ctx.one(), den)
    return M


@dataclass(frozen=True, eq=False)
class KostantConjugator:
    """A lower unitriangular with A (e + w) A^-1 = chi, chi in S."""

    A: np.ndarray
    chi: np.ndarray
    coords: tuple


def solve_kostant_conjugator(w):
    """Solve A (e + w) = chi A degree by degree in ad_h-weight.

    With A = I + a_1 + a_2 + ... (a_k on the k-th subdiagonal) and
    chi = e + s_1 + s_2 + ... (s_k = c_{k+1} b_{k+1}), level k reads
    [e, a_{k+1}] + s_k = a_k w - sum_{0<i<k} s_i a_{k-i}, with [e, a_1] = w
    at level 0. Each level is a square system with a constant matrix.
    """
    n = w.n
    e = principal_triple(n).e
    section = kostant_section(n)
    W = w.matrix()
    a = [linalg.identity(n)] + [linalg.zeros(n) for _ in range(n)]
    s = [None] + [linalg.zeros(n) for _ in range(n - 1)]
    coords = []
    for k in range(n):
        rows = [(i + k, i) for i in range(n - k)]
        unknowns = [(i + k + 1, i) for i in range(n - k - 1)]
        columns = []
        for p, q in unknowns:
            image = bracket(e, LieElement.unit(n, p, q)).entries
            columns.append([image[r][c] for r, c in rows])
        if k:
            b = section.basis[k - 1].entries
            columns.append([b[r][c] for r, c in rows])
            rhs = a[k] @ W
            for i in range(1, k):
                rhs = rhs - s[i] @ a[k - i]
        else:
            rhs = W
        system = linalg.matrix([list(row) for row in zip(*columns)])
        solution = linalg.solve(system, [rhs[r, c] for r, c in rows])
        for (p, q), x in zip(unknowns, solution):
            a[k + 1][p, q] = x
        if k:
            c = solution[-1]
            coords.append(c)
            s[k] = c * section.basis[k - 1].matrix
    A = sum(a[1:], a[0])
    chi = sum(s[1:], e.matrix)
    logger.debug("kostant conjugator for sl_%d: chi coordinates %s", n, coords)
    return KostantConjugator(A, chi, tuple(coords))


def chi_symbolic(n, ctx=None):
    """Kostant coordinates c_k(v) as Polynomials in the torus parameters."""
    ctx = ctx or torus_context(n)
    return solve_kostant_conjugator(TorusElement.symbolic(ctx, ctx.names)).coords
