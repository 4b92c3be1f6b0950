"""
Flag-type varieties, their open cell around o and the vector fields of the
infinitesimal sl_n action on it.

A chart is the set of lower block-unitriangular matrices L for the block
sizes of the flag; the coordinates are the strictly-lower-block entries,
row-major. Projective spaces and Grassmannians are the one- and two-block
cases and also have closed forms. Bott-Samelson varieties only carry the
root-data field of ``bs_vector_field``.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .exceptions import (
    ContextMismatch,
    InvalidElement,
    NotDiagonalLinear,
    NotInCell,
    SingularSystem,
    UnsupportedFamily,
)
from .families import lift
from .liealg import RootData, principal_triple
from .polyalg import CELL, RingContext, Variable

logger = logging.getLogger(__name__)

PROJECTIVE = "pn"
GRASSMANNIAN = "gr"
FLAG = "flag"
BOTT_SAMELSON = "bs"


@dataclass(frozen=True)
class ChartDescriptor:
    """``n`` is the size of the acting matrices; ``dims`` the flag dimensions."""

    kind: str
    n: int
    dims: tuple = ()
    word: tuple = ()

    # -- constructors -----------------------------------------------------

    @classmethod
    def projective(cls, n):
        if n < 1:
            raise ValueError("projective space needs n >= 1")
        return cls(PROJECTIVE, n + 1, (1,))

    @classmethod
    def grassmannian(cls, k, n):
        if not 0 < k < n:
            raise ValueError(f"Gr({k},{n}) needs 0 < k < n")
        return cls(GRASSMANNIAN, n, (k,))

    @classmethod
    def full_flag(cls, n):
        if n < 2:
            raise ValueError("a flag variety needs n >= 2")
        return cls(FLAG, n, tuple(range(1, n)))

    @classmethod
    def flag(cls, dims, n):
        dims = tuple(dims)
        if not dims or list(dims) != sorted(set(dims)) or dims[0] < 1 or dims[-1] >= n:
            raise ValueError(f"flag dimensions {list(dims)} must increase strictly inside 1..{n - 1}")
        return cls(FLAG, n, dims)

    @classmethod
    def bott_samelson(cls, word, n):
        word = tuple(word)
        if n < 2 or not word or any(not 1 <= i < n for i in word):
            raise ValueError(f"word {list(word)} needs simple root indices inside 1..{n - 1}")
        return cls(BOTT_SAMELSON, n, (), word)

    @classmethod
    def parse(cls, text):
        from .parsing import parse_chart

        return parse_chart(text)

    def __str__(self):
        if self.kind == PROJECTIVE:
            return f"pn:{self.n - 1}"
        if self.kind == GRASSMANNIAN:
            return f"gr:{self.dims[0]},{self.n}"
        if self.kind == BOTT_SAMELSON:
            return f"bs:{','.join(map(str, self.word))}@sl{self.n}"
        if self.is_full_flag:
            return f"flag:{self.n}"
        return f"flag:{','.join(map(str, self.dims))}@{self.n}"

    # -- geometry ---------------------------------------------------------

    @property
    def is_full_flag(self):
        return self.kind == FLAG and self.dims == tuple(range(1, self.n))

    @property
    def blocks(self):
        bounds = (0,) + self.dims + (self.n,)
        return tuple(b - a for a, b in zip(bounds, bounds[1:]))

    def block_of(self, i):
        bounds = self.dims + (self.n,)
        return next(b for b, top in enumerate(bounds) if i < top)

    @property
    def positions(self):
        """Matrix positions of the cell coordinates, row-major."""
        if self.kind == BOTT_SAMELSON:
            return ()
        return tuple(
            (r, c) for r in range(self.n) for c in range(self.n)
            if self.block_of(r) > self.block_of(c)
        )

    @property
    def cell_coords(self):
        if self.kind == BOTT_SAMELSON:
            return tuple(f"x{j}" for j in range(1, len(self.word) + 1))
        if self.kind == PROJECTIVE:
            return tuple(f"x{r}" for r, _ in self.positions)
        if self.kind == GRASSMANNIAN:
            k = self.dims[0]
            if k <= 3:
                return tuple(f"{'xyz'[c]}{r - k + 1}" for r, c in self.positions)
            return tuple(f"x{r - k + 1}_{c + 1}" for r, c in self.positions)
        if self.is_full_flag and self.n == 3:
            return ("a", "b", "c")
        return tuple(f"z{r + 1}_{c + 1}" for r, c in self.positions)

    @property
    def dimension(self):
        return len(self.cell_coords)


# ---------------------------------------------------------------------------
# Contexts and fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VectorField:
    chart: ChartDescriptor
    ctx: RingContext
    components: tuple

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def at(self, values):
        """Components evaluated at a full assignment."""
        return [c.evaluate(values) for c in self.components]


def cell_context(chart, weights=None):
    weights = weights or bb_weights(chart)
    return RingContext(tuple(Variable(name, w, CELL) for name, w in zip(chart.cell_coords, weights)))


def chart_context(chart, family):
    """Cell coordinates (weights a_i) followed by the family parameters."""
    if family.n != chart.n:
        raise ContextMismatch(f"{chart} needs sl_{chart.n}, {family} acts through sl_{family.n}")
    return RingContext(cell_context(chart).variables + family.param_variables())


def chart_matrix(chart, ctx):
    """The lower block-unitriangular L of the cell, entries in ``ctx``."""
    L = lift(linalg.identity(chart.n), ctx)
    for (r, c), name in zip(chart.positions, chart.cell_coords):
        L[r, c] = ctx.var(name)
    return L


def _neumann_inverse(L, ctx):
    n = L.shape[0]
    N = L - lift(linalg.identity(n), ctx)
    inv = lift(linalg.identity(n), ctx)
    power = inv
    for _ in range(n - 1):
        power = -(power @ N)
        inv = inv + power
    return inv


def flag_field(chart, A, ctx):
    """L * strictly-lower-block part of L^-1 A L."""
    L = chart_matrix(chart, ctx)
    conj = _neumann_inverse(L, ctx) @ A @ L
    lower = lift(linalg.zeros(chart.n), ctx)
    for r, c in chart.positions:
        lower[r, c] = conj[r, c]
    V = L @ lower
    return [V[r, c] for r, c in chart.positions]


def projective_field(chart, A, ctx):
    """(Az)_i - x_i (Az)_0 at z = (1, x)."""
    z = [ctx.one()] + [ctx.var(name) for name in chart.cell_coords]
    Az = A @ np.array(z, dtype=object)
    return [Az[i] - z[i] * Az[0] for i in range(1, chart.n)]


def grassmannian_field(chart, A, ctx):
    """Riccati form A21 + A22 X - X A11 - X A12 X."""
    k = chart.dims[0]
    X = chart_matrix(chart, ctx)[k:, :k]
    A11, A12, A21, A22 = A[:k, :k], A[:k, k:], A[k:, :k], A[k:, k:]
    V = A21 + A22 @ X - X @ A11 - X @ A12 @ X
    return [V[r - k, c] for r, c in chart.positions]


def field_of(chart, A, ctx):
    """Components of V_A on the cell for a matrix A with entries in ``ctx``."""
    if chart.kind == BOTT_SAMELSON:
        raise UnsupportedFamily("Bott-Samelson fields come from root data, not matrices")
    if A.shape != (chart.n, chart.n):
        raise ContextMismatch(f"{chart} needs {chart.n} x {chart.n} matrices, got {A.shape}")
    A = lift(A, ctx)
    if chart.kind == PROJECTIVE:
        return projective_field(chart, A, ctx)
    if chart.kind == GRASSMANNIAN:
        return grassmannian_field(chart, A, ctx)
    return flag_field(chart, A, ctx)


def bs_vector_field(word, rootdata, w, ctx):
    """Component j: -sum_{k<j} b_jk x_k x_j - alpha_{i_j}(w) x_j - x_j^2."""
    for i in word:
        if not 1 <= i <= rootdata.rank:
            raise InvalidElement(f"simple root index {i} outside 1..{rootdata.rank}")
    x = [ctx.var(f"x{j}") for j in range(1, len(word) + 1)]
    components = []
    for j, ij in enumerate(word):
        comp = -rootdata.simple_root(ij, w) * x[j] - x[j] * x[j]
        for k in range(j):
            comp = comp - rootdata.cartan(ij, word[k]) * x[k] * x[j]
        components.append(comp)
    return components


def vector_field(chart, family, ctx=None):
    ctx = ctx or chart_context(chart, family)
    if chart.kind == BOTT_SAMELSON:
        if not family.is_torus:
            raise UnsupportedFamily(f"Bott-Samelson fields need an e + t family, not {family}")
        components = bs_vector_field(chart.word, RootData(chart.n), family.torus(ctx), ctx)
    else:
        if family.n != chart.n:
            raise ContextMismatch(f"{chart} needs sl_{chart.n}, {family} acts through sl_{family.n}")
        components = field_of(chart, family.matrix(ctx), ctx)
    return VectorField(chart, ctx, tuple(components))


def bb_weights(chart, h=None):
    """a_i = -(coefficient of x_i in component i of V_h)."""
    if chart.kind == BOTT_SAMELSON:
        return (2,) * len(chart.word)
    h = h or principal_triple(chart.n).h
    ctx = RingContext(tuple(Variable(name, 2, CELL) for name in chart.cell_coords))
    weights = []
    for name, comp in zip(chart.cell_coords, field_of(chart, h.matrix, ctx)):
        x = ctx.var(name)
        coeff = comp.coefficient(next(iter(x.terms)))
        if comp != x * coeff:
            raise NotDiagonalLinear(f"component {comp} for {name} is not a multiple of {name}")
        a = -coeff
        if a <= 0 or a.denominator != 1 or a.numerator % 2:
            raise NotDiagonalLinear(f"weight {a} of {name} is not a positive even integer")
        weights.append(int(a))
    return tuple(weights)


# ---------------------------------------------------------------------------
# Fixed points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FixedPoint:
    """Torus-fixed point: a coordinate flag, or a 0/1 word for Bott-Samelson."""

    label: str
    permutation: tuple

    @property
    def inversions(self):
        p = self.permutation
        return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])


def _ordered_partitions(items, sizes):
    if not sizes:
        yield ()
        return
    for first in itertools.combinations(items, sizes[0]):
        rest = [i for i in items if i not in first]
        for tail in _ordered_partitions(rest, sizes[1:]):
            yield (first,) + tail


def fixed_points(chart):
    if chart.kind == BOTT_SAMELSON:
        words = itertools.product((0, 1), repeat=len(chart.word))
        return [FixedPoint(f"ζ{i}", tuple(e)) for i, e in enumerate(words)]
    out = []
    for i, blocks in enumerate(_ordered_partitions(list(range(chart.n)), chart.blocks)):
        perm = tuple(x for block in blocks for x in sorted(block))
        out.append(FixedPoint(f"ζ{i}", perm))
    return out


def betti(chart):
    """Poincare polynomial coefficients by t-degree."""
    out = [0] * (2 * chart.dimension + 1)
    for p in fixed_points(chart):
        length = sum(p.permutation) if chart.kind == BOTT_SAMELSON else p.inversions
        out[2 * length] += 1
    return out


def euler_characteristic(chart):
    return len(fixed_points(chart))


def permutation_matrix(perm):
    """P with P e_j = e_perm(j)."""
    P = linalg.zeros(len(perm))
    for j, i in enumerate(perm):
        P[i, j] = Fraction(1)
    return P


def block_lu_coordinates(chart, G):
    """Cell coordinates of the flag spanned by the columns of G.

    Raises ``NotInCell`` when a pivot block is singular.
    """
    G = G.copy()
    L = linalg.identity(chart.n)
    start = 0
    for size in chart.blocks:
        rows = slice(start, start + size)
        below = slice(start + size, chart.n)
        try:
            pivot_inv = linalg.inverse(G[rows, rows])
        except SingularSystem:
            raise NotInCell(f"flag leaves the cell of {chart} at block {start}") from None
        L[below, rows] = G[below, rows] @ pivot_inv
        G[below, :] = G[below, :] - L[below, rows] @ G[rows, :]
        start += size
    return {name: L[r, c] for (r, c), name in zip(chart.positions, chart.cell_coords)}
