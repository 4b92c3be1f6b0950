"""
Affine families e + sum(p * direction) of sl_n elements.

Each direction is an ad_h-weight vector and its parameter carries grading
weight 2 minus that ad_h-weight.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import liealg
from .exceptions import InvalidElement, UnsupportedFamily
from .polyalg import PARAM, Variable

BOREL = "borel"
KOSTANT = "kostant"
PSL2_BOREL = "psl2-borel"
PSL2_KOSTANT = "psl2-kostant"

TORUS_KINDS = (BOREL, PSL2_BOREL)


@dataclass(frozen=True)
class Direction:
    param: str
    weight: int
    element: liealg.LieElement


@dataclass(frozen=True)
class MatrixFamily:
    kind: str
    n: int
    directions: tuple

    def __post_init__(self):
        h = liealg.principal_triple(self.n).h
        for d in self.directions:
            lam = liealg.adjoint_weight(d.element, h)
            if lam is None or d.weight != 2 - lam:
                raise InvalidElement(
                    f"direction {d.param} of {self.kind} has weight {d.weight}, ad_h-weight {lam}"
                )

    def __str__(self):
        return f"{self.kind}:{self.n}" if self.kind.startswith("psl2") else f"{self.kind}:sl{self.n}"

    @property
    def is_torus(self):
        return self.kind in TORUS_KINDS

    @property
    def params(self):
        return tuple(d.param for d in self.directions)

    def param_variables(self):
        return tuple(Variable(d.param, d.weight, PARAM) for d in self.directions)

    @property
    def base(self):
        return liealg.principal_triple(self.n).e

    def matrix(self, ctx):
        """e + sum p * direction with every entry a Polynomial of ``ctx``."""
        m = lift(self.base.matrix, ctx)
        for d in self.directions:
            m = m + d.element.matrix * ctx.var(d.param)
        return m

    def element(self, values):
        """The rational element at parameter ``values``."""
        m = self.base.matrix
        for d, x in zip(self.directions, values):
            m = m + d.element.matrix * Fraction(x)
        return liealg.LieElement.from_matrix(m)

    def torus(self, ctx):
        """Symbolic torus part w, for e + t families only."""
        if not self.is_torus:
            raise UnsupportedFamily(f"{self} is not an e + t family")
        diag = [ctx.zero() for _ in range(self.n)]
        for d in self.directions:
            for i in range(self.n):
                diag[i] = diag[i] + d.element.entries[i][i] * ctx.var(d.param)
        return liealg.TorusElement.from_diagonal(diag)

    def torus_at(self, values):
        if not self.is_torus:
            raise UnsupportedFamily(f"{self} is not an e + t family")
        w = self.element(values).matrix - self.base.matrix
        return liealg.TorusElement.from_diagonal([w[i, i] for i in range(self.n)])


def lift(m, ctx):
    """Copy of ``m`` with scalar entries turned into constants of ``ctx``."""
    out = np.empty(m.shape, dtype=object)
    for idx, x in np.ndenumerate(m):
        out[idx] = x if hasattr(x, "ctx") else ctx.constant(x)
    return out


def borel_torus(n):
    """e + t with the coordinates v_i = d_{i+1} - d_1."""
    directions = []
    for i in range(1, n):
        coords = [0] * (n - 1)
        coords[i - 1] = 1
        element = liealg.TorusElement(tuple(coords)).lie()
        directions.append(Direction(f"v{i}", 2, element))
    return MatrixFamily(BOREL, n, tuple(directions))


def principal_sl2_torus(n):
    """e + v h."""
    return MatrixFamily(PSL2_BOREL, n, (Direction("v", 2, liealg.principal_triple(n).h),))


def kostant(n):
    """The Kostant section e + sum c_k b_k."""
    section = liealg.kostant_section(n)
    directions = tuple(
        Direction(p, w, b) for p, w, b in zip(section.params, section.weights, section.basis)
    )
    return MatrixFamily(KOSTANT, n, directions)


def principal_sl2_kostant(n):
    """e + t f."""
    return MatrixFamily(PSL2_KOSTANT, n, (Direction("t", 4, liealg.principal_triple(n).f),))
