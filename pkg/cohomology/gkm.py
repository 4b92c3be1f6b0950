"""
Moment graphs and piecewise polynomials.

Projective spaces get their moment graph directly. For other charts the
graph is read off the fixed-point components: two components are joined
when they agree on a hyperplane, and that hyperplane's primitive linear
form labels the edge.
"""

import itertools
import logging
from dataclasses import dataclass

from . import linalg
from .exceptions import IdentityViolation
from .liealg import torus_context
from .zeroscheme import components_over_regular

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    form: object


@dataclass(frozen=True, eq=False)
class GKMGraph:
    ctx: object
    vertices: tuple
    edges: tuple

    @property
    def rank(self):
        return self.ctx.nvars

    def degree(self, i):
        return sum(1 for e in self.edges if i in (e.i, e.j))


@dataclass(frozen=True, eq=False)
class PiecewiseClass:
    values: tuple


@dataclass(frozen=True)
class GKMCheck:
    ok: bool
    failing: tuple = ()


def moment_graph_pn(n):
    """Vertices zeta_0..zeta_n, edge (i, j) labelled v_i - v_j with v_0 = 0."""
    ctx = torus_context(n + 1)
    v = [ctx.zero()] + [ctx.var(name) for name in ctx.names]
    edges = tuple(Edge(i, j, (v[i] - v[j]).primitive()) for i, j in itertools.combinations(range(n + 1), 2))
    return GKMGraph(ctx, tuple(f"ζ{i}" for i in range(n + 1)), edges)


def _kernel_substitution(form):
    """Bindings that restrict a linear form's polynomials to its kernel."""
    ctx = form.ctx
    for name in reversed(ctx.names):
        var = ctx.var(name)
        a = form.coefficient(next(iter(var.terms)))
        if a:
            return {name: -(form - var * a) / a}
    raise IdentityViolation("edge form", "a nonzero linear form", str(form))


def vanishes_on(p, form):
    """True when the linear ``form`` divides p."""
    return p.substitute(_kernel_substitution(form)).is_zero()


def is_gkm_class(graph, c):
    if len(c.values) != len(graph.vertices):
        raise IdentityViolation("class length", str(len(graph.vertices)), str(len(c.values)))
    failing = tuple(
        (graph.vertices[e.i], graph.vertices[e.j])
        for e in graph.edges
        if not vanishes_on(c.values[e.i] - c.values[e.j], e.form)
    )
    return GKMCheck(not failing, failing)


def _is_linear(p):
    return not p.is_zero() and all(sum(e) == 1 for e in p.terms)


def collision_graph(components, ctx):
    """Moment graph from pairwise collision hyperplanes of fixed-point components."""
    edges = []
    for i, j in itertools.combinations(range(len(components)), 2):
        diffs = [components[i].values[name] - components[j].values[name] for name in components[i].values]
        for d in diffs:
            if not _is_linear(d):
                continue
            form = d.primitive()
            if all(vanishes_on(x, form) for x in diffs):
                edges.append(Edge(i, j, form))
                break
    labels = tuple(c.label or f"ζ{k}" for k, c in enumerate(components))
    logger.debug("collision graph: %d vertices, %d edges", len(labels), len(edges))
    return GKMGraph(ctx, labels, tuple(edges))


def localize_presentation(ideal, coordinate):
    """Values of ``coordinate`` at the fixed points, in label order."""
    ideal.ctx.index(coordinate)
    return PiecewiseClass(tuple(c.values[coordinate] for c in components_over_regular(ideal)))


def _monomials(ctx, degree):
    for combo in itertools.combinations_with_replacement(ctx.names, degree):
        p = ctx.one()
        for name in combo:
            p = p * ctx.var(name)
        yield p


def piecewise_dimension(graph, degree):
    """Dimension over Q of the degree-``degree`` piecewise polynomials on ``graph``."""
    ctx = graph.ctx
    basis = list(_monomials(ctx, degree))
    restricted = {e: [m.substitute(_kernel_substitution(e.form)) for m in basis] for e in graph.edges}
    n_unknowns = len(graph.vertices) * len(basis)
    rows = []
    for e in graph.edges:
        images = restricted[e]
        monos = sorted({mono for img in images for mono in img.terms})
        for mono in monos:
            row = [0] * n_unknowns
            for k, img in enumerate(images):
                c = img.coefficient(mono)
                row[e.i * len(basis) + k] += c
                row[e.j * len(basis) + k] -= c
            rows.append(row)
    rank = linalg.rank(linalg.matrix(rows)) if rows else 0
    return n_unknowns - rank
