"""
Zero schemes of the total vector field over a matrix family.

The generators of the ideal are the components of V over e + t (Borel
families) or over the Kostant section. ``present`` eliminates the cell
coordinates that the generators express through the others and returns
the ring presentation of equivariant cohomology; the remaining functions
check it: homogeneity, flatness, Poincare series, components over regular
torus values and their agreement with the structure points M_w zeta_i.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import charts, families, groebner, liealg, linalg
from .exceptions import (
    ComponentExtractionUnavailable,
    IdentityViolation,
    InhomogeneousError,
    PositiveDimensionalFiber,
    UnsupportedFamily,
)
from .hilbert import HilbertSeries
from .polyalg import RingContext

logger = logging.getLogger(__name__)

AUTO = "auto"
TRIANGULAR = "triangular"
GROEBNER = "groebner"
STRATEGIES = (AUTO, TRIANGULAR, GROEBNER)


@dataclass(frozen=True, eq=False)
class ZeroSchemeIdeal:
    chart: charts.ChartDescriptor
    family: families.MatrixFamily
    ctx: RingContext
    generators: tuple

    @property
    def cells(self):
        return self.ctx.cells

    @property
    def params(self):
        return self.ctx.params

    @property
    def cell_weights(self):
        return tuple(self.ctx.weight(name) for name in self.cells)

    @property
    def param_weights(self):
        return tuple(self.ctx.weight(name) for name in self.params)

    def cell_context(self):
        return self.ctx.restrict(self.cells)

    def specialize(self, values):
        """Generators with the parameters replaced by rational ``values``."""
        bindings = _bindings(self.params, values)
        target = self.cell_context()
        return [g.substitute(bindings, target) for g in self.generators]


def _bindings(params, values):
    values = list(values)
    if len(values) != len(params):
        raise UnsupportedFamily(f"expected {len(params)} values for {list(params)}, got {len(values)}")
    return {p: Fraction(x) for p, x in zip(params, values)}


def zero_scheme_ideal(chart, family):
    field_ = charts.vector_field(chart, family)
    return ZeroSchemeIdeal(chart, family, field_.ctx, field_.components)


def borel_ideal(chart, family):
    """Zero scheme over e + t."""
    if not family.is_torus:
        raise UnsupportedFamily(f"{family} is not an e + t family")
    return zero_scheme_ideal(chart, family)


def kostant_ideal(chart, family):
    """Zero scheme over the Kostant section."""
    if family.is_torus:
        raise UnsupportedFamily(f"{family} is not a Kostant family")
    return zero_scheme_ideal(chart, family)


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Presentation:
    """Kept variables, relations among them and the eliminated coordinates.

    ``bindings`` maps each eliminated cell coordinate to a polynomial in the
    kept variables. ``poincare`` is the Hilbert numerator written over the
    parameter weights and ``rank`` its value at t = 1.
    """

    ctx: RingContext
    relations: tuple
    bindings: dict
    strategy: str
    hilbert: HilbertSeries
    poincare: tuple
    rank: object

    @property
    def kept(self):
        return self.ctx.names

    @property
    def kept_cells(self):
        return self.ctx.cells


def _solvable_coordinate(g, names):
    """Latest coordinate of ``names`` that occurs in g only as c * z."""
    found = None
    for name in names:
        i = g.ctx.index(name)
        occurrences = [e for e in g.terms if e[i]]
        if len(occurrences) == 1 and sum(occurrences[0]) == 1:
            found = name
    return found


def _triangular(ideal):
    gens = [g for g in ideal.generators if not g.is_zero()]
    kept = list(ideal.cells)
    steps = []
    while True:
        for gi, g in enumerate(gens):
            z = _solvable_coordinate(g, kept)
            if z is not None:
                break
        else:
            break
        zv = ideal.ctx.var(z)
        c = g.coefficient(next(iter(zv.terms)))
        value = -(g - zv * c) / c
        gens = [h.substitute({z: value}) for k, h in enumerate(gens) if k != gi]
        gens = [h for h in gens if not h.is_zero()]
        kept.remove(z)
        steps.append((z, value))
        logger.debug("triangular: %s = %s", z, value)
    bindings = {}
    for z, value in reversed(steps):
        bindings[z] = value.substitute(bindings)
    return kept, gens, {z: bindings[z] for z, _ in steps}


def present(ideal, strategy=AUTO):
    """Eliminate the triangularly solvable coordinates.

    ``triangular`` substitutes them out; ``groebner`` computes the
    elimination ideal of the same coordinates instead. ``auto`` substitutes
    and falls back to Groebner elimination when more relations than kept
    coordinates remain.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    kept, relations, bindings = _triangular(ideal)
    used = TRIANGULAR
    if strategy == GROEBNER or (strategy == AUTO and len(relations) > len(kept)):
        drop = [name for name in ideal.cells if name not in kept]
        relations = groebner.eliminate(list(ideal.generators), drop)
        used = GROEBNER
    ctx = ideal.ctx.restrict(kept + list(ideal.params))
    relations = tuple(r.to_context(ctx).primitive() for r in relations)
    bindings = {z: b.to_context(ctx) for z, b in bindings.items()}
    hs = groebner.hilbert_series_ideal(list(relations), ctx)
    param_weights = tuple(ctx.weight(p) for p in ctx.params)
    try:
        over = hs.over(param_weights)
        poincare, rank = over.numerator, over.rank
    except ValueError:
        poincare, rank = None, None
    logger.debug("%s / %s: %s presentation, kept %s, rank %s", ideal.chart, ideal.family, used, kept, rank)
    return Presentation(ctx, relations, bindings, used, hs, poincare, rank)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def homogeneity_report(ideal):
    """Weighted degree of each generator; generator i must have degree a_i + 2."""
    degrees = []
    for name, a, g in zip(ideal.cells, ideal.cell_weights, ideal.generators):
        d = g.weighted_degree() if not g.is_zero() else None
        if d != a + 2:
            raise InhomogeneousError(f"component for {name} is {g}, expected homogeneous of degree {a + 2}")
        degrees.append(d)
    return degrees


def fiber_dimension(ideal, values):
    dim = groebner.quotient_dimension(ideal.specialize(values))
    if dim == groebner.INFINITE:
        raise PositiveDimensionalFiber(f"fiber of {ideal.chart} / {ideal.family} at {list(values)} is not finite")
    return dim


def regular_sequence_check(ideal):
    """Quotient dimension of the generators together with every parameter."""
    gens = list(ideal.generators) + [ideal.ctx.var(p) for p in ideal.params]
    dim = groebner.quotient_dimension(gens)
    if dim == groebner.INFINITE:
        raise IdentityViolation("regular sequence", "finite staircase", "infinite")
    return dim


@dataclass(frozen=True)
class PoincareReport:
    ok: bool
    hilbert: HilbertSeries
    expected: HilbertSeries


def poincare_check(ideal, betti=None):
    """HS(C[Z]) times the parameter factors against the Betti polynomial."""
    betti = charts.betti(ideal.chart) if betti is None else betti
    hs = groebner.hilbert_series_ideal(list(ideal.generators), ideal.ctx)
    expected = HilbertSeries(tuple(betti), ideal.param_weights)
    return PoincareReport(hs.equivalent(expected), hs, expected)


# ---------------------------------------------------------------------------
# Components over regular torus values
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Component:
    """A family of fixed points: cell coordinate -> polynomial in the parameters."""

    values: dict
    label: str = None

    def at(self, params):
        return {name: p.evaluate(params) for name, p in self.values.items()}


def _divisors(n):
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(coeffs):
    """Distinct rational roots of sum(coeffs[k] * z^k), sorted."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        raise ValueError("the zero polynomial has every root")
    roots = set()
    low = next(k for k, c in enumerate(coeffs) if c)
    if low:
        roots.add(Fraction(0))
    coeffs = coeffs[low:]
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * r ** k for k, c in enumerate(ints)) == 0:
                    roots.add(r)
    return sorted(roots)


def _univariate(f, z, point):
    g = f.substitute(point)
    i = g.ctx.index(z)
    coeffs = [Fraction(0)] * (g.degree_in(z) + 1)
    for e, c in g.terms.items():
        coeffs[e[i]] += c
    return coeffs


def _roots(f, z, ctx):
    """Roots of f in z that are polynomials in the parameters, verified symbolically."""
    params = ctx.params
    wz = ctx.weight(z)
    if not params:
        return [ctx.constant(r) for r in rational_roots(_univariate(f, z, {}))]
    if len(params) == 1:
        (p,) = params
        wp = ctx.weight(p)
        if wz % wp:
            raise ComponentExtractionUnavailable(f"weight {wz} of {z} is not a multiple of {wp}")
        monomial = ctx.var(p) ** (wz // wp)
        candidates = [monomial * r for r in rational_roots(_univariate(f, z, {p: 1}))]
    elif wz == 2 and all(ctx.weight(p) == 2 for p in params):
        per_param = []
        for p in params:
            point = {q: int(q == p) for q in params}
            coeffs = _univariate(f, z, point)
            if not any(coeffs):
                raise ComponentExtractionUnavailable(f"{f} vanishes identically at {point}")
            per_param.append(rational_roots(coeffs))
        candidates = []
        for combo in itertools.product(*per_param):
            root = ctx.zero()
            for p, r in zip(params, combo):
                root = root + ctx.var(p) * r
            candidates.append(root)
    else:
        raise ComponentExtractionUnavailable(f"no rational parametrization for {z} over {list(params)}")
    roots = []
    for r in candidates:
        if f.substitute({z: r}).is_zero() and r not in roots:
            roots.append(r)
    return roots


def _solve(relations, cells, ctx):
    relations = [r for r in relations if not r.is_zero()]
    if any(r.is_constant() for r in relations):
        return []
    if not cells:
        # leftover parameter relations cut the branch down to a proper subset
        return [] if relations else [{}]
    if not relations:
        raise ComponentExtractionUnavailable(f"coordinates {list(cells)} are unconstrained")
    for z in cells:
        others = [name for name in cells if name != z]
        elim = groebner.eliminate(relations, others)
        usable = [g for g in elim if g.degree_in(z) > 0 and not (g.variables() - {z} - set(ctx.params))]
        if any(not g.is_zero() and not (g.variables() & set(cells)) for g in elim):
            return []
        if not usable:
            continue
        f = min(usable, key=lambda g: g.degree_in(z))
        out = []
        for r in _roots(f, z, ctx):
            logger.debug("component branch %s = %s", z, r)
            rest = [g.substitute({z: r}) for g in relations]
            for sol in _solve(rest, others, ctx):
                out.append({z: r, **sol})
        return out
    raise ComponentExtractionUnavailable(f"no coordinate of {list(cells)} has a nonzero elimination ideal")


def components_over_regular(ideal, presentation=None, label=True):
    """Fixed-point families over the regular torus values, ordered by label."""
    if not ideal.family.is_torus:
        raise ComponentExtractionUnavailable(f"components are only extracted for e + t families, not {ideal.family}")
    presentation = presentation or present(ideal, TRIANGULAR)
    ctx = presentation.ctx
    solutions = _solve(list(presentation.relations), list(presentation.kept_cells), ctx)
    param_ctx = ideal.ctx.restrict(ideal.params)
    components, seen = [], set()
    for sol in solutions:
        full = dict(sol)
        for z, b in presentation.bindings.items():
            full[z] = b.substitute(sol)
        values = {name: full[name].to_context(param_ctx) for name in ideal.cells}
        key = tuple(str(v) for v in values.values())
        if key not in seen:
            seen.add(key)
            components.append(Component(values))
    chi = charts.euler_characteristic(ideal.chart)
    if len(components) != chi:
        raise ComponentExtractionUnavailable(f"found {len(components)} rational components, expected {chi}")
    return label_components(ideal, components) if label else components


# ---------------------------------------------------------------------------
# Structure points and labels
# ---------------------------------------------------------------------------

def sample_regular_values(family):
    """A fixed regular rational point of the family parameters."""
    if family.kind == families.PSL2_BOREL:
        return [Fraction(1)]
    return [Fraction(i * i + i + 1) for i in range(1, family.n)]


def structure_points(chart, family, values):
    """Chart coordinates of M_w zeta_i for every torus-fixed point zeta_i."""
    if chart.kind == charts.BOTT_SAMELSON:
        raise UnsupportedFamily("structure points are computed on flag-type charts")
    w = family.torus_at(values)
    M = liealg.solve_unipotent_conjugator(w)
    out = []
    for fp in charts.fixed_points(chart):
        G = M @ charts.permutation_matrix(fp.permutation)
        out.append((fp.label, charts.block_lu_coordinates(chart, G)))
    return out


def label_components(ideal, components, values=None):
    """Match components to fixed points at a sampled regular point."""
    chart, family = ideal.chart, ideal.family
    values = values or sample_regular_values(family)
    point = dict(zip(ideal.params, values))
    points = {fp.label: fp for fp in charts.fixed_points(chart)}
    if chart.kind == charts.BOTT_SAMELSON:
        by_word = {fp.permutation: label for label, fp in points.items()}
        targets = [(by_word[tuple(int(x != 0) for x in c.at(point).values())], c) for c in components]
    else:
        structure = {
            tuple(coords[name] for name in ideal.cells): label
            for label, coords in structure_points(chart, family, values)
        }
        targets = []
        for c in components:
            key = tuple(c.at(point)[name] for name in ideal.cells)
            if key not in structure:
                raise IdentityViolation("component labels", "a structure point", str(key))
            targets.append((structure[key], c))
    labels = [label for label, _ in targets]
    if len(set(labels)) != len(labels):
        raise IdentityViolation("component labels", "a bijection", str(labels))
    order = list(points)
    targets.sort(key=lambda t: order.index(t[0]))
    return [Component(c.values, label) for label, c in targets]


@dataclass(frozen=True)
class FixedPointSolution:
    values: tuple
    points: list
    labels: list = field(default_factory=list)


def fixed_point_solution(ideal, values):
    """Solution points of the fiber at rational ``values``, checked on every generator."""
    values = tuple(Fraction(x) for x in values)
    if ideal.chart.kind == charts.BOTT_SAMELSON:
        point = dict(zip(ideal.params, values))
        comps = components_over_regular(ideal)
        labelled = [(c.label, c.at(point)) for c in comps]
    else:
        labelled = structure_points(ideal.chart, ideal.family, values)
    specialized = ideal.specialize(values)
    for label, coords in labelled:
        bad = [g for g in specialized if g.evaluate(coords)]
        if bad:
            raise IdentityViolation(f"{label} is a zero of V", "0", str(bad[0].evaluate(coords)))
    return FixedPointSolution(values, [coords for _, coords in labelled], [label for label, _ in labelled])


def reducedness_check(ideal, values):
    """Fiber length against the number of distinct solution points."""
    solution = fixed_point_solution(ideal, values)
    distinct = {tuple(sorted(p.items())) for p in solution.points}
    dim = fiber_dimension(ideal, values)
    if dim != len(distinct):
        raise IdentityViolation("reduced fiber", str(len(distinct)), str(dim))
    return dim


# ---------------------------------------------------------------------------
# Comparisons between families and varieties
# ---------------------------------------------------------------------------

def quotient_map_check(chart, values):
    """A(w) carries every zero of V_{e+w} to a zero of V_chi(w)."""
    n = chart.n
    borel = families.borel_torus(n)
    ideal = kostant_ideal(chart, families.kostant(n))
    w = borel.torus_at(values)
    conj = liealg.solve_kostant_conjugator(w)
    params = dict(zip(ideal.params, conj.coords))
    checked = 0
    for label, coords in structure_points(chart, borel, values):
        Lx = linalg.identity(n)
        for (r, c), name in zip(chart.positions, chart.cell_coords):
            Lx[r, c] = coords[name]
        image = charts.block_lu_coordinates(chart, conj.A @ Lx)
        for g in ideal.generators:
            got = g.evaluate({**image, **params})
            if got:
                raise IdentityViolation(f"A(w) {label} is a zero of V_chi(w)", "0", str(got))
        checked += 1
    return checked


def sign_flip(p):
    """p with every parameter of weight 2k replaced by (-1)^k times itself."""
    bindings = {name: -p.ctx.var(name) for name in p.ctx.params if p.ctx.weight(name) % 4}
    return p.substitute(bindings) if bindings else p


def kostant_borel_shift_check(n):
    """On P^n: K(x1, v^2) equals B(x1 - n v, v) up to a unit."""
    chart = charts.ChartDescriptor.projective(n)
    borel = present(borel_ideal(chart, families.principal_sl2_torus(n + 1)))
    kostant = present(kostant_ideal(chart, families.principal_sl2_kostant(n + 1)))
    ctx = borel.ctx
    v, x1 = ctx.var("v"), ctx.var("x1")
    (b,) = borel.relations
    (k,) = kostant.relations
    lhs = k.substitute({"t": v * v}, ctx).primitive()
    rhs = b.substitute({"x1": x1 - n * v}).primitive()
    if lhs != rhs:
        raise IdentityViolation("K(x, v^2) = B(x - nv, v)", str(rhs), str(lhs))
    return True


def restriction_check(source, target, bindings):
    """The ring map source -> target given by ``bindings`` is well defined and onto.

    Unbound source variables map to the target variable of the same name.
    """
    tctx = target.ctx
    gb = groebner.buchberger(list(target.relations), groebner.MonomialOrder.wdegrevlex(tctx))
    for r in source.relations:
        image = r.substitute(bindings, tctx)
        rem = groebner.normal_form(image, gb)
        if not rem.is_zero():
            raise IdentityViolation(f"restriction of {r}", "0", str(rem))
    images = [bindings.get(name) for name in source.kept]
    images = [tctx.var(name) if img is None and name in tctx else img for name, img in zip(source.kept, images)]
    for name in tctx.names:
        var = tctx.var(name)
        if not any(img is not None and getattr(img, "ctx", None) == tctx and (img == var or img == -var) for img in images):
            raise IdentityViolation("surjective on generators", name, "not in the image")
    return True


def restriction_pn(n):
    """P^(n-1) in P^n along the first n coordinates, sl_n in sl_(n+1)."""
    big = present(borel_ideal(charts.ChartDescriptor.projective(n), families.borel_torus(n + 1)))
    small = present(borel_ideal(charts.ChartDescriptor.projective(n - 1), families.borel_torus(n)))
    ctx = small.ctx
    # diag(0, v1, .., v_{n-1}) - s/n embeds with a trailing 0, shifting d_0 by s/n
    shift = sum((ctx.var(f"v{i}") for i in range(1, n)), ctx.zero()) / n
    bindings = {f"v{i}": ctx.var(f"v{i}") for i in range(1, n)}
    bindings[f"v{n}"] = shift
    bindings.update({name: ctx.zero() for name in big.kept_cells if name not in ctx})
    return restriction_check(big, small, bindings)
