"""
Buchberger's algorithm over Q with weighted and elimination orders.

Pairs are selected by the normal strategy (smallest lcm) and pruned with the
Gebauer-Moeller criteria. Intermediate polynomials are kept primitive; the
final reduced basis is monic.
"""

import itertools
import logging
import math
from dataclasses import dataclass

from .exceptions import ContextMismatch, InhomogeneousError
from .hilbert import hilbert_series_monomial_quotient
from .polyalg import Polynomial

logger = logging.getLogger(__name__)

INFINITE = math.inf


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------

def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(b, a):
    return tuple(y - x for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Orders
# ---------------------------------------------------------------------------

LEX = "lex"
WDEGREVLEX = "wdegrevlex"
ELIMINATION = "elimination"


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order given by a sort key; larger key means larger monomial.

    ``ranking`` lists variable indices from most to least significant. For the
    elimination order the first ``block`` entries of the ranking form block A
    (compared lexicographically), the rest block B (weighted degrevlex).
    """

    kind: str
    ranking: tuple
    weights: tuple
    block: int = 0

    @classmethod
    def lex(cls, ctx, names=None):
        return cls(LEX, _ranking(ctx, names), ctx.weights)

    @classmethod
    def wdegrevlex(cls, ctx, names=None):
        return cls(WDEGREVLEX, _ranking(ctx, names), ctx.weights)

    @classmethod
    def elimination(cls, ctx, drop):
        drop = set(drop)
        for name in drop:
            ctx.index(name)
        first = [i for i, name in enumerate(ctx.names) if name in drop]
        rest = [i for i, name in enumerate(ctx.names) if name not in drop]
        return cls(ELIMINATION, tuple(first + rest), ctx.weights, len(first))

    def key(self, exp):
        if self.kind == LEX:
            return tuple(exp[i] for i in self.ranking)
        if self.kind == WDEGREVLEX:
            return self._grevlex_key(exp, self.ranking)
        head = tuple(exp[i] for i in self.ranking[: self.block])
        return head + self._grevlex_key(exp, self.ranking[self.block:])

    def _grevlex_key(self, exp, ranking):
        degree = sum(self.weights[i] * exp[i] for i in ranking)
        return (degree,) + tuple(-exp[i] for i in reversed(ranking))

    def leading_monomial(self, p):
        return max(p.terms, key=self.key)

    def leading_term(self, p):
        lm = self.leading_monomial(p)
        return lm, p.terms[lm]


def _ranking(ctx, names):
    if names is None:
        return tuple(range(ctx.nvars))
    ranking = tuple(ctx.index(name) for name in names)
    if sorted(ranking) != list(range(ctx.nvars)):
        raise ContextMismatch(f"ranking {names} must list every variable of {ctx} once")
    return ranking


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: MonomialOrder
    reduced: bool = True

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    @property
    def leading_monomials(self):
        return [self.order.leading_monomial(g) for g in self.generators if not g.is_zero()]

    def is_unit(self):
        return any(g.is_constant() for g in self.generators)

    def contains(self, p):
        return normal_form(p, self).is_zero()


def _monic(p, order):
    _, lc = order.leading_term(p)
    return p * (1 / lc)


def _shifted(p, shift, scale):
    return {monomial_mul(e, shift): c * scale for e, c in p.terms.items()}


def spoly(f, g, order, lmf=None, lmg=None):
    """S-polynomial of f and g."""
    lmf = lmf or order.leading_monomial(f)
    lmg = lmg or order.leading_monomial(g)
    gamma = monomial_lcm(lmf, lmg)
    s1 = _shifted(f, monomial_quotient(gamma, lmf), 1 / f.terms[lmf])
    s2 = _shifted(g, monomial_quotient(gamma, lmg), 1 / g.terms[lmg])
    for e, c in s2.items():
        v = s1.get(e, 0) - c
        if v:
            s1[e] = v
        else:
            s1.pop(e, None)
    return Polynomial._raw(f.ctx, s1)


def reduce(p, basis, order, leads=None, choose=None):
    """Complete reduction of p by ``basis``.

    ``choose`` picks one index from the list of usable reducers; the default
    takes the first.
    """
    leads = leads or [order.leading_term(g) for g in basis]
    terms = dict(p.terms)
    remainder = {}
    while terms:
        lm = max(terms, key=order.key)
        lc = terms[lm]
        candidates = [i for i, (glm, _) in enumerate(leads) if monomial_divides(glm, lm)]
        if not candidates:
            remainder[lm] = lc
            del terms[lm]
            continue
        i = candidates[0] if choose is None else choose(candidates)
        glm, glc = leads[i]
        q = lc / glc
        shift = monomial_quotient(lm, glm)
        for e, c in basis[i].terms.items():
            e2 = monomial_mul(e, shift)
            v = terms.get(e2, 0) - q * c
            if v:
                terms[e2] = v
            else:
                terms.pop(e2, None)
    return Polynomial._raw(p.ctx, remainder)


def select(G, P, order, leads):
    """Normal strategy: the pair with the smallest lcm, ties by index."""
    return min(P, key=lambda p: (order.key(monomial_lcm(leads[p[0]], leads[p[1]])), p))


def update(G, P, f, order, leads):
    """Add f to G and the surviving new pairs to P (Gebauer-Moeller)."""
    lmf = order.leading_monomial(f)

    def keep(p):
        gamma = monomial_lcm(leads[p[0]], leads[p[1]])
        return (
            not monomial_divides(lmf, gamma)
            or gamma == monomial_lcm(leads[p[0]], lmf)
            or gamma == monomial_lcm(leads[p[1]], lmf)
        )

    P = {p for p in P if keep(p)}
    lcm_dict = {}
    for i in range(len(G)):
        lcm_dict.setdefault(monomial_lcm(leads[i], lmf), []).append(i)
    minimalized = []
    for L in sorted(lcm_dict, key=order.key):
        if all(not monomial_divides(L_, L) for L_ in minimalized):
            minimalized.append(L)
    new = set()
    for L in minimalized:
        # first criterion: coprime leading monomials
        if not any(monomial_lcm(leads[i], lmf) == monomial_mul(leads[i], lmf) for i in lcm_dict[L]):
            new.add((min(lcm_dict[L]), len(G)))
    return G + [f], leads + [lmf], P | new


def minimalize(G, order):
    Gmin = []
    for f in sorted(G, key=lambda h: order.key(order.leading_monomial(h))):
        lm = order.leading_monomial(f)
        if all(not monomial_divides(order.leading_monomial(g), lm) for g in Gmin):
            Gmin.append(f)
    return Gmin


def interreduce(G, order):
    Gred = []
    for i in range(len(G)):
        others = G[:i] + G[i + 1:]
        g = reduce(G[i], others, order) if others else G[i]
        Gred.append(_monic(g, order))
    return Gred


def buchberger(gens, order):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    ctx = gens[0].ctx
    if any(g.ctx != ctx for g in gens):
        raise ContextMismatch("generators live in different contexts")
    G, leads, P = [], [], set()
    for f in gens:
        if f.is_zero():
            continue
        G, leads, P = update(G, P, f.primitive(), order, leads)
    pairs = 0
    while P:
        i, j = select(G, P, order, leads)
        P.remove((i, j))
        pairs += 1
        s = spoly(G[i], G[j], order, leads[i], leads[j])
        r = reduce(s, G, order, [(lm, g.terms[lm]) for lm, g in zip(leads, G)])
        if not r.is_zero():
            G, leads, P = update(G, P, r.primitive(), order, leads)
    if not G:
        return GroebnerBasis((ctx.zero(),), order)
    basis = interreduce(minimalize(G, order), order)
    logger.debug("buchberger: %d pairs, %d intermediate, %d in reduced basis", pairs, len(G), len(basis))
    return GroebnerBasis(tuple(basis), order)


def normal_form(p, gb, choose=None):
    """Remainder of p on complete reduction by the basis."""
    if p.ctx != gb.generators[0].ctx:
        raise ContextMismatch(f"context {p.ctx} differs from the basis context")
    basis = [g for g in gb.generators if not g.is_zero()]
    if not basis:
        return p
    return reduce(p, basis, gb.order, choose=choose)


def ideals_equal(a, b, order=None):
    """Mutual normal-form-zero of the two generator lists."""
    ctx = a[0].ctx
    order = order or MonomialOrder.wdegrevlex(ctx)
    ga, gb = buchberger(a, order), buchberger(b, order)
    return all(normal_form(f, gb).is_zero() for f in a) and all(normal_form(f, ga).is_zero() for f in b)


# ---------------------------------------------------------------------------
# Elimination, dimension, Hilbert series
# ---------------------------------------------------------------------------

def eliminate(gens, drop):
    """Generators of the intersection of the ideal with the subring without ``drop``."""
    gens = list(gens)
    ctx = gens[0].ctx
    drop = set(drop)
    if not drop:
        return list(buchberger(gens, MonomialOrder.wdegrevlex(ctx)))
    gb = buchberger(gens, MonomialOrder.elimination(ctx, drop))
    kept = [g for g in gb if not (g.variables() & drop) and not g.is_zero()]
    logger.debug("eliminated %s: %d of %d basis elements survive", sorted(drop), len(kept), len(gb))
    return kept


def standard_monomials_count(leads, nvars):
    """Number of monomials outside the monomial ideal, or INFINITE."""
    if any(not any(m) for m in leads):
        return 0
    bounds = []
    for k in range(nvars):
        powers = [m[k] for m in leads if m[k] and all(not e for i, e in enumerate(m) if i != k)]
        if not powers:
            return INFINITE
        bounds.append(min(powers))
    return sum(
        1 for exp in itertools.product(*(range(b) for b in bounds))
        if not any(monomial_divides(m, exp) for m in leads)
    )


def quotient_dimension(gens, order=None):
    """Dimension over Q of the quotient ring, or INFINITE."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return INFINITE
    ctx = gens[0].ctx
    order = order or MonomialOrder.wdegrevlex(ctx)
    gb = buchberger(gens, order)
    return standard_monomials_count(gb.leading_monomials, ctx.nvars)


def hilbert_series_ideal(gens, ctx=None):
    """Hilbert series of the graded quotient by homogeneous generators."""
    gens = list(gens)
    ctx = ctx or gens[0].ctx
    nonzero = [g for g in gens if not g.is_zero()]
    for g in nonzero:
        if g.weighted_degree() is None:
            raise InhomogeneousError(f"generator {g} is not homogeneous")
    if not nonzero:
        return hilbert_series_monomial_quotient([], ctx)
    gb = buchberger(nonzero, MonomialOrder.wdegrevlex(ctx))
    return hilbert_series_monomial_quotient(gb.leading_monomials, ctx)
