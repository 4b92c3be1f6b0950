"""
Unit tests for exact linear algebra, Groebner bases and Hilbert series
======================================================================
sympy serves as the reference for reduced Groebner bases.

Run with:
    python manage.py test tests
"""

import itertools
from fractions import Fraction

import numpy as np
import sympy
from django.test import SimpleTestCase

from cohomology import groebner, linalg
from cohomology.exceptions import InhomogeneousError, SingularSystem
from cohomology.hilbert import HilbertSeries, format_t_polynomial, hilbert_series_monomial_quotient
from cohomology.polyalg import PARAM, Polynomial, RingContext


# ─── helpers ──────────────────────────────────────────────────────────────────

def _from_sympy(expr, ctx):
    poly = sympy.Poly(expr, *(sympy.Symbol(n) for n in ctx.names))
    terms = {}
    for exp, c in poly.terms():
        c = sympy.Rational(c)
        terms[tuple(exp)] = Fraction(int(c.p), int(c.q))
    return Polynomial(ctx, terms)


def _sympy_basis(texts, ctx, order="lex"):
    syms = [sympy.Symbol(n) for n in ctx.names]
    exprs = [sympy.sympify(t.replace("^", "**")) for t in texts]
    return [_from_sympy(g, ctx) for g in sympy.groebner(exprs, *syms, order=order).exprs]


def _canonical(polys):
    return sorted(str(p.primitive()) for p in polys if not p.is_zero())


def _random_poly(rng, ctx, terms, degree):
    """Random integer polynomial of total degree below ``degree``."""
    exps = [e for e in itertools.product(range(degree), repeat=ctx.nvars) if sum(e) < degree]
    picks = rng.choice(len(exps), size=min(terms, len(exps)), replace=False)
    return Polynomial(ctx, {exps[i]: int(rng.integers(-3, 4)) for i in picks})


def _random_zero_dimensional(rng, ctx):
    """x_k^d_k plus lower terms for each k; the quotient has dimension prod d_k."""
    gens, dim = [], 1
    for k in range(ctx.nvars):
        d = int(rng.integers(1, 4))
        lead = [0] * ctx.nvars
        lead[k] = d
        gens.append(Polynomial(ctx, {tuple(lead): 1}) + _random_poly(rng, ctx, 3, d))
        dim *= d
    return gens, dim


# ─── Linear algebra ───────────────────────────────────────────────────────────

class LinalgTest(SimpleTestCase):
    """Row reduction over Q"""

    def test_rank(self):
        self.assertEqual(linalg.rank(linalg.matrix([[1, 2], [2, 4]])), 1)
        self.assertEqual(linalg.rank(linalg.identity(3)), 3)

    def test_inverse(self):
        a = linalg.matrix([[2, 1], [1, 1]])
        self.assertTrue(linalg.equal(linalg.inverse(a), linalg.matrix([[1, -1], [-1, 2]])))

    def test_inverse_of_singular_matrix_raises(self):
        with self.assertRaises(SingularSystem):
            linalg.inverse(linalg.matrix([[1, 2], [2, 4]]))

    def test_solve_with_fractions(self):
        a = linalg.matrix([[2, 0], [1, 3]])
        self.assertEqual(linalg.solve(a, [1, 2]), [Fraction(1, 2), Fraction(1, 2)])

    def test_solve_with_polynomial_right_hand_side(self):
        ctx = RingContext.of(("v", 2, PARAM))
        v = ctx.var("v")
        x = linalg.solve(linalg.matrix([[1, 1], [0, 2]]), [v, 4 * v])
        self.assertEqual(x, [-v, 2 * v])

    def test_inconsistent_system_raises(self):
        with self.assertRaises(SingularSystem):
            linalg.solve(linalg.matrix([[1], [1]]), [1, 2])

    def test_nullspace(self):
        (vec,) = linalg.nullspace(linalg.matrix([[1, 1, 0], [0, 1, 1]]))
        self.assertEqual(list(vec), [1, -1, 1])

    def test_format_matrix(self):
        self.assertEqual(linalg.format_matrix(linalg.matrix([[1, Fraction(-1, 2)]])), "[[1, -1/2]]")


# ─── Groebner bases ───────────────────────────────────────────────────────────

class BuchbergerTest(SimpleTestCase):
    """Reduced bases agree with sympy up to scalars"""

    def setUp(self):
        self.ctx = RingContext.of(("x", 2), ("y", 2), ("z", 2))

    def _check(self, texts, order):
        gens = [self.ctx.parse(t) for t in texts]
        mo = groebner.MonomialOrder.lex(self.ctx) if order == "lex" else groebner.MonomialOrder.wdegrevlex(self.ctx)
        ours = groebner.buchberger(gens, mo)
        self.assertEqual(_canonical(ours), _canonical(_sympy_basis(texts, self.ctx, order)))

    def test_circle_and_line_lex(self):
        self._check(["x^2 + y^2 - 1", "x - y"], "lex")

    def test_twisted_cubic_lex(self):
        self._check(["x^2 - y", "x*y - z", "x*z - y^2"], "lex")

    def test_cyclic_three_grevlex(self):
        self._check(["x + y + z", "x*y + y*z + x*z", "x*y*z - 1"], "grevlex")

    def test_unit_ideal(self):
        gb = groebner.buchberger([self.ctx.parse("x*y - 1"), self.ctx.parse("x")],
                                 groebner.MonomialOrder.wdegrevlex(self.ctx))
        self.assertTrue(gb.is_unit())

    def test_normal_form_of_member_is_zero(self):
        gens = [self.ctx.parse("x^2 - y"), self.ctx.parse("y^2 - z")]
        gb = groebner.buchberger(gens, groebner.MonomialOrder.wdegrevlex(self.ctx))
        member = gens[0] * self.ctx.parse("x + z") - gens[1] * 3
        self.assertTrue(groebner.normal_form(member, gb).is_zero())
        self.assertFalse(groebner.normal_form(self.ctx.var("x"), gb).is_zero())

    def test_ideals_equal(self):
        a = [self.ctx.parse("x - y"), self.ctx.parse("y^2 - z")]
        b = [self.ctx.parse("x - y"), self.ctx.parse("x^2 - z")]
        c = [self.ctx.parse("x - y"), self.ctx.parse("x^2 + z")]
        self.assertTrue(groebner.ideals_equal(a, b))
        self.assertFalse(groebner.ideals_equal(a, c))


class EliminationTest(SimpleTestCase):
    """Elimination ideals and quotient dimensions"""

    def test_eliminate_parametrized_cusp(self):
        ctx = RingContext.of(("t", 2), ("x", 4), ("y", 6))
        gens = [ctx.parse("x - t^2"), ctx.parse("y - t^3")]
        elim = groebner.eliminate(gens, ["t"])
        self.assertTrue(all("t" not in g.variables() for g in elim))
        self.assertTrue(groebner.ideals_equal(elim, [ctx.parse("x^3 - y^2")]))

    def test_quotient_dimension_of_monomial_ideal(self):
        ctx = RingContext.of(("x", 2), ("y", 2))
        self.assertEqual(groebner.quotient_dimension([ctx.parse("x^2"), ctx.parse("y^3")]), 6)

    def test_quotient_dimension_counts_points(self):
        ctx = RingContext.of(("x", 2), ("y", 2))
        gens = [ctx.parse("x^2 - 1"), ctx.parse("y^2 - x")]
        self.assertEqual(groebner.quotient_dimension(gens), 4)

    def test_positive_dimensional_quotient(self):
        ctx = RingContext.of(("x", 2), ("y", 2))
        self.assertEqual(groebner.quotient_dimension([ctx.parse("x*y")]), groebner.INFINITE)


class RandomIdealTest(SimpleTestCase):
    """Seeded random zero-dimensional ideals"""

    def setUp(self):
        self.rng = np.random.default_rng(20240917)
        self.ctx = RingContext.of(("x", 2), ("y", 2))

    def test_reduction_is_confluent(self):
        choosers = [None, lambda c: c[-1], lambda c: c[len(c) // 2]]
        for trial in range(20):
            gens, _ = _random_zero_dimensional(self.rng, self.ctx)
            gb = groebner.buchberger(gens, groebner.MonomialOrder.wdegrevlex(self.ctx))
            p = _random_poly(self.rng, self.ctx, 6, 6)
            forms = [groebner.normal_form(p, gb, choose=choose) for choose in choosers]
            with self.subTest(trial=trial, p=str(p)):
                self.assertEqual(forms[1], forms[0])
                self.assertEqual(forms[2], forms[0])

    def test_quotient_dimension_does_not_depend_on_order(self):
        for trial in range(20):
            gens, dim = _random_zero_dimensional(self.rng, self.ctx)
            with self.subTest(trial=trial, gens=[str(g) for g in gens]):
                self.assertEqual(groebner.quotient_dimension(gens, groebner.MonomialOrder.lex(self.ctx)), dim)
                self.assertEqual(groebner.quotient_dimension(gens, groebner.MonomialOrder.wdegrevlex(self.ctx)), dim)


# ─── Hilbert series ───────────────────────────────────────────────────────────

class HilbertSeriesTest(SimpleTestCase):
    """Rational Hilbert series with weighted denominators"""

    def test_expand(self):
        hs = HilbertSeries((1, 0, 1), (2,))
        self.assertEqual(hs.expand(6), [1, 0, 2, 0, 2, 0, 2])

    def test_equivalent_forms(self):
        a = HilbertSeries((1, 0, 1), (2,))
        b = HilbertSeries((1, 0, 0, 0, -1), (2, 2))
        self.assertTrue(a.equivalent(b))
        self.assertFalse(a.equivalent(HilbertSeries((1,), (2,))))

    def test_over_other_weights(self):
        hs = HilbertSeries((1, 0, 1), (2,)).over((2, 4))
        self.assertEqual(hs.numerator, (1, 0, 1, 0, -1, 0, -1))
        self.assertEqual(hs.denominator, (2, 4))

    def test_printing(self):
        self.assertEqual(format_t_polynomial([1, 0, -2, 0, 1]), "1 - 2*t^2 + t^4")
        self.assertEqual(str(HilbertSeries((1, 0, 1), (2,))), "(1 + t^2)/(1 - t^2)")
        self.assertEqual(str(HilbertSeries((1,), (4, 6))), "1/((1 - t^4)*(1 - t^6))")

    def test_ideal_over_one_parameter(self):
        ctx = RingContext.of(("x", 2), ("v", 2, PARAM))
        hs = groebner.hilbert_series_ideal([ctx.parse("x^2 - v*x")], ctx)
        self.assertEqual(str(hs), "(1 + t^2)/(1 - t^2)")
        self.assertEqual(hs.over((2,)).rank, 2)

    def test_weighted_quotient(self):
        ctx = RingContext.of(("x", 2), ("c2", 4, PARAM), ("c3", 6, PARAM))
        hs = groebner.hilbert_series_ideal([ctx.parse("x^3 - 2*c2*x - c3")], ctx)
        self.assertEqual(str(hs), "(1 + t^2 + t^4)/((1 - t^4)*(1 - t^6))")

    def test_inhomogeneous_generator_raises(self):
        ctx = RingContext.of(("x", 2))
        with self.assertRaises(InhomogeneousError):
            groebner.hilbert_series_ideal([ctx.parse("x^2 - 1")], ctx)

    def test_monomial_quotient_matches_counting(self):
        ctx = RingContext.of(("x", 2), ("y", 4), ("z", 2))
        rng = np.random.default_rng(20240917)
        top = 24
        box = [range(top // w + 1) for w in ctx.weights]
        for trial in range(60):
            gens = [tuple(int(e) for e in rng.integers(0, 4, size=3)) for _ in range(int(rng.integers(1, 5)))]
            gens = [g for g in gens if any(g)] or [(1, 0, 0)]
            counts = [0] * (top + 1)
            for exp in itertools.product(*box):
                deg = sum(w * e for w, e in zip(ctx.weights, exp))
                if deg <= top and not any(groebner.monomial_divides(g, exp) for g in gens):
                    counts[deg] += 1
            with self.subTest(trial=trial, gens=gens):
                self.assertEqual(hilbert_series_monomial_quotient(gens, ctx).expand(top), counts)
