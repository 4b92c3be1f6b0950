"""
Unit tests for the polynomial layer
===================================
Ring contexts, polynomial arithmetic, substitution, printing and the text
grammars.

Run with:
    python manage.py test tests
"""

from fractions import Fraction

import numpy as np
import sympy
from django.test import SimpleTestCase

from cohomology.charts import ChartDescriptor
from cohomology.exceptions import (
    ContextMismatch,
    InhomogeneousError,
    OddWeightError,
    ParseError,
    UnboundVariable,
)
from cohomology.parsing import parse_chart, parse_group, parse_values
from cohomology.polyalg import (
    CELL,
    PARAM,
    Polynomial,
    RationalFunction,
    RingContext,
    Variable,
    format_rational,
    poly_arith,
    substitute,
    weighted_degree,
)


# ─── helpers ──────────────────────────────────────────────────────────────────

def _make_ctx():
    return RingContext.of(("x", 2), ("y", 4), ("v", 2, PARAM))


def _random_poly(rng, ctx, terms=4, degree=3):
    exps = rng.integers(0, degree + 1, size=(terms, ctx.nvars))
    coeffs = rng.integers(-5, 6, size=terms)
    return Polynomial(ctx, {tuple(int(e) for e in exp): int(c) for exp, c in zip(exps, coeffs)})


def _sympy(p):
    """The same polynomial as a sympy expression."""
    syms = {name: sympy.Symbol(name) for name in p.ctx.names}
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for name, e in zip(p.ctx.names, exp):
            term *= syms[name] ** e
        expr += term
    return sympy.expand(expr)


# ─── Ring contexts ────────────────────────────────────────────────────────────

class RingContextTest(SimpleTestCase):
    """Variable order, roles and weights"""

    def test_roles_split_cells_and_params(self):
        ctx = _make_ctx()
        self.assertEqual(ctx.cells, ("x", "y"))
        self.assertEqual(ctx.params, ("v",))
        self.assertEqual(ctx.weight("y"), 4)

    def test_odd_weight_is_rejected(self):
        with self.assertRaises(OddWeightError):
            RingContext.of(("x", 3))

    def test_zero_weight_is_rejected(self):
        with self.assertRaises(OddWeightError):
            RingContext((Variable("x", 0, CELL),))

    def test_duplicate_names_are_rejected(self):
        with self.assertRaises(ContextMismatch):
            RingContext.of(("x", 2), ("x", 4))

    def test_restrict_keeps_context_order(self):
        ctx = _make_ctx()
        self.assertEqual(ctx.restrict(["v", "x"]).names, ("x", "v"))

    def test_unknown_variable_raises(self):
        with self.assertRaises(ContextMismatch):
            _make_ctx().var("q")


# ─── Polynomials ──────────────────────────────────────────────────────────────

class PolynomialArithmeticTest(SimpleTestCase):
    """Ring operations agree with sympy"""

    def setUp(self):
        self.ctx = _make_ctx()
        self.x, self.y, self.v = self.ctx.var("x"), self.ctx.var("y"), self.ctx.var("v")

    def test_difference_of_squares(self):
        self.assertEqual((self.x + self.v) * (self.x - self.v), self.x ** 2 - self.v ** 2)

    def test_product_matches_sympy(self):
        p = (self.x ** 2 - 3 * self.y + self.v * self.x / 2) * (self.x - 2 * self.v) ** 3
        X, Y, V = sympy.symbols("x y v")
        expected = sympy.expand((X ** 2 - 3 * Y + V * X / 2) * (X - 2 * V) ** 3)
        self.assertEqual(sympy.expand(_sympy(p) - expected), 0)

    def test_cancellation_leaves_zero(self):
        p = self.x * self.y - self.y * self.x
        self.assertTrue(p.is_zero())
        self.assertEqual(str(p), "0")

    def test_scalar_on_the_left(self):
        self.assertEqual(1 - self.x, -(self.x - 1))
        self.assertEqual(Fraction(1, 2) + self.x, self.x + Fraction(1, 2))

    def test_mixing_contexts_raises(self):
        other = RingContext.of(("x", 2))
        with self.assertRaises(ContextMismatch):
            self.x + other.var("x")

    def test_weighted_degree(self):
        self.assertEqual((self.y + self.x * self.v).weighted_degree(), 4)
        self.assertIsNone((self.y + self.x).weighted_degree())

    def test_zero_has_no_degree(self):
        with self.assertRaises(InhomogeneousError):
            self.ctx.zero().weighted_degree()

    def test_functional_forms(self):
        self.assertEqual(poly_arith(self.x, self.v, "mul"), self.x * self.v)
        self.assertEqual(poly_arith(self.x, self.v, "sub"), self.x - self.v)
        self.assertEqual(weighted_degree(self.x * self.y), 6)
        self.assertEqual(substitute(self.x + self.y, {"y": 1}), self.x + 1)
        with self.assertRaises(ValueError):
            poly_arith(self.x, self.v, "div")

    def test_ring_axioms_on_random_polynomials(self):
        rng = np.random.default_rng(20240917)
        for trial in range(30):
            a, b, c = (_random_poly(rng, self.ctx) for _ in range(3))
            with self.subTest(trial=trial):
                self.assertEqual(a * (b + c), a * b + a * c)
                self.assertEqual((a + b) * c, a * c + b * c)
                self.assertEqual((a * b) * c, a * (b * c))
                self.assertEqual(a * b, b * a)

    def test_degree_in_and_variables(self):
        p = self.x ** 3 * self.v + self.y
        self.assertEqual(p.degree_in("x"), 3)
        self.assertEqual(p.degree_in("v"), 1)
        self.assertEqual(p.variables(), {"x", "y", "v"})


class PolynomialNormalizationTest(SimpleTestCase):
    """Canonical printing and primitive parts"""

    def setUp(self):
        self.ctx = _make_ctx()
        self.x, self.y, self.v = self.ctx.var("x"), self.ctx.var("y"), self.ctx.var("v")

    def test_params_print_first_in_a_monomial(self):
        self.assertEqual(str(2 * self.x * self.v - 3), "2*v*x - 3")

    def test_terms_sorted_by_degree_then_lex(self):
        self.assertEqual(str(self.x - self.v * self.v * self.x + self.y), "-v^2*x + y + x")

    def test_rational_coefficients(self):
        self.assertEqual(str(self.x * Fraction(1, 2) - Fraction(3, 4)), "1/2*x - 3/4")

    def test_primitive_clears_denominators(self):
        p = self.x / 2 - self.v / 3
        self.assertEqual(str(p.primitive()), "3*x - 2*v")

    def test_primitive_makes_leading_coefficient_positive(self):
        self.assertEqual(str((self.v - 2 * self.x).primitive()), "2*x - v")

    def test_format_rational(self):
        self.assertEqual(format_rational(Fraction(-6, 4)), "-3/2")
        self.assertEqual(format_rational(5), "5")


class SubstitutionTest(SimpleTestCase):
    """Ring maps, evaluation and re-embedding"""

    def setUp(self):
        self.ctx = _make_ctx()
        self.x, self.y, self.v = self.ctx.var("x"), self.ctx.var("y"), self.ctx.var("v")

    def test_substitute_polynomial(self):
        p = self.x ** 2 + self.v * self.x
        self.assertEqual(p.substitute({"x": self.v}), 2 * self.v ** 2)

    def test_substitute_rational(self):
        p = self.x * self.y - self.v
        self.assertEqual(p.substitute({"x": Fraction(1, 2)}), self.y / 2 - self.v)

    def test_substitute_into_smaller_context(self):
        small = self.ctx.restrict(["v"])
        p = self.x * self.v + self.y
        image = p.substitute({"x": small.var("v"), "y": 0}, small)
        self.assertEqual(image, small.var("v") ** 2)

    def test_substitute_without_binding_raises(self):
        small = self.ctx.restrict(["v"])
        with self.assertRaises(UnboundVariable):
            (self.x + self.v).substitute({}, small)

    def test_evaluate(self):
        p = self.x ** 2 - self.v * self.y / 3
        self.assertEqual(p.evaluate({"x": 2, "y": 3, "v": Fraction(1, 2)}), Fraction(7, 2))

    def test_evaluate_missing_value_raises(self):
        with self.assertRaises(UnboundVariable):
            (self.x + self.v).evaluate({"x": 1})

    def test_to_context_by_name(self):
        small = self.ctx.restrict(["x", "v"])
        self.assertEqual((self.x + self.v).to_context(small), small.var("x") + small.var("v"))
        with self.assertRaises(ContextMismatch):
            (self.x + self.y).to_context(small)


class RationalFunctionTest(SimpleTestCase):
    """Equality by cross multiplication"""

    def setUp(self):
        self.ctx = _make_ctx()
        self.x, self.v = self.ctx.var("x"), self.ctx.var("v")

    def test_equal_after_cancelling(self):
        a = RationalFunction(self.ctx.one(), self.v)
        b = RationalFunction(self.x, self.x * self.v)
        self.assertTrue(a == b)

    def test_zero_denominator_raises(self):
        with self.assertRaises(ZeroDivisionError):
            RationalFunction(self.x, self.ctx.zero())

    def test_evaluate(self):
        r = RationalFunction(self.x + 1, self.v)
        self.assertEqual(r.evaluate({"x": 1, "v": 4}), Fraction(1, 2))


# ─── Grammars ─────────────────────────────────────────────────────────────────

class ParsePolynomialTest(SimpleTestCase):
    """The canonical polynomial text format"""

    def setUp(self):
        self.ctx = _make_ctx()

    def test_print_parse_agree(self):
        text = "x^2 + 1/2*v*x - 3"
        self.assertEqual(str(self.ctx.parse(text)), text)

    def test_unicode_minus(self):
        self.assertEqual(self.ctx.parse("x − v"), self.ctx.var("x") - self.ctx.var("v"))

    def test_leading_sign_and_repeated_factors(self):
        self.assertEqual(self.ctx.parse("-x*x*v"), -(self.ctx.var("x") ** 2) * self.ctx.var("v"))

    def test_unknown_variable_reports_position(self):
        with self.assertRaises(ParseError) as cm:
            self.ctx.parse("x + q")
        self.assertEqual(cm.exception.position, 4)

    def test_dangling_operator(self):
        with self.assertRaises(ParseError):
            self.ctx.parse("x +")


class ParseDescriptorTest(SimpleTestCase):
    """Variety, group and value grammars"""

    def test_chart_descriptors_print_back(self):
        for text in ["pn:3", "gr:2,4", "flag:3", "flag:1,3@4", "bs:1,2,1@sl3"]:
            self.assertEqual(str(parse_chart(text)), text)

    def test_full_flag_by_dimensions(self):
        self.assertEqual(str(parse_chart("flag:1,2,3@4")), "flag:4")
        self.assertTrue(parse_chart("flag:4").is_full_flag)

    def test_projective_is_acted_on_by_sl_n_plus_one(self):
        self.assertEqual(parse_chart("pn:2"), ChartDescriptor.projective(2))
        self.assertEqual(parse_chart("pn:2").n, 3)

    def test_bad_charts(self):
        for text in ["pn:0", "gr:4,4", "flag:2,1@4", "bs:3@sl3", "torus:2", "pn:"]:
            with self.subTest(text=text), self.assertRaises(ParseError):
                parse_chart(text)

    def test_groups(self):
        self.assertEqual(str(parse_group("borel:sl3")), "borel:sl3")
        self.assertEqual(parse_group("borel:sl3").params, ("v1", "v2"))
        self.assertEqual(parse_group("kostant:sl4").params, ("c2", "c3", "c4"))
        self.assertEqual(parse_group("psl2-borel:4").params, ("v",))
        self.assertEqual(parse_group("psl2-kostant:4").params, ("t",))

    def test_bad_groups(self):
        for text in ["borel:sl1", "weyl:sl3", "kostant"]:
            with self.subTest(text=text), self.assertRaises(ParseError):
                parse_group(text)

    def test_values(self):
        self.assertEqual(parse_values("1/2, -3,4"), [Fraction(1, 2), Fraction(-3), Fraction(4)])
        with self.assertRaises(ParseError):
            parse_values("1,,2")
