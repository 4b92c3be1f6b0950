"""
Unit tests for moment graphs
============================

Run with:
    python manage.py test tests
"""

from django.test import SimpleTestCase

from cohomology import gkm, zeroscheme
from cohomology.exceptions import IdentityViolation
from cohomology.parsing import parse_chart, parse_group


# ─── helpers ──────────────────────────────────────────────────────────────────

def _make_ideal(variety, group):
    return zeroscheme.zero_scheme_ideal(parse_chart(variety), parse_group(group))


class MomentGraphTest(SimpleTestCase):
    """Projective moment graphs and edge congruences"""

    def setUp(self):
        self.graph = gkm.moment_graph_pn(2)
        self.ctx = self.graph.ctx

    def test_complete_graph_on_fixed_points(self):
        self.assertEqual(self.graph.vertices, ("ζ0", "ζ1", "ζ2"))
        self.assertEqual(len(self.graph.edges), 3)
        self.assertEqual([str(e.form) for e in self.graph.edges], ["v1", "v2", "v1 - v2"])
        self.assertEqual(self.graph.degree(0), 2)
        self.assertEqual(self.graph.rank, 2)

    def test_vanishes_on(self):
        v1, v2 = self.ctx.var("v1"), self.ctx.var("v2")
        self.assertTrue(gkm.vanishes_on(v1 * v1 - v2 * v2, v1 - v2))
        self.assertFalse(gkm.vanishes_on(v1 + v2, v1 - v2))

    def test_localized_coordinate_is_a_class(self):
        klass = gkm.localize_presentation(_make_ideal("pn:2", "borel:sl3"), "x1")
        self.assertTrue(gkm.is_gkm_class(self.graph, klass).ok)

    def test_failing_edges_are_reported(self):
        v2 = self.ctx.var("v2")
        zero = self.ctx.zero()
        check = gkm.is_gkm_class(self.graph, gkm.PiecewiseClass((zero, v2, zero)))
        self.assertFalse(check.ok)
        self.assertEqual(check.failing, (("ζ0", "ζ1"), ("ζ1", "ζ2")))

    def test_class_length_must_match(self):
        with self.assertRaises(IdentityViolation):
            gkm.is_gkm_class(self.graph, gkm.PiecewiseClass((self.ctx.zero(),)))


class CollisionGraphTest(SimpleTestCase):
    """Graphs read off fixed-point components"""

    def test_p2_collision_graph_matches_moment_graph(self):
        ideal = _make_ideal("pn:2", "borel:sl3")
        comps = zeroscheme.components_over_regular(ideal)
        graph = gkm.collision_graph(comps, ideal.ctx.restrict(ideal.params))
        self.assertEqual(graph.vertices, ("ζ0", "ζ1", "ζ2"))
        self.assertEqual(sorted(str(e.form) for e in graph.edges), ["v1", "v1 - v2", "v2"])

    def test_p1_localization(self):
        klass = gkm.localize_presentation(_make_ideal("pn:1", "borel:sl2"), "x1")
        self.assertEqual([str(v) for v in klass.values], ["0", "v1"])


class PiecewiseDimensionTest(SimpleTestCase):
    """Piecewise polynomials against Hilbert coefficients"""

    def test_p1(self):
        graph = gkm.moment_graph_pn(1)
        self.assertEqual([gkm.piecewise_dimension(graph, d) for d in range(4)], [1, 2, 2, 2])

    def test_p2_matches_hilbert_series(self):
        graph = gkm.moment_graph_pn(2)
        pres = zeroscheme.present(_make_ideal("pn:2", "borel:sl3"))
        coeffs = pres.hilbert.expand(8)
        for d in range(5):
            with self.subTest(degree=d):
                self.assertEqual(gkm.piecewise_dimension(graph, d), coeffs[2 * d])
