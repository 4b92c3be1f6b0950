"""
Unit tests for batch jobs, JSON records and the golden runner
=============================================================

Run with:
    python manage.py test tests
"""

import dataclasses

from pydantic import ValidationError
from django.test import SimpleTestCase

from cohomology import golden, zeroscheme
from cohomology.jobs import MATH_ERROR, USAGE_ERROR, JobSpec, run
from cohomology.parsing import parse_chart, parse_group
from cohomology.records import GraphRecord, PresentationRecord, RingRecord, VariableRecord


# ─── helpers ──────────────────────────────────────────────────────────────────

def _run(command, **options):
    return run(JobSpec(command=command, **options))


def _make_item(check, **params):
    return golden.GoldenItem(id=f"test-{check}", check=check, params=params)


# ─── Job specs ────────────────────────────────────────────────────────────────

class JobSpecTest(SimpleTestCase):
    """Option validation before any computation"""

    def test_group_is_required(self):
        with self.assertRaises(ValidationError):
            JobSpec(command="present", variety="pn:1")

    def test_variety_is_required_for_present(self):
        with self.assertRaises(ValidationError):
            JobSpec(command="present", group="borel:sl2")

    def test_values_are_required_for_fiber(self):
        with self.assertRaises(ValidationError):
            JobSpec(command="fiber", variety="pn:1", group="borel:sl2")

    def test_unknown_command(self):
        with self.assertRaises(ValidationError):
            JobSpec(command="integrate", group="borel:sl2")

    def test_conjugators_need_no_variety(self):
        job = JobSpec(command="unif-conj", group="borel:sl3", at="1,3")
        self.assertIsNone(job.variety)


# ─── Running jobs ─────────────────────────────────────────────────────────────

class RunTest(SimpleTestCase):
    """Exit statuses and text output"""

    def test_present_text(self):
        result = _run("present", variety="pn:1", group="borel:sl2")
        self.assertEqual(result.status, 0)
        self.assertIn("  x1^2 - v1*x1", result.output)
        self.assertIn("rank: 2", result.output)

    def test_present_json_round_trips(self):
        result = _run("present", variety="pn:2", group="kostant:sl3", format="json")
        record = PresentationRecord.parse(result.output)
        self.assertEqual(record.presentation.relations, ["x1^3 - 2*c2*x1 - c3"])
        self.assertEqual(record.hilbert_numerator, [1, 0, 1, 0, 1])
        (rel,) = record.relation_polynomials()
        self.assertEqual(rel.weighted_degree(), 6)
        gens = record.generator_polynomials()
        self.assertEqual(len(gens), 2)
        self.assertTrue(all(g.weighted_degree() is not None for g in gens))

    def test_paper_sign_negates_weight_two_parameters(self):
        result = _run("present", variety="pn:1", group="borel:sl2", paper_sign=True)
        self.assertIn("  x1^2 + v1*x1", result.output)

    def test_hilbert(self):
        result = _run("hilbert", variety="pn:2", group="kostant:sl3")
        self.assertEqual(result.status, 0)
        self.assertIn("degrees: 4, 6", result.output)
        self.assertIn("poincare: 1 + t^2 + t^4", result.output)
        self.assertIn("rank: 3", result.output)

    def test_fiber(self):
        result = _run("fiber", variety="pn:3", group="psl2-borel:4", at="1")
        self.assertEqual(result.output, "dim = 4")

    def test_components(self):
        result = _run("components", variety="pn:1", group="borel:sl2")
        self.assertEqual(result.output, "ζ0: x1 = 0\nζ1: x1 = v1")

    def test_kostant_conjugator(self):
        result = _run("kostant-conj", group="borel:sl2", at="2")
        self.assertEqual(result.status, 0)
        self.assertIn("c2 = 1", result.output)

    def test_gkm(self):
        result = _run("gkm", variety="pn:2", group="borel:sl3")
        self.assertEqual(result.status, 0)
        self.assertTrue(result.output.endswith("congruences: ok"))

    def test_graph_json(self):
        result = _run("gkm", variety="pn:1", group="borel:sl2", format="json")
        record = GraphRecord.parse(result.output)
        self.assertEqual(len(record.edges), 1)
        self.assertEqual(record.edges[0].form, "v1")

    def test_size_mismatch_is_a_usage_error(self):
        result = _run("present", variety="pn:2", group="borel:sl2")
        self.assertEqual(result.status, USAGE_ERROR)

    def test_malformed_variety_is_a_usage_error(self):
        result = _run("present", variety="pn:x", group="borel:sl2")
        self.assertEqual(result.status, USAGE_ERROR)
        self.assertIn("malformed variety", result.error)

    def test_wrong_number_of_values_is_a_usage_error(self):
        result = _run("fiber", variety="pn:2", group="borel:sl3", at="1")
        self.assertEqual(result.status, USAGE_ERROR)

    def test_conjugator_needs_torus_family(self):
        result = _run("kostant-conj", group="kostant:sl2", at="1")
        self.assertEqual(result.status, USAGE_ERROR)

    def test_gkm_needs_torus_family(self):
        result = _run("gkm", variety="pn:2", group="kostant:sl3")
        self.assertEqual(result.status, USAGE_ERROR)
        self.assertIn("e + t family", result.error)

    def test_non_regular_value_is_a_math_error(self):
        result = _run("unif-conj", group="borel:sl3", at="1,1")
        self.assertEqual(result.status, MATH_ERROR)
        self.assertIn("not regular", result.error)


# ─── Records ──────────────────────────────────────────────────────────────────

class RecordTest(SimpleTestCase):
    """pydantic validation of the JSON records"""

    def test_weight_must_be_positive_even(self):
        with self.assertRaises(ValidationError):
            VariableRecord(name="x", weight=3)

    def test_ring_record_builds_context(self):
        ring = RingRecord(
            params=[VariableRecord(name="t", weight=4)],
            cells=[VariableRecord(name="x1", weight=2)],
        )
        ctx = ring.context()
        self.assertEqual(ctx.names, ("x1", "t"))
        self.assertEqual(ctx.params, ("t",))

    def test_extra_fields_are_rejected(self):
        with self.assertRaises(ValidationError):
            VariableRecord(name="x", weight=2, role="cell")

    def test_presentation_without_rank(self):
        ideal = zeroscheme.zero_scheme_ideal(parse_chart("pn:1"), parse_group("borel:sl2"))
        pres = dataclasses.replace(zeroscheme.present(ideal), poincare=None, rank=None)
        record = PresentationRecord.build(ideal, pres)
        self.assertIsNone(record.rank)
        again = PresentationRecord.parse(record.to_json())
        self.assertIsNone(again.hilbert_numerator)
        self.assertEqual(again.presentation.relations, ["x1^2 - v1*x1"])


# ─── Golden runner ────────────────────────────────────────────────────────────

class GoldenRunnerTest(SimpleTestCase):
    """Loading items and reporting failures"""

    def test_default_file_loads(self):
        ids = [item.id for item in golden.load_items()]
        self.assertIn("p2-kostant", ids)
        self.assertEqual(len(ids), len(set(ids)))
        self.assertTrue(all(item.check in golden.CHECKS for item in golden.load_items()))

    def test_passing_item(self):
        result = golden.run_item(_make_item("pn_products", family="borel", sizes=[1, 2]))
        self.assertTrue(result.ok, result.detail)

    def test_failing_item_reports_the_identity(self):
        item = _make_item("relations", variety="pn:1", group="borel:sl2", relations=["x1^2 + v1*x1"])
        result = golden.run_item(item)
        self.assertFalse(result.ok)
        self.assertIn("violated", result.detail)

    def test_paper_sign_item(self):
        item = golden.GoldenItem(
            id="p1-paper",
            check="relations",
            sign="paper",
            params={"variety": "pn:1", "group": "borel:sl2", "relations": ["x1^2 + v1*x1"]},
        )
        self.assertTrue(golden.run_item(item).ok)

    def test_pairs_load_as_two_strings(self):
        for item in golden.load_items():
            for pair in item.params.get("pairs", []):
                with self.subTest(item=item.id, pair=pair):
                    self.assertEqual(len(pair), 2)
                    self.assertTrue(all(isinstance(s, str) for s in pair))

    def test_crashing_item_is_a_failure_row(self):
        item = _make_item("homogeneity", pairs=[["gr:2", 4, "psl2-borel:4"]])
        with self.assertLogs("cohomology.golden", level="ERROR"):
            result = golden.run_item(item)
        self.assertFalse(result.ok)
        self.assertIn("ValueError", result.detail)

    def test_unknown_id(self):
        with self.assertRaises(KeyError):
            golden.golden_suite(only=["no-such-item"])
