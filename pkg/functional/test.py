"""
End-to-end tests for eqcoh
==========================
Drives the management commands the way a shell would and runs the golden
acceptance file.

Run with:
    python manage.py test functional
"""

import json
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from cohomology.golden import load_items


# ─── helpers ───────────────────────────────────────────────────────────────────

def _eqcoh(*args):
    out = StringIO()
    call_command("eqcoh", *args, stdout=out)
    return out.getvalue()


def _golden(*args):
    out = StringIO()
    call_command("golden", *args, no_color=True, stdout=out)
    return out.getvalue()


# ═══════════════════════════════════════════════════════════════════════════════
# 1.  eqcoh command
# ═══════════════════════════════════════════════════════════════════════════════

class EqcohCommandTests(SimpleTestCase):
    """One job per call, text and JSON output."""

    def test_01_present_grassmannian(self):
        out = _eqcoh("present", "--variety", "gr:2,4", "--group", "psl2-borel:4", "--paper-sign")
        self.assertIn("kept: x1, y1, v", out)
        self.assertIn("rank: 6", out)

    def test_02_present_json(self):
        out = _eqcoh("present", "--variety", "flag:3", "--group", "kostant:sl3", "--format", "json")
        record = json.loads(out)
        self.assertEqual(record["rank"], 6)
        self.assertEqual(record["ring"]["params"], [{"name": "c2", "weight": 4}, {"name": "c3", "weight": 6}])

    def test_03_fiber_at_special_value(self):
        out = _eqcoh("fiber", "--variety", "gr:2,4", "--group", "psl2-kostant:4", "--at", "0")
        self.assertEqual(out.strip(), "dim = 6")

    def test_04_components_of_flag3(self):
        out = _eqcoh("components", "--variety", "flag:3", "--group", "borel:sl3")
        self.assertEqual(len(out.strip().splitlines()), 6)

    def test_05_unipotent_conjugator(self):
        out = _eqcoh("unif-conj", "--group", "borel:sl3", "--at", "1,3")
        self.assertTrue(out.startswith("M = [[1, 1, 1/6]"))


class EqcohExitStatusTests(SimpleTestCase):
    """1 for usage errors, 2 for failed mathematics."""

    def test_01_unknown_command(self):
        with self.assertRaises(CommandError) as cm:
            _eqcoh("integrate", "--group", "borel:sl2")
        self.assertEqual(cm.exception.returncode, 1)

    def test_02_missing_group(self):
        with self.assertRaises(CommandError) as cm:
            _eqcoh("present", "--variety", "pn:2")
        self.assertEqual(cm.exception.returncode, 1)

    def test_03_malformed_group(self):
        with self.assertRaises(CommandError) as cm:
            _eqcoh("present", "--variety", "pn:2", "--group", "borel:3x")
        self.assertEqual(cm.exception.returncode, 1)

    def test_04_non_regular_torus_value(self):
        with self.assertRaises(CommandError) as cm:
            _eqcoh("unif-conj", "--group", "borel:sl3", "--at", "2,2")
        self.assertEqual(cm.exception.returncode, 2)


# ═══════════════════════════════════════════════════════════════════════════════
# 2.  Golden acceptance file
# ═══════════════════════════════════════════════════════════════════════════════

class GoldenCommandTests(SimpleTestCase):
    """Every item of the golden file passes."""

    def test_01_selected_items_as_json(self):
        out = _golden("--only", "p2-kostant", "flag3-kostant", "--json")
        results = json.loads(out)
        self.assertEqual([r["id"] for r in results], ["p2-kostant", "flag3-kostant"])
        self.assertTrue(all(r["ok"] for r in results), results)

    def test_02_unknown_item(self):
        with self.assertRaises(CommandError) as cm:
            _golden("--only", "no-such-item")
        self.assertEqual(cm.exception.returncode, 1)

    def test_03_full_suite(self):
        out = _golden()
        lines = out.strip().splitlines()
        self.assertEqual(len(lines), len(load_items()))
        self.assertTrue(all(line.startswith("PASS") for line in lines), out)
