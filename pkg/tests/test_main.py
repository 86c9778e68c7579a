import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from ainfty_toolkit.main import run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue()


class TestCommandLine(unittest.TestCase):
    def test_check_reports_torsion(self):
        code, out = invoke("check", "examples/z2-resolution", "--format", "json")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertTrue(report["passed"])
        self.assertEqual(report["sections"]["ring"], "Z")
        self.assertEqual(report["sections"]["cohomology"]["X->X"]["0"], "Z/2")

    def test_empty_category(self):
        code, out = invoke("cohomology", "examples/empty", "--format", "json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["sections"]["homs"], {})

    def test_invalid_ring(self):
        code, _ = invoke("check", "examples/k-point", "--ring", "F4")
        self.assertEqual(code, 2)

    def test_missing_file_names_its_location(self):
        code, out = invoke("check", "no/such/category.yaml", "--format", "json")
        self.assertEqual(code, 2)
        report = json.loads(out)
        self.assertFalse(report["passed"])
        self.assertIn("category.yaml", report["sections"]["location"])

    def test_unknown_verb(self):
        code, _ = invoke("frobnicate")
        self.assertEqual(code, 2)

    def test_output_is_deterministic(self):
        first = invoke("check", "examples/dual-numbers", "--ring", "F5", "--arity", "3")
        second = invoke("check", "examples/dual-numbers", "--ring", "F5", "--arity", "3")
        self.assertEqual(first, second)
        self.assertTrue(first[1].startswith("check: PASS"))

    def test_verify_one_lemma(self):
        code, out = invoke("verify-paper", "--lemma", "relations", "--format", "json")
        self.assertEqual(code, 0)
        sections = json.loads(out)["sections"]
        self.assertEqual(list(sections), ["relations"])
        self.assertTrue(sections["relations"]["mutation_detected"])

    def test_unknown_lemma(self):
        code, out = invoke("verify-paper", "--lemma", "nope")
        self.assertEqual(code, 2)
        self.assertIn("unknown lemma", out)

    def test_report_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "run.json"
            code, _ = invoke("cohomology", "examples/k-point", "--output", str(path))
            self.assertEqual(code, 0)
            data = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(data["verb"], "cohomology")
        self.assertEqual(data["sections"]["homs"]["X->X"]["0"], "F_2")


if __name__ == "__main__":
    unittest.main()
