import json
import tempfile
import unittest
from pathlib import Path

from ainfty_toolkit.errors import UsageError
from ainfty_toolkit.routers.reports_router import fetch_run_by_id, fetch_runs, store_run, summary
from ainfty_toolkit.utils.database import get_engine, get_session, init_db
from ainfty_toolkit.utils.reports import Report, render, to_text, write_report


def make_report(verb: str = "check", passed: bool = True) -> Report:
    return Report(
        schema_version=1,
        verb=verb,
        options={"ring": "F2", "window": [-2, 1]},
        passed=passed,
        exit_code=0 if passed else 1,
        sections={"category": "k-point", "homs": {"X->X": {"0": "F_2"}}, "objects": ["X"]},
    )


class TestRunStore(unittest.TestCase):
    def setUp(self):
        engine = get_engine("sqlite://")
        init_db(engine)
        self.session = next(get_session(engine))

    def tearDown(self):
        self.session.close()

    def test_store_and_fetch(self):
        record = store_run(self.session, ["examples/k-point"], make_report())
        self.assertIsNotNone(record.id)
        fetched = fetch_run_by_id(self.session, record.id)
        self.assertEqual(fetched.inputs, "examples/k-point")
        self.assertEqual(json.loads(fetched.report)["sections"]["category"], "k-point")
        self.assertEqual(summary(fetched)["verb"], "check")

    def test_newest_first_and_verb_filter(self):
        first = store_run(self.session, ["a"], make_report("check"))
        second = store_run(self.session, ["b"], make_report("nerve", passed=False))
        runs = fetch_runs(self.session)
        self.assertEqual([r.id for r in runs], [second.id, first.id])
        self.assertEqual([r.id for r in fetch_runs(self.session, "nerve")], [second.id])
        self.assertFalse(fetch_runs(self.session, "nerve")[0].passed)

    def test_missing_run(self):
        with self.assertRaises(UsageError):
            fetch_run_by_id(self.session, 999)


class TestRendering(unittest.TestCase):
    def test_text(self):
        text = to_text(make_report())
        self.assertTrue(text.startswith("check: PASS (exit 0)"))
        self.assertIn("  X->X:", text)
        self.assertIn("- X", text)

    def test_failure_with_error(self):
        report = make_report(passed=False)
        report.error = "something broke"
        self.assertIn("error: something broke", to_text(report))

    def test_json_is_deterministic(self):
        report = make_report()
        self.assertEqual(render(report, "json"), render(report, "json"))
        self.assertEqual(json.loads(render(report, "json"))["verb"], "check")

    def test_written_report_is_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "report.json"
            write_report(make_report(), path)
            data = json.loads(path.read_text(encoding="utf-8"))
        self.assertTrue(data["passed"])
        self.assertNotIn("error", data)


if __name__ == "__main__":
    unittest.main()
