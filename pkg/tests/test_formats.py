import tempfile
import unittest
from pathlib import Path

from ainfty_toolkit.catalog import (
    STANDARD_EXAMPLES,
    dual_numbers,
    poset_category,
    unit_perturbation,
    z2_endomorphism,
    z2_resolution,
)
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.errors import ParseError
from ainfty_toolkit.formats import (
    load_category,
    parse_category,
    parse_functor,
    resolve_reference,
    same_presentation,
    serialize_category,
    serialize_functor,
)
from ainfty_toolkit.utils.inputs import DATA_DIR, bundled_names, resolve_category, resolve_functor

F2 = Ring.parse("F2")
F5 = Ring.parse("F5")


class TestCategoryFiles(unittest.TestCase):
    def test_serialized_examples_parse_back(self):
        for name, build in STANDARD_EXAMPLES.items():
            with self.subTest(example=name):
                A = build(F5)
                B = parse_category(serialize_category(A))
                self.assertTrue(same_presentation(A, B))
                self.assertEqual(B.name, A.name)

    def test_torsion_orders_survive(self):
        A = z2_endomorphism()
        B = parse_category(serialize_category(A))
        self.assertEqual(B.orders, A.orders)
        self.assertFalse(B.is_free())

    def test_bundled_files_match_builders(self):
        self.assertTrue(same_presentation(load_category(DATA_DIR / "z2-resolution.yaml"), z2_resolution()))
        self.assertTrue(same_presentation(load_category(DATA_DIR / "poset-1.yaml", F2), poset_category(F2, 1)))
        self.assertTrue(same_presentation(load_category(DATA_DIR / "dual-numbers.yaml", F5), dual_numbers(F5)))

    def test_file_ring_wins(self):
        A = load_category(DATA_DIR / "z2-resolution.yaml", F5)
        self.assertEqual(A.ring.name, "Z")

    def test_missing_ring(self):
        with self.assertRaises(ParseError):
            load_category(DATA_DIR / "poset-1.yaml")

    def test_empty_category(self):
        A = resolve_category("examples/empty", F2)
        self.assertEqual(A.objects(), [])

    def test_bad_reference_has_location(self):
        text = serialize_category(dual_numbers(F2)).replace("X->X:eps", "X->X:delta", 1)
        with self.assertRaises(ParseError) as ctx:
            parse_category(text, source="broken.yaml")
        self.assertTrue(ctx.exception.location.startswith("broken.yaml"))

    def test_invalid_yaml(self):
        with self.assertRaises(ParseError):
            parse_category("objects: [X\n", F2)

    def test_not_a_mapping(self):
        with self.assertRaises(ParseError):
            parse_category("- X\n- Y\n", F2)

    def test_wrong_degree_is_a_parse_error(self):
        text = """
objects: [X]
homs:
  - {source: X, target: X, basis: [{label: a, degree: 0}, {label: b, degree: 1}]}
operations:
  - {inputs: ["X->X:a", "X->X:a"], output: {"X->X:b": 1}}
"""
        with self.assertRaises(ParseError):
            parse_category(text, F2)

    def test_missing_file(self):
        with self.assertRaises(ParseError):
            load_category("/nonexistent/category.yaml", F2)

    def test_resolve_reference(self):
        A = unit_perturbation(F5)
        gen = resolve_reference(A, "X -> X : beta")
        self.assertEqual(gen.degree, -1)
        with self.assertRaises(ParseError):
            resolve_reference(A, "X->X:missing")
        with self.assertRaises(ParseError):
            resolve_reference(A, "beta")


class TestBundledReferences(unittest.TestCase):
    def test_names_include_files_and_builders(self):
        names = bundled_names()
        self.assertIn("iso-pair", names)
        self.assertIn("m3-deformed", names)

    def test_unknown_example(self):
        with self.assertRaises(ParseError):
            resolve_category("examples/nothing-here", F2)

    def test_relative_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            Path(tmp, "point.yaml").write_text(serialize_category(STANDARD_EXAMPLES["k-point"](F2)), encoding="utf-8")
            A = resolve_category("point.yaml", F2, Path(tmp))
            self.assertEqual(A.objects(), ["X"])


class TestFunctorFiles(unittest.TestCase):
    def test_bundled_functor(self):
        F, A, B = resolve_functor("examples/collapse", F2)
        self.assertEqual(A.name, "poset-1")
        self.assertEqual(B.name, "k-point")
        self.assertEqual(F.object_map, {"0": "X", "1": "X"})

    def test_functor_text_parses_back(self):
        F, A, B = resolve_functor("examples/collapse", F2)
        G = parse_functor(serialize_functor(F), A, B)
        self.assertEqual(G.components, F.components)
        self.assertEqual(G.object_map, F.object_map)

    def test_functor_needs_endpoints(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp, "f.yaml")
            path.write_text('objects: {"0": X}\n', encoding="utf-8")
            with self.assertRaises(ParseError):
                resolve_functor(str(path), F2)


if __name__ == "__main__":
    unittest.main()
