import unittest

from ainfty_toolkit.ainfty import Gen, PresentedCategory
from ainfty_toolkit.catalog import (
    dual_numbers,
    field_point,
    perturbed_unit,
    poset_category,
    unit_perturbation,
    z2_endomorphism,
    z2_resolution,
)
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.errors import UsageError
from ainfty_toolkit.localization import localize
from ainfty_toolkit.routers.category_router import check_category, hom_table, unit_table
from ainfty_toolkit.routers.functor_router import functor_summary, hochschild_summary
from ainfty_toolkit.routers.localization_router import inverted_elements, localization_summary
from ainfty_toolkit.routers.nerve_router import horn_table, nerve_summary, build_nerve
from ainfty_toolkit.routers.verify_router import LEMMAS, mutated
from ainfty_toolkit.utils.inputs import resolve_functor
from ainfty_toolkit.utils.settings import RunOptions

F2 = Ring.parse("F2")
F5 = Ring.parse("F5")


def options(**overrides) -> RunOptions:
    values = {"ring": "F2", "truncation": 2, "window": (-2, 1), "arity": 3, "nerve_dimension": 2}
    values.update(overrides)
    return RunOptions(**values)


class TestCategoryRouter(unittest.TestCase):
    def test_hom_table_skips_zero_homs(self):
        table = hom_table(poset_category(F2, 1), (0, 0))
        self.assertEqual(sorted(table), ["0->0", "0->1", "1->1"])
        self.assertEqual(table["0->1"], {"0": "F_2"})

    def test_units_of_a_non_free_category(self):
        table = unit_table(z2_endomorphism(), 3)
        self.assertEqual(table["X"], {"recorded": True, "unit": True, "strict": True})

    def test_non_strict_recorded_unit(self):
        A = unit_perturbation(F5)
        A.units["X"] = perturbed_unit(A)
        entry = unit_table(A, 3)["X"]
        self.assertTrue(entry["unit"])
        self.assertFalse(entry["strict"])

    def test_missing_unit(self):
        one = Gen("X", "X", "1", 0)
        bare = PresentedCategory(F2, ["X"], {("X", "X"): [one]}, {(one, one): {one: 1}})
        self.assertEqual(unit_table(bare, 3), {"X": {"recorded": False}})

    def test_check_category(self):
        passed, sections = check_category(dual_numbers(F5), options(ring="F5"))
        self.assertTrue(passed)
        self.assertTrue(sections["relations"]["passed"])
        self.assertEqual(sections["objects"], ["X"])
        self.assertNotIn("note", sections)

    def test_check_notes_non_free_homs(self):
        passed, sections = check_category(z2_endomorphism(), options(ring="Z"))
        self.assertTrue(passed)
        self.assertIn("note", sections)
        self.assertFalse(sections["projectivity"]["projective"])


class TestLocalizationRouter(unittest.TestCase):
    def test_inverted_defaults_to_units(self):
        A = field_point(F2)
        self.assertEqual(inverted_elements(A, []), [A.units["X"]])
        self.assertEqual(inverted_elements(A, ["X->X:1"]), [A.units["X"]])

    def test_inverted_needs_units_or_references(self):
        one = Gen("X", "X", "1", 0)
        bare = PresentedCategory(F2, ["X"], {("X", "X"): [one]}, {(one, one): {one: 1}})
        with self.assertRaises(UsageError):
            inverted_elements(bare, [])

    def test_summary(self):
        A = field_point(F2)
        passed, sections = localization_summary(localize(A, [A.units["X"]], 2), options())
        self.assertTrue(passed)
        entry = sections["homs"]["X->X"]
        self.assertTrue(entry["respects_filtration"])
        self.assertEqual(entry["graded_acyclic"], {"2": True})


class TestNerveRouter(unittest.TestCase):
    def test_point_over_f2(self):
        passed, sections = nerve_summary(field_point(F2), 2)
        self.assertTrue(passed)
        self.assertEqual(sections["simplices"], {"0": 1, "1": 2, "2": 4})
        self.assertTrue(sections["dg_nerve_agrees"])
        self.assertIn("pi1_core", sections)

    def test_horn_counts(self):
        table = horn_table(build_nerve(field_point(F2), 2))
        self.assertEqual(table, {"2,1": {"checked": 4, "filled": 4}})

    def test_integers_use_small_coefficients(self):
        passed, sections = nerve_summary(z2_resolution(), 1)
        self.assertTrue(passed)
        self.assertIn("note", sections)
        self.assertNotIn("pi1_core", sections)


class TestFunctorRouter(unittest.TestCase):
    def test_hochschild_summary(self):
        passed, sections = hochschild_summary(dual_numbers(F2), 3)
        self.assertTrue(passed)
        self.assertEqual(sections["cohomology"]["0"], "F_2^2")
        self.assertIn("classical", sections)

    def test_functor_summary(self):
        F, A, B = resolve_functor("examples/collapse", F2)
        passed, sections = functor_summary(F, A, B, options(invert=["0->0:e00"]))
        self.assertTrue(passed)
        self.assertTrue(sections["strictly_unital"])
        self.assertTrue(sections["localization_square"])


class TestVerifyRouter(unittest.TestCase):
    def test_mutation_removes_one_operation(self):
        A = dual_numbers(F2)
        one = A.gen("X", "X", "1")
        self.assertNotIn((one, one), mutated(A, (one, one)).operations)
        self.assertEqual(len(mutated(A, (one, one)).operations), len(A.operations) - 1)

    def test_relations_and_units(self):
        for name in ("relations", "units", "cohomologous"):
            with self.subTest(lemma=name):
                passed, _ = LEMMAS[name](options(arity=4))
                self.assertTrue(passed)


if __name__ == "__main__":
    unittest.main()
