import unittest

from ainfty_toolkit.catalog import dual_numbers, field_point, m3_deformed, poset_category
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.complexes import cohomology_at
from ainfty_toolkit.errors import IntegrityError, PreconditionError, UsageError
from ainfty_toolkit.functors import (
    PresentedFunctor,
    augment_functor,
    augmentation_inclusion,
    check_functor,
    compare_with_classical,
    compose,
    hh0_units,
    hochschild,
    identity_functor,
    is_strictly_unital_functor,
    is_unital_functor,
    localization_square_commutes,
    materialize,
    natural_equivalence,
    pi0_functor_classes,
    same_functor,
)
from ainfty_toolkit.localization import localize
from ainfty_toolkit.utils.inputs import resolve_functor

F2 = Ring.parse("F2")
F5 = Ring.parse("F5")


class TestFunctorEquations(unittest.TestCase):
    def test_identity_functor(self):
        A = m3_deformed(F5)
        report = check_functor(identity_functor(A), 4)
        self.assertTrue(report.passed)
        self.assertGreater(report.checked, 0)

    def test_collapse_functor(self):
        F, _, _ = resolve_functor("examples/collapse", F2)
        self.assertTrue(check_functor(F, 3).passed)
        self.assertTrue(is_strictly_unital_functor(F))
        self.assertTrue(is_unital_functor(F))

    def test_broken_functor_is_reported(self):
        A, B = poset_category(F2, 1), field_point(F2)
        one = B.gen("X", "X", "1")
        components = {(A.gen("0", "0", "e00"),): {one: 1}, (A.gen("1", "1", "e11"),): {one: 1}}
        F = PresentedFunctor(A, B, {"0": "X", "1": "X"}, components)
        self.assertTrue(check_functor(F, 2).passed)
        G = PresentedFunctor(A, B, {"0": "X", "1": "X"}, {(A.gen("0", "1", "e01"),): {one: 1}})
        report = check_functor(G, 2)
        self.assertFalse(report.passed)
        self.assertEqual(report.failures[0].arity, 2)

    def test_object_images_are_checked(self):
        A, B = poset_category(F2, 1), field_point(F2)
        with self.assertRaises(UsageError):
            PresentedFunctor(A, B, {"0": "X"}, {})
        with self.assertRaises(IntegrityError):
            PresentedFunctor(A, B, {"0": "X", "1": "Y"}, {})

    def test_arity_beyond_bound(self):
        A = field_point(F2)
        with self.assertRaises(UsageError):
            check_functor(identity_functor(A), A.arity_bound + 1)

    def test_composition_with_identity(self):
        F, A, _ = resolve_functor("examples/collapse", F2)
        self.assertTrue(same_functor(compose(F, identity_functor(A)), F, 2))
        self.assertTrue(same_functor(materialize(identity_functor(A)), identity_functor(A), 2))


class TestUnitality(unittest.TestCase):
    def test_inclusion_into_augmentation_is_not_unital(self):
        A = dual_numbers(F5)
        inclusion = augmentation_inclusion(A)
        self.assertTrue(check_functor(inclusion, 3).passed)
        self.assertFalse(is_strictly_unital_functor(inclusion))
        self.assertFalse(is_unital_functor(inclusion))

    def test_augmented_functor_is_strictly_unital(self):
        A = dual_numbers(F5)
        f_plus = augment_functor(identity_functor(A))
        self.assertTrue(is_strictly_unital_functor(f_plus))
        self.assertTrue(same_functor(f_plus, identity_functor(A.augment()), 2))


class TestLocalizedFunctors(unittest.TestCase):
    def test_square_commutes(self):
        F, A, B = resolve_functor("examples/collapse", F2)
        inverted = [A.units["0"]]
        source = localize(A, inverted, 2)
        target = localize(B, [F.apply(e) for e in inverted], 2)
        self.assertTrue(localization_square_commutes(F, source, target))

    def test_inverted_sets_must_match(self):
        F, A, B = resolve_functor("examples/collapse", F2)
        source = localize(A, [A.units["0"]], 1)
        target = localize(B, [], 1)
        with self.assertRaises(PreconditionError):
            localization_square_commutes(F, source, target)


class TestHochschild(unittest.TestCase):
    def test_dual_numbers_against_classical(self):
        A = dual_numbers(F2)
        comparison = compare_with_classical(A, 3)
        self.assertTrue(comparison.agrees)
        self.assertEqual(str(cohomology_at(hochschild(A, 3), 0)), "F_2^2")

    def test_classical_needs_one_object(self):
        with self.assertRaises(UsageError):
            compare_with_classical(poset_category(F2, 1), 2)

    def test_center_units(self):
        self.assertEqual(hh0_units(field_point(F2)), 1)
        self.assertEqual(hh0_units(field_point(F5)), 4)
        with self.assertRaises(UsageError):
            hh0_units(field_point(Ring.parse("Q")))


class TestFunctorClasses(unittest.TestCase):
    def test_point_to_point(self):
        classes = pi0_functor_classes(field_point(F5), field_point(F5))
        self.assertEqual(classes.count, 1)

    def test_arrow_to_point(self):
        classes = pi0_functor_classes(poset_category(F2, 1), field_point(F2))
        self.assertEqual(classes.count, 2)
        self.assertEqual(classes.enumerated, 8)

    def test_natural_equivalence_with_itself(self):
        F, _, _ = resolve_functor("examples/collapse", F2)
        self.assertIsNotNone(natural_equivalence(F, F, 1))


if __name__ == "__main__":
    unittest.main()
