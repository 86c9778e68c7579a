import unittest

from ainfty_toolkit.ainfty import Gen, PresentedCategory
from ainfty_toolkit.catalog import dual_numbers, field_point, perturbed_unit, poset_category, unit_perturbation, z2_resolution
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.errors import HomotopyIdempotenceError, InfeasibleSizeError, PreconditionError, UsageError
from ainfty_toolkit.localization import (
    LocalizedCategory,
    check_graded_acyclicity,
    cohomologous,
    homotopy_idempotence_witness,
    in_ideal,
    localize,
    respects_filtration,
    split_augmentation,
    verify_cohomologous_localizations,
    verify_mod_ideal,
    verify_right_inverse,
    verify_unit_homotopy,
)

F2 = Ring.parse("F2")
F5 = Ring.parse("F5")
WINDOW = (-2, 1)


class TestLocalizedCategory(unittest.TestCase):
    def setUp(self):
        self.A = field_point(F2)
        self.D = localize(self.A, [self.A.units["X"]], 2)

    def test_truncation_must_be_positive(self):
        with self.assertRaises(UsageError):
            LocalizedCategory(self.A, [self.A.units["X"]], 0)

    def test_word_lengths(self):
        lengths = {w.length for w in self.D.hom_basis("X", "X")}
        self.assertEqual(lengths, {1, 2})
        self.assertEqual(len(self.D.cones), 1)

    def test_duplicate_inversions_share_a_cone(self):
        D = localize(self.A, [self.A.units["X"], self.A.units["X"]], 1)
        self.assertEqual(len(D.cones), 1)

    def test_size_cap(self):
        D = localize(self.A, [self.A.units["X"]], 4, max_words=3)
        with self.assertRaises(InfeasibleSizeError) as ctx:
            D.hom_basis("X", "X")
        self.assertGreater(ctx.exception.estimate, 3)

    def test_differential_respects_length(self):
        self.assertTrue(respects_filtration(self.D, "X", "X"))

    def test_graded_pieces_are_acyclic(self):
        report = check_graded_acyclicity(self.D, "X", "X", 2)
        self.assertTrue(report.acyclic)
        self.assertTrue(report.summands)
        with self.assertRaises(UsageError):
            check_graded_acyclicity(self.D, "X", "X", 1)


class TestComparisons(unittest.TestCase):
    def test_right_inverse_over_a_field(self):
        for A in (field_point(F2), poset_category(F2, 1)):
            with self.subTest(category=A.name):
                report = verify_right_inverse(A, 2, WINDOW)
                self.assertTrue(report.passed)
                self.assertEqual(len(report.homs), len(A.objects()) ** 2)

    def test_right_inverse_over_the_integers(self):
        report = verify_right_inverse(z2_resolution(), 2, WINDOW)
        self.assertNotEqual(report.verdict, "fail")

    def test_empty_window(self):
        with self.assertRaises(UsageError):
            verify_right_inverse(field_point(F2), 2, (1, 0))

    def test_cohomologous_units_give_the_same_localization(self):
        A = unit_perturbation(F5)
        u = A.units["X"]
        report = verify_cohomologous_localizations(A, [u], [u, perturbed_unit(A)], 2, WINDOW)
        self.assertTrue(report.passed)

    def test_larger_set_must_contain_smaller(self):
        A = unit_perturbation(F5)
        with self.assertRaises(PreconditionError):
            verify_cohomologous_localizations(A, [A.units["X"]], [perturbed_unit(A)], 2, WINDOW)

    def test_cohomologous(self):
        A = unit_perturbation(F5)
        self.assertTrue(cohomologous(A, perturbed_unit(A), A.units["X"]))
        B = dual_numbers(F5)
        self.assertFalse(cohomologous(B, B.element(B.gen("X", "X", "eps")), B.units["X"]))


class TestUnitHomotopy(unittest.TestCase):
    def test_witness_for_a_non_strict_unit(self):
        A = unit_perturbation(F5)
        e0 = perturbed_unit(A)
        alpha = homotopy_idempotence_witness(A, e0)
        self.assertEqual(A.m(alpha), e0 - A.m(e0, e0))
        self.assertTrue(homotopy_idempotence_witness(A, A.units["X"]).is_zero)

    def test_non_idempotent_has_no_witness(self):
        A = dual_numbers(F5)
        with self.assertRaises(HomotopyIdempotenceError):
            homotopy_idempotence_witness(A, A.element(A.gen("X", "X", "eps")))

    def test_identities_hold(self):
        for A in (field_point(F2), dual_numbers(F2)):
            with self.subTest(category=A.name):
                report = verify_unit_homotopy(A, "X", 2)
                self.assertTrue(report.passed, report.first_failure)
                self.assertGreater(report.words_checked, 0)

    def test_non_unit_is_rejected(self):
        A = dual_numbers(F2)
        with self.assertRaises(PreconditionError):
            verify_unit_homotopy(A, "X", 2, A.element(A.gen("X", "X", "eps")))


class TestModIdeal(unittest.TestCase):
    def test_split_augmentation(self):
        A = poset_category(F2, 1)
        split = split_augmentation(A)
        j = split.idempotents["0"]
        self.assertEqual(j.label, "j")
        self.assertEqual(split.m(split.element(j), split.element(j)), split.element(j))
        e00 = split.element(split.gen("0", "0", "e00"))
        self.assertTrue(split.m(split.element(j), e00).is_zero)

    def test_split_needs_strict_units(self):
        one = Gen("X", "X", "1", 0)
        bare = PresentedCategory(F2, ["X"], {("X", "X"): [one]}, {(one, one): {one: 1}})
        with self.assertRaises(PreconditionError):
            split_augmentation(bare)

    def test_ideal_membership(self):
        A = field_point(F2)
        split = split_augmentation(A)
        D = localize(split, [A.units["X"]], 1)
        j = split.idempotents["X"]
        marked = [w for w in D.hom_basis("X", "X") if in_ideal(w, [j])]
        self.assertEqual(len(marked), 1)

    def test_chain_of_maps(self):
        for A in (field_point(F2), poset_category(F2, 1)):
            with self.subTest(category=A.name):
                report = verify_mod_ideal(A, 2, WINDOW, closure_arity=3)
                self.assertTrue(report.closure.passed, report.closure.failure)
                self.assertTrue(report.composite_identity)
                self.assertTrue(report.passed)

    def test_ideal_closed_up_to_arity_four(self):
        report = verify_mod_ideal(field_point(F2), 2, WINDOW)
        self.assertTrue(report.closure.passed, report.closure.failure)
        self.assertGreater(report.closure.checked,
                           verify_mod_ideal(field_point(F2), 2, WINDOW, closure_arity=3).closure.checked)
        self.assertTrue(report.composite_identity)


if __name__ == "__main__":
    unittest.main()
