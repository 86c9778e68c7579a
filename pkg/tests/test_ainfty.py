import unittest

from ainfty_toolkit.ainfty import (
    Element,
    Gen,
    PresentedCategory,
    bar_sign,
    check_relations,
    h0_inverse,
    hom_cohomology,
    is_homotopically_projective,
    is_strict_unit,
    is_unit,
    is_unital,
)
from ainfty_toolkit.catalog import (
    STANDARD_EXAMPLES,
    dual_numbers,
    m3_deformed,
    perturbed_unit,
    unit_perturbation,
    z2_endomorphism,
    z2_resolution,
)
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.errors import ArityTruncationError, IntegrityError, UsageError
from ainfty_toolkit.utils.inputs import resolve_category


class TestRelations(unittest.TestCase):
    def setUp(self):
        self.f5 = Ring.parse("F5")

    def test_standard_examples_satisfy_relations(self):
        for name, build in STANDARD_EXAMPLES.items():
            with self.subTest(example=name):
                report = check_relations(build(self.f5), 4)
                self.assertTrue(report.passed, report.failure)
                self.assertGreater(report.checked, 0)

    def test_removed_product_breaks_associativity(self):
        A = dual_numbers(self.f5)
        operations = {k: v for k, v in A.operations.items() if [g.label for g in k] != ["1", "1"]}
        broken = PresentedCategory(self.f5, A.objects(), {("X", "X"): A.hom_basis("X", "X")}, operations,
                                   name="broken")
        report = check_relations(broken, 3)
        self.assertFalse(report.passed)
        self.assertEqual(report.failure.arity, 3)

    def test_sampling_is_reported(self):
        report = check_relations(dual_numbers(self.f5), 3, sample=2)
        self.assertTrue(report.sampled)
        self.assertEqual(report.checked, 6)

    def test_truncated_category_refuses_higher_arity(self):
        A = dual_numbers(self.f5)
        truncated = PresentedCategory(self.f5, A.objects(), {("X", "X"): A.hom_basis("X", "X")}, A.operations,
                                      name="truncated", arity_bound=2, vanishes_above_bound=False)
        with self.assertRaises(ArityTruncationError):
            check_relations(truncated, 4)
        one = A.gen("X", "X", "1")
        with self.assertRaises(ArityTruncationError):
            truncated.op((one, one, one))

    def test_higher_product(self):
        A = m3_deformed(self.f5)
        x = A.element(A.gen("X", "X", "x"))
        self.assertEqual(A.m(x, x, x), A.element(A.gen("X", "X", "z")))
        self.assertTrue(A.m(x, x).is_zero)
        self.assertEqual(A.highest_arity(), 3)


class TestPresentation(unittest.TestCase):
    def setUp(self):
        self.f2 = Ring.parse("F2")
        self.one = Gen("X", "X", "1", 0)
        self.t = Gen("X", "X", "t", -1)

    def test_unknown_output_generator(self):
        stray = Gen("X", "X", "stray", 0)
        with self.assertRaises(IntegrityError):
            PresentedCategory(self.f2, ["X"], {("X", "X"): [self.one]}, {(self.one, self.one): {stray: 1}})

    def test_output_degree_is_checked(self):
        with self.assertRaises(UsageError):
            PresentedCategory(self.f2, ["X"], {("X", "X"): [self.one, self.t]}, {(self.one, self.one): {self.t: 1}})

    def test_undeclared_object(self):
        with self.assertRaises(IntegrityError):
            PresentedCategory(self.f2, ["X"], {("X", "Y"): [Gen("X", "Y", "f", 0)]}, {})

    def test_element_arithmetic(self):
        x = Element.of(self.f2, self.one)
        self.assertTrue((x + x).is_zero)
        self.assertEqual(x.degree, 0)
        with self.assertRaises(UsageError):
            _ = x + Element.zero(self.f2, "X", "Y")

    def test_bar_sign(self):
        self.assertEqual(bar_sign([0, 0]), 1)
        self.assertEqual(bar_sign([1, 0]), -1)
        self.assertEqual(bar_sign([0, 1]), 1)


class TestUnits(unittest.TestCase):
    def setUp(self):
        self.f5 = Ring.parse("F5")

    def test_identity_is_a_strict_unit(self):
        A = dual_numbers(self.f5)
        self.assertTrue(is_strict_unit(A, "X", A.units["X"]))
        self.assertTrue(is_unit(A, "X", A.units["X"]).is_unit)
        self.assertTrue(is_unital(A))

    def test_nilpotent_is_not_a_unit(self):
        A = dual_numbers(self.f5)
        eps = A.element(A.gen("X", "X", "eps"))
        self.assertFalse(is_strict_unit(A, "X", eps))
        verdict = is_unit(A, "X", eps)
        self.assertFalse(verdict.is_unit)
        self.assertTrue(verdict.reason)

    def test_perturbed_unit_is_not_strict(self):
        A = unit_perturbation(self.f5)
        u = perturbed_unit(A)
        self.assertFalse(is_strict_unit(A, "X", u))
        verdict = is_unit(A, "X", u)
        self.assertTrue(verdict.is_unit)
        self.assertIsNotNone(verdict.left["X"])
        self.assertTrue(verdict.left["X"].verify())

    def test_unit_must_be_an_endomorphism(self):
        A = dual_numbers(self.f5)
        with self.assertRaises(UsageError):
            is_unit(A, "X", Element.zero(self.f5, "X", "Y"))

    def test_augmentation_adds_strict_units(self):
        A_plus = dual_numbers(self.f5).augment()
        self.assertTrue(A_plus.strictly_unital)
        unit = A_plus.units["X"]
        self.assertEqual([g.label for g in unit.terms], ["1+"])
        self.assertTrue(is_strict_unit(A_plus, "X", unit))
        self.assertTrue(check_relations(A_plus, 3).passed)


class TestHoms(unittest.TestCase):
    def test_non_free_hom_is_read_directly(self):
        groups = hom_cohomology(z2_endomorphism(), "X", "X")
        self.assertEqual(str(groups[0]), "Z/2")

    def test_resolution_cohomology(self):
        groups = hom_cohomology(z2_resolution(), "X", "X")
        self.assertEqual(str(groups[0]), "Z/2")
        self.assertEqual(str(groups[-1]), "0")

    def test_projectivity(self):
        self.assertFalse(is_homotopically_projective(z2_endomorphism()).projective)
        self.assertTrue(is_homotopically_projective(z2_resolution()).projective)
        self.assertTrue(is_homotopically_projective(dual_numbers(Ring.parse("F2"))).projective)

    def test_inverse_in_cohomology(self):
        A = resolve_category("examples/iso-pair", Ring.parse("F2"))
        a = A.element(A.gen("1", "2", "a"))
        inverse = h0_inverse(A, a)
        self.assertEqual(inverse, A.element(A.gen("2", "1", "b")))


if __name__ == "__main__":
    unittest.main()
