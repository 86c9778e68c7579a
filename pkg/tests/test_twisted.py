import unittest

from ainfty_toolkit.ainfty import Element
from ainfty_toolkit.catalog import dual_numbers, field_point, perturbed_unit, poset_category, unit_perturbation, z2_resolution
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.complexes import ChainMap, cohomology_at, is_acyclic
from ainfty_toolkit.errors import IntegrityError, InvariantViolation, PreconditionError, UsageError
from ainfty_toolkit.twisted import (
    TwistedCategory,
    TwistedComplex,
    cone_acyclicity,
    cone_of,
    cone_presentation,
    connecting_block,
    embed,
    maurer_cartan_residual,
    tw_hom,
    verify_cone_cone_relation,
    z_w_homotopies,
    z_w_operators,
)

F5 = Ring.parse("F5")


class TestTwistedComplexes(unittest.TestCase):
    def setUp(self):
        self.A = field_point(F5)
        self.one = self.A.units["X"]

    def test_entries_must_be_ordered(self):
        with self.assertRaises(UsageError):
            TwistedComplex.build([("X", 0), ("X", 1)], {(0, 1): self.one})

    def test_component_degree_is_checked(self):
        with self.assertRaises(UsageError):
            TwistedComplex.build([("X", 0), ("X", 0)], {(1, 0): self.one})

    def test_maurer_cartan_is_enforced(self):
        # δ∘δ = 1 ≠ 0 on a three-term complex
        T = TwistedComplex.build([("X", 0), ("X", 1), ("X", 2)], {(1, 0): self.one, (2, 1): self.one})
        self.assertTrue(maurer_cartan_residual(self.A, T))
        with self.assertRaises(InvariantViolation):
            TwistedCategory(self.A, [T])

    def test_differential_must_be_closed(self):
        Z = z2_resolution()
        eps = Z.element(Z.gen("X", "X", "eps"))
        T = TwistedComplex.build([("X", 0), ("X", 2)], {(1, 0): eps})
        with self.assertRaises(InvariantViolation):
            TwistedCategory(Z, [T])

    def test_unknown_entry(self):
        T = TwistedComplex.build([("Y", 0)])
        with self.assertRaises(IntegrityError):
            TwistedCategory(self.A, [T])

    def test_cone_needs_closed_morphism(self):
        B = unit_perturbation(F5)
        with self.assertRaises(PreconditionError):
            cone_of(B, B.element(B.gen("X", "X", "beta")))

    def test_cone_of_zero_splits(self):
        twcat = TwistedCategory(self.A)
        C = twcat.add_object(cone_of(self.A, Element.zero(F5, "X", "X")))
        self.assertEqual(C.components(), {})
        H = tw_hom(twcat, embed("X"), C)
        # hom(X, X) in degree 0 and s hom(X, X) in degree −1, no differential between them
        self.assertEqual((H.rank(0), H.rank(-1)), (1, 1))
        self.assertTrue(H.d(-1).is_zero())
        self.assertEqual(str(cohomology_at(H, 0)), "F_5")
        self.assertEqual(str(cohomology_at(H, -1)), "F_5")
        f, relabel = cone_presentation(twcat, "X", C)
        self.assertTrue(f.equals(ChainMap.zero(f.source, f.target)))
        self.assertTrue(relabel.is_closed())

    def test_embedded_objects_keep_units(self):
        twcat = TwistedCategory(self.A)
        self.assertEqual(twcat.objects(), [embed("X")])
        self.assertIn(embed("X"), twcat.units)


class TestCones(unittest.TestCase):
    def test_cone_of_unit_is_acyclic(self):
        for A in (field_point(F5), poset_category(F5, 1), z2_resolution()):
            with self.subTest(category=A.name):
                twcat = TwistedCategory(A)
                X = A.objects()[0]
                C = twcat.add_object(cone_of(A, A.units[X]))
                self.assertTrue(all(cone_acyclicity(twcat, C).values()))

    def test_cone_of_non_unit_is_not_acyclic(self):
        A = dual_numbers(F5)
        twcat = TwistedCategory(A)
        C = twcat.add_object(cone_of(A, A.element(A.gen("X", "X", "eps"))))
        self.assertFalse(is_acyclic(tw_hom(twcat, embed("X"), C)))

    def test_cone_presentation_matches_twisted_hom(self):
        A = field_point(F5)
        twcat = TwistedCategory(A)
        C = twcat.add_object(cone_of(A, A.units["X"]))
        f, relabel = cone_presentation(twcat, "X", C)
        self.assertTrue(f.is_closed())
        self.assertTrue(relabel.is_closed())

    def test_cone_presentation_rejects_other_objects(self):
        twcat = TwistedCategory(field_point(F5))
        with self.assertRaises(UsageError):
            cone_presentation(twcat, "X", embed("X"))


class TestConeMorphisms(unittest.TestCase):
    def test_z_and_w_are_inverse_up_to_homotopy(self):
        A = unit_perturbation(F5)
        twcat = TwistedCategory(A)
        u, v = A.units["X"], perturbed_unit(A)
        ops = z_w_operators(twcat, u, v)
        self.assertTrue(ops.w.is_closed())
        wz, zw = z_w_homotopies(ops)
        self.assertIsNotNone(wz)
        self.assertIsNotNone(zw)

    def test_connecting_block_is_z(self):
        A = field_point(F5)
        twcat = TwistedCategory(A)
        ops = z_w_operators(twcat, A.units["X"], A.units["X"])
        self.assertTrue(connecting_block(twcat, ops).equals(ops.z))

    def test_non_unit_is_rejected(self):
        A = dual_numbers(F5)
        eps = A.element(A.gen("X", "X", "eps"))
        with self.assertRaises(PreconditionError):
            z_w_operators(TwistedCategory(A), eps, A.units["X"])

    def test_cone_cone_relation(self):
        for A in (field_point(F5), dual_numbers(F5), unit_perturbation(F5)):
            with self.subTest(category=A.name):
                e = A.units["X"]
                self.assertTrue(verify_cone_cone_relation(A, e, e))


if __name__ == "__main__":
    unittest.main()
