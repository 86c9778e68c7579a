import unittest

from ainfty_toolkit.ainfty import Element, Gen, PresentedCategory
from ainfty_toolkit.catalog import field_point, m3_deformed, poset_category, two_term, z2_resolution
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.errors import PreconditionError, UsageError
from ainfty_toolkit.nerve import (
    Simplex,
    ainfty_nerve,
    dg_nerve,
    inner_horns,
    pi1_core,
    pi_vs_cohomology,
    same_simplices,
)
from ainfty_toolkit.utils.inputs import resolve_category

F2 = Ring.parse("F2")
F5 = Ring.parse("F5")


class TestSimplices(unittest.TestCase):
    def test_monoid_nerve_counts(self):
        nerve = ainfty_nerve(field_point(F2), 3)
        self.assertEqual([len(nerve.simplices(n)) for n in range(4)], [1, 2, 4, 8])

    def test_poset_edges(self):
        nerve = dg_nerve(poset_category(F2, 1), 2)
        # 2 choices on each nonzero hom, and the zero edge 1 -> 0
        self.assertEqual(len(nerve.simplices(1)), 7)
        self.assertTrue(nerve.check_simplicial_identities())

    def test_nerves_agree_on_dg_categories(self):
        A = poset_category(F2, 1)
        self.assertTrue(same_simplices(dg_nerve(A, 2), ainfty_nerve(A, 2)))

    def test_nerve_preconditions(self):
        with self.assertRaises(PreconditionError):
            dg_nerve(m3_deformed(F2), 2)
        one = Gen("X", "X", "1", 0)
        bare = PresentedCategory(F2, ["X"], {("X", "X"): [one]}, {(one, one): {one: 1}})
        with self.assertRaises(PreconditionError):
            ainfty_nerve(bare, 2)
        with self.assertRaises(UsageError):
            ainfty_nerve(field_point(F2), 4).simplices(5)

    def test_infinite_ring_needs_coefficients(self):
        with self.assertRaises(UsageError):
            ainfty_nerve(z2_resolution(), 1).simplices(1)
        nerve = ainfty_nerve(z2_resolution(), 1, coefficients=[-1, 0, 1])
        self.assertEqual(len(nerve.simplices(1)), 3)

    def test_higher_product_in_a_three_simplex(self):
        A = m3_deformed(F2)
        nerve = ainfty_nerve(A, 3)
        x = A.element(A.gen("X", "X", "x"))
        z = A.element(A.gen("X", "X", "z"))
        zero = Element.zero(F2, "X", "X")
        edges = {(0, 1): x, (1, 2): x, (2, 3): x, (0, 2): zero, (1, 3): zero, (0, 3): zero}
        with_z = Simplex.build(("X",) * 4, {**edges, (0, 1, 3): z})
        without_z = Simplex.build(("X",) * 4, edges)
        self.assertTrue(nerve.is_simplex(with_z))
        self.assertFalse(nerve.is_simplex(without_z))


class TestHorns(unittest.TestCase):
    def test_inner_horns_fill(self):
        nerve = ainfty_nerve(poset_category(F2, 1), 3)
        for n in (2, 3):
            horns = list(inner_horns(nerve, n))
            self.assertTrue(horns)
            for faces, i in horns:
                self.assertIsNotNone(nerve.fill_inner_horn(faces, i))

    def test_horn_dimension(self):
        with self.assertRaises(UsageError):
            list(inner_horns(ainfty_nerve(field_point(F2), 3), 4))

    def test_faces_must_be_composable(self):
        A = poset_category(F2, 1)
        nerve = ainfty_nerve(A, 2)
        f = nerve.edge(A.element(A.gen("0", "1", "e01")))
        with self.assertRaises(UsageError):
            nerve.fill_inner_horn({0: f, 2: f}, 1)

    def test_composition_by_filling(self):
        A = field_point(F5)
        nerve = ainfty_nerve(A, 2)
        one = A.gen("X", "X", "1")
        self.assertEqual(nerve.compose_edges(A.element(one, 2), A.element(one, 3)), A.element(one, 1))


class TestHomotopyGroups(unittest.TestCase):
    def test_core_components(self):
        self.assertEqual(len(ainfty_nerve(poset_category(F2, 1), 1).core().pi0()), 2)
        iso_pair = resolve_category("examples/iso-pair", F2)
        self.assertEqual(len(ainfty_nerve(iso_pair, 1).core().pi0()), 2)

    def test_fundamental_group_of_the_point(self):
        report = pi1_core(ainfty_nerve(field_point(F5), 2), "X")
        self.assertEqual(report.order, 4)
        self.assertTrue(report.cyclic)
        self.assertEqual(report.h0_units, 4)
        self.assertTrue(report.isomorphic_to_h0_units)

    def test_fundamental_group_needs_dimension_two(self):
        with self.assertRaises(UsageError):
            pi1_core(ainfty_nerve(field_point(F2), 1), "X")

    def test_mapping_space_against_dold_kan(self):
        report = pi_vs_cohomology(two_term(F2), "X", "X", max_i=1)
        self.assertTrue(report.passed)
        self.assertEqual(report.groups[1].dold_kan, "F_2")
        self.assertEqual(report.groups[1].enumerated, 2)

    def test_mapping_space_over_the_integers(self):
        report = pi_vs_cohomology(z2_resolution(), "X", "X", max_i=0)
        self.assertEqual(report.groups[0].dold_kan, "Z/2")
        self.assertIsNone(report.groups[0].agrees)
        self.assertTrue(report.groups[0].note)


if __name__ == "__main__":
    unittest.main()
