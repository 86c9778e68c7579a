import unittest

from ainfty_toolkit.coefficients import Ring, SparseMatrix
from ainfty_toolkit.complexes import (
    ChainMap,
    CochainComplex,
    cohomology,
    cohomology_at,
    cohomology_basis,
    cone,
    find_homotopy,
    hom_complex,
    homotopy_inverse,
    induced_isomorphism,
    is_acyclic,
    is_quasi_isomorphism,
    shift,
    shift_isomorphisms,
)
from ainfty_toolkit.errors import InvariantViolation, PreconditionError, UsageError


class TestCochainComplex(unittest.TestCase):
    def setUp(self):
        self.z = Ring.parse("Z")
        self.f5 = Ring.parse("F5")
        # x -> 2y: H^1 = Z/2
        self.z2 = CochainComplex.build(self.z, {0: ["x"], 1: ["y"]}, {0: [[2]]})
        # a -> b: contractible
        self.disk = CochainComplex.build(self.f5, {0: ["a"], 1: ["b"]}, {0: [[1]]})

    def test_d_squared_is_checked(self):
        with self.assertRaises(InvariantViolation):
            CochainComplex.build(self.f5, {0: ["a"], 1: ["b"], 2: ["c"]}, {0: [[1]], 1: [[1]]})

    def test_shape_is_checked(self):
        with self.assertRaises(UsageError):
            CochainComplex.build(self.f5, {0: ["a"], 1: ["b"]}, {0: [[1, 1]]})

    def test_integral_cohomology_has_torsion(self):
        groups = cohomology(self.z2)
        self.assertTrue(groups[0].is_zero)
        self.assertEqual(groups[1].torsion, [2])
        self.assertEqual(str(groups[1]), "Z/2")

    def test_same_complex_over_field(self):
        C = CochainComplex.build(Ring.parse("F2"), {0: ["x"], 1: ["y"]}, {0: [[2]]})
        self.assertEqual(cohomology_at(C, 0).rank, 1)
        self.assertEqual(cohomology_at(C, 1).rank, 1)

    def test_window_marks_partial_degrees(self):
        C = CochainComplex.build(self.f5, {0: ["a"], 1: ["b"]}, {}, window=(0, 0))
        self.assertFalse(cohomology_at(C, 0).partial)
        self.assertTrue(cohomology_at(C, 1).partial)

    def test_shift_moves_degrees(self):
        S = shift(self.disk, 1)
        self.assertEqual(S.labels(-1), ("a",))
        self.assertEqual(S.labels(0), ("b",))
        self.assertTrue(is_acyclic(S))


class TestConstructions(unittest.TestCase):
    def setUp(self):
        self.f5 = Ring.parse("F5")
        self.point = CochainComplex.build(self.f5, {0: ["a"]}, {})
        self.disk = CochainComplex.build(self.f5, {0: ["a"], 1: ["b"]}, {0: [[1]]})
        # D = k·u (degree −1) -> k·v, plus k·x in degree 0
        self.padded = CochainComplex.build(self.f5, {-1: ["u"], 0: ["x", "v"]}, {-1: [[0], [1]]})

    def test_cone_of_identity_is_acyclic(self):
        for C in (self.point, self.disk):
            self.assertTrue(is_acyclic(cone(ChainMap.identity(C))))

    def test_cone_needs_closed_map(self):
        f = ChainMap.from_function(self.disk, self.disk, lambda d, label: {"a": 1} if label == "a" else {})
        with self.assertRaises(PreconditionError):
            cone(f)

    def test_hom_complex_of_contractible_complex_is_acyclic(self):
        H = hom_complex(self.disk, self.disk)
        self.assertEqual(H.rank(-1), 1)
        self.assertEqual(H.rank(0), 2)
        self.assertEqual(H.rank(1), 1)
        self.assertTrue(is_acyclic(H))

    def test_shift_isomorphisms_are_chain_maps(self):
        first, second = shift_isomorphisms(self.disk, self.padded)
        self.assertTrue(first.is_closed())
        self.assertTrue(second.is_closed())

    def test_cohomology_basis_coordinates(self):
        C = CochainComplex.build(self.f5, {0: ["a", "b"]}, {})
        basis = cohomology_basis(C, 0)
        self.assertEqual(basis.dimension, 2)
        self.assertFalse(basis.is_boundary({0: 1}))
        self.assertTrue(basis.is_boundary({}))


class TestHomotopies(unittest.TestCase):
    def setUp(self):
        self.f5 = Ring.parse("F5")
        self.point = CochainComplex.build(self.f5, {0: ["a"]}, {})
        self.disk = CochainComplex.build(self.f5, {0: ["a"], 1: ["b"]}, {0: [[1]]})
        self.padded = CochainComplex.build(self.f5, {-1: ["u"], 0: ["x", "v"]}, {-1: [[0], [1]]})

    def test_contractible_identity_is_null_homotopic(self):
        identity = ChainMap.identity(self.disk)
        h = find_homotopy(identity, ChainMap.zero(self.disk, self.disk))
        self.assertIsNotNone(h)
        self.assertTrue(h.verify())

    def test_homotopy_sign(self):
        # dh + hd = g − f with f = id, g = 0
        f, g = ChainMap.identity(self.disk), ChainMap.zero(self.disk, self.disk)
        h = find_homotopy(f, g)
        for d in (0, 1):
            with self.subTest(degree=d):
                dh_hd = self.disk.d(d - 1) @ h.as_map().component(d) + h.as_map().component(d + 1) @ self.disk.d(d)
                self.assertEqual(dh_hd, (g - f).component(d))
        self.assertEqual(h.as_map().component(1), SparseMatrix.from_rows(self.f5, [[4]]))

    def test_identity_of_point_is_not_null_homotopic(self):
        identity = ChainMap.identity(self.point)
        self.assertIsNone(find_homotopy(identity, ChainMap.zero(self.point, self.point)))

    def test_quasi_isomorphism_has_homotopy_inverse(self):
        f = ChainMap.from_function(self.point, self.padded, lambda d, label: {"x": 1})
        self.assertTrue(f.is_closed())
        self.assertTrue(is_quasi_isomorphism(f))
        self.assertTrue(induced_isomorphism(f, 0))
        equivalence = homotopy_inverse(f)
        self.assertIsNotNone(equivalence)
        self.assertTrue(equivalence.h.verify())
        self.assertTrue(equivalence.h_prime.verify())

    def test_non_quasi_isomorphism_has_no_inverse(self):
        f = ChainMap.zero(self.point, self.padded)
        self.assertFalse(is_quasi_isomorphism(f))
        self.assertIsNone(homotopy_inverse(f))


if __name__ == "__main__":
    unittest.main()
