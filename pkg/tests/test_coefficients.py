import unittest
from fractions import Fraction

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from ainfty_toolkit.coefficients import (
    GroupDescriptor,
    Ring,
    SparseMatrix,
    enumerate_span,
    invariant_factors,
    kernel_basis,
    rank,
    reduce_modulo,
    smith_normal_form,
    solve_linear,
)
from ainfty_toolkit.errors import InfeasibleSizeError, ParseError, UsageError


class TestRing(unittest.TestCase):
    def setUp(self):
        self.f5 = Ring.parse("F5")
        self.z = Ring.parse("Z")
        self.q = Ring.parse("Q")

    def test_parse_names(self):
        self.assertEqual(self.f5.name, "F_5")
        self.assertEqual(Ring.parse("F_2").name, "F_2")
        self.assertEqual(self.z.name, "Z")
        self.assertEqual(self.q.name, "Q")

    def test_parse_rejects_composite_characteristic(self):
        with self.assertRaises(ParseError) as ctx:
            Ring.parse("F4")
        self.assertIn("not prime", str(ctx.exception))

    def test_parse_rejects_unknown(self):
        with self.assertRaises(ParseError):
            Ring.parse("R")

    def test_coerce_fraction_strings(self):
        self.assertEqual(self.f5.coerce("1/2"), 3)
        self.assertEqual(self.q.coerce("1/2"), Fraction(1, 2))
        with self.assertRaises(ParseError):
            self.z.coerce("1/2")

    def test_inverse_and_units(self):
        self.assertEqual(self.f5.inverse(2), 3)
        self.assertTrue(self.z.is_unit(-1))
        self.assertFalse(self.z.is_unit(2))
        with self.assertRaises(ZeroDivisionError):
            self.z.inverse(2)

    def test_elements_of_finite_field(self):
        self.assertEqual(self.f5.elements(), [0, 1, 2, 3, 4])
        self.assertTrue(self.f5.is_finite)
        self.assertFalse(self.q.is_finite)


class TestLinearAlgebra(unittest.TestCase):
    def setUp(self):
        self.f5 = Ring.parse("F5")
        self.z = Ring.parse("Z")

    def test_rank_and_kernel_over_field(self):
        M = SparseMatrix.from_rows(self.f5, [[1, 2], [2, 4]])
        self.assertEqual(rank(M), 1)
        kernel = kernel_basis(M)
        self.assertEqual(len(kernel), 1)
        self.assertEqual(M.apply(kernel[0]), {})

    def test_kernel_over_integers_is_a_lattice_basis(self):
        M = SparseMatrix.from_rows(self.z, [[2, 4]])
        kernel = kernel_basis(M)
        self.assertEqual(len(kernel), 1)
        self.assertEqual(M.apply(kernel[0]), {})

    def test_smith_normal_form(self):
        M = SparseMatrix.from_rows(self.z, [[2, 4], [6, 8]])
        form = smith_normal_form(M)
        self.assertEqual(form.diagonal, (2, 4))
        self.assertEqual(form.U @ M @ form.V, form.D)
        self.assertEqual(invariant_factors(M), (2, 4))

    def test_solve_linear_over_integers(self):
        M = SparseMatrix.from_rows(self.z, [[2]])
        self.assertIsNone(solve_linear(M, {0: 1}))
        self.assertEqual(solve_linear(M, {0: 4}), {0: 2})

    def test_solve_linear_over_field(self):
        M = SparseMatrix.from_rows(self.f5, [[1, 1], [0, 1]])
        x = solve_linear(M, {0: 3, 1: 1})
        self.assertEqual(M.apply(x), {0: 3, 1: 1})

    def test_solve_linear_checks_dimensions(self):
        for ring in (self.f5, self.z):
            with self.subTest(ring=ring.name):
                M = SparseMatrix.from_rows(ring, [[1]])
                with self.assertRaises(UsageError):
                    solve_linear(M, {0: 1, 7: 3})
                with self.assertRaises(UsageError):
                    solve_linear(M, {-1: 1})

    def test_invariant_factors_agree_with_sympy(self):
        for rows in ([[2, 4], [6, 8]], [[2, 0, 0], [0, 3, 0], [0, 0, 6]], [[1, 2, 3], [4, 5, 6], [7, 8, 10]]):
            with self.subTest(rows=rows):
                expected = sympy_invariant_factors(Matrix(rows), domain=ZZ)
                self.assertEqual(invariant_factors(SparseMatrix.from_rows(self.z, rows)),
                                 tuple(abs(int(x)) for x in expected))

    def test_enumerate_span(self):
        f2 = Ring.parse("F2")
        vectors = list(enumerate_span(f2, [{0: 1}, {1: 1}]))
        self.assertEqual(len(vectors), 4)
        self.assertIn({0: 1, 1: 1}, vectors)
        with self.assertRaises(InfeasibleSizeError) as ctx:
            list(enumerate_span(f2, [{0: 1}, {1: 1}], limit=3))
        self.assertEqual(ctx.exception.estimate, 4)

    def test_reduce_modulo_gives_class_representatives(self):
        f2 = Ring.parse("F2")
        spanning = [{0: 1, 1: 1}]
        self.assertEqual(reduce_modulo(f2, spanning, {0: 1}), reduce_modulo(f2, spanning, {1: 1}))
        self.assertEqual(reduce_modulo(f2, spanning, {0: 1, 1: 1}), {})


class TestGroupDescriptor(unittest.TestCase):
    def test_rendering(self):
        self.assertEqual(str(GroupDescriptor(ring="Z", rank=1, torsion=[2])), "Z + Z/2")
        self.assertEqual(str(GroupDescriptor(ring="F_2", rank=3)), "F_2^3")
        self.assertEqual(str(GroupDescriptor(ring="Z")), "0")
        self.assertEqual(str(GroupDescriptor(ring="Z", torsion=[2], partial=True)), "Z/2 (partial)")

    def test_order(self):
        self.assertEqual(GroupDescriptor(ring="F_2", rank=3).order(), 8)
        self.assertEqual(GroupDescriptor(ring="Z", torsion=[2, 3]).order(), 6)
        self.assertIsNone(GroupDescriptor(ring="Z", rank=1).order())

    def test_same_group_ignores_torsion_order(self):
        a = GroupDescriptor(ring="Z", torsion=[2, 4])
        b = GroupDescriptor(ring="Z", torsion=[4, 2])
        self.assertTrue(a.same_group(b))


if __name__ == "__main__":
    unittest.main()
