import os
import tempfile

# Set cache dir to a temp dir before importing anything from hopfmorita
tmpdir = tempfile.mkdtemp()
os.environ["HOPFMORITA_CACHE_DIR"] = tmpdir

from fractions import Fraction as F
from itertools import combinations
import unittest

from hypothesis import given
from hypothesis import strategies as st

from hopfmorita.algebra.linalg import (
    IntegerLattice,
    Subspace,
    complex_determinant,
    complex_kernel,
    complex_rank,
    invariant_factors,
    is_positive_semidefinite,
    kernel,
    rank,
    rref,
    solve,
)
from hopfmorita.algebra.scalar import I, Scalar

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
matrices = st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4)


class TestRationalLinearAlgebra(unittest.TestCase):
    def test_rref(self):
        rows, pivots = rref([[F(2), F(4)], [F(1), F(2)]], 2)
        self.assertEqual(rows, [[F(1), F(2)]])
        self.assertEqual(pivots, (0,))
        self.assertEqual(rank([[F(0), F(0)]], 2), 0)

    def test_kernel(self):
        self.assertEqual(kernel([[F(1), F(1)]], 2), [[F(-1), F(1)]])
        self.assertEqual(len(kernel([], 3)), 3)

    @given(matrices)
    def test_rank_nullity(self, rows):
        basis = kernel(rows, 3)
        self.assertEqual(rank(rows, 3) + len(basis), 3)
        for v in basis:
            for row in rows:
                self.assertEqual(sum(a * b for a, b in zip(row, v)), 0)

    def test_solve(self):
        columns = [[F(1), F(0)], [F(1), F(1)]]
        self.assertEqual(solve(columns, [F(3), F(1)]), [F(2), F(1)])
        self.assertIsNone(solve([[F(1), F(1)]], [F(1), F(0)]))
        self.assertEqual(solve([], [F(0)]), [])

    def test_subspace_reduction_is_canonical(self):
        span = Subspace(3, [[F(1), F(1), F(0)]])
        self.assertEqual(span.reduce([F(2), F(3), F(1)]), span.reduce([F(0), F(1), F(1)]))
        self.assertTrue(span.contains([F(-3), F(-3), F(0)]))
        self.assertEqual(span.coordinates([F(-3), F(-3), F(0)]), [F(-3)])
        self.assertIsNone(span.coordinates([F(0), F(0), F(1)]))
        self.assertEqual(span.extended([[F(0), F(0), F(1)]]).dim, 2)


class TestComplexLinearAlgebra(unittest.TestCase):
    def test_complex_kernel(self):
        # z0 + i z1 = 0
        basis = complex_kernel(2, [[Scalar(1), I]])
        self.assertEqual(len(basis), 1)
        z0, z1 = basis[0]
        self.assertTrue((z0 + I * z1).is_zero())

    def test_complex_rank(self):
        self.assertEqual(complex_rank(2, [[Scalar(1), I], [I, Scalar(-1)]]), 1)
        self.assertEqual(complex_rank(2, [[Scalar(1), Scalar(0)], [Scalar(0), I]]), 2)

    def test_positive_semidefinite(self):
        one, zero = Scalar(1), Scalar(0)
        self.assertTrue(is_positive_semidefinite([[one, zero], [zero, zero]]))
        self.assertFalse(is_positive_semidefinite([[one, Scalar(2)], [Scalar(2), one]]))
        self.assertTrue(is_positive_semidefinite([[one, I], [-I, one]]))
        # not Hermitian
        self.assertFalse(is_positive_semidefinite([[one, I], [I, one]]))
        # singular with a zero leading minor
        self.assertFalse(is_positive_semidefinite([[zero, zero], [zero, Scalar(-1)]]))
        # zero diagonal forces a zero row
        self.assertFalse(is_positive_semidefinite([[zero, one], [one, zero]]))
        self.assertTrue(is_positive_semidefinite([[zero, zero], [zero, one]]))
        self.assertTrue(is_positive_semidefinite([[one, one], [one, one]]))
        self.assertTrue(is_positive_semidefinite([]))

    @given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=9, max_size=9), st.integers(-3, 3))
    def test_positive_semidefinite_matches_minors(self, entries, shift):
        # B B* + shift, Hermitian with either answer
        b = [[Scalar(*entries[3 * i + j]) for j in range(3)] for i in range(3)]
        m = [
            [sum((b[i][k] * b[j][k].conjugate() for k in range(3)), Scalar(0)) + (Scalar(shift) if i == j else Scalar(0)) for j in range(3)]
            for i in range(3)
        ]
        minors = [
            complex_determinant([[m[i][j] for j in subset] for i in subset])
            for size in (1, 2, 3)
            for subset in combinations(range(3), size)
        ]
        expected = all(d.is_real() and d.re >= 0 for d in minors)
        self.assertEqual(is_positive_semidefinite(m), expected)


class TestIntegerLattices(unittest.TestCase):
    def test_invariant_factors(self):
        self.assertEqual(invariant_factors([[2, 0], [0, 3]]), [1, 6])
        self.assertEqual(invariant_factors([[2, 4]]), [2])
        self.assertEqual(invariant_factors([]), [])

    def test_membership(self):
        lattice = IntegerLattice(1, [[F(-1)]])
        self.assertTrue(lattice.contains([F(3)]))
        self.assertFalse(lattice.contains([F(1, 2)]))
        half = IntegerLattice(2, [[F(1, 2), F(0)], [F(0), F(3)]])
        self.assertTrue(half.contains([F(5, 2), F(-6)]))
        self.assertFalse(half.contains([F(1, 2), F(1)]))

    def test_coefficients(self):
        generators = [[F(2)], [F(3)]]
        lattice = IntegerLattice(1, generators)
        combo = lattice.coefficients(generators, [F(1)])
        self.assertEqual(combo[0] * 2 + combo[1] * 3, 1)
        self.assertIsNone(IntegerLattice(1, [[F(2)]]).coefficients([[F(2)]], [F(1)]))


if __name__ == "__main__":
    unittest.main()
