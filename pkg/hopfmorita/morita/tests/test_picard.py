import os
import tempfile

# Set cache dir to a temp dir before importing anything from hopfmorita
tmpdir = tempfile.mkdtemp()
os.environ["HOPFMORITA_CACHE_DIR"] = tmpdir

from fractions import Fraction
from math import factorial
import unittest

from hopfmorita.errors import DomainError
from hopfmorita.algebra import Scalar
from hopfmorita.morita import candidate_matrices, norm_root, picard_enumerate, picard_oracle, positive_pairings
from hopfmorita.morita.picard import matmul

POINTS = ["p", "q", "r", "s"]


class TestPicard(unittest.TestCase):
    def test_order_is_factorial(self):
        for n in range(1, 5):
            group = picard_enumerate(POINTS[:n])
            self.assertEqual(group.order, factorial(n))
            self.assertEqual(group.static_order, 1)
            self.assertTrue(group.matches_symmetric_group())

    def test_identity_and_table(self):
        group = picard_enumerate(POINTS[:3])
        e = group.identity
        self.assertEqual(group.elements[e], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        for k in range(group.order):
            self.assertEqual(group.table[e][k], k)
            self.assertEqual(group.table[k][e], k)
            # every class has an inverse
            self.assertIn(e, group.table[k])

    def test_two_points(self):
        group = picard_enumerate(POINTS[:2])
        self.assertEqual(group.elements, [[[0, 1], [1, 0]], [[1, 0], [0, 1]]])
        self.assertEqual(group.table, [[1, 0], [0, 1]])
        self.assertEqual(group.permutation_of(0), [1, 0])

    def test_higher_rank_candidates_add_nothing(self):
        group = picard_enumerate(POINTS[:2], max_rank=2)
        self.assertEqual(group.order, 2)
        self.assertEqual(group.max_rank, 2)
        self.assertEqual(len(candidate_matrices(2, 2)), 25)

    def test_oracle_agrees(self):
        for n in range(1, 5):
            enumerated = picard_enumerate(POINTS[:n])
            built = picard_oracle(POINTS[:n])
            self.assertEqual(built.elements, enumerated.elements)
            self.assertEqual(built.table, enumerated.table)
            self.assertEqual(built.static_order, 1)

    def test_positive_pairings(self):
        for n in range(1, 4):
            report = positive_pairings(POINTS[:n])
            self.assertTrue(report.passed, report.failures)
            counts = report.data["classes"]
            self.assertEqual(len(counts), factorial(n))
            for c in counts:
                # nonzero weights are Morita pairings, positive ones are completely positive
                self.assertEqual((c["morita"], c["positive"]), (3 ** n, 2 ** n), c)

    def test_pairings_without_a_positive_weight(self):
        report = positive_pairings(POINTS[:2], weights=(-1, 0))
        self.assertEqual(report.failed_identities(), ["existence", "existence"])

    def test_pairings_without_a_rational_isometry(self):
        # 3 is not a sum of two rational squares
        report = positive_pairings(POINTS[:1], weights=(1, 3))
        self.assertEqual(report.failed_identities(), ["uniqueness"])
        self.assertEqual(report.failures[0].detail, "no rescaling isomorphism")

    def test_norm_root(self):
        for q in (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(25, 4), Fraction(5, 9)):
            z = norm_root(q)
            self.assertEqual(z.abs2(), q)
        self.assertEqual(norm_root(Fraction(4)), Scalar(0, 2))
        for q in (Fraction(0), Fraction(-1), Fraction(3), Fraction(1, 3)):
            self.assertIsNone(norm_root(q))

    def test_bounds(self):
        with self.assertRaises(DomainError):
            picard_enumerate([])
        with self.assertRaises(DomainError):
            picard_enumerate(POINTS + ["t"])
        with self.assertRaises(DomainError):
            picard_oracle(POINTS[:3], bound=2)

    def test_matmul(self):
        p = ((0, 1), (1, 0))
        self.assertEqual(matmul(p, p), ((1, 0), (0, 1)))


if __name__ == "__main__":
    unittest.main()
