import os
import tempfile

# Set cache dir to a temp dir before importing anything from hopfmorita
tmpdir = tempfile.mkdtemp()
os.environ["HOPFMORITA_CACHE_DIR"] = tmpdir

import unittest

from hopfmorita.algebra import (
    GeneratorDerivation,
    I,
    InnerDerivation,
    LieAction,
    LieAlgebra,
    MatrixSpec,
    Scalar,
    TableDerivation,
    TruncatedPoly,
    build_model,
    check_lie_action,
    is_invariant,
    rotation_action,
)
from hopfmorita.errors import ModelError


def solvable_action(n: int = 4) -> LieAction:
    """[xi_0, xi_1] = xi_1 acting by x d/dx and x^2 d/dx."""
    alg = TruncatedPoly(n)
    x = alg.basis_element(1)
    lie = LieAlgebra(2, {(0, 1): [0, 1]})
    return LieAction(lie, alg, [GeneratorDerivation(alg, x), GeneratorDerivation(alg, x * x)])


class TestLieAlgebra(unittest.TestCase):
    def test_bracket_lookup(self):
        lie = LieAlgebra(2, {(0, 1): [0, 1]})
        self.assertEqual(lie.bracket(1, 0), (Scalar(0), Scalar(-1)))
        self.assertEqual(lie.bracket(0, 0), (Scalar(0), Scalar(0)))
        self.assertFalse(lie.is_abelian())
        self.assertTrue(LieAlgebra.abelian(3).is_abelian())

    def test_jacobi_violation(self):
        lie = LieAlgebra(3, {(0, 1): [1, 0, 0], (1, 2): [0, 1, 0]})
        self.assertEqual(lie.jacobi_failures(), [(0, 1, 2)])

    def test_antisymmetry_violation(self):
        lie = LieAlgebra(2, {(0, 1): [1, 0], (1, 0): [1, 0]})
        self.assertEqual(lie.antisymmetry_failures(), [(0, 1)])
        self.assertEqual(LieAlgebra(1, {(0, 0): [1]}).antisymmetry_failures(), [(0, 0)])

    def test_bad_arity(self):
        with self.assertRaises(ModelError):
            LieAlgebra(2, {(0, 1): [1]})
        with self.assertRaises(ModelError):
            LieAlgebra(2, {(0, 2): [1, 0]})


class TestCheckLieAction(unittest.TestCase):
    def test_rotation(self):
        action = rotation_action()
        report = check_lie_action(action, window=2)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.scope.window, 2)
        u = action.algebra.basis_element(3)
        self.assertEqual(action.apply(0, u), u * Scalar(0, 3))

    def test_solvable(self):
        report = check_lie_action(solvable_action())
        self.assertTrue(report.passed, report.failures)

    def test_d_dx_is_not_a_derivation(self):
        alg = TruncatedPoly(4)
        action = LieAction(LieAlgebra.abelian(1), alg, [GeneratorDerivation(alg, alg.one())])
        report = check_lie_action(action)
        self.assertFalse(report.passed)
        witnesses = [(f.witness["a"], f.witness["b"]) for f in report.failures if f.identity == "leibniz"]
        self.assertIn(("x", "x^3"), witnesses)

    def test_broken_table(self):
        alg = TruncatedPoly(3)
        D = TableDerivation(alg, {1: alg.one(), 2: alg.zero()})
        report = check_lie_action(LieAction(LieAlgebra.abelian(1), alg, [D]))
        witnesses = [(f.witness["a"], f.witness["b"]) for f in report.failures if f.identity == "leibniz"]
        self.assertIn(("x", "x"), witnesses)

    def test_reality(self):
        alg = TruncatedPoly(2)
        D = TableDerivation(alg, {1: alg.scalar(I)})
        report = check_lie_action(LieAction(LieAlgebra.abelian(1), alg, [D]))
        self.assertIn("reality", report.failed_identities())

    def test_bracket_representation(self):
        alg = TruncatedPoly(4)
        x = alg.basis_element(1)
        # wrong sign: [xi_0, xi_1] = -xi_1
        lie = LieAlgebra(2, {(0, 1): [0, -1]})
        action = LieAction(lie, alg, [GeneratorDerivation(alg, x), GeneratorDerivation(alg, x * x)])
        self.assertIn("bracket-representation", check_lie_action(action).failed_identities())

    def test_inner_derivation(self):
        alg = build_model(MatrixSpec(2))
        h = alg.parse_element({"0,0": "i"})
        action = LieAction(LieAlgebra.abelian(1), alg, [InnerDerivation(alg, h)])
        self.assertTrue(check_lie_action(action).passed)
        self.assertTrue(is_invariant(alg.one(), action))
        self.assertFalse(is_invariant(alg.basis_element((0, 1)), action))

    def test_wrong_number_of_derivations(self):
        with self.assertRaises(ModelError):
            LieAction(LieAlgebra.abelian(2), TruncatedPoly(2), [])


if __name__ == "__main__":
    unittest.main()
