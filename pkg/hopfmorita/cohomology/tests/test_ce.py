import os
import tempfile

# Set cache dir to a temp dir before importing anything from hopfmorita
tmpdir = tempfile.mkdtemp()
os.environ["HOPFMORITA_CACHE_DIR"] = tmpdir

from fractions import Fraction
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfmorita.algebra import (
    FiniteFunctions,
    GeneratorDerivation,
    I,
    Laurent,
    LieAction,
    LieAlgebra,
    Scalar,
    TruncatedPoly,
    rotation_action,
)
from hopfmorita.cohomology import (
    CECochain,
    CoefficientSpace,
    ce_d0,
    ce_d1,
    dense_h1_dimension,
    h1,
)
from hopfmorita.errors import DomainError
from hopfmorita.hopf import LieHopfAction
from hopfmorita.report import dumps


small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def solvable_action(n: int = 4) -> LieAction:
    """[xi_0, xi_1] = xi_1 acting by x d/dx and x^2 d/dx."""
    alg = TruncatedPoly(n)
    x = alg.basis_element(1)
    lie = LieAlgebra(2, {(0, 1): [0, 1]})
    return LieAction(lie, alg, [GeneratorDerivation(alg, x), GeneratorDerivation(alg, x * x)])


def euler_action(n: int = 3) -> LieAction:
    """x d/dx on K[x]/(x^n)."""
    alg = TruncatedPoly(n)
    return LieAction(LieAlgebra.abelian(1), alg, [GeneratorDerivation(alg, alg.basis_element(1))])


def shift_action() -> LieAction:
    """D(u) = i u^2 on the Laurent model: coboundaries leave every window."""
    alg = Laurent()
    u = alg.basis_element(1)
    return LieAction(LieAlgebra.abelian(1), alg, [GeneratorDerivation(alg, u * u * I)])


class TestCochains(unittest.TestCase):
    def test_d0_of_constants(self):
        action = rotation_action()
        alg = action.algebra
        self.assertTrue(ce_d0(CECochain(0, alg, alg.one()), action).is_zero())
        self.assertTrue(ce_d0(CECochain(0, alg, alg.scalar(I)), action).is_zero())

    def test_d0_rotation(self):
        action = rotation_action()
        alg = action.algebra
        a = (alg.basis_element(1) + alg.basis_element(-1)) * I
        alpha = ce_d0(CECochain(0, alg, a), action)
        self.assertEqual(alpha(0), alg.basis_element(-1) - alg.basis_element(1))

    def test_d1_vanishes_in_dimension_one(self):
        action = rotation_action()
        alg = action.algebra
        alpha = CECochain(1, alg, {0: alg.basis_element(2)})
        self.assertTrue(ce_d1(alpha, action).is_zero())

    def test_d1_solvable_example(self):
        action = solvable_action()
        alg = action.algebra
        alpha = CECochain(1, alg, {1: alg.scalar(I)})
        d1 = ce_d1(alpha, action)
        self.assertEqual(d1(0, 1), alg.scalar(-I))
        self.assertEqual(d1(1, 0), alg.scalar(I))
        self.assertTrue(d1(1, 1).is_zero())

    @given(st.lists(st.tuples(small, small), min_size=4, max_size=4))
    def test_d1_after_d0_is_zero(self, coeffs):
        action = solvable_action()
        alg = action.algebra
        a = alg.element({k: Scalar(re, im) for k, (re, im) in enumerate(coeffs)})
        self.assertTrue(ce_d1(ce_d0(CECochain(0, alg, a), action), action).is_zero())

    def test_hopf_action_is_accepted(self):
        action = LieHopfAction(solvable_action(), truncation=2)
        alg = action.algebra
        self.assertTrue(ce_d0(CECochain(0, alg, alg.one()), action).is_zero())

    def test_bad_cochains(self):
        alg = TruncatedPoly(2)
        with self.assertRaises(DomainError):
            CECochain(3, alg, {})
        with self.assertRaises(DomainError):
            CECochain(2, alg, {(1, 0): alg.one()})
        with self.assertRaises(DomainError):
            CECochain(1, alg, {0: Laurent().one()})

    def test_arithmetic_and_format(self):
        alg = TruncatedPoly(3)
        a = CECochain(1, alg, {0: alg.scalar(I), 1: alg.basis_element(1)})
        b = CECochain(1, alg, {0: alg.scalar(-I)})
        self.assertEqual(a + b, CECochain(1, alg, {1: alg.basis_element(1)}))
        self.assertTrue((a - a).is_zero())
        self.assertEqual(a.format(), {"xi_0": {"0": "1*i"}, "xi_1": {"1": "1"}})


class TestCoefficientSpace(unittest.TestCase):
    def test_laurent_window(self):
        space = CoefficientSpace(Laurent(), window=2)
        self.assertEqual(space.dim, 5)
        alg = space.algebra
        self.assertTrue(space.contains(alg.basis_element(1) - alg.basis_element(-1)))
        self.assertFalse(space.contains(alg.basis_element(1)))
        self.assertFalse(space.contains(alg.basis_element(3) * I))

    def test_coordinates_roundtrip(self):
        space = CoefficientSpace(TruncatedPoly(3))
        a = space.algebra.parse_element({"0": "2*i", "2": "-1/2*i"})
        self.assertEqual(space.element(space.coordinates(a)), a)

    def test_empty_window(self):
        with self.assertRaises(DomainError):
            CoefficientSpace(Laurent(), window=-1)


class TestH1(unittest.TestCase):
    def test_circle(self):
        result = h1(rotation_action(), window=3)
        alg = result.space.algebra
        self.assertEqual(result.space.dim, 7)
        self.assertEqual(result.h1_dim, 1)
        self.assertEqual(result.b1.dim, 6)
        self.assertEqual(result.h1_basis, [CECochain(1, alg, {0: alg.scalar(I)})])
        self.assertEqual(result.summary().scope.window, 3)

    def test_coboundaries_have_preimages(self):
        action = rotation_action()
        result = h1(action, window=2)
        self.assertEqual(len(result.b1_preimages), result.b1.dim)
        for pre, beta in zip(result.b1_preimages, result.b1_basis):
            self.assertEqual(ce_d0(pre, action), beta)
            self.assertTrue(ce_d1(beta, action).is_zero())
        for alpha in result.z1_basis:
            self.assertTrue(ce_d1(alpha, action).is_zero())

    def test_euler_operator(self):
        action = euler_action(3)
        result = h1(action)
        alg = action.algebra
        self.assertEqual(result.h1_dim, 1)
        self.assertEqual(result.h1_basis, [CECochain(1, alg, {0: alg.scalar(I)})])
        ix = CECochain(1, alg, {0: alg.basis_element(1) * I})
        self.assertTrue(result.is_coboundary(ix))
        pre = result.coboundary_preimage(ix)
        self.assertEqual(ce_d0(pre, action), ix)
        self.assertEqual(result.h1_coordinates(CECochain(1, alg, {0: alg.scalar(I) * 3})), [Fraction(3)])

    def test_trivial_action(self):
        alg = FiniteFunctions(["p", "q", "r"])
        result = h1(LieAction.trivial(LieAlgebra.abelian(2), alg))
        self.assertEqual(result.h1_dim, 6)
        self.assertEqual(result.b1.dim, 0)

    def test_trivial_action_of_solvable_algebra(self):
        alg = FiniteFunctions(["p", "q", "r"])
        lie = LieAlgebra(2, {(0, 1): [0, 1]})
        result = h1(LieAction.trivial(lie, alg))
        # alpha(xi_1) = -d1 alpha(xi_0, xi_1) has to vanish
        self.assertEqual(result.h1_dim, 3)
        for alpha in result.h1_basis:
            self.assertTrue(alpha(1).is_zero())

    def test_solvable(self):
        result = h1(solvable_action())
        self.assertEqual((result.z1.dim, result.b1.dim, result.h1_dim), (5, 3, 2))

    def test_not_a_cocycle(self):
        action = solvable_action()
        result = h1(action)
        alg = action.algebra
        with self.assertRaises(DomainError):
            result.h1_coordinates(CECochain(1, alg, {1: alg.scalar(I)}))

    def test_basis_order_independent(self):
        lie = LieAlgebra.abelian(1)
        results = [
            h1(LieAction.trivial(lie, FiniteFunctions(points))).summary()
            for points in (["p", "q", "r"], ["r", "p", "q"])
        ]
        for field in ("h1_representatives", "coefficient_basis"):
            canonical = [sorted(dumps(c) for c in getattr(r, field)) for r in results]
            self.assertEqual(canonical[0], canonical[1])
        self.assertEqual(results[0].h1_dim, results[1].h1_dim)

    def test_window_leaving_action(self):
        action = shift_action()
        result = h1(action, window=2)
        for pre, beta in zip(result.b1_preimages, result.b1_basis):
            self.assertEqual(ce_d0(pre, action), beta)
        self.assertEqual(result.h1_dim, dense_h1_dimension(action, window=2))

    def test_wrong_algebra(self):
        with self.assertRaises(DomainError):
            h1(rotation_action(), alg=TruncatedPoly(2))


class TestDenseOracle(unittest.TestCase):
    def test_agreement(self):
        cases = [
            (rotation_action(), 3),
            (rotation_action(), 1),
            (euler_action(3), None),
            (solvable_action(), None),
            (solvable_action(3), None),
            (LieAction.trivial(LieAlgebra.abelian(2), FiniteFunctions(["p", "q", "r"])), None),
            (LieAction.trivial(LieAlgebra(2, {(0, 1): [0, 1]}), FiniteFunctions(["p", "q"])), None),
            (LieAction.trivial(LieAlgebra.abelian(3), TruncatedPoly(2)), None),
        ]
        for action, window in cases:
            self.assertEqual(h1(action, window=window).h1_dim, dense_h1_dimension(action, window=window))

    @settings(max_examples=20, deadline=None)
    @given(st.lists(small, min_size=2, max_size=2))
    def test_agreement_on_random_scalings(self, weights):
        # D_0 = w_0 x d/dx, D_1 = w_1 x d/dx on K[x]/(x^3)
        alg = TruncatedPoly(3)
        x = alg.basis_element(1)
        action = LieAction(
            LieAlgebra.abelian(2),
            alg,
            [GeneratorDerivation(alg, x * w) for w in weights],
        )
        self.assertEqual(h1(action).h1_dim, dense_h1_dimension(action))


if __name__ == "__main__":
    unittest.main()
