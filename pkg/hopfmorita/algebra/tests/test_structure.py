import os
import tempfile

# Set cache dir to a temp dir before importing anything from hopfmorita
tmpdir = tempfile.mkdtemp()
os.environ["HOPFMORITA_CACHE_DIR"] = tmpdir

from fractions import Fraction
from itertools import product
import unittest

from hypothesis import given
from hypothesis import strategies as st

from hopfmorita.algebra import (
    FiniteFunctions,
    FiniteFunctionsSpec,
    GeneratorDerivation,
    I,
    Laurent,
    MatrixSpec,
    ProductSpec,
    Scalar,
    TruncatedPoly,
    anti_hermitian_central_basis,
    build_model,
    center_basis,
    exp_central,
    is_anti_hermitian,
    is_central,
    is_positive_element,
    is_unitary,
    nilpotency_index,
)
from hopfmorita.errors import DomainError, ModelError

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


class TestCenter(unittest.TestCase):
    def test_matrix_center_is_scalars(self):
        alg = build_model(MatrixSpec(2))
        self.assertEqual(center_basis(alg), [alg.one()])

    def test_commutative_center_is_everything(self):
        self.assertEqual(len(center_basis(TruncatedPoly(3))), 3)
        self.assertEqual(len(center_basis(Laurent(), window=2)), 5)

    def test_product_center(self):
        alg = build_model(ProductSpec((FiniteFunctionsSpec(("p",)), MatrixSpec(2))))
        center = center_basis(alg)
        self.assertEqual(len(center), 2)
        for z in center:
            for i in alg.basis():
                self.assertTrue(z.commutator(alg.basis_element(i)).is_zero())
            # closed under star
            self.assertIn(z.star(), center)

    def test_anti_hermitian_central_basis(self):
        alg = TruncatedPoly(3)
        self.assertEqual(
            anti_hermitian_central_basis(alg),
            [alg.basis_element(k) * I for k in range(3)],
        )
        laurent = Laurent()
        basis = anti_hermitian_central_basis(laurent, window=1)
        self.assertEqual(len(basis), 3)
        self.assertIn(laurent.one() * I, basis)
        self.assertTrue(all(is_anti_hermitian(a) for a in basis))

    def test_anti_hermitian_center_of_matrices(self):
        alg = build_model(MatrixSpec(2, FiniteFunctionsSpec(("p", "q"))))
        basis = anti_hermitian_central_basis(alg)
        self.assertEqual(len(basis), 2)
        self.assertTrue(all(is_central(a) and is_anti_hermitian(a) for a in basis))


class TestElementPredicates(unittest.TestCase):
    def test_unitary(self):
        laurent = Laurent()
        self.assertTrue(is_unitary(laurent.basis_element(1)))
        alg = TruncatedPoly(2)
        self.assertFalse(is_unitary(alg.one() + alg.basis_element(1)))

    def test_anti_hermitian(self):
        alg = TruncatedPoly(2)
        self.assertTrue(is_anti_hermitian(alg.scalar(I)))
        self.assertFalse(is_anti_hermitian(alg.one()))

    def test_positivity(self):
        alg = FiniteFunctions(["p", "q"])
        self.assertTrue(is_positive_element(alg.parse_element({"p": "2", "q": "3"})))
        self.assertFalse(is_positive_element(alg.parse_element({"p": "1", "q": "-1"})))
        self.assertFalse(is_positive_element(alg.parse_element({"p": "i"})))
        with self.assertRaises(ModelError):
            is_positive_element(TruncatedPoly(2).one())

    def test_matrix_positivity(self):
        alg = build_model(MatrixSpec(2, FiniteFunctionsSpec(("p",))))
        ones = alg.parse_element({"0,0,p": "1", "0,1,p": "1", "1,0,p": "1", "1,1,p": "1"})
        self.assertTrue(is_positive_element(ones))
        self.assertFalse(is_positive_element(ones - alg.one() * Scalar(2)))

    @given(st.lists(st.tuples(small, small), min_size=1, max_size=4))
    def test_positivity_against_positive_functionals(self, values):
        points = [f"x{k}" for k in range(len(values))]
        alg = FiniteFunctions(points)
        f = alg.element({p: Scalar(re, im) for p, (re, im) in zip(points, values)})
        # functionals f -> sum_x w_x f(x) with weights w_x in {0, 1}
        brute = True
        for weights in product([0, 1], repeat=len(points)):
            total = sum((f.coefficient(p) * w for p, w in zip(points, weights)), Scalar(0))
            if not (total.is_real() and total.re >= 0):
                brute = False
        self.assertEqual(is_positive_element(f), brute)

    def test_nilpotency_index(self):
        alg = TruncatedPoly(4)
        x = alg.basis_element(1)
        self.assertEqual(nilpotency_index(x), 4)
        self.assertEqual(nilpotency_index(x * x), 2)
        self.assertIsNone(nilpotency_index(alg.one()))
        self.assertIsNone(nilpotency_index(Laurent().basis_element(1)))


class TestExponential(unittest.TestCase):
    def test_exp_of_zero(self):
        alg = TruncatedPoly(3)
        self.assertEqual(exp_central(alg.zero()).element, alg.one())

    def test_exp_of_x(self):
        alg = TruncatedPoly(3)
        x = alg.basis_element(1)
        expected = alg.parse_element({"0": "1", "1": "1", "2": "1/2"})
        self.assertEqual(exp_central(x).element, expected)

    def test_derivation_of_exp(self):
        alg = TruncatedPoly(4)
        x = alg.basis_element(1)
        D = GeneratorDerivation(alg, x)
        e = exp_central(x)
        self.assertEqual(e.apply_linear(D), e * exp_central(alg.zero()).apply_linear(lambda _: D(x)))
        self.assertEqual(D(e.element), e.element * D(x))

    @given(small, small, small, small)
    def test_exp_is_multiplicative(self, p, q, r, s):
        alg = TruncatedPoly(4)
        a = alg.element({1: p, 2: q})
        b = alg.element({1: r, 3: s})
        self.assertEqual(exp_central(a + b), exp_central(a) * exp_central(b))

    def test_phases(self):
        laurent = Laurent()
        half = exp_central(laurent.zero(), phase=Fraction(1, 2))
        self.assertEqual(half.to_element(), -laurent.one())
        self.assertEqual(half * half, laurent.one())
        third = exp_central(laurent.zero(), phase=Fraction(1, 3))
        self.assertEqual((third * third * third).element, laurent.one())
        self.assertEqual((third * third * third).phase, 0)
        with self.assertRaises(DomainError):
            third.to_element()

    def test_domain_errors(self):
        with self.assertRaises(DomainError):
            exp_central(Laurent().basis_element(1) * I)
        with self.assertRaises(DomainError):
            exp_central(TruncatedPoly(3).one())
        matrices = build_model(MatrixSpec(2))
        with self.assertRaises(DomainError):
            exp_central(matrices.basis_element((0, 1)))


if __name__ == "__main__":
    unittest.main()
