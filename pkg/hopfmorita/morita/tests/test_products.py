import os
import tempfile

# Set cache dir to a temp dir before importing anything from hopfmorita
tmpdir = tempfile.mkdtemp()
os.environ["HOPFMORITA_CACHE_DIR"] = tmpdir

from itertools import product
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfmorita.algebra import FiniteFunctions, Laurent, MatrixAlgebra, TruncatedPoly
from hopfmorita.errors import DomainError
from hopfmorita.morita import (
    AlgebraMorphism,
    CanonicalBimodule,
    ConjugateBimodule,
    GradedBimodule,
    InnerProductPair,
    ModuleMap,
    StandardModule,
    TensorBimodule,
    associator,
    complete_positivity_check,
    ell,
    gram_map,
    is_isometric,
    isometry_check,
    morita_axiom_check,
    picard_enumerate,
    rieffel_tensor,
    standard_products,
    unit_isomorphism,
)


def points(n: int) -> FiniteFunctions:
    return FiniteFunctions(["p", "q", "r"][:n])


class TestMoritaAxioms(unittest.TestCase):
    def test_standard_modules(self):
        for size in (1, 2, 3):
            for n in (1, 2, 3):
                E = StandardModule(points(size), n)
                P = standard_products(E)
                report = morita_axiom_check(P)
                self.assertTrue(report.passed, (E.name, report.failed_identities()))
                self.assertIsNone(report.scope.window)
                self.assertTrue(complete_positivity_check(P, 3).passed, E.name)

    def test_canonical_bimodules(self):
        for A in (points(3), MatrixAlgebra(2), TruncatedPoly(3)):
            P = standard_products(CanonicalBimodule(A))
            self.assertTrue(morita_axiom_check(P).passed, A.name)

    def test_canonical_laurent_is_windowed(self):
        P = standard_products(CanonicalBimodule(Laurent()))
        report = morita_axiom_check(P, window=2)
        self.assertTrue(report.passed, report.failed_identities())
        self.assertEqual(report.scope.window, 2)
        self.assertIn("fullness is verified on the mode window only", report.notes)

    def test_zeroed_pairing_is_degenerate(self):
        E = StandardModule(points(2), 2)
        P = standard_products(E).zeroed((0, "p"))
        report = morita_axiom_check(P)
        self.assertFalse(report.passed)
        self.assertIn("non-degenerate", report.failed_identities())

    def test_negated_pairing_is_not_positive(self):
        E = StandardModule(points(2), 2)
        P = standard_products(E).scaled(-1)
        # negation keeps every algebraic axiom
        self.assertTrue(morita_axiom_check(P).passed)
        report = complete_positivity_check(P, 1)
        self.assertEqual(report.name, "complete-positivity")
        self.assertIn("A-positive", report.failed_identities())
        self.assertIn("B-positive", report.failed_identities())

    def test_graded_permutation_bimodule(self):
        A = points(3)
        E = GradedBimodule.permutation(A, {"p": "q", "q": "r", "r": "p"})
        P = standard_products(E)
        self.assertTrue(morita_axiom_check(P).passed)
        self.assertTrue(complete_positivity_check(P).passed)

    def test_graded_non_invertible_is_not_full(self):
        A = points(2)
        E = GradedBimodule(A, A, [[1, 1], [0, 0]])
        report = morita_axiom_check(standard_products(E))
        self.assertIn("full", report.failed_identities())

    def test_ell_products(self):
        A = points(3)
        E = ell(AlgebraMorphism.permutation(A, {"p": "r", "r": "p"}))
        self.assertTrue(morita_axiom_check(standard_products(E)).passed)

    def test_from_tables(self):
        A = points(1)
        E = CanonicalBimodule(A)
        one = A.basis_element("p")
        P = InnerProductPair.from_tables(E, {("p", "p"): one}, {("p", "p"): one})
        self.assertTrue(morita_axiom_check(P).passed)
        self.assertTrue(complete_positivity_check(P).passed)

    def test_positivity_needs_a_decidable_model(self):
        P = standard_products(CanonicalBimodule(TruncatedPoly(2)))
        with self.assertRaises(DomainError):
            complete_positivity_check(P)


class TestRieffel(unittest.TestCase):
    def test_tensor_of_standard_modules(self):
        A = points(2)
        E = StandardModule(A, 2)
        T = TensorBimodule(E, ConjugateBimodule(E))
        P = standard_products(T)
        self.assertIs(P.module, T)
        self.assertTrue(morita_axiom_check(P).passed)
        self.assertTrue(complete_positivity_check(P, 2).passed)

    def test_gram_map(self):
        for size, n in ((1, 2), (2, 2), (3, 1)):
            E = StandardModule(points(size), n)
            G = gram_map(standard_products(E))
            self.assertEqual(G.source.dim, G.target.dim)
            self.assertTrue(G.is_bijective())
            self.assertEqual(G.bimodule_defects(), [])

    def test_unit_isomorphism_is_isometric(self):
        E = StandardModule(points(2), 2)
        iso = unit_isomorphism(E)
        P_T = rieffel_tensor(standard_products(E), standard_products(iso.source.E), iso.source)
        self.assertTrue(is_isometric(iso, P_T, standard_products(E)))

    def test_associator_is_isometric(self):
        A = points(2)
        G = GradedBimodule.permutation(A, {"p": "q", "q": "p"})
        F = CanonicalBimodule(A)
        E = StandardModule(A, 1)
        iso = associator(G, F, ConjugateBimodule(E))
        report = isometry_check(iso, standard_products(iso.source), standard_products(iso.target))
        self.assertEqual(report.name, "isometry")
        self.assertTrue(report.passed, report.failures)

    def test_every_pair_of_invertible_classes(self):
        for size in (1, 2):
            A = points(size)
            classes = [GradedBimodule(A, A, d) for d in picard_enumerate(A.points).elements]
            # a weighted factor keeps the pairings apart
            doubled = [GradedBimodule(A, A, E.dims, {v: 2 for v in E.basis()}) for E in classes]
            for E, F in product(doubled, classes):
                P = rieffel_tensor(standard_products(E), standard_products(F))
                self.assertTrue(morita_axiom_check(P).passed, (E.dims, F.dims))
                report = complete_positivity_check(P, 2)
                self.assertTrue(report.passed, (E.dims, F.dims, report.failures))

    def test_every_triple_of_invertible_classes(self):
        for size in (1, 2):
            A = points(size)
            classes = [GradedBimodule(A, A, d) for d in picard_enumerate(A.points).elements]
            doubled = [GradedBimodule(A, A, E.dims, {v: 2 for v in E.basis()}) for E in classes]
            for G, F, E in product(doubled, classes, classes):
                iso = associator(G, F, E)
                report = isometry_check(iso, standard_products(iso.source), standard_products(iso.target))
                self.assertTrue(report.passed, (G.dims, F.dims, E.dims, report.failures))

    def test_wrong_tensor(self):
        A = points(2)
        E = CanonicalBimodule(A)
        with self.assertRaises(DomainError):
            rieffel_tensor(standard_products(E), standard_products(E), TensorBimodule(CanonicalBimodule(A), E))


class TestIsometry(unittest.TestCase):
    def weighted(self, weight):
        A = points(2)
        dims = [[1, 0], [0, 1]]
        return GradedBimodule(A, A, dims, {v: weight for v in GradedBimodule(A, A, dims).basis()})

    def test_doubling_is_isometric_onto_weight_one(self):
        E4, E1 = self.weighted(4), self.weighted(1)
        double = ModuleMap(E4, E1, {v: E1.basis_element(v) * 2 for v in E4.basis()})
        same = ModuleMap(E4, E1, {v: E1.basis_element(v) for v in E4.basis()})
        P4, P1 = standard_products(E4), standard_products(E1)
        self.assertTrue(is_isometric(double, P4, P1))
        report = isometry_check(same, P4, P1)
        self.assertFalse(report.passed)
        self.assertEqual(set(report.failed_identities()), {"isometric"})

    def test_products_must_sit_on_the_map(self):
        E4, E1 = self.weighted(4), self.weighted(1)
        T = ModuleMap(E4, E1, {})
        with self.assertRaises(DomainError):
            isometry_check(T, standard_products(E1), standard_products(E1))

    @settings(max_examples=10, deadline=None)
    @given(st.integers(min_value=1, max_value=6))
    def test_scaling_by_k_needs_weight_k_squared(self, k):
        Ek, E1 = self.weighted(k * k), self.weighted(1)
        T = ModuleMap(Ek, E1, {v: E1.basis_element(v) * k for v in Ek.basis()})
        self.assertTrue(is_isometric(T, standard_products(Ek), standard_products(E1)))


if __name__ == "__main__":
    unittest.main()
