"""
Inner products on bimodules: the axioms of a *-Morita equivalence bimodule,
complete positivity, Rieffel's inner products on balanced tensor products and
isometries.

Conventions: <x, y>_A is linear in y and conjugate-linear in x, _B<x, y> is
linear in x and conjugate-linear in y.
"""
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from loguru import logger

from hopfmorita import config
from hopfmorita.errors import DomainError, InconsistencyError
from hopfmorita.report import CheckReport, Scope

from hopfmorita.algebra.linalg import complex_kernel, complex_rank, is_positive_semidefinite
from hopfmorita.algebra.models import AlgebraElement, BasedStarAlgebra, FiniteFunctions, MatrixAlgebra
from hopfmorita.algebra.scalar import I, Scalar

from .bimodules import (
    Bimodule,
    CanonicalBimodule,
    ConjugateBimodule,
    GradedBimodule,
    MIndex,
    ModuleElement,
    ModuleMap,
    StandardModule,
    TensorBimodule,
    TwistedBimodule,
)

BasisProduct = Callable[[MIndex, MIndex], AlgebraElement]


class InnerProductPair:
    """
    The A-valued and B-valued inner products of a (B, A)-bimodule, given on
    basis pairs and extended sesquilinearly.
    """

    def __init__(self, module: Bimodule, right: BasisProduct, left: BasisProduct):
        self.module = module
        self._right_basis = right
        self._left_basis = left
        self._right_cache: Dict[Tuple[MIndex, MIndex], AlgebraElement] = {}
        self._left_cache: Dict[Tuple[MIndex, MIndex], AlgebraElement] = {}

    @classmethod
    def from_tables(cls, module: Bimodule, right: Dict[Tuple[MIndex, MIndex], AlgebraElement], left: Dict[Tuple[MIndex, MIndex], AlgebraElement]) -> "InnerProductPair":
        """Pairings given by explicit tables; missing basis pairs pair to zero."""
        return cls(
            module,
            lambda x, y: right.get((x, y), module.right.zero()),
            lambda x, y: left.get((x, y), module.left.zero()),
        )

    def right_basis(self, x: MIndex, y: MIndex) -> AlgebraElement:
        key = (x, y)
        if key not in self._right_cache:
            self._right_cache[key] = self._right_basis(x, y)
        return self._right_cache[key]

    def left_basis(self, x: MIndex, y: MIndex) -> AlgebraElement:
        key = (x, y)
        if key not in self._left_cache:
            self._left_cache[key] = self._left_basis(x, y)
        return self._left_cache[key]

    def right(self, x: ModuleElement, y: ModuleElement) -> AlgebraElement:
        """<x, y>_A"""
        out = self.module.right.zero()
        for xi, c in x.items():
            for eta, d in y.items():
                out = out + self.right_basis(xi, eta) * (c.conjugate() * d)
        return out

    def left(self, x: ModuleElement, y: ModuleElement) -> AlgebraElement:
        """_B<x, y>"""
        out = self.module.left.zero()
        for xi, c in x.items():
            for eta, d in y.items():
                out = out + self.left_basis(xi, eta) * (c * d.conjugate())
        return out

    def scaled(self, c) -> "InnerProductPair":
        c = Scalar.of(c)
        return InnerProductPair(
            self.module,
            lambda x, y: self.right_basis(x, y) * c,
            lambda x, y: self.left_basis(x, y) * c,
        )

    def zeroed(self, v: MIndex) -> "InnerProductPair":
        """The same pairings with every pair involving the basis vector v set to zero."""
        E = self.module
        return InnerProductPair(
            E,
            lambda x, y: E.right.zero() if v in (x, y) else self.right_basis(x, y),
            lambda x, y: E.left.zero() if v in (x, y) else self.left_basis(x, y),
        )

    def __repr__(self) -> str:
        return f"InnerProductPair({self.module.name})"


def standard_products(E: Bimodule) -> InnerProductPair:
    """
    The inner products every shipped bimodule kind carries: a*b and ab* on the
    canonical bimodule, the block metric on graded ones, the matrix products on
    A^n, conjugates swap the two sides, tensor products use Rieffel's formula.
    """
    if isinstance(E, (CanonicalBimodule, GradedBimodule, StandardModule, TwistedBimodule)):
        return InnerProductPair(E, E.right_inner_basis, E.left_inner_basis)
    if isinstance(E, ConjugateBimodule):
        base = standard_products(E.base)
        # <conj x, conj y>_B = _B<x, y> and _A<conj x, conj y> = <x, y>_A
        return InnerProductPair(E, base.left_basis, base.right_basis)
    if isinstance(E, TensorBimodule):
        return rieffel_tensor(standard_products(E.F), standard_products(E.E), E)
    raise DomainError(f"No standard inner products on {E.name}")


def _indices(alg: BasedStarAlgebra, window: Optional[int]) -> List:
    if alg.finite:
        return alg.basis()
    return alg.window(config.DEFAULT_WINDOW if window is None else window)


def _scope(E: Bimodule, window: Optional[int]) -> Scope:
    if E.finite and E.left.finite and E.right.finite:
        return Scope()
    return Scope(window=config.DEFAULT_WINDOW if window is None else window)


def _module_indices(E: Bimodule, window: Optional[int]) -> List[MIndex]:
    if E.finite:
        return E.basis()
    return E.window(config.DEFAULT_WINDOW if window is None else window)


def morita_axiom_check(P: InnerProductPair, window: Optional[int] = None) -> CheckReport:
    """
    The seven axioms of a *-Morita equivalence bimodule on basis pairs and
    triples: linearity, bimodule compatibility, Hermitian symmetry,
    non-degeneracy, fullness, compatibility with the involutions, and
    _B<x, y> . z = x . <y, z>_A. Infinite models are checked on the mode window,
    fullness only up to the window.
    """
    E = P.module
    A, B = E.right, E.left
    scope = _scope(E, window)
    report = CheckReport(name="morita-axioms", scope=scope)
    xs = _module_indices(E, window)
    a_indices = _indices(A, window)
    b_indices = _indices(B, window)
    elements = {x: E.basis_element(x) for x in xs}
    names = {x: E.basis_name(x) for x in xs}

    # linearity
    for x, y in product(xs, repeat=2):
        ex, ey = elements[x], elements[y]
        if P.right(ex, ey.scale(I)) != P.right(ex, ey) * I or P.right(ex.scale(I), ey) != P.right(ex, ey) * (-I):
            report.fail("linearity", detail="<x, y>_A", x=names[x], y=names[y])
        if P.left(ex.scale(I), ey) != P.left(ex, ey) * I or P.left(ex, ey.scale(I)) != P.left(ex, ey) * (-I):
            report.fail("linearity", detail="_B<x, y>", x=names[x], y=names[y])

    # bimodule
    for x, y in product(xs, repeat=2):
        ex, ey = elements[x], elements[y]
        rxy, lxy = P.right(ex, ey), P.left(ex, ey)
        for a in a_indices:
            ea = A.basis_element(a)
            if P.right(ex, E.act_right(ey, ea)) != rxy * ea:
                report.fail("bimodule", detail="<x, y . a>_A = <x, y>_A a", x=names[x], y=names[y], a=A.basis_name(a))
        for b in b_indices:
            eb = B.basis_element(b)
            if P.left(E.act_left(eb, ex), ey) != eb * lxy:
                report.fail("bimodule", detail="_B<b . x, y> = b _B<x, y>", x=names[x], y=names[y], b=B.basis_name(b))

    # hermitian
    for x, y in product(xs, repeat=2):
        ex, ey = elements[x], elements[y]
        if P.right(ex, ey).star() != P.right(ey, ex):
            report.fail("hermitian", detail="<x, y>_A* = <y, x>_A", x=names[x], y=names[y])
        if P.left(ex, ey).star() != P.left(ey, ex):
            report.fail("hermitian", detail="_B<x, y>* = _B<y, x>", x=names[x], y=names[y])

    # non-degenerate: x -> (<y, x>_A)_y and x -> (_B<x, y>)_y are injective
    for side, pairing in (("A", lambda x, y: P.right(y, x)), ("B", P.left)):
        columns = [[pairing(elements[x], elements[y]) for y in xs] for x in xs]
        support = sorted({i for col in columns for v in col for i in v.coeffs()}, key=str)
        rows = []
        for k in range(len(xs)):
            for i in support:
                rows.append([col[k].coefficient(i) for col in columns])
        for v in complex_kernel(len(xs), rows):
            witness = E.element(dict(zip(xs, v)))
            report.fail("non-degenerate", detail=f"{side}-valued product vanishes on x", x=witness)

    # full: the values span the algebra
    for side, alg, indices, pairing in (("A", A, a_indices, P.right), ("B", B, b_indices, P.left)):
        values = [pairing(elements[x], elements[y]) for x, y in product(xs, repeat=2)]
        span = sorted(set(indices) | {i for v in values for i in v.coeffs()}, key=str)
        vectors = [v.vector(span) for v in values]
        rank = complex_rank(len(span), vectors)
        base = complex_rank(len(span), vectors + [alg.basis_element(i).vector(span) for i in indices])
        if base != rank:
            report.fail("full", detail=f"{side}-valued products span {rank} of {len(indices)} dimensions")
    if not (A.finite and B.finite):
        report.notes.append("fullness is verified on the mode window only")

    # star-compatible
    for x, y in product(xs, repeat=2):
        ex, ey = elements[x], elements[y]
        for b in b_indices:
            eb = B.basis_element(b)
            if P.right(ex, E.act_left(eb, ey)) != P.right(E.act_left(eb.star(), ex), ey):
                report.fail("star-compatible", detail="<x, b . y>_A = <b* . x, y>_A", x=names[x], y=names[y], b=B.basis_name(b))
        for a in a_indices:
            ea = A.basis_element(a)
            if P.left(ex, E.act_right(ey, ea)) != P.left(E.act_right(ex, ea.star()), ey):
                report.fail("star-compatible", detail="_B<x, y . a> = _B<x . a*, y>", x=names[x], y=names[y], a=A.basis_name(a))

    # associativity
    for x, y, z in product(xs, repeat=3):
        ex, ey, ez = elements[x], elements[y], elements[z]
        if E.act_left(P.left(ex, ey), ez) != E.act_right(ex, P.right(ey, ez)):
            report.fail("associativity", detail="_B<x, y> . z = x . <y, z>_A", x=names[x], y=names[y], z=names[z])

    logger.debug(f"Morita axioms on {E.name}: {len(report.failures)} failures")
    return report


def _evaluations(alg: BasedStarAlgebra) -> Tuple[int, List[Callable[[AlgebraElement], List[List[Scalar]]]]]:
    """
    Faithful *-representations of a positivity-decidable model as square complex
    matrices: points of FiniteFunctions, M_n itself, and M_n over FiniteFunctions
    pointwise.
    """
    if isinstance(alg, FiniteFunctions):
        return 1, [(lambda a, p=p: [[a.coefficient(p)]]) for p in alg.points]
    if isinstance(alg, MatrixAlgebra):
        n = alg.n
        if alg.base is None:
            return n, [lambda a: [[a.coefficient((i, j)) for j in range(n)] for i in range(n)]]
        if isinstance(alg.base, FiniteFunctions):
            return n, [
                (lambda a, p=p: [[a.coefficient((i, j, p)) for j in range(n)] for i in range(n)])
                for p in alg.base.points
            ]
    raise DomainError(f"Positivity is decided on FiniteFunctions and matrix models, not {alg.name}")


def _gram_is_positive(alg: BasedStarAlgebra, gram: Sequence[Sequence[AlgebraElement]]) -> bool:
    size, evaluations = _evaluations(alg)
    k = len(gram)
    for evaluate in evaluations:
        blocks = [[evaluate(gram[r][c]) for c in range(k)] for r in range(k)]
        matrix = [
            [blocks[r][c][i][j] for c in range(k) for j in range(size)]
            for r in range(k)
            for i in range(size)
        ]
        if not is_positive_semidefinite(matrix):
            return False
    return True


def complete_positivity_check(P: InnerProductPair, n: int = 3) -> CheckReport:
    """
    Gram matrices (<x_r, x_c>_A) of every tuple of distinct basis vectors of
    length <= n are positive in M_k(A), and likewise (_B<x_r, x_c>) in M_k(B),
    decided exactly by an LDL* elimination pointwise.
    """
    E = P.module
    if not E.finite:
        raise DomainError(f"Complete positivity is checked on finite bimodules, not {E.name}")
    report = CheckReport(name="complete-positivity")
    report.data["order"] = n
    xs = E.basis()
    elements = {x: E.basis_element(x) for x in xs}
    for side, alg, pairing in (("A", E.right, P.right), ("B", E.left, P.left)):
        for k in range(1, n + 1):
            for subset in combinations(xs, k):
                gram = [[pairing(elements[r], elements[c]) for c in subset] for r in subset]
                if not _gram_is_positive(alg, gram):
                    report.fail(
                        f"{side}-positive",
                        detail=f"Gram matrix of size {k} is not positive",
                        tuple=", ".join(E.basis_name(x) for x in subset),
                    )
    return report


def rieffel_tensor(P_F: InnerProductPair, P_E: InnerProductPair, T: Optional[TensorBimodule] = None) -> InnerProductPair:
    """
    Inner products on F (x)_B E:

        <f (x) e, f' (x) e'>_A = <e, <f, f'>_B . e'>_A
        _C<f (x) e, f' (x) e'> = _C<f . _B<e, e'>, f'>

    Raises:
        InconsistencyError: the formulas do not vanish on the balanced relations.
    """
    F, E = P_F.module, P_E.module
    T = TensorBimodule(F, E) if T is None else T
    if T.F is not F or T.E is not E:
        raise DomainError(f"{T.name} is not the tensor product of {F.name} and {E.name}")

    @lru_cache(maxsize=None)
    def right_pair(p, q) -> AlgebraElement:
        (f, e), (g, h) = p, q
        inner = P_F.right(F.basis_element(f), F.basis_element(g))
        return P_E.right(E.basis_element(e), E.act_left(inner, E.basis_element(h)))

    @lru_cache(maxsize=None)
    def left_pair(p, q) -> AlgebraElement:
        (f, e), (g, h) = p, q
        inner = P_E.left(E.basis_element(e), E.basis_element(h))
        return P_F.left(F.act_right(F.basis_element(f), inner), F.basis_element(g))

    def vanishes(vector, pairing, q, first: bool, conjugate: bool) -> bool:
        total = None
        for p, c in zip(T.pairs, vector):
            if c.is_zero():
                continue
            value = (pairing(p, q) if first else pairing(q, p)) * (c.conjugate() if conjugate else c)
            total = value if total is None else total + value
        return total is None or total.is_zero()

    # <,>_A is conjugate-linear in the first slot, _C<,> in the second
    checks = (
        ("<,>_A", right_pair, True, True),
        ("<,>_A", right_pair, False, False),
        ("_C<,>", left_pair, True, False),
        ("_C<,>", left_pair, False, True),
    )
    for r in T.relations:
        for q in T.pairs:
            for name, pairing, first, conjugate in checks:
                if not vanishes(r, pairing, q, first, conjugate):
                    raise InconsistencyError(f"Rieffel product {name} on {T.name} does not vanish on a balanced relation")
    logger.debug(f"Rieffel products on {T.name} are well defined")
    return InnerProductPair(T, right_pair, left_pair)


def isometry_check(T: ModuleMap, P_source: InnerProductPair, P_target: InnerProductPair) -> CheckReport:
    """<T x, T y> = <x, y> for both products on basis pairs."""
    if P_source.module is not T.source or P_target.module is not T.target:
        raise DomainError(f"The inner products do not live on the ends of {T!r}")
    report = CheckReport(name="isometry")
    S = T.source
    for x, y in product(S.basis(), repeat=2):
        ex, ey = S.basis_element(x), S.basis_element(y)
        tx, ty = T(ex), T(ey)
        if P_target.right(tx, ty) != P_source.right(ex, ey):
            report.fail("isometric", detail="<Tx, Ty>_A", x=S.basis_name(x), y=S.basis_name(y))
        if P_target.left(tx, ty) != P_source.left(ex, ey):
            report.fail("isometric", detail="_B<Tx, Ty>", x=S.basis_name(x), y=S.basis_name(y))
    return report


def is_isometric(T: ModuleMap, P_source: InnerProductPair, P_target: InnerProductPair) -> bool:
    return isometry_check(T, P_source, P_target).passed


def gram_map(P: InnerProductPair) -> ModuleMap:
    """E (x)_A conj(E) -> B, x (x) conj(y) -> _B<x, y>."""
    E = P.module
    T = TensorBimodule(E, ConjugateBimodule(E))
    B = CanonicalBimodule(E.left)
    images = {
        (x, y): B.from_algebra(P.left(E.basis_element(x), E.basis_element(y)))
        for x, y in T.basis()
    }
    return ModuleMap(T, B, images)
