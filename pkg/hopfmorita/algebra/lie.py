"""
Finite-dimensional Lie algebras given by structure constants, and their actions on
model algebras by *-derivations.
"""
from itertools import combinations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from loguru import logger

from hopfmorita import config
from hopfmorita.errors import ModelError
from hopfmorita.report import CheckReport, Scope

from .models import AlgebraElement, BasedStarAlgebra, Index, Laurent, TruncatedPoly
from .scalar import Scalar, ScalarLike

Bracket = Tuple[Scalar, ...]


class LieAlgebra:
    """
    A Lie algebra with generators xi_0, ..., xi_{d-1}. Structure constants are
    given for the pairs that appear in the table; [xi_j, xi_i] is read off as
    -[xi_i, xi_j] when only (i, j) is listed. Nothing is assumed about the table:
    antisymmetry and Jacobi are checked, not enforced.
    """

    def __init__(self, dim: int, brackets: Mapping[Tuple[int, int], Sequence[ScalarLike]] = None):
        if dim < 0:
            raise ModelError(f"Negative Lie algebra dimension {dim}")
        self.dim = dim
        self.table: Dict[Tuple[int, int], Bracket] = {}
        for (i, j), coeffs in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ModelError(f"Bracket ({i}, {j}) outside of dimension {dim}")
            if len(coeffs) != dim:
                raise ModelError(f"Bracket ({i}, {j}) needs {dim} coefficients, got {len(coeffs)}")
            self.table[(i, j)] = tuple(Scalar.of(c) for c in coeffs)

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls(dim)

    def bracket(self, i: int, j: int) -> Bracket:
        if (i, j) in self.table:
            return self.table[(i, j)]
        if (j, i) in self.table:
            return tuple(-c for c in self.table[(j, i)])
        return tuple(Scalar(0) for _ in range(self.dim))

    def bracket_vectors(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> List[Scalar]:
        out = [Scalar(0)] * self.dim
        for i, j in product(range(self.dim), repeat=2):
            if x[i].is_zero() or y[j].is_zero():
                continue
            c = x[i] * y[j]
            for k, v in enumerate(self.bracket(i, j)):
                out[k] = out[k] + c * v
        return out

    def is_abelian(self) -> bool:
        return all(c.is_zero() for coeffs in self.table.values() for c in coeffs)

    def antisymmetry_failures(self) -> List[Tuple[int, int]]:
        failures = []
        for (i, j), coeffs in sorted(self.table.items()):
            if i == j and any(not c.is_zero() for c in coeffs):
                failures.append((i, j))
            elif i < j and (j, i) in self.table and any(
                not (a + b).is_zero() for a, b in zip(coeffs, self.table[(j, i)])
            ):
                failures.append((i, j))
        return failures

    def jacobi_failures(self) -> List[Tuple[int, int, int]]:
        failures = []
        unit = [[Scalar(int(k == i)) for k in range(self.dim)] for i in range(self.dim)]
        for i, j, k in combinations(range(self.dim), 3):
            total = [Scalar(0)] * self.dim
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.bracket_vectors(unit[b], unit[c])
                total = [s + t for s, t in zip(total, self.bracket_vectors(unit[a], inner))]
            if any(not t.is_zero() for t in total):
                failures.append((i, j, k))
        return failures

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.table)})"


class Derivation:
    """
    A linear operator on a model algebra given on basis elements and extended by
    linearity. Whether it is a (*-)derivation is for check_lie_action to decide.
    """

    def __init__(self, algebra: BasedStarAlgebra):
        self.algebra = algebra

    def apply_basis(self, i: Index) -> AlgebraElement:
        raise NotImplementedError

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        out = self.algebra.zero()
        for i, c in a.items():
            out = out + self.apply_basis(i) * c
        return out


class TableDerivation(Derivation):
    """Values on basis elements listed explicitly; unlisted basis elements map to 0."""

    def __init__(self, algebra: BasedStarAlgebra, images: Mapping[Index, AlgebraElement]):
        super().__init__(algebra)
        self.images = dict(images)

    def apply_basis(self, i):
        return self.images.get(i, self.algebra.zero())


class GeneratorDerivation(Derivation):
    """
    The derivation of TruncatedPoly or Laurent determined by its value on the
    generator: D(x^k) = k x^{k-1} D(x), for all integers k on Laurent.
    """

    def __init__(self, algebra: BasedStarAlgebra, generator_image: AlgebraElement):
        if not isinstance(algebra, (TruncatedPoly, Laurent)):
            raise ModelError(f"{algebra.name} is not generated by a single element")
        super().__init__(algebra)
        self.generator_image = generator_image

    def apply_basis(self, k):
        if k == 0:
            return self.algebra.zero()
        return self.algebra.basis_element(k - 1) * self.generator_image * Scalar(k)


class InnerDerivation(Derivation):
    """ad(h): a -> [h, a]. A *-derivation when h is anti-Hermitian."""

    def __init__(self, algebra: BasedStarAlgebra, h: AlgebraElement):
        super().__init__(algebra)
        self.h = h

    def apply_basis(self, i):
        return self.h.commutator(self.algebra.basis_element(i))


class LieAction:
    """A Lie algebra acting on a model algebra: generator xi_i acts by derivations[i]."""

    def __init__(self, lie: LieAlgebra, algebra: BasedStarAlgebra, derivations: Sequence[Derivation]):
        if len(derivations) != lie.dim:
            raise ModelError(
                f"A Lie action of dimension {lie.dim} needs {lie.dim} derivations,"
                f" got {len(derivations)}"
            )
        self.lie = lie
        self.algebra = algebra
        self.derivations = list(derivations)

    @classmethod
    def trivial(cls, lie: LieAlgebra, algebra: BasedStarAlgebra) -> "LieAction":
        return cls(lie, algebra, [TableDerivation(algebra, {}) for _ in range(lie.dim)])

    def apply(self, i: int, a: AlgebraElement) -> AlgebraElement:
        return self.derivations[i](a)

    def apply_vector(self, x: Sequence[Scalar], a: AlgebraElement) -> AlgebraElement:
        out = self.algebra.zero()
        for i, c in enumerate(x):
            if not c.is_zero():
                out = out + self.apply(i, a) * c
        return out

    def invariance_defects(self, a: AlgebraElement) -> List[Tuple[str, AlgebraElement]]:
        defects = []
        for i in range(self.lie.dim):
            d = self.apply(i, a)
            if not d.is_zero():
                defects.append((f"xi_{i}", d))
        return defects


def rotation_action(dim: int = 1) -> LieAction:
    """The abelian Lie algebra of dimension 1 rotating the circle: D(u^k) = i k u^k."""
    alg = Laurent()
    lie = LieAlgebra.abelian(dim)
    return LieAction(
        lie,
        alg,
        [GeneratorDerivation(alg, alg.basis_element(1) * Scalar(0, 1)) for _ in range(dim)],
    )


def check_lie_action(action: LieAction, alg: Optional[BasedStarAlgebra] = None, window: Optional[int] = None) -> CheckReport:
    """
    Verifies that `action` is a Lie algebra action by *-derivations:

      - antisymmetry and Jacobi identity of the brackets,
      - Leibniz rule D_i(ab) = D_i(a) b + a D_i(b) on all basis pairs,
      - reality D_i(a*) = (D_i a)* on all basis elements,
      - D_[xi_i, xi_j] = D_i D_j - D_j D_i on all basis elements.

    On the Laurent model basis elements run over the mode window.
    """
    alg = alg or action.algebra
    if alg != action.algebra:
        raise ModelError(f"The action is on {action.algebra.name}, not on {alg.name}")
    report = CheckReport(name="check-action")
    if not alg.finite:
        window = config.DEFAULT_WINDOW if window is None else window
        report.scope = Scope(window=window)
    indices = alg.window(window)
    lie = action.lie

    for i, j in lie.antisymmetry_failures():
        report.fail("antisymmetry", pair=f"({i}, {j})", bracket=list(map(str, lie.bracket(i, j))))
    for i, j, k in lie.jacobi_failures():
        report.fail("jacobi", triple=f"({i}, {j}, {k})")

    basis = {i: alg.basis_element(i) for i in indices}
    for n, D in enumerate(action.derivations):
        for p, q in product(indices, repeat=2):
            a, b = basis[p], basis[q]
            lhs = D(a * b)
            rhs = D(a) * b + a * D(b)
            if lhs != rhs:
                report.fail(
                    "leibniz",
                    generator=n,
                    a=alg.basis_name(p),
                    b=alg.basis_name(q),
                    lhs=lhs,
                    rhs=rhs,
                )
        for p in indices:
            a = basis[p]
            if D(a.star()) != D(a).star():
                report.fail("reality", generator=n, a=alg.basis_name(p))

    for i, j in combinations(range(lie.dim), 2):
        coeffs = lie.bracket(i, j)
        for p in indices:
            a = basis[p]
            lhs = action.apply_vector(coeffs, a)
            rhs = action.apply(i, action.apply(j, a)) - action.apply(j, action.apply(i, a))
            if lhs != rhs:
                report.fail(
                    "bracket-representation",
                    pair=f"({i}, {j})",
                    a=alg.basis_name(p),
                    lhs=lhs,
                    rhs=rhs,
                )
    logger.debug(f"check-action on {alg.name}: {len(report.failures)} failures")
    return report
