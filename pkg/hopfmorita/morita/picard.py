"""
The Picard group of functions on a finite set X: isomorphism classes of
invertible (A, A)-bimodules under the tensor product.

Bimodules over A = FiniteFunctions(X) are classified by their block dimension
matrices, and tensor products multiply them. picard_enumerate works on the
matrices; picard_oracle builds every candidate bimodule and decides
invertibility with real tensor products and intertwiners. positive_pairings
searches the weighted pairings of every class for the completely positive ones
and relates any two of them by an isometry.
"""
from fractions import Fraction
from itertools import permutations, product
from math import isqrt
from typing import List, Optional, Sequence, Tuple

from loguru import logger
from pydantic import BaseModel

from hopfmorita import config
from hopfmorita.errors import DomainError
from hopfmorita.report import CheckReport

from hopfmorita.algebra.models import FiniteFunctions
from hopfmorita.algebra.scalar import Scalar

from .bimodules import (
    CanonicalBimodule,
    ConjugateBimodule,
    GradedBimodule,
    ModuleMap,
    TensorBimodule,
    block_dimensions,
    find_intertwiner,
)
from .products import InnerProductPair, complete_positivity_check, isometry_check, morita_axiom_check, standard_products

Matrix = Tuple[Tuple[int, ...], ...]


class PicardGroup(BaseModel):
    """
    Classes by block dimension matrix d[y][x], in lexicographic order of the
    matrices; table[i][j] is the class of elements[i] (x) elements[j].
    """

    points: List[str]
    order: int
    elements: List[List[List[int]]]
    table: List[List[int]]
    identity: int
    static_order: int
    max_rank: int = 1

    def permutation_of(self, k: int) -> Optional[List[int]]:
        """sigma with d[sigma(x)][x] = 1, if elements[k] is a permutation matrix."""
        d = self.elements[k]
        n = len(self.points)
        sigma = []
        for x in range(n):
            column = [d[y][x] for y in range(n)]
            if sorted(column) != [0] * (n - 1) + [1]:
                return None
            sigma.append(column.index(1))
        return sigma if sorted(sigma) == list(range(n)) else None

    def matches_symmetric_group(self) -> bool:
        """Every class is a permutation, all of Sym(X) occurs and the table is composition."""
        n = len(self.points)
        sigmas = [self.permutation_of(k) for k in range(self.order)]
        if any(s is None for s in sigmas):
            return False
        if sorted(map(tuple, sigmas)) != sorted(permutations(range(n))):
            return False
        position = {tuple(s): k for k, s in enumerate(sigmas)}
        for i, j in product(range(self.order), repeat=2):
            composed = tuple(sigmas[i][sigmas[j][x]] for x in range(n))
            if self.table[i][j] != position[composed]:
                return False
        return True


def candidate_matrices(n: int, max_rank: int = 1) -> List[Matrix]:
    """Nonnegative n x n matrices whose column sums lie in [1, max_rank]."""
    columns = [
        column
        for column in product(range(max_rank + 1), repeat=n)
        if 1 <= sum(column) <= max_rank
    ]
    out = []
    for cols in product(columns, repeat=n):
        out.append(tuple(tuple(cols[x][y] for x in range(n)) for y in range(n)))
    return sorted(out)


def matmul(p: Matrix, q: Matrix) -> Matrix:
    n = len(p)
    return tuple(
        tuple(sum(p[i][k] * q[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _check_size(points: Sequence[str], bound: Optional[int]):
    bound = config.PICARD_BOUND if bound is None else bound
    if not points:
        raise DomainError("The Picard group needs a nonempty set")
    if len(points) > bound:
        raise DomainError(f"|X| = {len(points)} exceeds the Picard bound {bound}")


def _is_static(d: Matrix, algebra: FiniteFunctions) -> bool:
    """a . v = v . a for all a and all basis vectors v."""
    E = GradedBimodule(algebra, algebra, d)
    for v in E.basis():
        ev = E.basis_element(v)
        for x in algebra.points:
            ex = algebra.basis_element(x)
            if E.act_left(ex, ev) != E.act_right(ev, ex):
                return False
    return True


def _group(points: Sequence[str], classes: List[Matrix], product_class, max_rank: int) -> PicardGroup:
    n = len(points)
    algebra = FiniteFunctions(points)
    position = {d: k for k, d in enumerate(classes)}
    table = [[position[product_class(p, q)] for q in classes] for p in classes]
    static = sum(1 for d in classes if _is_static(d, algebra))
    return PicardGroup(
        points=list(points),
        order=len(classes),
        elements=[[list(row) for row in d] for d in classes],
        table=table,
        identity=position[_identity(n)],
        static_order=static,
        max_rank=max_rank,
    )


def picard_enumerate(points: Sequence[str], bound: Optional[int] = None, max_rank: int = 1) -> PicardGroup:
    """
    Invertible classes among the candidate dimension matrices: those with a
    tensor inverse Q, PQ = QP = 1, among the candidates.
    """
    _check_size(points, bound)
    n = len(points)
    one = _identity(n)
    candidates = candidate_matrices(n, max_rank)
    invertible = [
        p for p in candidates if any(matmul(p, q) == one and matmul(q, p) == one for q in candidates)
    ]
    logger.debug(f"Picard over {n} points: {len(invertible)} of {len(candidates)} candidates invertible")
    return _group(points, invertible, matmul, max_rank)


def picard_oracle(points: Sequence[str], bound: Optional[int] = None, max_rank: int = 1) -> PicardGroup:
    """
    The same group from actual bimodules: E is invertible iff E (x) conj(E) and
    conj(E) (x) E are isomorphic to the canonical bimodule, and products are
    read off tensor products.
    """
    _check_size(points, bound)
    algebra = FiniteFunctions(points)
    unit = CanonicalBimodule(algebra)
    invertible = []
    modules = {}
    for d in candidate_matrices(len(points), max_rank):
        E = GradedBimodule(algebra, algebra, d)
        E_bar = ConjugateBimodule(E)
        if find_intertwiner(TensorBimodule(E, E_bar), unit) is None:
            continue
        if find_intertwiner(TensorBimodule(E_bar, E), unit) is None:
            continue
        invertible.append(d)
        modules[d] = E

    def tensor_class(p: Matrix, q: Matrix) -> Matrix:
        dims = block_dimensions(TensorBimodule(modules[p], modules[q]))
        return tuple(tuple(row) for row in dims)

    return _group(points, invertible, tensor_class, max_rank)


def norm_root(q: Fraction) -> Optional[Scalar]:
    """A Gaussian rational z with |z|^2 = q, or None if q is not such a norm."""
    if q <= 0:
        return None
    n, den = q.numerator * q.denominator, q.denominator
    for a in range(isqrt(n) + 1):
        b = isqrt(n - a * a)
        if a * a + b * b == n:
            return Scalar(Fraction(a, den), Fraction(b, den))
    return None


def _rescaling(P: InnerProductPair, Q: InnerProductPair) -> Optional[ModuleMap]:
    """v -> c_v v with |c_v|^2 weight_Q(v) = weight_P(v), from P's module to Q's."""
    E, F = P.module, Q.module
    images = {}
    for v in E.basis():
        c = norm_root(E.weights[v].re / F.weights[v].re)
        if c is None:
            return None
        images[v] = F.basis_element(v) * c
    return ModuleMap(E, F, images)


def positive_pairings(
    points: Sequence[str],
    weights: Sequence[int] = (-1, 0, 1, 2),
    bound: Optional[int] = None,
    order: int = 2,
) -> CheckReport:
    """
    Searches the weighted block pairings of every invertible class for the
    Morita pairings among them and the completely positive ones. Every class
    must carry a completely positive pairing, and any two of them must be
    related by an isometric bimodule isomorphism.
    """
    _check_size(points, bound)
    algebra = FiniteFunctions(points)
    group = picard_enumerate(points, bound)
    report = CheckReport(name="positive-pairings", data={"weights": list(weights), "order": order})
    counts = []
    for d in group.elements:
        basis = GradedBimodule(algebra, algebra, d).basis()
        morita, positive = 0, []
        for weighting in product(weights, repeat=len(basis)):
            P = standard_products(GradedBimodule(algebra, algebra, d, dict(zip(basis, weighting))))
            if not morita_axiom_check(P).passed:
                continue
            morita += 1
            if complete_positivity_check(P, order).passed:
                positive.append(P)
        counts.append({"class": d, "morita": morita, "positive": len(positive)})
        if not positive:
            report.fail("existence", detail="no completely positive pairing", dims=d)
            continue
        reference = positive[0]
        for P in positive[1:]:
            T = _rescaling(P, reference)
            if T is None or T.bimodule_defects() or not T.is_bijective():
                report.fail("uniqueness", detail="no rescaling isomorphism", dims=d, weights=P.module.weights)
            elif not isometry_check(T, P, reference).passed:
                report.fail("uniqueness", detail="rescaling is not isometric", dims=d, weights=P.module.weights)
    report.data["classes"] = counts
    logger.debug(f"Positive pairings over {len(points)} points: {sum(c['positive'] for c in counts)} found")
    return report
