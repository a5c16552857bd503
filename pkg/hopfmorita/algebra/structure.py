"""
Structure of model algebras: centers, unitaries, anti-Hermitian central parts,
positivity, nilpotency and the exponential on its constructive domain.
"""
from fractions import Fraction
from math import factorial
from typing import Callable, List, Optional, Sequence

from loguru import logger

from hopfmorita import config
from hopfmorita.errors import DomainError, ModelError

from .linalg import (
    Subspace,
    complex_kernel,
    complex_subspace,
    is_positive_semidefinite,
    kernel,
    realify,
)
from .models import (
    AlgebraElement,
    BasedStarAlgebra,
    FiniteFunctions,
    Index,
    MatrixAlgebra,
)
from .scalar import I, Scalar


def _indices(alg: BasedStarAlgebra, window: Optional[int]) -> List[Index]:
    if alg.finite:
        return alg.basis()
    return alg.window(config.DEFAULT_WINDOW if window is None else window)


def center_basis(alg: BasedStarAlgebra, window: Optional[int] = None) -> List[AlgebraElement]:
    """
    Complex basis of the center Z(A): the exact kernel of the commutator
    operators z -> [z, b_i]. Commutative models return their whole basis, the
    Laurent model its mode window.
    """
    indices = _indices(alg, window)
    if alg.commutative:
        return [alg.basis_element(i) for i in indices]
    columns = [alg.basis_element(i) for i in indices]
    position = {i: k for k, i in enumerate(indices)}
    rows = []
    for j in indices:
        b = alg.basis_element(j)
        commutators = [e.commutator(b) for e in columns]
        for k in indices:
            rows.append([c.coefficient(k) for c in commutators])
        for c in commutators:
            if any(i not in position for i in c.support()):
                raise ModelError(f"Commutator leaves the basis of {alg.name}")
    vectors = complex_kernel(len(indices), rows)
    # canonical rref of the complex span, read back as complex vectors
    span = complex_subspace(len(indices), vectors)
    out = []
    for row, pivot in zip(span.rows, span.pivots):
        if pivot % 2 == 0:
            out.append(alg.element({i: Scalar(row[2 * k], row[2 * k + 1]) for k, i in enumerate(indices)}))
    logger.debug(f"Center of {alg.name} has dimension {len(out)}")
    return out


def hermitian_central_basis(alg: BasedStarAlgebra, window: Optional[int] = None) -> List[AlgebraElement]:
    """
    Rational basis of the real space of Hermitian central elements (within the
    window for the Laurent model), in canonical rref form over the realified
    coordinates of the sorted indices.
    """
    indices = _indices(alg, window)
    center = center_basis(alg, window)
    span = complex_subspace(len(indices), [z.vector(indices) for z in center])
    generators = [
        alg.element({i: Scalar(row[2 * k], row[2 * k + 1]) for k, i in enumerate(indices)})
        for row in span.rows
    ]
    # t -> sum t_k (g_k* - g_k) = 0
    defects = [realify((g.star() - g).vector(indices)) for g in generators]
    conditions = [[d[r] for d in defects] for r in range(2 * len(indices))]
    solutions = kernel(conditions, len(generators))
    hermitian_rows = []
    for t in solutions:
        h = [sum((t[k] * span.rows[k][c] for k in range(len(generators))), Fraction(0)) for c in range(2 * len(indices))]
        hermitian_rows.append(h)
    canonical = Subspace(2 * len(indices), hermitian_rows)
    return [
        alg.element({i: Scalar(row[2 * k], row[2 * k + 1]) for k, i in enumerate(indices)})
        for row in canonical.rows
    ]


def anti_hermitian_central_basis(alg: BasedStarAlgebra, window: Optional[int] = None) -> List[AlgebraElement]:
    """The distinguished rational basis {i*h} of the anti-Hermitian central part."""
    return [h * I for h in hermitian_central_basis(alg, window)]


def is_central(a: AlgebraElement, window: Optional[int] = None) -> bool:
    alg = a.algebra
    if alg.commutative:
        return True
    return all(a.commutator(alg.basis_element(i)).is_zero() for i in _indices(alg, window))


def is_unitary(a: AlgebraElement) -> bool:
    one = a.algebra.one()
    return a * a.star() == one and a.star() * a == one


def is_hermitian(a: AlgebraElement) -> bool:
    return a.star() == a


def is_anti_hermitian(a: AlgebraElement) -> bool:
    return a.star() == -a


def is_invariant(a: AlgebraElement, action) -> bool:
    """True iff the action fixes a: D_i a = 0 for Lie actions, g > a = a for group actions."""
    return not action.invariance_defects(a)


def is_positive_element(f: AlgebraElement) -> bool:
    """
    Positivity on FiniteFunctions (pointwise f(x) >= 0) and on matrices over
    FiniteFunctions or over C (pointwise positive semidefinite).
    """
    alg = f.algebra
    if isinstance(alg, FiniteFunctions):
        return all(c.is_real() and c.re >= 0 for _, c in f.items())
    if isinstance(alg, MatrixAlgebra) and alg.base is None:
        return is_positive_semidefinite(
            [[f.coefficient((i, j)) for j in range(alg.n)] for i in range(alg.n)]
        )
    if isinstance(alg, MatrixAlgebra) and isinstance(alg.base, FiniteFunctions):
        return all(
            is_positive_semidefinite(
                [[f.coefficient((i, j, p)) for j in range(alg.n)] for i in range(alg.n)]
            )
            for p in alg.base.points
        )
    raise ModelError(f"Positivity is not supported on {alg.name}")


def nilpotency_index(a: AlgebraElement) -> Optional[int]:
    """Smallest k >= 1 with a^k = 0, or None if a is not nilpotent."""
    alg = a.algebra
    if a.is_zero():
        return 1
    if not alg.finite:
        # the Laurent model has no zero divisors
        return None
    power = a
    for k in range(1, alg.dim + 1):
        if power.is_zero():
            return k
        power = power * a
    return None


class PhasedElement:
    """
    exp(2 pi i q) * element, with the rational phase q kept symbolic modulo 1.
    This is the value type of exp_central.
    """

    __slots__ = ("phase", "element")

    def __init__(self, phase: Fraction, element: AlgebraElement):
        self.phase = Fraction(phase) % 1
        self.element = element

    @property
    def algebra(self) -> BasedStarAlgebra:
        return self.element.algebra

    def __mul__(self, other: "PhasedElement") -> "PhasedElement":
        return PhasedElement(self.phase + other.phase, self.element * other.element)

    def star(self) -> "PhasedElement":
        return PhasedElement(-self.phase, self.element.star())

    def inverse(self) -> "PhasedElement":
        """Inverse of a unitary: the star."""
        return self.star()

    def apply_linear(self, f: Callable[[AlgebraElement], AlgebraElement]) -> "PhasedElement":
        return PhasedElement(self.phase, f(self.element))

    def root_of_unity(self) -> Optional[Scalar]:
        """exp(2 pi i q) when it is a Gaussian rational (q in {0, 1/4, 1/2, 3/4})."""
        return {
            Fraction(0): Scalar(1),
            Fraction(1, 4): Scalar(0, 1),
            Fraction(1, 2): Scalar(-1),
            Fraction(3, 4): Scalar(0, -1),
        }.get(self.phase)

    def to_element(self) -> AlgebraElement:
        scalar = self.root_of_unity()
        if scalar is None:
            raise DomainError(f"Phase exp(2 pi i {self.phase}) is not a Gaussian rational")
        return self.element * scalar

    def is_zero(self) -> bool:
        return self.element.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            other = PhasedElement(Fraction(0), other)
        if not isinstance(other, PhasedElement):
            return NotImplemented
        if self.element.is_zero() or other.element.is_zero():
            return self.element.is_zero() and other.element.is_zero()
        if self.phase == other.phase:
            return self.element == other.element
        a, b = self.root_of_unity(), other.root_of_unity()
        if a is not None and b is not None:
            return self.element * a == other.element * b
        return False

    def __hash__(self) -> int:
        return hash((self.phase, self.element))

    def __str__(self) -> str:
        if self.phase == 0:
            return str(self.element)
        return f"exp(2*pi*i*{self.phase}) * ({self.element})"

    def __repr__(self) -> str:
        return f"PhasedElement({self})"


def exp_central(a: AlgebraElement, phase: Fraction = Fraction(0), window: Optional[int] = None) -> PhasedElement:
    """
    exp(2 pi i q + a) for a central nilpotent a and a rational phase q.

    Args:
        a: central element with zero scalar part modulo nilpotents, i.e. a is itself
            nilpotent. On the Laurent model only a = 0 qualifies.
        phase: the rational q of the symbolic scalar part 2 pi i q.

    Returns:
        PhasedElement(q, sum_k a^k / k!).

    Raises:
        DomainError: a is not central, or a is not nilpotent (its scalar part is
            not of the supported form).
    """
    if not is_central(a, window):
        raise DomainError(f"exp_central needs a central element, got {a}")
    n = nilpotency_index(a)
    if n is None:
        raise DomainError(
            f"exp_central needs a nilpotent element plus a symbolic phase, got {a}"
        )
    result = a.algebra.zero()
    power = a.algebra.one()
    for k in range(n):
        result = result + power * Scalar(Fraction(1, factorial(k)))
        power = power * a
    return PhasedElement(Fraction(phase), result)
