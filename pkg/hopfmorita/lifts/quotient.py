"""
U0(U(g), A): H^1 modulo the classes of declared winding unitaries.

The windings stand in for the central unitaries that are not exponentials. Their
hat-cocycles span a lattice inside the rational vector space H^1; the quotient
is (Q/Z)^r + Q^(h - r) with r the rank of that lattice, and the integer
invariant factors of the generator matrix describe how the windings sit inside
it.
"""
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Union

from loguru import logger
from pydantic import BaseModel

from hopfmorita.errors import DomainError, InconsistencyError
from hopfmorita.report import Scope
from hopfmorita.util import format_fraction

from hopfmorita.algebra.linalg import IntegerLattice, invariant_factors
from hopfmorita.algebra.models import AlgebraElement
from hopfmorita.algebra.structure import PhasedElement, is_central, is_unitary
from hopfmorita.cohomology import CECochain, CohomologyResult, h1, lie_action_of
from hopfmorita.convolution import hat
from hopfmorita.hopf.action import LieHopfAction

Winding = Union[AlgebraElement, PhasedElement]


class WindingSet:
    """Declared central unitaries, one generator of U(Z(A)) / exp each."""

    def __init__(self, windings: Sequence[Winding] = (), window: Optional[int] = None):
        self.windings: List[PhasedElement] = []
        for c in windings:
            c = c if isinstance(c, PhasedElement) else PhasedElement(Fraction(0), c)
            if not is_unitary(c.element):
                raise DomainError(f"Winding {c} is not unitary")
            if not is_central(c.element, window):
                raise DomainError(f"Winding {c} is not central")
            self.windings.append(c)
        self.window = window

    def __len__(self) -> int:
        return len(self.windings)

    def __iter__(self):
        return iter(self.windings)

    def hat_cocycles(self, action) -> List[CECochain]:
        """The restriction of hat(c) to the generators, for every winding c."""
        lie_action = lie_action_of(action)
        generators_only = LieHopfAction(lie_action, truncation=1)
        H = generators_only.hopf
        out = []
        for c in self.windings:
            c_hat = hat(c, generators_only, self.window)
            out.append(CECochain(1, lie_action.algebra, {i: c_hat(H.generator(i)) for i in range(H.dim)}))
        return out


class ClassReduction(NamedTuple):
    trivial: bool
    coordinates: List[Fraction]
    windings: Optional[List[int]]
    preimage: Optional[CECochain]


class U0Summary(BaseModel):
    description: str
    h1_dim: int
    lattice_rank: int
    divisible_rank: int
    free_rank: int
    invariant_factors: List[int] = []
    lattice_scale: int = 1
    h1_representatives: List[dict] = []
    windings: List[str] = []
    winding_coordinates: List[List[str]] = []
    scope: Scope = Scope()


class U0Presentation:
    """
    H^1 with the winding lattice inside it. Classes are compared through their
    coordinates in the H^1 representative basis.
    """

    def __init__(self, cohomology: CohomologyResult, windings: WindingSet, classes: Sequence[CECochain]):
        self.cohomology = cohomology
        self.windings = windings
        self.winding_classes = list(classes)
        self.coordinates: List[List[Fraction]] = []
        for c, alpha in zip(windings, classes):
            try:
                self.coordinates.append(cohomology.h1_coordinates(alpha))
            except DomainError:
                raise InconsistencyError(f"The hat of the winding {c} does not restrict to a cocycle")
        self.lattice = IntegerLattice(cohomology.h1_dim, self.coordinates)
        scaled = [[int(v * self.lattice.scale) for v in row] for row in self.coordinates]
        self.invariant_factors = invariant_factors(scaled) if scaled and cohomology.h1_dim else []

    @property
    def h1_dim(self) -> int:
        return self.cohomology.h1_dim

    @property
    def lattice_rank(self) -> int:
        return self.lattice.rank

    @property
    def free_rank(self) -> int:
        return self.h1_dim - self.lattice_rank

    def describe(self) -> str:
        parts = []
        for name, k in (("Q/Z", self.lattice_rank), ("Q", self.free_rank)):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"({name})^{k}" if "/" in name else f"{name}^{k}")
        return " + ".join(parts) or "0"

    def reduce(self, alpha: CECochain) -> ClassReduction:
        """
        Decides whether the class of alpha lies in the winding lattice. When it
        does, alpha = sum z_c hat(c) + d0(b), and the integers z_c and the
        0-cochain b are returned.
        """
        coords = self.cohomology.h1_coordinates(alpha)
        combo = self.lattice.coefficients(self.coordinates, coords)
        if combo is None:
            return ClassReduction(False, coords, None, None)
        rest = alpha
        for z, beta in zip(combo, self.winding_classes):
            if z:
                rest = rest - beta.scale(z)
        preimage = self.cohomology.coboundary_preimage(rest)
        if preimage is None:
            raise InconsistencyError(f"{alpha} reduces to zero in H^1 but has no coboundary preimage")
        return ClassReduction(True, coords, combo, preimage)

    def summary(self) -> U0Summary:
        return U0Summary(
            description=self.describe(),
            h1_dim=self.h1_dim,
            lattice_rank=self.lattice_rank,
            divisible_rank=self.lattice_rank,
            free_rank=self.free_rank,
            invariant_factors=self.invariant_factors,
            lattice_scale=self.lattice.scale,
            h1_representatives=[c.format() for c in self.cohomology.h1_basis],
            windings=[str(c) for c in self.windings],
            winding_coordinates=[[format_fraction(v) for v in row] for row in self.coordinates],
            scope=Scope(window=self.cohomology.space.window),
        )


def u0_quotient(action, windings: Optional[WindingSet] = None, window: Optional[int] = None, alg=None) -> U0Presentation:
    """H^1 of the action modulo the lattice of winding classes."""
    windings = WindingSet() if windings is None else windings
    cohomology = h1(action, alg, window)
    classes = windings.hat_cocycles(action)
    presentation = U0Presentation(cohomology, windings, classes)
    logger.debug(f"U0 over {cohomology.space.describe()}: {presentation.describe()}")
    return presentation
