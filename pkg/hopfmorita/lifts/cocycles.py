"""
Lifts of a Lie action to U(g): restriction of members of U(U(g), A) to
Chevalley-Eilenberg 1-cocycles, the inductive extension back, and the relation
between hat and exp.
"""
from fractions import Fraction
from itertools import product
from typing import Dict, Optional, Tuple

from loguru import logger

from hopfmorita.errors import DomainError, InconsistencyError, MembershipError
from hopfmorita.report import CheckReport

from hopfmorita.algebra.lie import LieAction
from hopfmorita.algebra.models import AlgebraElement
from hopfmorita.algebra.structure import exp_central, is_anti_hermitian, is_central
from hopfmorita.cohomology import CECochain, ce_d0, ce_d1, lie_action_of
from hopfmorita.convolution import ConvolutionMap, convolve, hat, inverse_candidate, require_member
from hopfmorita.hopf.action import HopfAction, LieHopfAction
from hopfmorita.hopf.uea import EnvelopingAlgebra

Word = Tuple[int, ...]


class LiftTwist:
    """
    A convolution map certified as a member of U(H, A) up to the truncation
    order. `provenance` records how it was obtained: "raw", "restricted-cocycle",
    "hat", "product" or "inverse".
    """

    def __init__(self, map: ConvolutionMap, action: HopfAction, provenance: str = "raw", window: Optional[int] = None):
        self.report = require_member(map, action, window)
        self.map = map
        self.action = action
        self.provenance = provenance
        self.window = window

    @classmethod
    def hat(cls, c, action: HopfAction, window: Optional[int] = None) -> "LiftTwist":
        return cls(hat(c, action, window), action, "hat", window)

    @property
    def hopf(self):
        return self.map.hopf

    def __call__(self, g) -> AlgebraElement:
        return self.map(g)

    def __mul__(self, other: "LiftTwist") -> "LiftTwist":
        return LiftTwist(convolve(self.map, other.map), self.action, "product", self.window)

    def inverse(self) -> "LiftTwist":
        return LiftTwist(inverse_candidate(self.map), self.action, "inverse", self.window)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LiftTwist):
            return NotImplemented
        return self.map == other.map

    def __hash__(self) -> int:
        return hash(self.map)

    def format(self):
        return self.map.format()

    def __repr__(self) -> str:
        return f"LiftTwist[{self.provenance}]({self.map})"


def _enveloping_action(action) -> LieHopfAction:
    if isinstance(action, LieHopfAction):
        return action
    if isinstance(action, LieAction):
        return LieHopfAction(action)
    raise DomainError("Lifts along U(g) need an action of a Lie algebra")


def restrict(a: LiftTwist) -> CECochain:
    """
    alpha(xi_i) = a(xi_i). The restriction of a certified member is an
    anti-Hermitian central 1-cocycle; anything else means the membership check
    missed something.
    """
    action = a.action
    if not isinstance(action, LieHopfAction):
        raise DomainError("Only twists over an enveloping algebra restrict to cocycles")
    H: EnvelopingAlgebra = action.hopf
    if H.truncation < 1:
        raise DomainError("Restriction needs truncation order at least 1")
    alg = action.algebra
    alpha = CECochain(1, alg, {i: a(H.generator(i)) for i in range(H.dim)})
    for i in range(H.dim):
        value = alpha(i)
        if not is_anti_hermitian(value) or not is_central(value, a.window):
            raise InconsistencyError(f"The restriction value {value} on xi_{i} is not anti-Hermitian central")
    if not ce_d1(alpha, action).is_zero():
        raise InconsistencyError(f"The restriction {alpha} is not a cocycle")
    return alpha


def extend(alpha: CECochain, action, truncation: Optional[int] = None, window: Optional[int] = None) -> LiftTwist:
    """
    The member of U(U(g), A) restricting to the cocycle alpha, built on words by

        a(xi Y) = alpha(xi) a(Y) + xi > a(Y),  a(1) = 1,

    for words of length <= N. The values descend to U(g): for every pair of
    generators and every word Z of length <= N - 2,

        a(xi eta Z) - a(eta xi Z) = a([xi, eta] Z),

    which is verified before the values are read off on PBW monomials.

    Raises:
        DomainError: alpha is not a 1-cocycle with anti-Hermitian central values.
        InconsistencyError: descent or membership fails.
    """
    if isinstance(action, LieAction):
        action = LieHopfAction(action, truncation=truncation)
    action = _enveloping_action(action)
    lie_action = action.lie_action
    H: EnvelopingAlgebra = action.hopf
    if alpha.degree != 1 or alpha.algebra != action.algebra:
        raise DomainError(f"extend needs a 1-cochain with values in {action.algebra.name}")
    for i in range(H.dim):
        value = alpha(i)
        if not is_anti_hermitian(value) or not is_central(value, window):
            raise DomainError(f"The value {value} on xi_{i} is not anti-Hermitian central")
    if not ce_d1(alpha, lie_action).is_zero():
        raise DomainError(f"{alpha} is not a cocycle")

    N = H.truncation
    values: Dict[Word, AlgebraElement] = {(): action.algebra.one()}
    for length in range(1, N + 1):
        for word in product(range(H.dim), repeat=length):
            head, rest = word[0], word[1:]
            below = values[rest]
            values[word] = alpha(head) * below + lie_action.apply(head, below)

    lie = H.lie
    for length in range(0, N - 1):
        for rest in product(range(H.dim), repeat=length):
            for i in range(H.dim):
                for j in range(i + 1, H.dim):
                    lhs = values[(i, j) + rest] - values[(j, i) + rest]
                    rhs = action.algebra.zero()
                    for k, c in enumerate(lie.bracket(i, j)):
                        if not c.is_zero():
                            rhs = rhs + values[(k,) + rest] * c
                    if lhs != rhs:
                        raise InconsistencyError(
                            f"Extension of {alpha} does not descend to U(g) at"
                            f" xi_{i} xi_{j} {rest}: {lhs} != {rhs}"
                        )

    pbw = ConvolutionMap(H, action.algebra, {m: values[H.word(m)] for m in H.basis()})
    try:
        twist = LiftTwist(pbw, action, "restricted-cocycle", window)
    except MembershipError as e:
        raise InconsistencyError(f"Extension of {alpha} is not a member of U(H, A): {e}")
    logger.debug(f"Extended {alpha} to order {N}")
    return twist


def hat_exp_relation_check(a: AlgebraElement, action, phase: Fraction = Fraction(0), window: Optional[int] = None) -> CheckReport:
    """
    hat(exp(2 pi i q + a)) restricted to the generators equals -d0(a).

    Raises:
        DomainError: exp is not defined on a.
    """
    lie_action = lie_action_of(action)
    generators_only = LieHopfAction(lie_action, truncation=1)
    report = CheckReport(name="hat-exp", scope=generators_only.scope(window))
    report.scope.truncation = None
    c = exp_central(a, phase, window)
    c_hat = hat(c, generators_only, window)
    minus_d0 = -ce_d0(CECochain(0, a.algebra, a), lie_action)
    H = generators_only.hopf
    for i in range(H.dim):
        lhs = c_hat(H.generator(i))
        if lhs != minus_d0(i):
            report.fail("hat-exp", a=a, xi=f"xi_{i}", lhs=lhs, rhs=minus_d0(i))
    return report
