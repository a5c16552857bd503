from itertools import combinations
from typing import Optional, Sequence, Union

from loguru import logger

from hopfmorita.errors import DomainError
from hopfmorita.report import CheckReport

from hopfmorita.algebra.models import AlgebraElement
from hopfmorita.algebra.structure import PhasedElement, is_central, is_invariant, is_unitary
from hopfmorita.hopf.action import HopfAction

from .maps import ConvolutionMap, convolve, unit_map

CentralUnitary = Union[AlgebraElement, PhasedElement]


def hat(c: CentralUnitary, action: HopfAction, window: Optional[int] = None) -> ConvolutionMap:
    """
    c^(g) = c (g > c^-1) for a central unitary c. A symbolic phase exp(2 pi i q)
    cancels between c and c^-1, so only the unipotent factor of a PhasedElement
    enters.
    """
    element = c.element if isinstance(c, PhasedElement) else c
    if element.algebra != action.algebra:
        raise DomainError(f"hat needs an element of {action.algebra.name}")
    if not is_unitary(element):
        raise DomainError(f"hat needs a unitary element, got {element}")
    if not is_central(element, window):
        raise DomainError(f"hat needs a central element, got {element}")
    inverse = element.star()
    H = action.hopf
    return ConvolutionMap(
        H,
        action.algebra,
        {g: element * action.act_basis(g, inverse) for g in H.basis()},
    )


def exact_sequence_check(action: HopfAction, witnesses: Sequence[CentralUnitary], window: Optional[int] = None) -> CheckReport:
    """
    On the supplied central unitaries: hat(c) is the convolution unit exactly when
    c is invariant, and hat(c1 c2) = hat(c1) * hat(c2) on all pairs.
    """
    scope = action.scope(window)
    report = CheckReport(name="exact-sequence", scope=scope)
    unit = unit_map(action.hopf, action.algebra)
    phased = [c if isinstance(c, PhasedElement) else PhasedElement(0, c) for c in witnesses]
    hats = [hat(c, action, scope.window) for c in phased]
    kernel = []
    for c, c_hat in zip(phased, hats):
        element = c.element
        trivial = c_hat == unit
        invariant = is_invariant(element, action)
        if trivial:
            kernel.append(str(c))
        if trivial != invariant:
            report.fail("kernel-is-invariants", c=c, hat_trivial=trivial, invariant=invariant)
    for (k, c1), (m, c2) in combinations(enumerate(phased), 2):
        product = c1 * c2
        if hat(product, action, scope.window) != convolve(hats[k], hats[m]):
            report.fail("hat-multiplicative", c1=c1, c2=c2)
    report.data["kernel"] = kernel
    logger.debug(f"exact-sequence: {len(kernel)} of {len(witnesses)} witnesses in the kernel")
    return report
