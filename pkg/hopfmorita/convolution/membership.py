"""
Membership in U(H, A): normalization, the cocycle condition, centrality and
unitarity of a convolution map relative to an action of H on A.
"""
from itertools import product
from typing import List, Optional

from loguru import logger
from pydantic import BaseModel

from hopfmorita import config
from hopfmorita.errors import DomainError, MembershipError
from hopfmorita.report import CheckReport, Failure, Scope

from hopfmorita.algebra.models import AlgebraElement
from hopfmorita.algebra.structure import is_central
from hopfmorita.hopf.action import HopfAction
from hopfmorita.hopf.group import GroupHopf

from .maps import ConvolutionMap, inverse_candidate


class UMembershipReport(BaseModel):
    """Failures of each defining condition; no failures means a is in U(H, A) up to order N."""

    normalized: bool = True
    cocycle: List[Failure] = []
    central: List[Failure] = []
    unitary: List[Failure] = []
    scope: Scope = Scope()

    @property
    def member(self) -> bool:
        return self.normalized and not (self.cocycle or self.central or self.unitary)

    def to_check_report(self, name: str = "u-membership") -> CheckReport:
        report = CheckReport(name=name, scope=self.scope)
        if not self.normalized:
            report.fail("normalization", detail="a(1_H) != 1_A")
        for label, failures in (("cocycle", self.cocycle), ("central", self.central), ("unitary", self.unitary)):
            for f in failures:
                report.fail(label, detail=f.detail, **f.witness)
        return report


def _failure(identity: str, **witness) -> Failure:
    return Failure(identity=identity, witness={k: str(v) for k, v in witness.items()})


def _check_compatible(a: ConvolutionMap, action: HopfAction):
    if action.hopf is not a.hopf or action.algebra != a.target:
        raise DomainError("The convolution map and the action live on different H or A")


def u_membership(a: ConvolutionMap, action: HopfAction, window: Optional[int] = None) -> UMembershipReport:
    """
    Checks normalization a(1) = 1 once; the cocycle condition
    a(gh) = a(g_(1)) (g_(2) > a(h)) on basis pairs within the truncation order;
    centrality (g_(1) > b) a(g_(2)) = a(g_(1)) (g_(2) > b) on basis keys g and
    algebra basis elements b; unitarity a(g_(1)) a(S(g_(2)*))* = eps(g) 1 on
    basis keys.
    """
    _check_compatible(a, action)
    H, alg = a.hopf, a.target
    scope = action.scope(window)
    report = UMembershipReport(scope=scope)
    report.normalized = a(H.unit_key) == alg.one()
    keys = H.basis()
    name = H.key_name
    inverse = inverse_candidate(a)

    for g, h in product(keys, repeat=2):
        if not H.fits(g, h):
            continue
        lhs = a.evaluate(H.basis_element(g) * H.basis_element(h))
        rhs = alg.zero()
        for (g1, g2), c in H.coproduct_basis(g).items():
            rhs = rhs + a(g1) * action.act_basis(g2, a(h)) * c
        if lhs != rhs:
            report.cocycle.append(_failure("cocycle", g=name(g), h=name(h), lhs=lhs, rhs=rhs))

    basis = [alg.basis_element(i) for i in alg.window(scope.window)]
    for g in keys:
        delta = H.coproduct_basis(g)
        for b in basis:
            lhs = alg.zero()
            rhs = alg.zero()
            for (g1, g2), c in delta.items():
                lhs = lhs + action.act_basis(g1, b) * a(g2) * c
                rhs = rhs + a(g1) * action.act_basis(g2, b) * c
            if lhs != rhs:
                report.central.append(_failure("central", g=name(g), b=b, lhs=lhs, rhs=rhs))
                break
        total = alg.zero()
        for (g1, g2), c in delta.items():
            total = total + a(g1) * inverse(g2) * c
        if total != alg.one() * H.counit_basis(g):
            report.unitary.append(_failure("unitary", g=name(g), value=total))

    logger.debug(
        f"u-membership: normalized={report.normalized}, {len(report.cocycle)} cocycle,"
        f" {len(report.central)} central, {len(report.unitary)} unitary failures"
    )
    return report


def require_member(a: ConvolutionMap, action: HopfAction, window: Optional[int] = None) -> UMembershipReport:
    report = u_membership(a, action, window)
    if not report.member:
        raise MembershipError("The convolution map is not a member of U(H, A)", report)
    return report


def convolution_inverse(a: ConvolutionMap, action: HopfAction, window: Optional[int] = None) -> ConvolutionMap:
    """a^-1(g) = a(S(g*))*, for certified members only."""
    require_member(a, action, window)
    return inverse_candidate(a)


def centrality_of_values_check(a: ConvolutionMap, window: Optional[int] = None) -> CheckReport:
    """Every value a(g) commutes with all basis elements of the target."""
    report = CheckReport(name="central-values", scope=a.hopf.scope())
    if not a.target.finite:
        window = config.DEFAULT_WINDOW if window is None else window
        report.scope.window = window
    for g in a.hopf.basis():
        if not is_central(a(g), window):
            report.fail("central-value", g=a.hopf.key_name(g), value=a(g))
    return report


def group_membership_oracle(a: ConvolutionMap, action: HopfAction) -> UMembershipReport:
    """
    The membership conditions for a group algebra evaluated pointwise in G,
    without Sweedler expansions: a(e) = 1, a(gh) = a(g)(g > a(h)),
    (g > b) a(g) = a(g)(g > b) and a(g) a(g)* = 1.
    """
    _check_compatible(a, action)
    G = a.hopf
    if not isinstance(G, GroupHopf):
        raise DomainError("The pointwise oracle needs a group algebra")
    alg = a.target
    report = UMembershipReport(scope=Scope())
    report.normalized = a(G.unit_key) == alg.one()
    for g, h in product(G.basis(), repeat=2):
        lhs = a(G.table[g][h])
        rhs = a(g) * action.act_basis(g, a(h))
        if lhs != rhs:
            report.cocycle.append(_failure("cocycle", g=G.key_name(g), h=G.key_name(h), lhs=lhs, rhs=rhs))
    basis: List[AlgebraElement] = [alg.basis_element(i) for i in alg.basis()]
    for g in G.basis():
        for b in basis:
            moved = action.act_basis(g, b)
            if moved * a(g) != a(g) * moved:
                report.central.append(_failure("central", g=G.key_name(g), b=b))
                break
        if a(g) * a(g).star() != alg.one():
            report.unitary.append(_failure("unitary", g=G.key_name(g), value=a(g)))
    return report
