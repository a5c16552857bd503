"""
Actions of Hopf *-algebras on model algebras: U(g) acting through a Lie action
by derivations, and finite groups acting by algebra automorphisms.
"""
from abc import ABC, abstractmethod
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from loguru import logger

from hopfmorita import config
from hopfmorita.errors import ModelError
from hopfmorita.report import CheckReport, Scope

from hopfmorita.algebra.lie import LieAction
from hopfmorita.algebra.models import AlgebraElement, BasedStarAlgebra, FiniteFunctions, Index

from .base import HopfAlgebra, HopfElement, Key
from .group import GroupHopf
from .uea import EnvelopingAlgebra


class HopfAction(ABC):
    """g > a for g in a Hopf algebra H and a in a model algebra."""

    hopf: HopfAlgebra
    algebra: BasedStarAlgebra

    @abstractmethod
    def act_basis(self, g: Key, a: AlgebraElement) -> AlgebraElement:
        pass

    def act(self, g: HopfElement, a: AlgebraElement) -> AlgebraElement:
        out = self.algebra.zero()
        for key, c in g.items():
            out = out + self.act_basis(key, a) * c
        return out

    @abstractmethod
    def invariance_defects(self, a: AlgebraElement) -> List[Tuple[str, AlgebraElement]]:
        pass

    def scope(self, window: Optional[int] = None) -> Scope:
        scope = self.hopf.scope()
        if not self.algebra.finite:
            scope.window = config.DEFAULT_WINDOW if window is None else window
        return scope


class LieHopfAction(HopfAction):
    """
    The extension of a Lie action to U(g): the PBW monomial
    xi_0^{k_0} ... xi_{d-1}^{k_{d-1}} acts as D_0^{k_0} o ... o D_{d-1}^{k_{d-1}},
    so the last generator is applied first.
    """

    def __init__(self, lie_action: LieAction, hopf: Optional[EnvelopingAlgebra] = None, truncation: Optional[int] = None):
        if hopf is None:
            hopf = EnvelopingAlgebra(lie_action.lie, truncation)
        elif hopf.lie is not lie_action.lie:
            raise ModelError("The enveloping algebra is not built on the acting Lie algebra")
        self.lie_action = lie_action
        self.hopf = hopf
        self.algebra = lie_action.algebra

    def act_basis(self, m, a):
        for i in reversed(range(len(m))):
            for _ in range(m[i]):
                a = self.lie_action.apply(i, a)
        return a

    def invariance_defects(self, a):
        return self.lie_action.invariance_defects(a)


class GroupAutomorphismAction(HopfAction):
    """
    A finite group acting by *-automorphisms of a finite model, given by the images
    g > e_i of basis elements. Unlisted images are fixed.
    """

    def __init__(self, group: GroupHopf, algebra: BasedStarAlgebra, images: Mapping[int, Mapping[Index, AlgebraElement]]):
        if not algebra.finite:
            raise ModelError(f"Group actions need a finite model, not {algebra.name}")
        self.hopf = group
        self.algebra = algebra
        self.images = {g: dict(m) for g, m in images.items()}

    @classmethod
    def permutation(cls, group: GroupHopf, algebra: FiniteFunctions, permutations: Mapping[int, Mapping[str, str]]) -> "GroupAutomorphismAction":
        """g > e_x = e_{sigma_g(x)} on functions on a finite set."""
        return cls(
            group,
            algebra,
            {
                g: {x: algebra.basis_element(y) for x, y in sigma.items()}
                for g, sigma in permutations.items()
            },
        )

    def act_basis(self, g, a):
        table = self.images.get(g, {})
        out = self.algebra.zero()
        for i, c in a.items():
            image = table.get(i)
            out = out + (self.algebra.basis_element(i) if image is None else image) * c
        return out

    def invariance_defects(self, a):
        defects = []
        for g in self.hopf.basis():
            d = self.act_basis(g, a) - a
            if not d.is_zero():
                defects.append((self.hopf.key_name(g), d))
        return defects


def extend_action(action: LieAction, g: HopfElement, a: AlgebraElement) -> AlgebraElement:
    """g > a for g in the truncated enveloping algebra of the acting Lie algebra."""
    if not isinstance(g.hopf, EnvelopingAlgebra) or g.hopf.lie is not action.lie:
        raise ModelError("extend_action needs an element of U(g) of the acting Lie algebra")
    return LieHopfAction(action, g.hopf).act(g, a)


def star_action_report(action: HopfAction, window: Optional[int] = None) -> CheckReport:
    """
    Verifies the *-action axioms on all basis keys of H (degree <= N) against all
    algebra basis elements (the mode window on the Laurent model):

      1 > a = a,  (gh) > a = g > (h > a),  g > (ab) = (g_(1) > a)(g_(2) > b),
      g > 1 = eps(g) 1,  (g > a)* = S(g)* > a*.
    """
    H, alg = action.hopf, action.algebra
    scope = action.scope(window)
    report = CheckReport(name="star-action", scope=scope)
    indices = alg.window(scope.window)
    basis: Dict[Index, AlgebraElement] = {i: alg.basis_element(i) for i in indices}
    keys = H.basis()
    one = alg.one()

    for i, a in basis.items():
        if action.act_basis(H.unit_key, a) != a:
            report.fail("unit-acts-trivially", a=alg.basis_name(i))

    for g in keys:
        g_elem = H.basis_element(g)
        if action.act_basis(g, one) != one * H.counit_basis(g):
            report.fail("unit-preserved", g=H.key_name(g))
        s_star = g_elem.antipode().star()
        for i, a in basis.items():
            lhs = action.act_basis(g, a).star()
            rhs = action.act(s_star, a.star())
            if lhs != rhs:
                report.fail("star-compatible", g=H.key_name(g), a=alg.basis_name(i), lhs=lhs, rhs=rhs)
        delta = H.coproduct_basis(g)
        for (i, a), (j, b) in product(basis.items(), repeat=2):
            lhs = action.act_basis(g, a * b)
            rhs = alg.zero()
            for (g1, g2), c in delta.items():
                rhs = rhs + action.act_basis(g1, a) * action.act_basis(g2, b) * c
            if lhs != rhs:
                report.fail(
                    "module-algebra",
                    g=H.key_name(g),
                    a=alg.basis_name(i),
                    b=alg.basis_name(j),
                    lhs=lhs,
                    rhs=rhs,
                )

    for g, h in product(keys, repeat=2):
        if not H.fits(g, h):
            continue
        gh = H.basis_element(g) * H.basis_element(h)
        for i, a in basis.items():
            lhs = action.act(gh, a)
            rhs = action.act_basis(g, action.act_basis(h, a))
            if lhs != rhs:
                report.fail("module", g=H.key_name(g), h=H.key_name(h), a=alg.basis_name(i))
    logger.debug(f"star-action on {alg.name}: {len(report.failures)} failures")
    return report
