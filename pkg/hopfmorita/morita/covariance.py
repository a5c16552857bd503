"""
H-covariant bimodules: an H-module structure on a (B, A)-bimodule compatible
with given actions of H on B and A, and the certification levels of
equivalence bimodules together with the forgetful maps between them.
"""
from itertools import product
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from loguru import logger
from pydantic import BaseModel

from hopfmorita import config
from hopfmorita.errors import DomainError, ModelError
from hopfmorita.report import CheckReport, Scope

from hopfmorita.hopf.action import HopfAction, LieHopfAction
from hopfmorita.hopf.base import HopfElement, Key
from hopfmorita.hopf.group import GroupHopf
from hopfmorita.hopf.uea import EnvelopingAlgebra

from .bimodules import Bimodule, CanonicalBimodule, MIndex, ModuleElement
from .products import InnerProductPair, complete_positivity_check, morita_axiom_check

Operator = Callable[[Key, MIndex], ModuleElement]


class CovariantStructure:
    """
    g > x for g in H and x in a (B, A)-bimodule, given by `operator` on basis
    keys of H and basis vectors of the module. H acts on B by `left_action`
    and on A by `right_action`.
    """

    def __init__(self, module: Bimodule, left_action: HopfAction, right_action: HopfAction, operator: Operator):
        if left_action.hopf is not right_action.hopf:
            raise DomainError("The actions on the two algebras use different Hopf algebras")
        if left_action.algebra != module.left or right_action.algebra != module.right:
            raise DomainError(f"The actions do not act on the algebras of {module.name}")
        self.module = module
        self.left_action = left_action
        self.right_action = right_action
        self.hopf = left_action.hopf
        self._operator = operator
        self._cache: Dict[Tuple[Key, MIndex], ModuleElement] = {}

    @classmethod
    def canonical(cls, action: HopfAction) -> "CovariantStructure":
        """The algebra A acting on itself, as a module over its own action."""
        E = CanonicalBimodule(action.algebra)
        alg = action.algebra

        def operator(g, x):
            return E.from_algebra(action.act_basis(g, alg.basis_element(x)))

        return cls(E, action, action, operator)

    @classmethod
    def from_generators(cls, module: Bimodule, left_action: LieHopfAction, right_action: LieHopfAction, generators: Mapping[int, Callable[[MIndex], ModuleElement]]) -> "CovariantStructure":
        """
        A U(g)-module from the action of the generators on basis vectors; a PBW
        monomial acts like on the algebras, the last generator first. Missing
        generators act by zero.
        """
        H = left_action.hopf
        if not isinstance(H, EnvelopingAlgebra):
            raise DomainError("Generators describe actions of an enveloping algebra")
        zero = module.zero()

        def apply(i: int, x: ModuleElement) -> ModuleElement:
            out = zero
            if i not in generators:
                return out
            for xi, c in x.items():
                out = out + generators[i](xi) * c
            return out

        def operator(m, x):
            value = module.basis_element(x)
            for i in reversed(H.word(m)):
                value = apply(i, value)
            return value

        return cls(module, left_action, right_action, operator)

    @classmethod
    def from_group(cls, module: Bimodule, left_action: HopfAction, right_action: HopfAction, images: Mapping[int, Mapping[MIndex, ModuleElement]]) -> "CovariantStructure":
        """A finite group acting by images of basis vectors; unlisted images are fixed."""
        if not isinstance(left_action.hopf, GroupHopf):
            raise DomainError("Images of group elements need a group algebra")

        def operator(g, x):
            return images.get(g, {}).get(x, module.basis_element(x))

        return cls(module, left_action, right_action, operator)

    def act_basis(self, g: Key, x: MIndex) -> ModuleElement:
        key = (g, x)
        if key not in self._cache:
            value = self._operator(g, x)
            if value.module is not self.module:
                raise ModelError(f"g > x left {self.module.name}")
            self._cache[key] = value
        return self._cache[key]

    def act(self, g: Key, x: ModuleElement) -> ModuleElement:
        out = self.module.zero()
        for xi, c in x.items():
            out = out + self.act_basis(g, xi) * c
        return out

    def act_element(self, h: HopfElement, x: ModuleElement) -> ModuleElement:
        out = self.module.zero()
        for g, c in h.items():
            out = out + self.act(g, x) * c
        return out

    def check_keys(self) -> List[Key]:
        """Keys the compatibility rules are checked on: 1 and the generators of U(g), all of G."""
        H = self.hopf
        if isinstance(H, EnvelopingAlgebra):
            return [g for g in H.basis() if H.degree(g) <= 1]
        return H.basis()

    def scope(self, window: Optional[int] = None) -> Scope:
        scope = self.hopf.scope()
        if not (self.module.finite and self.module.left.finite and self.module.right.finite):
            scope.window = config.DEFAULT_WINDOW if window is None else window
        return scope

    def __repr__(self) -> str:
        return f"CovariantStructure({self.module.name})"


def _indices(alg, window):
    return alg.basis() if alg.finite else alg.window(window)


def covariance_check(S: CovariantStructure, products: Optional[InnerProductPair] = None, window: Optional[int] = None) -> CheckReport:
    """
    The rules of an H-covariant bimodule on basis samples:

        g > (b . x) = (g_(1) > b) . (g_(2) > x)
        g > (x . a) = (g_(1) > x) . (g_(2) > a)
        g > _B<x, y> = _B<g_(1) > x, S(g_(2))* > y>
        g > <x, y>_A = <S(g_(1))* > x, g_(2) > y>_A

    the last two only when inner products are given, and that the operators form
    an H-module, (gh) > x = g > (h > x).
    """
    E = S.module
    H = S.hopf
    scope = S.scope(window)
    report = CheckReport(name="covariance", scope=scope)
    K = scope.window
    xs = E.basis() if E.finite else E.window(K)
    b_indices = _indices(E.left, K)
    a_indices = _indices(E.right, K)
    keys = S.check_keys()
    elements = {x: E.basis_element(x) for x in xs}
    L, R = S.left_action, S.right_action

    def sstar(g: Key) -> HopfElement:
        return H.basis_element(g).antipode().star()

    for g in keys:
        delta = H.coproduct_basis(g)
        gname = H.key_name(g)
        for x in xs:
            ex = elements[x]
            for b in b_indices:
                eb = E.left.basis_element(b)
                lhs = S.act(g, E.act_left(eb, ex))
                rhs = E.zero()
                for (g1, g2), c in delta.items():
                    rhs = rhs + E.act_left(L.act_basis(g1, eb), S.act(g2, ex)) * c
                if lhs != rhs:
                    report.fail("left-leibniz", g=gname, b=E.left.basis_name(b), x=E.basis_name(x), lhs=lhs, rhs=rhs)
            for a in a_indices:
                ea = E.right.basis_element(a)
                lhs = S.act(g, E.act_right(ex, ea))
                rhs = E.zero()
                for (g1, g2), c in delta.items():
                    rhs = rhs + E.act_right(S.act(g1, ex), R.act_basis(g2, ea)) * c
                if lhs != rhs:
                    report.fail("right-leibniz", g=gname, x=E.basis_name(x), a=E.right.basis_name(a), lhs=lhs, rhs=rhs)
        if products is None:
            continue
        for x, y in product(xs, repeat=2):
            ex, ey = elements[x], elements[y]
            lhs = L.act_basis(g, products.left(ex, ey))
            rhs = E.left.zero()
            for (g1, g2), c in delta.items():
                rhs = rhs + products.left(S.act(g1, ex), S.act_element(sstar(g2), ey)) * c
            if lhs != rhs:
                report.fail("left-inner", g=gname, x=E.basis_name(x), y=E.basis_name(y), lhs=lhs, rhs=rhs)
            lhs = R.act_basis(g, products.right(ex, ey))
            rhs = E.right.zero()
            for (g1, g2), c in delta.items():
                rhs = rhs + products.right(S.act_element(sstar(g1), ex), S.act(g2, ey)) * c
            if lhs != rhs:
                report.fail("right-inner", g=gname, x=E.basis_name(x), y=E.basis_name(y), lhs=lhs, rhs=rhs)

    for g, h in product(keys, repeat=2):
        if not H.fits(g, h):
            continue
        gh = H.basis_element(g) * H.basis_element(h)
        for x in xs:
            ex = elements[x]
            if S.act_element(gh, ex) != S.act(g, S.act(h, ex)):
                report.fail("module", g=H.key_name(g), h=H.key_name(h), x=E.basis_name(x))
    if products is None:
        report.notes.append("no inner products given: only the module rules were checked")
    logger.debug(f"Covariance of {E.name}: {len(report.failures)} failures")
    return report


LEVELS = ("ring", "star", "strong")


class Certification(BaseModel):
    """
    What a bimodule was verified to be: an equivalence bimodule of rings
    (the actions commute), of *-algebras (all inner product axioms) or a strong
    one (completely positive), optionally H-covariant.
    """

    bimodule: str
    level: Optional[str] = None
    covariant: bool = False
    history: List[str] = []
    report: CheckReport

    def key(self) -> Tuple[str, Optional[str], bool]:
        return (self.bimodule, self.level, self.covariant)


def certify(
    module: Bimodule,
    products: Optional[InnerProductPair] = None,
    structure: Optional[CovariantStructure] = None,
    positivity_order: int = 3,
    window: Optional[int] = None,
) -> Certification:
    """
    Runs the checks for every level in turn and records the highest one that
    passes. Covariance is certified when a structure is given and passes.
    """
    report = CheckReport(name="certify")
    level = None
    failures = module.bimodule_failures(window)
    for x, b, a in failures:
        report.fail("ring", detail="(b . x) . a != b . (x . a)", x=module.basis_name(x), b=module.left.basis_name(b), a=module.right.basis_name(a))
    if not failures:
        level = "ring"
        if products is not None:
            axioms = morita_axiom_check(products, window)
            report.merge(axioms, "star")
            report.scope = axioms.scope
            if axioms.passed:
                level = "star"
                if module.finite:
                    try:
                        positivity = complete_positivity_check(products, positivity_order)
                    except DomainError as e:
                        report.notes.append(f"strong level not decided: {e}")
                    else:
                        report.merge(positivity, "strong")
                        if positivity.passed:
                            level = "strong"
    covariant = False
    if structure is not None:
        if structure.module is not module:
            raise DomainError(f"The covariant structure does not live on {module.name}")
        covariance = covariance_check(structure, products if level in ("star", "strong") else None, window)
        report.merge(covariance, "covariant")
        covariant = covariance.passed
    return Certification(bimodule=module.name, level=level, covariant=covariant, report=report)


def forget(cert: Certification, level: Optional[str] = None, covariance: bool = False) -> Certification:
    """
    Walks down strong -> star -> ring one level at a time, and drops the
    covariance when asked, recording every step.

    Raises:
        DomainError: the certification is below the requested level.
    """
    history = list(cert.history)
    current = cert.level
    if level is not None:
        if level not in LEVELS:
            raise DomainError(f"Unknown certification level {level!r}")
        if current is None or LEVELS.index(level) > LEVELS.index(current):
            raise DomainError(f"Cannot forget {cert.bimodule} from {current} up to {level}")
        while current != level:
            lower = LEVELS[LEVELS.index(current) - 1]
            history.append(f"{current}->{lower}")
            current = lower
    covariant = cert.covariant
    if covariance and covariant:
        history.append("covariant->plain")
        covariant = False
    return Certification(bimodule=cert.bimodule, level=current, covariant=covariant, history=history, report=cert.report)
