"""
Twisting lifts of actions to covariant bimodules, and deciding when two lifts
are isomorphic.

A member b of U(H, B) moves a covariant structure to

    g >^b x = b(g_(1)) . (g_(2) > x),

and two lifts are isomorphic iff the twist connecting them is a hat. For U(g)
the connecting twist is read off the generators: xi >' x - xi > x = beta . x
with beta central in B, and beta restricts to a cocycle whose class in U0
decides.
"""
from typing import Dict, List, Optional, Sequence

from loguru import logger

from hopfmorita.errors import DomainError, InconsistencyError
from hopfmorita.report import CheckReport
from hopfmorita.util import format_fraction

from hopfmorita.algebra.linalg import complex_solve
from hopfmorita.algebra.models import AlgebraElement
from hopfmorita.cohomology import CECochain
from hopfmorita.hopf.base import Key
from hopfmorita.hopf.uea import EnvelopingAlgebra
from hopfmorita.morita.bimodules import CanonicalBimodule, MIndex, ModuleElement
from hopfmorita.morita.covariance import CovariantStructure, covariance_check
from hopfmorita.morita.products import InnerProductPair

from .cocycles import LiftTwist, extend
from .quotient import WindingSet, u0_quotient


def _check_twist(b: LiftTwist, S: CovariantStructure):
    if b.hopf is not S.hopf:
        raise DomainError("The twist and the covariant structure use different Hopf algebras")
    if b.map.target != S.module.left:
        raise DomainError(f"The twist takes values in {b.map.target.name}, not in {S.module.left.name}")


def lift_action(b: LiftTwist, S: CovariantStructure, g: Key, x: ModuleElement) -> ModuleElement:
    """g >^b x = b(g_(1)) . (g_(2) > x)"""
    _check_twist(b, S)
    E = S.module
    out = E.zero()
    for (g1, g2), c in S.hopf.coproduct_basis(g).items():
        out = out + E.act_left(b(g1), S.act(g2, x)) * c
    return out


def twisted_structure(b: LiftTwist, S: CovariantStructure) -> CovariantStructure:
    """The covariant structure >^b on the same bimodule."""
    _check_twist(b, S)
    E = S.module
    return CovariantStructure(
        E,
        S.left_action,
        S.right_action,
        lambda g, x: lift_action(b, S, g, E.basis_element(x)),
    )


def lift_action_check(b: LiftTwist, S: CovariantStructure, products: Optional[InnerProductPair] = None, window: Optional[int] = None) -> CheckReport:
    """Twists S by b and verifies that the result is again covariant."""
    report = covariance_check(twisted_structure(b, S), products, window)
    report.name = "lift-action"
    return report


def _default_generators(S: CovariantStructure, indices: List[MIndex]) -> List[MIndex]:
    if isinstance(S.module, CanonicalBimodule):
        # 1 generates A as a left module
        return list(S.module.left.one().coeffs())
    return indices


def lift_equivalence_check(
    S1: CovariantStructure,
    S2: CovariantStructure,
    windings: Optional[WindingSet] = None,
    generators: Optional[Sequence[MIndex]] = None,
    window: Optional[int] = None,
) -> CheckReport:
    """
    Decides whether the lifts S1 and S2 of the same U(g)-actions are isomorphic.
    The verdict is in data["verdict"]: "isomorphic", "not-isomorphic", or
    "not-related" when no twist connects the two structures, which is recorded
    as a failure.
    """
    E = S1.module
    if S2.module is not E or S2.left_action is not S1.left_action or S2.right_action is not S1.right_action:
        raise DomainError("Both lifts must act on the same bimodule over the same actions")
    H = S1.hopf
    if not isinstance(H, EnvelopingAlgebra):
        raise DomainError("Lift equivalence is decided for actions of enveloping algebras")
    scope = S1.scope(window)
    K = scope.window
    report = CheckReport(name="lift-equivalence", scope=scope)
    B = E.left
    xs = E.basis() if E.finite else E.window(K)
    gens = _default_generators(S1, xs) if generators is None else list(generators)
    b_indices = B.basis() if B.finite else B.window(K)

    betas: Dict[int, AlgebraElement] = {}
    for i in range(H.dim):
        g = H.generator(i)
        diffs = {x: S2.act(g, E.basis_element(x)) - S1.act(g, E.basis_element(x)) for x in gens}
        moved = {
            b: {x: E.act_left(B.basis_element(b), E.basis_element(x)) for x in gens} for b in b_indices
        }
        support = sorted(
            {
                (x, k)
                for x in gens
                for k in list(diffs[x].coeffs()) + [k for b in b_indices for k in moved[b][x].coeffs()]
            },
            key=str,
        )
        columns = [[moved[b][x].coefficient(k) for x, k in support] for b in b_indices]
        target = [diffs[x].coefficient(k) for x, k in support]
        solution = complex_solve(columns, target)
        if solution is None:
            report.fail("connecting-twist", detail="no beta with xi >' x - xi > x = beta . x on the generators", xi=H.key_name(g))
            continue
        beta = B.element(dict(zip(b_indices, solution)))
        for x in xs:
            ex = E.basis_element(x)
            if S2.act(g, ex) - S1.act(g, ex) != E.act_left(beta, ex):
                report.fail("connecting-twist", detail="beta found on the generators fails on x", xi=H.key_name(g), x=E.basis_name(x))
                break
        betas[i] = beta
    if not report.passed:
        report.data["verdict"] = "not-related"
        return report

    alpha = CECochain(1, B, betas)
    report.data["connecting_twist"] = alpha.format()
    try:
        twist = extend(alpha, S1.left_action, window=K)
    except DomainError as e:
        report.fail("connecting-twist", detail=str(e))
        report.data["verdict"] = "not-related"
        return report
    for g in H.basis():
        for x in xs:
            ex = E.basis_element(x)
            if lift_action(twist, S1, g, ex) != S2.act(g, ex):
                report.fail("connecting-twist", detail="S2 is not S1 twisted by the connecting twist", g=H.key_name(g), x=E.basis_name(x))
    if not report.passed:
        report.data["verdict"] = "not-related"
        return report

    presentation = u0_quotient(S1.left_action, windings, K)
    try:
        reduction = presentation.reduce(alpha)
    except DomainError:
        raise InconsistencyError(f"The connecting twist {alpha} extends but is not a cocycle")
    report.data["class_coordinates"] = [format_fraction(q) for q in reduction.coordinates]
    report.data["quotient"] = presentation.describe()
    if reduction.trivial:
        report.data["verdict"] = "isomorphic"
        report.data["winding_combination"] = reduction.windings
        report.data["coboundary_preimage"] = reduction.preimage.format()
    else:
        report.data["verdict"] = "not-isomorphic"
    logger.debug(f"Lift equivalence on {E.name}: {report.data['verdict']}")
    return report
