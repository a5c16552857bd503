"""
Tasks of a problem file and the oracles that re-derive their results.

Every task is registered under its name in `TASKS`. A registered function takes
the problem context and the task call, validates the call's arguments, and
returns a thunk that does the work and returns a CheckReport. Validating every
task before running any of them means a bad argument is reported as an input
error, never halfway through a run. `ORACLES` holds the same kind of functions
for `verify_oracle`; they recompute a task's central result by an independent
route and report every disagreement.
"""
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from fractions import Fraction
from itertools import product
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from loguru import logger
from pydantic import BaseModel

from hopfmorita import config
from hopfmorita._internal.logging import log as run_log
from hopfmorita.errors import HopfMoritaError, InconsistencyError, ProblemValidationError
from hopfmorita.problem import ProblemContext
from hopfmorita.registry import Registry
from hopfmorita.report import CheckReport, Scope, dumps
from hopfmorita.util import format_fraction, model_to_dict

from hopfmorita.algebra import PhasedElement, check_lie_action
from hopfmorita.cohomology import CECochain, ce_d1, dense_h1_dimension, h1
from hopfmorita.convolution import (
    ConvolutionMap,
    convolve,
    exact_sequence_check,
    group_membership_oracle,
    hat,
    u_membership,
    unit_map,
)
from hopfmorita.hopf import GroupHopf, hopf_axiom_report, star_action_report
from hopfmorita.lifts import (
    extend,
    hat_exp_relation_check,
    lift_action_check,
    lift_equivalence_check,
    restrict,
    twisted_structure,
    u0_quotient,
)
from hopfmorita.morita import (
    CanonicalBimodule,
    CovariantStructure,
    block_dimensions,
    certify,
    complete_positivity_check,
    covariance_check,
    find_intertwiner,
    forget,
    gram_map,
    morita_axiom_check,
    picard_enumerate,
    picard_oracle,
    positive_pairings,
    standard_products,
)
from hopfmorita.morita.covariance import LEVELS

TASKS = Registry("task")
ORACLES = Registry("oracle")

Thunk = Callable[[], CheckReport]

PASS, FAIL, SKIP, ERROR = "PASS", "FAIL", "SKIP", "ERROR"


class TaskCall:
    """One entry of the `tasks` list: its position, name and arguments."""

    def __init__(self, index: int, entry: Dict[str, Any]):
        self.index = index
        self.args = dict(entry)
        self.name = self.args.pop("task", None)

    def path(self, key: Optional[str] = None) -> str:
        base = f"tasks[{self.index}]"
        return base if key is None else f"{base}.{key}"

    def invalid(self, key: Optional[str], message: str) -> ProblemValidationError:
        return ProblemValidationError(self.path(key), message, task=self.index)

    def get(self, key: str, kind=None, default=None):
        if key not in self.args:
            return default
        value = self.args[key]
        if kind is not None and not isinstance(value, kind):
            names = kind.__name__ if isinstance(kind, type) else " or ".join(k.__name__ for k in kind)
            raise self.invalid(key, f"expected {names}, got {type(value).__name__}")
        # bool is an int, but never a count
        if kind is int and isinstance(value, bool):
            raise self.invalid(key, "expected int, got bool")
        return value

    @contextmanager
    def at(self, key: str):
        """Reports errors raised while resolving an argument under the argument's path."""
        try:
            yield
        except ProblemValidationError:
            raise
        except (HopfMoritaError, ValueError) as e:
            raise self.invalid(key, str(e))

    # -- preconditions shared by several tasks

    def action(self, ctx: ProblemContext):
        if ctx.action is None:
            raise self.invalid(None, f"{self.name} needs an action of a Lie algebra or a group")
        return ctx.action

    def lie_action(self, ctx: ProblemContext):
        if ctx.lie_action is None:
            raise self.invalid(None, f"{self.name} needs an action of a Lie algebra")
        return ctx.action

    def cocycle(self, ctx: ProblemContext, key: str, required: bool = True) -> Optional[CECochain]:
        name = self.get(key, str)
        if name is None:
            if required:
                raise self.invalid(key, "missing cocycle name")
            return None
        if name not in ctx.cocycles:
            raise self.invalid(key, f"unknown cocycle {name!r}")
        return ctx.cocycles[name]

    def bimodule(self, ctx: ProblemContext, key: str = "bimodule"):
        name = self.get(key, str)
        if name is None:
            return "canonical", CanonicalBimodule(ctx.algebra)
        if name not in ctx.bimodules:
            raise self.invalid(key, f"unknown bimodule {name!r}")
        return name, ctx.bimodules[name]

    def phased(self, ctx: ProblemContext, key: str) -> Optional[List[PhasedElement]]:
        """A list of {"element": ..., "phase": "p/q"} entries."""
        entries = self.get(key, list)
        if entries is None:
            return None
        out = []
        for k, entry in enumerate(entries):
            if not isinstance(entry, dict) or "element" not in entry:
                raise self.invalid(f"{key}[{k}]", 'expected {"element": ..., "phase": ...}')
            with self.at(f"{key}[{k}]"):
                out.append(
                    PhasedElement(Fraction(str(entry.get("phase", "0"))), ctx.algebra.parse_element(entry["element"]))
                )
        return out


def _scoped(name: str, ctx: ProblemContext) -> CheckReport:
    scope = ctx.action.scope(ctx.window) if ctx.action is not None else Scope()
    return CheckReport(name=name, scope=scope)


def _expect(report: CheckReport, expected: Optional[Dict[str, Any]], actual: Dict[str, Any]):
    for key, value in (expected or {}).items():
        if actual.get(key) != value:
            report.fail("expectation", key=key, expected=value, actual=actual.get(key))


# -- tasks


@TASKS("check-action")
def check_action(ctx: ProblemContext, call: TaskCall) -> Thunk:
    action = call.action(ctx)

    def run():
        report = _scoped("check-action", ctx)
        if ctx.lie_action is not None:
            report.merge(check_lie_action(ctx.lie_action, window=ctx.window), "lie")
        report.merge(star_action_report(action, ctx.window), "star")
        return report

    return run


@TASKS("hopf-axioms")
def hopf_axioms(ctx: ProblemContext, call: TaskCall) -> Thunk:
    H = call.action(ctx).hopf
    return lambda: hopf_axiom_report(H)


# convolution associativity is checked on triples of the first hats only
ASSOCIATIVITY_SAMPLE = 4


def _non_associative(maps: List[ConvolutionMap]) -> List[Tuple[int, int, int]]:
    out = []
    for (i, a), (j, b), (k, c) in product(enumerate(maps), repeat=3):
        if convolve(convolve(a, b), c) != convolve(a, convolve(b, c)):
            out.append((i, j, k))
    return out


@TASKS("convolution")
def convolution(ctx: ProblemContext, call: TaskCall) -> Thunk:
    """
    The exact sequence on central unitaries, membership of their hats, and the
    group laws of convolution on the hats. With `exp`, the relation between
    hat and exp on the given exp-domain elements.
    """
    action = call.action(ctx)
    witnesses = call.phased(ctx, "witnesses")
    witnesses = list(ctx.windings) if witnesses is None else witnesses
    exp_domain = call.phased(ctx, "exp") or []
    if exp_domain:
        call.lie_action(ctx)

    def run():
        report = _scoped("convolution", ctx)
        exact = exact_sequence_check(action, witnesses, ctx.window)
        report.merge(exact, "exact-sequence")
        report.data["kernel"] = exact.data.get("kernel", [])
        hats = [hat(c, action, ctx.window) for c in witnesses]
        for c, c_hat in zip(witnesses, hats):
            report.merge(u_membership(c_hat, action, ctx.window).to_check_report(), f"hat({c})")
        unit = unit_map(action.hopf, action.algebra)
        for c, c_hat in zip(witnesses, hats):
            if convolve(c_hat, unit) != c_hat or convolve(unit, c_hat) != c_hat:
                report.fail("unit", c=c)
        for i, j, k in _non_associative(hats[:ASSOCIATIVITY_SAMPLE]):
            report.fail("associative", a=witnesses[i], b=witnesses[j], c=witnesses[k])
        for e in exp_domain:
            report.merge(hat_exp_relation_check(e.element, action, e.phase, ctx.window))
        if not witnesses:
            report.notes.append("no central unitaries given: only the unit map was checked")
        report.data["hats"] = {str(c): c_hat.format() for c, c_hat in zip(witnesses, hats)}
        return report

    return run


def _membership_map(ctx: ProblemContext, call: TaskCall) -> Callable[[], ConvolutionMap]:
    """The map a u-membership task is about: a cocycle's extension, a hat, or explicit values."""
    action = call.action(ctx)
    given = [k for k in ("cocycle", "hat", "values") if k in call.args]
    if len(given) != 1:
        raise call.invalid(None, "u-membership needs exactly one of cocycle, hat or values")
    if given == ["cocycle"]:
        alpha = call.cocycle(ctx, "cocycle")
        call.lie_action(ctx)
        return lambda: extend(alpha, action, window=ctx.window).map
    if given == ["hat"]:
        entry = call.get("hat", dict)
        if "element" not in entry:
            raise call.invalid("hat", 'expected {"element": ..., "phase": ...}')
        with call.at("hat"):
            c = PhasedElement(Fraction(str(entry.get("phase", "0"))), ctx.algebra.parse_element(entry["element"]))
        return lambda: hat(c, action, ctx.window)
    values = call.get("values", dict)
    H = action.hopf
    with call.at("values"):
        parsed = {H.parse_key(k): ctx.algebra.parse_element(v) for k, v in values.items()}
        a = ConvolutionMap(H, ctx.algebra, parsed)
    return lambda: a


@TASKS("u-membership")
def membership(ctx: ProblemContext, call: TaskCall) -> Thunk:
    action = call.action(ctx)
    build = _membership_map(ctx, call)
    expect = call.get("expect_member", bool)

    def run():
        a = build()
        result = u_membership(a, action, ctx.window)
        report = result.to_check_report()
        report.data["map"] = a.format()
        report.data["member"] = result.member
        if expect is False:
            # an expected non-member passes, its failures become the witnesses
            expected = report
            report = CheckReport(name=expected.name, scope=expected.scope, data=expected.data)
            report.data["witnesses"] = [model_to_dict(f) for f in expected.failures]
            if result.member:
                report.fail("expectation", key="member", expected=False, actual=True)
        return report

    return run


@TASKS("ce-cohomology")
def ce_cohomology(ctx: ProblemContext, call: TaskCall) -> Thunk:
    action = call.lie_action(ctx)
    expected = call.get("expect_h1", int)

    def run():
        result = h1(action, window=ctx.window)
        summary = result.summary()
        report = CheckReport(name="ce-cohomology", scope=summary.scope, data=model_to_dict(summary))
        classes = {}
        for name, alpha in ctx.cocycles.items():
            entry = {"cocycle": ce_d1(alpha, ctx.lie_action).is_zero()}
            if entry["cocycle"]:
                try:
                    entry["class"] = [format_fraction(q) for q in result.h1_coordinates(alpha)]
                except HopfMoritaError as e:
                    entry["class"] = None
                    report.notes.append(f"cocycle {name}: {e}")
            classes[name] = entry
        if classes:
            report.data["cocycles"] = classes
        if expected is not None and result.h1_dim != expected:
            report.fail("h1-dimension", expected=expected, actual=result.h1_dim)
        return report

    return run


@TASKS("classify-lifts")
def classify_lifts(ctx: ProblemContext, call: TaskCall) -> Thunk:
    """
    U0 modulo the windings, the class of every named cocycle, and the
    correspondence between cocycles and twists: restrict(extend(alpha)) = alpha
    on a basis of Z^1, extend(restrict(a)) = a on the extensions, their products
    and inverses, and distinct twists restrict to distinct cocycles.
    """
    action = call.lie_action(ctx)
    names = call.get("cocycles", list)
    listed = names is not None
    names = names if listed else list(ctx.cocycles)
    for k, name in enumerate(names):
        if not isinstance(name, str) or name not in ctx.cocycles:
            raise call.invalid(f"cocycles[{k}]", f"unknown cocycle {name!r}")
    expect = call.get("expect", dict)
    K = ctx.window

    def run():
        presentation = u0_quotient(action, ctx.windings, K)
        summary = presentation.summary()
        report = CheckReport(name="classify-lifts", scope=Scope(truncation=ctx.truncation, window=summary.scope.window))
        report.data["quotient"] = model_to_dict(summary)
        classes = {}
        for name in names:
            try:
                reduction = presentation.reduce(ctx.cocycles[name])
            except InconsistencyError:
                raise
            except HopfMoritaError as e:
                # only cocycles the task names must classify
                if listed:
                    report.fail("cocycle", detail=str(e), cocycle=name)
                else:
                    report.notes.append(f"cocycle {name}: {e}")
                continue
            classes[name] = {
                "trivial": reduction.trivial,
                "coordinates": [format_fraction(q) for q in reduction.coordinates],
                "windings": reduction.windings,
                "preimage": None if reduction.preimage is None else reduction.preimage.format(),
            }
        report.data["classes"] = classes

        twists = []
        for alpha in presentation.cohomology.z1_basis:
            t = extend(alpha, action, window=K)
            if restrict(t) != alpha:
                report.fail("restrict-extend", alpha=alpha)
            twists.append(t)
        members = twists + [a * b for a, b in product(twists, repeat=2)] + [t.inverse() for t in twists]
        seen: Dict[CECochain, Any] = {}
        for t in members:
            alpha = restrict(t)
            if extend(alpha, action, window=K) != t:
                report.fail("extend-restrict", twist=t)
            if alpha in seen and seen[alpha] != t:
                report.fail("injective", alpha=alpha, a=seen[alpha], b=t)
            seen.setdefault(alpha, t)
        report.data["members_checked"] = len(members)
        _expect(report, expect, {"h1_dim": summary.h1_dim, "quotient": summary.description})
        return report

    return run


@TASKS("lift-equivalence")
def lift_equivalence(ctx: ProblemContext, call: TaskCall) -> Thunk:
    """Compares the canonical lift twisted by `base` (default: untwisted) with the one twisted by `twist`."""
    action = call.lie_action(ctx)
    twist = call.cocycle(ctx, "twist")
    base = call.cocycle(ctx, "base", required=False)
    expected = call.get("expect", str)

    def run():
        S = CovariantStructure.canonical(action)
        b = extend(twist, action, window=ctx.window)
        S1 = S if base is None else twisted_structure(extend(base, action, window=ctx.window), S)
        report = lift_equivalence_check(S1, twisted_structure(b, S), ctx.windings, window=ctx.window)
        report.merge(lift_action_check(b, S, standard_products(S.module), ctx.window), "lift-action")
        if expected is not None and report.data.get("verdict") != expected:
            report.fail("expectation", key="verdict", expected=expected, actual=report.data.get("verdict"))
        return report

    return run


@TASKS("morita-check")
def morita_check(ctx: ProblemContext, call: TaskCall) -> Thunk:
    """
    The equivalence bimodule axioms of a declared bimodule with its standard
    inner products, complete positivity up to `positivity_order` where it is
    decidable, and invertibility of the Gram map on finite modules.
    """
    name, E = call.bimodule(ctx)
    order = call.get("positivity_order", int, 3)
    if order < 1:
        raise call.invalid("positivity_order", "the tuple size is at least 1")
    other = None
    if "isomorphic_to" in call.args:
        other = call.bimodule(ctx, "isomorphic_to")
    with call.at("bimodule"):
        P = standard_products(E)

    def run():
        report = morita_axiom_check(P, ctx.window)
        report.name = "morita-check"
        report.data["bimodule"] = name
        if E.finite:
            try:
                positivity = complete_positivity_check(P, order)
            except HopfMoritaError as e:
                report.notes.append(f"complete positivity not decided: {e}")
            else:
                report.merge(positivity, "positivity")
            if not gram_map(P).is_bijective():
                report.fail("gram-map", detail="E (x) conj(E) -> B is not bijective", bimodule=name)
            try:
                report.data["block_dimensions"] = block_dimensions(E)
            except HopfMoritaError:
                pass
        if other is not None:
            other_name, F = other
            found = find_intertwiner(E, F) is not None
            report.data["isomorphic_to"] = {other_name: found}
            if not found:
                report.fail("isomorphic", a=name, b=other_name)
        return report

    return run


def _picard_points(ctx: ProblemContext, call: TaskCall) -> Tuple[List[str], int]:
    points = call.get("points", list)
    if points is None:
        points = getattr(ctx.algebra, "points", None)
        if points is None:
            raise call.invalid("points", "picard needs points or a finite-functions algebra")
    if not all(isinstance(p, str) for p in points):
        raise call.invalid("points", "points are strings")
    if not 1 <= len(points) <= config.PICARD_BOUND:
        raise call.invalid("points", f"between 1 and {config.PICARD_BOUND} points, got {len(points)}")
    max_rank = call.get("max_rank", int, 1)
    if max_rank < 1:
        raise call.invalid("max_rank", "the fiber rank bound is at least 1")
    return list(points), max_rank


@TASKS("picard")
def picard(ctx: ProblemContext, call: TaskCall) -> Thunk:
    points, max_rank = _picard_points(ctx, call)
    pairings = call.get("pairings", bool, False)

    def run():
        group = picard_enumerate(points, max_rank=max_rank)
        report = CheckReport(name="picard", data=model_to_dict(group))
        if not group.matches_symmetric_group():
            report.fail("symmetric-group", detail="the classes are not the permutations of the points", order=group.order)
        if group.static_order != 1:
            report.fail("static-part", static_order=group.static_order)
        if pairings:
            search = positive_pairings(points)
            report.data["pairings"] = search.data["classes"]
            report.merge(search, prefix="pairings")
        return report

    return run


def _covariant(ctx: ProblemContext, call: TaskCall) -> Callable[[], CovariantStructure]:
    action = call.action(ctx)
    twist = call.cocycle(ctx, "twist", required=False)
    if twist is not None:
        call.lie_action(ctx)

    def build():
        S = CovariantStructure.canonical(action)
        if twist is not None:
            S = twisted_structure(extend(twist, action, window=ctx.window), S)
        return S

    return build


@TASKS("covariance")
def covariance(ctx: ProblemContext, call: TaskCall) -> Thunk:
    build = _covariant(ctx, call)

    def run():
        S = build()
        return covariance_check(S, standard_products(S.module), ctx.window)

    return run


@TASKS("forget-diagram")
def forget_diagram(ctx: ProblemContext, call: TaskCall) -> Thunk:
    """
    Certifies a bimodule and checks that the forgetful maps commute: every way
    down to a level, with or without covariance, ends at the same certification.
    The canonical bimodule is certified with its covariant structure when the
    problem has an action.
    """
    order = call.get("positivity_order", int, 2)
    if "bimodule" in call.args or ctx.action is None:
        _, E = call.bimodule(ctx)
        build = None
    else:
        build = _covariant(ctx, call)

    def run():
        if build is None:
            module, structure = E, None
        else:
            structure = build()
            module = structure.module
        cert = certify(module, standard_products(module), structure, order, ctx.window)
        report = CheckReport(name="forget-diagram", scope=cert.report.scope)
        report.merge(cert.report, "certify")
        report.data["certification"] = {"level": cert.level, "covariant": cert.covariant}
        if cert.level is None:
            report.notes.append("not an equivalence bimodule of rings: nothing to forget")
            return report
        below = LEVELS[: LEVELS.index(cert.level) + 1]
        paths = {}
        for level in below:
            direct = forget(cert, level)
            stepwise = cert
            for lower in reversed(below[below.index(level):]):
                stepwise = forget(stepwise, lower)
            if direct.key() != stepwise.key():
                report.fail("commutes", detail="one step and several steps disagree", level=level)
            plain_first = forget(forget(cert, covariance=True), level)
            plain_last = forget(direct, covariance=True)
            if plain_first.key() != plain_last.key():
                report.fail("commutes", detail="dropping covariance does not commute", level=level)
            paths[level] = plain_last.history
        report.data["paths"] = paths
        return report

    return run


# -- oracles


def _oracle_report(name: str, ctx: ProblemContext) -> CheckReport:
    report = _scoped(f"oracle: {name}", ctx)
    return report


def _disagree(report: CheckReport, what: str, computed, oracle):
    report.fail("oracle-disagreement", detail=what, computed=computed, oracle=oracle)


@ORACLES("ce-cohomology")
def ce_cohomology_oracle(ctx: ProblemContext, call: TaskCall) -> Thunk:
    action = call.lie_action(ctx)

    def run():
        report = _oracle_report("ce-cohomology", ctx)
        sparse = h1(action, window=ctx.window).h1_dim
        dense = dense_h1_dimension(action, window=ctx.window)
        report.data.update({"computed": sparse, "oracle": dense})
        if sparse != dense:
            _disagree(report, "dim H^1", sparse, dense)
        return report

    return run


@ORACLES("classify-lifts")
def classify_lifts_oracle(ctx: ProblemContext, call: TaskCall) -> Thunk:
    """Dense H^1, and every winding reduces to the zero class of U0."""
    action = call.lie_action(ctx)

    def run():
        report = _oracle_report("classify-lifts", ctx)
        presentation = u0_quotient(action, ctx.windings, ctx.window)
        dense = dense_h1_dimension(action, window=ctx.window)
        report.data.update({"computed": presentation.h1_dim, "oracle": dense})
        if presentation.h1_dim != dense:
            _disagree(report, "dim H^1", presentation.h1_dim, dense)
        for c, alpha in zip(ctx.windings, ctx.windings.hat_cocycles(action)):
            if not presentation.reduce(alpha).trivial:
                _disagree(report, f"class of hat({c})", "nontrivial", "trivial")
        return report

    return run


@ORACLES("picard")
def picard_by_bimodules(ctx: ProblemContext, call: TaskCall) -> Thunk:
    points, max_rank = _picard_points(ctx, call)

    def run():
        report = _oracle_report("picard", ctx)
        enumerated = picard_enumerate(points, max_rank=max_rank)
        built = picard_oracle(points, max_rank=max_rank)
        report.data.update({"computed": enumerated.order, "oracle": built.order})
        if enumerated.elements != built.elements:
            _disagree(report, "classes", enumerated.elements, built.elements)
        elif enumerated.table != built.table:
            _disagree(report, "multiplication table", enumerated.table, built.table)
        return report

    return run


def _pointwise_membership(report: CheckReport, a: ConvolutionMap, action, label: str):
    computed = u_membership(a, action).member
    oracle = group_membership_oracle(a, action).member
    if computed != oracle:
        _disagree(report, f"membership of {label}", computed, oracle)


@ORACLES("u-membership")
def membership_oracle(ctx: ProblemContext, call: TaskCall) -> Optional[Thunk]:
    action = call.action(ctx)
    build = _membership_map(ctx, call)
    if not isinstance(action.hopf, GroupHopf):
        return None

    def run():
        report = _oracle_report("u-membership", ctx)
        _pointwise_membership(report, build(), action, "the map")
        return report

    return run


def _sweedler_convolution(a: ConvolutionMap, b: ConvolutionMap, g) -> Any:
    out = a.target.zero()
    for g1, g2 in a.hopf.basis_element(g).coproduct().pairs():
        out = out + a.evaluate(g1) * b.evaluate(g2)
    return out


@ORACLES("convolution")
def convolution_oracle(ctx: ProblemContext, call: TaskCall) -> Thunk:
    """
    Convolution of the hats through the Sweedler expansion of every key,
    associativity on every triple of the hats and the unit against the sampled
    verdict of the task, and pointwise membership for groups.
    """
    action = call.action(ctx)
    witnesses = call.phased(ctx, "witnesses")
    witnesses = list(ctx.windings) if witnesses is None else witnesses

    def run():
        report = _oracle_report("convolution", ctx)
        H = action.hopf
        hats = [hat(c, action, ctx.window) for c in witnesses] + [unit_map(H, action.algebra)]
        for (i, a), (j, b) in product(enumerate(hats), repeat=2):
            ab = convolve(a, b)
            for g in H.basis():
                direct = _sweedler_convolution(a, b, g)
                if ab(g) != direct:
                    _disagree(report, f"({i} * {j})({H.key_name(g)})", ab(g), direct)
        sampled = not _non_associative(hats[: min(ASSOCIATIVITY_SAMPLE, len(witnesses))])
        failing = _non_associative(hats)
        report.data.update({"computed": sampled, "oracle": not failing, "triples": len(hats) ** 3})
        if sampled != (not failing):
            _disagree(report, "associativity", sampled, [list(t) for t in failing])
        if isinstance(H, GroupHopf):
            for c, c_hat in zip(witnesses, hats):
                _pointwise_membership(report, c_hat, action, f"hat({c})")
        return report

    return run


# -- running


class TaskResult(BaseModel):
    index: int
    task: str
    verdict: str
    report: Optional[CheckReport] = None
    error: Optional[str] = None


class RunReport(BaseModel):
    report_version: int = config.REPORT_VERSION
    mode: str
    truncation: int
    window: int
    verdict: str
    inconsistent: bool = False
    tasks: List[TaskResult] = []
    # seconds per task, keyed "index:task", and in total
    timing: Dict[str, float] = {}

    def exit_code(self) -> int:
        if self.inconsistent:
            return 3
        return 1 if self.verdict == FAIL else 0

    def to_json(self, timing: bool = True) -> str:
        data = model_to_dict(self)
        if not timing:
            data.pop("timing")
        return dumps(data)


def _calls(ctx: ProblemContext) -> List[TaskCall]:
    calls = []
    for k, entry in enumerate(ctx.tasks):
        call = TaskCall(k, entry)
        if not isinstance(call.name, str):
            raise call.invalid("task", "every task names what to run")
        if call.name not in TASKS:
            raise call.invalid("task", f"unknown task {call.name!r}, expected one of {', '.join(TASKS.names())}")
        calls.append(call)
    return calls


def _execute(call: TaskCall, thunk: Optional[Thunk]) -> Tuple[TaskResult, float]:
    start = time.perf_counter()
    if thunk is None:
        report = CheckReport(name=call.name, notes=["no oracle"])
        return TaskResult(index=call.index, task=call.name, verdict=SKIP, report=report), 0.0
    logger.info(f"Running task {call.index}: {call.name}")
    try:
        report = thunk()
    except InconsistencyError as e:
        logger.error(f"Task {call.index} ({call.name}): internal inconsistency: {e}")
        result = TaskResult(index=call.index, task=call.name, verdict=ERROR, error=str(e))
        return result, time.perf_counter() - start
    except HopfMoritaError as e:
        report = CheckReport(name=call.name)
        report.fail("precondition", detail=str(e))
    except Exception as e:
        # a crash in one task is an error of that task, the others still run
        logger.exception(f"Task {call.index} ({call.name}) crashed")
        result = TaskResult(index=call.index, task=call.name, verdict=ERROR, error=f"{type(e).__name__}: {e}")
        return result, time.perf_counter() - start
    for f in report.failures:
        run_log(f"{call.name}[{call.index}] {f.identity} {f.detail} {f.witness}")
    verdict = PASS if report.passed else FAIL
    logger.info(f"Task {call.index} ({call.name}): {verdict}")
    return TaskResult(index=call.index, task=call.name, verdict=verdict, report=report), time.perf_counter() - start


def _run(ctx: ProblemContext, mode: str, registry: Registry, parallel: bool) -> RunReport:
    calls = _calls(ctx)
    # every task is validated before the first one runs
    thunks = []
    for call in calls:
        prepare = registry.get(call.name)
        thunks.append(None if prepare is None else prepare(ctx, call))
    start = time.perf_counter()
    if parallel and len(calls) > 1:
        with ThreadPoolExecutor() as pool:
            outcomes = list(pool.map(_execute, calls, thunks))
    else:
        outcomes = [_execute(call, thunk) for call, thunk in zip(calls, thunks)]
    results = [r for r, _ in outcomes]
    timing = {f"{r.index}:{r.task}": round(t, 6) for r, t in outcomes}
    timing["total"] = round(time.perf_counter() - start, 6)
    inconsistent = any(r.verdict == ERROR for r in results)
    if inconsistent:
        verdict = ERROR
    elif any(r.verdict == FAIL for r in results):
        verdict = FAIL
    else:
        verdict = PASS
    return RunReport(
        mode=mode,
        truncation=ctx.truncation,
        window=ctx.window,
        verdict=verdict,
        inconsistent=inconsistent,
        tasks=results,
        timing=timing,
    )


def run(ctx: ProblemContext, parallel: bool = False) -> RunReport:
    """
    Validates and runs the tasks of a problem. Results come back in input order
    whether or not the tasks ran in parallel.

    Raises:
        ProblemValidationError: a task is unknown or has bad arguments.
    """
    return _run(ctx, "run", TASKS, parallel)


def verify_oracle(ctx: ProblemContext, parallel: bool = False) -> RunReport:
    """
    Runs the oracle of every task instead of the task. Tasks without an oracle
    are reported as SKIP.
    """
    # the arguments are validated the same way as for a run
    for call in _calls(ctx):
        TASKS.get(call.name)(ctx, call)
    return _run(ctx, "oracle", ORACLES, parallel)
