"""
Problem files: one JSON object declaring the algebra, the acting Lie algebra or
finite group, the action, windings, named cocycles and bimodules, and an ordered
list of tasks. A file is loaded in two passes: `load_problem` parses the text
and checks the field types with pydantic, `build_context` resolves names and
constructs every object, reporting the offending field by its path
(`lie_algebra.brackets[0]`, `bimodules.E.of[1]`, ...).

Example:

    {
      "format_version": 1,
      "lie_algebra": {"dim": 1},
      "algebra": {"kind": "laurent"},
      "action": {"kind": "rotation"},
      "window": 3,
      "windings": [{"element": {"1": "1"}}],
      "tasks": [{"task": "ce-cohomology"}, {"task": "classify-lifts"}]
    }
"""
from contextlib import contextmanager
from fractions import Fraction
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from loguru import logger
from pydantic import BaseModel, ValidationError

from hopfmorita import config
from hopfmorita.errors import HopfMoritaError, ProblemParseError, ProblemValidationError
from hopfmorita.util import parse_model

from hopfmorita.algebra import (
    BasedStarAlgebra,
    FiniteFunctions,
    FiniteFunctionsSpec,
    GeneratorDerivation,
    InnerDerivation,
    LaurentSpec,
    LieAction,
    LieAlgebra,
    MatrixSpec,
    ModelSpec,
    PhasedElement,
    ProductSpec,
    TableDerivation,
    TruncatedPolySpec,
    build_model,
)
from hopfmorita.cohomology import CECochain, cochain_from_mapping
from hopfmorita.hopf import GroupAutomorphismAction, GroupHopf, HopfAction, LieHopfAction
from hopfmorita.lifts import WindingSet
from hopfmorita.morita import (
    AlgebraMorphism,
    Bimodule,
    CanonicalBimodule,
    ConjugateBimodule,
    GradedBimodule,
    StandardModule,
    TensorBimodule,
    ell,
)

ElementText = Dict[str, str]


class LieAlgebraSpec(BaseModel):
    dim: int
    # [i, j, [c_0, ..., c_{dim-1}]]: [xi_i, xi_j] = sum_k c_k xi_k
    brackets: List[List[Any]] = []


class GroupSpec(BaseModel):
    cyclic: Optional[int] = None
    table: Optional[List[List[int]]] = None
    labels: Optional[List[str]] = None


class AlgebraSpec(BaseModel):
    kind: str
    points: Optional[List[str]] = None
    n: Optional[int] = None
    base: Optional[Dict[str, Any]] = None
    factors: Optional[List[Dict[str, Any]]] = None


class ActionSpec(BaseModel):
    # rotation | trivial | derivations | permutation | automorphisms
    kind: str
    # per generator: {"generator": element} | {"table": {index: element}} | {"inner": element}
    derivations: List[Dict[str, Any]] = []
    # group element label -> point -> point
    permutations: Dict[str, Dict[str, str]] = {}
    # group element label -> basis index -> element
    images: Dict[str, Dict[str, ElementText]] = {}


class WindingSpec(BaseModel):
    element: ElementText
    phase: str = "0"


class BimoduleSpec(BaseModel):
    # canonical | standard | graded | permutation | twisted | conjugate | tensor
    kind: str
    n: Optional[int] = None
    dims: Optional[List[List[int]]] = None
    sigma: Optional[Dict[str, str]] = None
    images: Optional[Dict[str, ElementText]] = None
    of: Optional[List[str]] = None


class ProblemFile(BaseModel):
    format_version: int = config.PROBLEM_FORMAT_VERSION
    lie_algebra: Optional[LieAlgebraSpec] = None
    group: Optional[GroupSpec] = None
    algebra: AlgebraSpec
    action: Optional[ActionSpec] = None
    truncation: Optional[int] = None
    window: Optional[int] = None
    windings: List[WindingSpec] = []
    cocycles: Dict[str, Dict[str, ElementText]] = {}
    bimodules: Dict[str, BimoduleSpec] = {}
    tasks: List[Dict[str, Any]] = []


def _format_path(loc: Sequence[Union[str, int]]) -> str:
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else str(part)
    return out


def load_problem(source: Union[str, Path]) -> ProblemFile:
    """
    Parses problem text, or the file at a Path.

    Raises:
        ProblemParseError: the text is not JSON, with the line and column.
        ProblemValidationError: a field has the wrong type, with its path.
    """
    text = source.read_text() if isinstance(source, Path) else source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemParseError(e.msg, e.lineno, e.colno)
    if not isinstance(data, dict):
        raise ProblemValidationError("problem", "a problem file is a JSON object")
    try:
        problem = parse_model(ProblemFile, data)
    except ValidationError as e:
        error = e.errors()[0]
        raise ProblemValidationError(_format_path(error["loc"]), error["msg"])
    if problem.format_version != config.PROBLEM_FORMAT_VERSION:
        raise ProblemValidationError(
            "format_version", f"unsupported version {problem.format_version}, expected {config.PROBLEM_FORMAT_VERSION}"
        )
    return problem


@contextmanager
def _at(path: str):
    """Reports model errors raised while building a field under the field's path."""
    try:
        yield
    except ProblemValidationError:
        raise
    except (HopfMoritaError, ValueError) as e:
        raise ProblemValidationError(path, str(e))


class ProblemContext:
    """Everything a problem file declares, built and resolved."""

    def __init__(
        self,
        problem: ProblemFile,
        algebra: BasedStarAlgebra,
        action: Optional[HopfAction],
        truncation: int,
        window: int,
        windings: WindingSet,
        cocycles: Dict[str, CECochain],
        bimodules: Dict[str, Bimodule],
    ):
        self.problem = problem
        self.algebra = algebra
        self.action = action
        self.truncation = truncation
        self.window = window
        self.windings = windings
        self.cocycles = cocycles
        self.bimodules = bimodules

    @property
    def hopf(self):
        return None if self.action is None else self.action.hopf

    @property
    def lie_action(self) -> Optional[LieAction]:
        return getattr(self.action, "lie_action", None)

    @property
    def tasks(self) -> List[Dict[str, Any]]:
        return self.problem.tasks


def model_spec(data: Union[AlgebraSpec, Dict[str, Any]], path: str) -> ModelSpec:
    spec = data
    if not isinstance(spec, AlgebraSpec):
        try:
            spec = parse_model(AlgebraSpec, data)
        except ValidationError as e:
            error = e.errors()[0]
            raise ProblemValidationError(".".join([path, _format_path(error["loc"])]), error["msg"])
    kind = spec.kind
    if kind == "finite-functions":
        if not spec.points:
            raise ProblemValidationError(f"{path}.points", "finite-functions needs a nonempty list of points")
        return FiniteFunctionsSpec(tuple(spec.points))
    if kind == "truncated-poly":
        if spec.n is None:
            raise ProblemValidationError(f"{path}.n", "truncated-poly needs n")
        return TruncatedPolySpec(spec.n)
    if kind == "matrix":
        if spec.n is None:
            raise ProblemValidationError(f"{path}.n", "matrix needs n")
        base = None if spec.base is None else model_spec(spec.base, f"{path}.base")
        return MatrixSpec(spec.n, base)
    if kind == "laurent":
        return LaurentSpec()
    if kind == "product":
        factors = spec.factors or []
        return ProductSpec(tuple(model_spec(f, f"{path}.factors[{k}]") for k, f in enumerate(factors)))
    raise ProblemValidationError(f"{path}.kind", f"unknown algebra kind {kind!r}")


def _lie_algebra(spec: LieAlgebraSpec) -> LieAlgebra:
    brackets = {}
    for k, entry in enumerate(spec.brackets):
        path = f"lie_algebra.brackets[{k}]"
        if len(entry) != 3 or not isinstance(entry[2], list):
            raise ProblemValidationError(path, "a bracket is [i, j, [c_0, ..., c_(dim-1)]]")
        i, j, coeffs = entry
        if not isinstance(i, int) or not isinstance(j, int):
            raise ProblemValidationError(path, "bracket generators are integer indices")
        if len(coeffs) != spec.dim:
            raise ProblemValidationError(path, f"a bracket needs {spec.dim} coefficients, got {len(coeffs)}")
        brackets[(i, j)] = [str(c) for c in coeffs]
    with _at("lie_algebra"):
        return LieAlgebra(spec.dim, brackets)


def _group(spec: GroupSpec) -> GroupHopf:
    with _at("group"):
        if spec.cyclic is not None:
            group = GroupHopf.cyclic(spec.cyclic)
            if spec.labels is not None:
                group = GroupHopf(group.table, spec.labels)
            return group
        if spec.table is None:
            raise ProblemValidationError("group", "a group is given by `cyclic` or by `table`")
        return GroupHopf(spec.table, spec.labels)


def _group_element(group: GroupHopf, label: str, path: str) -> int:
    if label in group.labels:
        return group.labels.index(label)
    raise ProblemValidationError(path, f"unknown group element {label!r}")


def _lie_action(spec: ActionSpec, lie: LieAlgebra, algebra: BasedStarAlgebra) -> LieAction:
    if spec.kind == "trivial":
        return LieAction.trivial(lie, algebra)
    if spec.kind == "rotation":
        with _at("action"):
            return LieAction(
                lie,
                algebra,
                [GeneratorDerivation(algebra, algebra.parse_element({"1": "i"})) for _ in range(lie.dim)],
            )
    if spec.kind != "derivations":
        raise ProblemValidationError("action.kind", f"unknown action kind {spec.kind!r} for a Lie algebra")
    if len(spec.derivations) != lie.dim:
        raise ProblemValidationError(
            "action.derivations", f"{lie.dim} generators need {lie.dim} derivations, got {len(spec.derivations)}"
        )
    derivations = []
    for k, d in enumerate(spec.derivations):
        path = f"action.derivations[{k}]"
        if len(d) != 1:
            raise ProblemValidationError(path, "a derivation is one of generator, table or inner")
        (kind, value), = d.items()
        if not isinstance(value, dict):
            raise ProblemValidationError(f"{path}.{kind}", "expected an element or a table of elements")
        with _at(f"{path}.{kind}"):
            if kind == "generator":
                derivations.append(GeneratorDerivation(algebra, algebra.parse_element(value)))
            elif kind == "inner":
                derivations.append(InnerDerivation(algebra, algebra.parse_element(value)))
            elif kind == "table":
                images = {algebra.parse_index(i): algebra.parse_element(v) for i, v in value.items()}
                derivations.append(TableDerivation(algebra, images))
            else:
                raise ProblemValidationError(path, f"unknown derivation kind {kind!r}")
    return LieAction(lie, algebra, derivations)


def _group_action(spec: ActionSpec, group: GroupHopf, algebra: BasedStarAlgebra) -> GroupAutomorphismAction:
    with _at("action"):
        if spec.kind == "trivial":
            return GroupAutomorphismAction(group, algebra, {})
        if spec.kind == "permutation":
            permutations = {
                _group_element(group, g, f"action.permutations.{g}"): sigma for g, sigma in spec.permutations.items()
            }
            return GroupAutomorphismAction.permutation(group, algebra, permutations)
        if spec.kind == "automorphisms":
            images = {}
            for g, table in spec.images.items():
                images[_group_element(group, g, f"action.images.{g}")] = {
                    algebra.parse_index(i): algebra.parse_element(v) for i, v in table.items()
                }
            return GroupAutomorphismAction(group, algebra, images)
    raise ProblemValidationError("action.kind", f"unknown action kind {spec.kind!r} for a group")


def _bimodule(name: str, spec: BimoduleSpec, algebra: BasedStarAlgebra, built: Dict[str, Bimodule]) -> Bimodule:
    path = f"bimodules.{name}"

    def operand(k: int) -> Bimodule:
        if spec.of is None or len(spec.of) <= k:
            raise ProblemValidationError(f"{path}.of", f"{spec.kind} needs {k + 1} operand(s)")
        other = spec.of[k]
        if other not in built:
            raise ProblemValidationError(f"{path}.of[{k}]", f"unknown or later bimodule {other!r}")
        return built[other]

    if (spec.kind in ("graded", "permutation") or spec.sigma is not None) and not isinstance(algebra, FiniteFunctions):
        raise ProblemValidationError(f"{path}.kind", f"{spec.kind} bimodules need a finite-functions algebra")
    with _at(path):
        if spec.kind == "canonical":
            return CanonicalBimodule(algebra)
        if spec.kind == "standard":
            return StandardModule(algebra, 1 if spec.n is None else spec.n)
        if spec.kind == "graded":
            if spec.dims is None:
                raise ProblemValidationError(f"{path}.dims", "graded needs a dimension matrix")
            return GradedBimodule(algebra, algebra, spec.dims)
        if spec.kind == "permutation":
            return GradedBimodule.permutation(algebra, spec.sigma or {})
        if spec.kind == "twisted":
            if spec.sigma is not None:
                return ell(AlgebraMorphism.permutation(algebra, spec.sigma))
            # basis elements without an image are fixed
            images = {i: algebra.basis_element(i) for i in algebra.basis()}
            for i, v in (spec.images or {}).items():
                images[algebra.parse_index(i)] = algebra.parse_element(v)
            return ell(AlgebraMorphism(algebra, algebra, images))
        if spec.kind == "conjugate":
            return ConjugateBimodule(operand(0))
        if spec.kind == "tensor":
            return TensorBimodule(operand(0), operand(1))
    raise ProblemValidationError(f"{path}.kind", f"unknown bimodule kind {spec.kind!r}")


def build_context(problem: ProblemFile, truncation: Optional[int] = None, window: Optional[int] = None) -> ProblemContext:
    """
    Builds the objects a problem declares. Flags override the file, which
    overrides the configured defaults.

    Raises:
        ProblemValidationError: a name does not resolve or an object cannot be
            built, with the path of the field at fault.
    """
    truncation = truncation if truncation is not None else problem.truncation
    truncation = config.DEFAULT_TRUNCATION if truncation is None else truncation
    window = window if window is not None else problem.window
    window = config.DEFAULT_WINDOW if window is None else window
    if truncation < 0:
        raise ProblemValidationError("truncation", f"negative truncation order {truncation}")
    if window < 0:
        raise ProblemValidationError("window", f"negative mode window {window}")

    with _at("algebra"):
        algebra = build_model(model_spec(problem.algebra, "algebra"), window=window)

    if problem.lie_algebra is not None and problem.group is not None:
        raise ProblemValidationError("group", "declare either a Lie algebra or a group, not both")
    action: Optional[HopfAction] = None
    if problem.lie_algebra is not None:
        lie = _lie_algebra(problem.lie_algebra)
        spec = problem.action or ActionSpec(kind="trivial")
        lie_action = _lie_action(spec, lie, algebra)
        with _at("truncation"):
            action = LieHopfAction(lie_action, truncation=truncation)
    elif problem.group is not None:
        group = _group(problem.group)
        action = _group_action(problem.action or ActionSpec(kind="trivial"), group, algebra)
    elif problem.action is not None:
        raise ProblemValidationError("action", "an action needs a lie_algebra or a group")

    elements = []
    for k, w in enumerate(problem.windings):
        with _at(f"windings[{k}]"):
            elements.append(PhasedElement(Fraction(w.phase), algebra.parse_element(w.element)))
    try:
        windings = WindingSet(elements, window=window)
    except HopfMoritaError as e:
        raise ProblemValidationError("windings", str(e))

    cocycles = {}
    for name, values in problem.cocycles.items():
        with _at(f"cocycles.{name}"):
            if action is None or getattr(action, "lie_action", None) is None:
                raise ProblemValidationError(f"cocycles.{name}", "cocycles need a lie_algebra")
            if not all(i.isdigit() for i in values):
                raise ProblemValidationError(f"cocycles.{name}", "cocycle values are keyed by generator index")
            dim = action.hopf.dim
            outside = sorted(int(i) for i in values if not int(i) < dim)
            if outside:
                raise ProblemValidationError(f"cocycles.{name}", f"generator {outside[0]} outside of dimension {dim}")
            cocycles[name] = cochain_from_mapping(algebra, values)

    bimodules: Dict[str, Bimodule] = {}
    for name, spec in problem.bimodules.items():
        bimodules[name] = _bimodule(name, spec, algebra, bimodules)

    logger.debug(
        f"Problem on {algebra.name}: {len(problem.tasks)} tasks, truncation {truncation}, window {window}"
    )
    return ProblemContext(problem, algebra, action, truncation, window, windings, cocycles, bimodules)
