"""
Model *-algebras presented by a basis, structure constants, a unit and an
involution table, and their elements in canonical sparse form.

Four concrete models are available, plus finite products of them:

  - FiniteFunctions(X): functions on a finite set, basis of idempotents e_x.
  - TruncatedPoly(n): K[x]/(x^n), basis x^k for 0 <= k < n, x Hermitian.
  - Matrix(n) and Matrix(n, base): M_n(C) and M_n(base) for a finite base model.
  - Laurent: the group algebra of Z (algebraic circle), basis u^k, star(u^k) = u^-k.
    Elements have finite support; windowed computations use |k| <= K.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
import itertools
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from loguru import logger

from hopfmorita import config
from hopfmorita.errors import ModelError

from .scalar import ONE, Scalar, ScalarLike

Index = Hashable


# -- specs -------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteFunctionsSpec:
    points: Tuple[str, ...]


@dataclass(frozen=True)
class TruncatedPolySpec:
    n: int


@dataclass(frozen=True)
class MatrixSpec:
    n: int
    base: Optional["ModelSpec"] = None


@dataclass(frozen=True)
class LaurentSpec:
    pass


@dataclass(frozen=True)
class ProductSpec:
    factors: Tuple["ModelSpec", ...]


ModelSpec = Union[FiniteFunctionsSpec, TruncatedPolySpec, MatrixSpec, LaurentSpec, ProductSpec]


# -- algebras ----------------------------------------------------------------


class BasedStarAlgebra(ABC):
    """
    A *-algebra given by a basis. Subclasses provide the product and the star on
    basis elements; everything else is derived by (anti)linearity.
    """

    finite: bool = True
    commutative: bool = False

    def __init__(self, spec: ModelSpec):
        self.spec = spec

    # structure --------------------------------------------------------------

    @abstractmethod
    def basis(self) -> List[Index]:
        """All basis indices, in canonical order. Finite models only."""

    @abstractmethod
    def mul_basis(self, i: Index, j: Index) -> Dict[Index, Scalar]:
        pass

    @abstractmethod
    def star_basis(self, i: Index) -> Dict[Index, Scalar]:
        pass

    @abstractmethod
    def unit_coeffs(self) -> Dict[Index, Scalar]:
        pass

    @abstractmethod
    def basis_name(self, i: Index) -> str:
        pass

    @abstractmethod
    def format_index(self, i: Index) -> str:
        pass

    @abstractmethod
    def parse_index(self, text: str) -> Index:
        pass

    def index_key(self, i: Index) -> Any:
        return i

    def window(self, K: Optional[int] = None) -> List[Index]:
        """
        The indices a windowed computation runs over. For finite models this is
        the whole basis and K is ignored.
        """
        return self.basis()

    @property
    def dim(self) -> int:
        return len(self.basis())

    @property
    def name(self) -> str:
        return describe_spec(self.spec)

    def __eq__(self, other) -> bool:
        return isinstance(other, BasedStarAlgebra) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"<{self.name}>"

    # elements ---------------------------------------------------------------

    def element(self, coeffs: Mapping[Index, ScalarLike]) -> "AlgebraElement":
        return AlgebraElement(self, coeffs)

    def parse_element(self, mapping: Mapping[str, str]) -> "AlgebraElement":
        return AlgebraElement(
            self, {self.parse_index(k): Scalar.of(v) for k, v in mapping.items()}
        )

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit_coeffs())

    def scalar(self, c: ScalarLike) -> "AlgebraElement":
        return self.one() * Scalar.of(c)

    def basis_element(self, i: Index) -> "AlgebraElement":
        return AlgebraElement(self, {i: ONE})

    # axioms -----------------------------------------------------------------

    def associativity_failures(self, indices: Optional[Sequence[Index]] = None) -> List[Tuple[Index, Index, Index]]:
        indices = self.basis() if indices is None else indices
        failures = []
        elements = {i: self.basis_element(i) for i in indices}
        for i, j, k in itertools.product(indices, repeat=3):
            a, b, c = elements[i], elements[j], elements[k]
            if (a * b) * c != a * (b * c):
                failures.append((i, j, k))
        return failures

    def star_failures(self, indices: Optional[Sequence[Index]] = None) -> List[Tuple[Index, ...]]:
        indices = self.basis() if indices is None else indices
        failures = []
        if self.one().star() != self.one():
            failures.append(("unit",))
        for i in indices:
            a = self.basis_element(i)
            if a.star().star() != a:
                failures.append((i,))
        for i, j in itertools.product(indices, repeat=2):
            a, b = self.basis_element(i), self.basis_element(j)
            if (a * b).star() != b.star() * a.star():
                failures.append((i, j))
        return failures


class FiniteFunctions(BasedStarAlgebra):
    commutative = True

    def __init__(self, points: Sequence[str]):
        super().__init__(FiniteFunctionsSpec(tuple(points)))
        self.points = tuple(points)
        self._position = {p: k for k, p in enumerate(self.points)}

    def basis(self):
        return list(self.points)

    def mul_basis(self, i, j):
        return {i: ONE} if i == j else {}

    def star_basis(self, i):
        return {i: ONE}

    def unit_coeffs(self):
        return {p: ONE for p in self.points}

    def index_key(self, i):
        return self._position[i]

    def basis_name(self, i):
        return f"e_{i}"

    def format_index(self, i):
        return str(i)

    def parse_index(self, text):
        if text not in self._position:
            raise ModelError(f"Unknown point {text!r} of {self.name}")
        return text


class TruncatedPoly(BasedStarAlgebra):
    commutative = True

    def __init__(self, n: int):
        super().__init__(TruncatedPolySpec(n))
        self.n = n

    def basis(self):
        return list(range(self.n))

    def mul_basis(self, i, j):
        return {i + j: ONE} if i + j < self.n else {}

    def star_basis(self, i):
        return {i: ONE}

    def unit_coeffs(self):
        return {0: ONE}

    def basis_name(self, i):
        return "1" if i == 0 else ("x" if i == 1 else f"x^{i}")

    def format_index(self, i):
        return str(i)

    def parse_index(self, text):
        k = _parse_int(text, self.name)
        if not 0 <= k < self.n:
            raise ModelError(f"Power {k} outside of {self.name}")
        return k


class Laurent(BasedStarAlgebra):
    finite = False
    commutative = True

    def __init__(self):
        super().__init__(LaurentSpec())

    def basis(self):
        raise ModelError("The Laurent model is infinite-dimensional; use window(K)")

    @property
    def dim(self):
        raise ModelError("The Laurent model is infinite-dimensional")

    def window(self, K=None):
        if K is None:
            raise ModelError("The Laurent model needs a mode window K")
        if K < 0:
            raise ModelError(f"Negative mode window {K}")
        return list(range(-K, K + 1))

    def mul_basis(self, i, j):
        return {i + j: ONE}

    def star_basis(self, i):
        return {-i: ONE}

    def unit_coeffs(self):
        return {0: ONE}

    def basis_name(self, i):
        return "1" if i == 0 else ("u" if i == 1 else f"u^{i}")

    def format_index(self, i):
        return str(i)

    def parse_index(self, text):
        return _parse_int(text, self.name)


class MatrixAlgebra(BasedStarAlgebra):
    """
    M_n(C) with basis E_ij (indices (i, j)), or M_n(base) with basis E_ij (x) b
    (indices (i, j, b)) for a finite base model.
    """

    def __init__(self, n: int, base: Optional[BasedStarAlgebra] = None):
        super().__init__(MatrixSpec(n, None if base is None else base.spec))
        self.n = n
        self.base = base
        self.commutative = n == 1 and (base is None or base.commutative)

    def basis(self):
        pairs = [(i, j) for i in range(self.n) for j in range(self.n)]
        if self.base is None:
            return pairs
        return [(i, j, b) for i, j in pairs for b in self.base.basis()]

    def mul_basis(self, i, j):
        if i[1] != j[0]:
            return {}
        if self.base is None:
            return {(i[0], j[1]): ONE}
        return {(i[0], j[1], b): c for b, c in self.base.mul_basis(i[2], j[2]).items()}

    def star_basis(self, i):
        if self.base is None:
            return {(i[1], i[0]): ONE}
        return {(i[1], i[0], b): c for b, c in self.base.star_basis(i[2]).items()}

    def unit_coeffs(self):
        if self.base is None:
            return {(i, i): ONE for i in range(self.n)}
        return {
            (i, i, b): c for i in range(self.n) for b, c in self.base.unit_coeffs().items()
        }

    def index_key(self, i):
        if self.base is None:
            return i
        return (i[0], i[1], self.base.index_key(i[2]))

    def basis_name(self, i):
        if self.base is None:
            return f"E_{i[0]}{i[1]}"
        return f"E_{i[0]}{i[1]}({self.base.basis_name(i[2])})"

    def format_index(self, i):
        if self.base is None:
            return f"{i[0]},{i[1]}"
        return f"{i[0]},{i[1]},{self.base.format_index(i[2])}"

    def parse_index(self, text):
        parts = text.split(",", 2)
        expected = 2 if self.base is None else 3
        if len(parts) != expected:
            raise ModelError(f"Matrix index {text!r} needs {expected} components")
        i, j = (_parse_int(p, self.name) for p in parts[:2])
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ModelError(f"Matrix index {text!r} outside of {self.name}")
        if self.base is None:
            return (i, j)
        return (i, j, self.base.parse_index(parts[2].strip()))


class ProductAlgebra(BasedStarAlgebra):
    """Finite direct product; indices are (block, inner index)."""

    def __init__(self, factors: Sequence[BasedStarAlgebra]):
        super().__init__(ProductSpec(tuple(f.spec for f in factors)))
        self.factors = list(factors)
        self.commutative = all(f.commutative for f in factors)

    def basis(self):
        return [(k, i) for k, f in enumerate(self.factors) for i in f.basis()]

    def mul_basis(self, i, j):
        if i[0] != j[0]:
            return {}
        return {(i[0], t): c for t, c in self.factors[i[0]].mul_basis(i[1], j[1]).items()}

    def star_basis(self, i):
        return {(i[0], t): c for t, c in self.factors[i[0]].star_basis(i[1]).items()}

    def unit_coeffs(self):
        return {(k, t): c for k, f in enumerate(self.factors) for t, c in f.unit_coeffs().items()}

    def index_key(self, i):
        return (i[0], self.factors[i[0]].index_key(i[1]))

    def basis_name(self, i):
        return f"[{i[0]}]{self.factors[i[0]].basis_name(i[1])}"

    def format_index(self, i):
        return f"{i[0]}:{self.factors[i[0]].format_index(i[1])}"

    def parse_index(self, text):
        block, _, inner = text.partition(":")
        k = _parse_int(block, self.name)
        if not 0 <= k < len(self.factors):
            raise ModelError(f"Block {k} outside of {self.name}")
        return (k, self.factors[k].parse_index(inner.strip()))


# -- elements ----------------------------------------------------------------


class AlgebraElement:
    """
    An element of a BasedStarAlgebra in canonical sparse form: zero coefficients
    are never stored, so equality of coefficient maps is equality of elements.
    """

    __slots__ = ("algebra", "_coeffs")

    def __init__(self, algebra: BasedStarAlgebra, coeffs: Mapping[Index, ScalarLike]):
        self.algebra = algebra
        self._coeffs = {}
        for i, c in coeffs.items():
            c = Scalar.of(c)
            if not c.is_zero():
                self._coeffs[i] = c

    def items(self) -> Iterable[Tuple[Index, Scalar]]:
        return sorted(self._coeffs.items(), key=lambda kv: self.algebra.index_key(kv[0]))

    def support(self) -> List[Index]:
        return [i for i, _ in self.items()]

    def coefficient(self, i: Index) -> Scalar:
        return self._coeffs.get(i, Scalar(0))

    def coeffs(self) -> Dict[Index, Scalar]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: "AlgebraElement"):
        if other.algebra != self.algebra:
            raise ModelError(
                f"Elements of different algebras: {self.algebra.name} and"
                f" {other.algebra.name}"
            )

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self._coeffs)
        for i, c in other._coeffs.items():
            out[i] = out.get(i, Scalar(0)) + c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {i: -c for i, c in self._coeffs.items()})

    def scale(self, c: ScalarLike) -> "AlgebraElement":
        c = Scalar.of(c)
        return AlgebraElement(self.algebra, {i: c * v for i, v in self._coeffs.items()})

    def __mul__(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._check(other)
        out: Dict[Index, Scalar] = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                ab = a * b
                for k, c in self.algebra.mul_basis(i, j).items():
                    out[k] = out.get(k, Scalar(0)) + ab * c
        return AlgebraElement(self.algebra, out)

    def __rmul__(self, other) -> "AlgebraElement":
        return self.scale(other)

    def __pow__(self, k: int) -> "AlgebraElement":
        if k < 0:
            raise ModelError("Negative powers of algebra elements are not defined")
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def star(self) -> "AlgebraElement":
        out: Dict[Index, Scalar] = {}
        for i, a in self._coeffs.items():
            ca = a.conjugate()
            for k, c in self.algebra.star_basis(i).items():
                out[k] = out.get(k, Scalar(0)) + ca * c
        return AlgebraElement(self.algebra, out)

    def commutator(self, other: "AlgebraElement") -> "AlgebraElement":
        return self * other - other * self

    def vector(self, indices: Sequence[Index]) -> List[Scalar]:
        """Coefficients on the given indices; the support must lie inside them."""
        outside = set(self._coeffs) - set(indices)
        if outside:
            raise ModelError(f"Element {self} has support outside the given indices")
        return [self.coefficient(i) for i in indices]

    def format(self) -> Dict[str, str]:
        return {self.algebra.format_index(i): str(c) for i, c in self.items()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self._coeffs.items())))

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for i, c in self.items():
            name = self.algebra.basis_name(i)
            if name == "1":
                terms.append(f"({c})")
            elif c == 1:
                terms.append(name)
            else:
                terms.append(f"({c})*{name}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"AlgebraElement({self.algebra.name}: {self})"


# -- construction ------------------------------------------------------------


def build_model(spec: ModelSpec, verify: bool = True, window: Optional[int] = None) -> BasedStarAlgebra:
    """
    Builds the model algebra for a spec and verifies associativity and the star
    axioms at build time: on all basis triples of a finite model, and on the
    mode window K (default config.DEFAULT_WINDOW) of an infinite one.
    """
    algebra = _construct(spec)
    if verify:
        indices = None if algebra.finite else algebra.window(config.DEFAULT_WINDOW if window is None else window)
        failures = algebra.associativity_failures(indices)
        if failures:
            raise ModelError(f"{algebra.name} is not associative on {failures[0]}")
        star_failures = algebra.star_failures(indices)
        if star_failures:
            raise ModelError(f"{algebra.name} violates the star axioms on {star_failures[0]}")
        logger.debug(f"Built {algebra.name}, verified on {len(indices or algebra.basis())} basis elements")
    return algebra


def _construct(spec: ModelSpec) -> BasedStarAlgebra:
    if isinstance(spec, FiniteFunctionsSpec):
        if not spec.points:
            raise ModelError("FiniteFunctions needs a nonempty set of points")
        if len(set(spec.points)) != len(spec.points):
            raise ModelError(f"Repeated points in {spec.points}")
        return FiniteFunctions(spec.points)
    if isinstance(spec, TruncatedPolySpec):
        if spec.n < 1:
            raise ModelError(f"TruncatedPoly needs n >= 1, got {spec.n}")
        return TruncatedPoly(spec.n)
    if isinstance(spec, MatrixSpec):
        if spec.n < 1:
            raise ModelError(f"Matrix needs n >= 1, got {spec.n}")
        base = None
        if spec.base is not None:
            base = _construct(spec.base)
            if not base.finite:
                raise ModelError("Matrix algebras need a finite base model")
        return MatrixAlgebra(spec.n, base)
    if isinstance(spec, LaurentSpec):
        return Laurent()
    if isinstance(spec, ProductSpec):
        if not spec.factors:
            raise ModelError("Product needs at least one factor")
        factors = [_construct(f) for f in spec.factors]
        if not all(f.finite for f in factors):
            raise ModelError("Product factors must be finite models")
        return ProductAlgebra(factors)
    raise ModelError(f"Unknown model spec {spec!r}")


def describe_spec(spec: ModelSpec) -> str:
    if isinstance(spec, FiniteFunctionsSpec):
        return f"FiniteFunctions({{{', '.join(spec.points)}}})"
    if isinstance(spec, TruncatedPolySpec):
        return f"TruncatedPoly({spec.n})"
    if isinstance(spec, MatrixSpec):
        if spec.base is None:
            return f"Matrix({spec.n})"
        return f"Matrix({spec.n}, {describe_spec(spec.base)})"
    if isinstance(spec, LaurentSpec):
        return "Laurent"
    if isinstance(spec, ProductSpec):
        return "Product(" + ", ".join(describe_spec(f) for f in spec.factors) + ")"
    return repr(spec)


def _parse_int(text: str, where: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ModelError(f"Expected an integer index for {where}, got {text!r}")
