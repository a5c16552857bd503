"""
Bimodules over model algebras, presented by a basis and the left and right
actions of the algebra bases, and the maps between them.

Kinds:
  - CanonicalBimodule: A as an (A, A)-bimodule (mode-windowed on Laurent).
  - GradedBimodule: a (FiniteFunctions(Y), FiniteFunctions(X))-bimodule given by
    a block dimension matrix d[y][x].
  - StandardModule: A^n as an (M_n(A), A)-bimodule.
  - TwistedBimodule: B with right action x . a = x Phi(a), for Phi: A -> B.
  - ConjugateBimodule: the complex conjugate of a bimodule.
  - TensorBimodule: the balanced tensor product F (x)_B E.
"""
from abc import ABC, abstractmethod
from itertools import product
from typing import Any, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from loguru import logger

from hopfmorita import config
from hopfmorita.errors import DomainError, InconsistencyError, ModelError

from hopfmorita.algebra.linalg import (
    complex_determinant,
    complex_kernel,
    complex_rank,
    complex_solve,
    complex_subspace,
    complexify,
    realify,
)
from hopfmorita.algebra.models import AlgebraElement, BasedStarAlgebra, FiniteFunctions, Index, MatrixAlgebra
from hopfmorita.algebra.scalar import ONE, Scalar, ScalarLike

MIndex = Hashable


class ModuleElement:
    """An element of a bimodule in canonical sparse form."""

    __slots__ = ("module", "_coeffs")

    def __init__(self, module: "Bimodule", coeffs: Mapping[MIndex, ScalarLike]):
        self.module = module
        self._coeffs = {}
        for x, c in coeffs.items():
            c = Scalar.of(c)
            if not c.is_zero():
                self._coeffs[x] = c

    def items(self) -> List[Tuple[MIndex, Scalar]]:
        return sorted(self._coeffs.items(), key=lambda kv: self.module.index_key(kv[0]))

    def coefficient(self, x: MIndex) -> Scalar:
        return self._coeffs.get(x, Scalar(0))

    def coeffs(self) -> Dict[MIndex, Scalar]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: "ModuleElement"):
        if other.module is not self.module:
            raise ModelError(f"Elements of different bimodules: {self.module.name} and {other.module.name}")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        out = dict(self._coeffs)
        for x, c in other._coeffs.items():
            out[x] = out.get(x, Scalar(0)) + c
        return ModuleElement(self.module, out)

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.module, {x: -c for x, c in self._coeffs.items()})

    def scale(self, c: ScalarLike) -> "ModuleElement":
        c = Scalar.of(c)
        return ModuleElement(self.module, {x: c * v for x, v in self._coeffs.items()})

    def __mul__(self, c) -> "ModuleElement":
        return self.scale(c)

    __rmul__ = __mul__

    def vector(self, indices: Sequence[MIndex]) -> List[Scalar]:
        outside = set(self._coeffs) - set(indices)
        if outside:
            raise ModelError(f"Module element {self} has support outside the given basis")
        return [self.coefficient(x) for x in indices]

    def format(self) -> Dict[str, str]:
        return {self.module.format_index(x): str(c) for x, c in self.items()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.module is other.module and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((id(self.module), frozenset(self._coeffs.items())))

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(
            (self.module.basis_name(x) if c == 1 else f"({c})*{self.module.basis_name(x)}")
            for x, c in self.items()
        )

    def __repr__(self) -> str:
        return f"ModuleElement({self.module.name}: {self})"


class Bimodule(ABC):
    """A (left, right)-bimodule with a basis."""

    left: BasedStarAlgebra
    right: BasedStarAlgebra
    finite: bool = True

    @abstractmethod
    def basis(self) -> List[MIndex]:
        pass

    @abstractmethod
    def left_basis(self, b: Index, x: MIndex) -> Dict[MIndex, Scalar]:
        """e_b . x"""

    @abstractmethod
    def right_basis(self, x: MIndex, a: Index) -> Dict[MIndex, Scalar]:
        """x . e_a"""

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    def window(self, K: Optional[int] = None) -> List[MIndex]:
        return self.basis()

    def index_key(self, x: MIndex) -> Any:
        return x

    def basis_name(self, x: MIndex) -> str:
        return f"v[{self.format_index(x)}]"

    def format_index(self, x: MIndex) -> str:
        return str(x)

    @property
    def dim(self) -> int:
        return len(self.basis())

    def __repr__(self) -> str:
        return f"<{self.name}>"

    # elements

    def element(self, coeffs: Mapping[MIndex, ScalarLike]) -> ModuleElement:
        return ModuleElement(self, coeffs)

    def zero(self) -> ModuleElement:
        return ModuleElement(self, {})

    def basis_element(self, x: MIndex) -> ModuleElement:
        return ModuleElement(self, {x: ONE})

    def act_left(self, b: AlgebraElement, x: ModuleElement) -> ModuleElement:
        if b.algebra != self.left:
            raise DomainError(f"{b} does not act from the left on {self.name}")
        out: Dict[MIndex, Scalar] = {}
        for i, c in b.items():
            for xi, v in x.items():
                for eta, w in self.left_basis(i, xi).items():
                    out[eta] = out.get(eta, Scalar(0)) + c * v * w
        return ModuleElement(self, out)

    def act_right(self, x: ModuleElement, a: AlgebraElement) -> ModuleElement:
        if a.algebra != self.right:
            raise DomainError(f"{a} does not act from the right on {self.name}")
        out: Dict[MIndex, Scalar] = {}
        for xi, v in x.items():
            for i, c in a.items():
                for eta, w in self.right_basis(xi, i).items():
                    out[eta] = out.get(eta, Scalar(0)) + v * c * w
        return ModuleElement(self, out)

    def bimodule_failures(self, window: Optional[int] = None) -> List[Tuple[MIndex, Index, Index]]:
        """Basis triples where (b . x) . a != b . (x . a)."""
        if window is None and not (self.finite and self.left.finite and self.right.finite):
            window = config.DEFAULT_WINDOW
        failures = []
        for x in self.window(window):
            xe = self.basis_element(x)
            for b in self.left.window(window):
                be = self.left.basis_element(b)
                bx = self.act_left(be, xe)
                for a in self.right.window(window):
                    ae = self.right.basis_element(a)
                    if self.act_right(bx, ae) != self.act_left(be, self.act_right(xe, ae)):
                        failures.append((x, b, a))
        return failures


class CanonicalBimodule(Bimodule):
    """A over itself; inner products <a, b>_A = a* b and _A<a, b> = a b*."""

    def __init__(self, algebra: BasedStarAlgebra):
        self.left = self.right = algebra
        self.finite = algebra.finite

    @property
    def name(self) -> str:
        return f"Canonical({self.left.name})"

    def basis(self):
        return self.left.basis()

    def window(self, K=None):
        return self.left.window(K)

    def index_key(self, x):
        return self.left.index_key(x)

    def basis_name(self, x):
        return self.left.basis_name(x)

    def format_index(self, x):
        return self.left.format_index(x)

    def left_basis(self, b, x):
        return self.left.mul_basis(b, x)

    def right_basis(self, x, a):
        return self.left.mul_basis(x, a)

    def from_algebra(self, a: AlgebraElement) -> ModuleElement:
        return ModuleElement(self, a.coeffs())

    def to_algebra(self, x: ModuleElement) -> AlgebraElement:
        return self.left.element(x.coeffs())

    def right_inner_basis(self, x, y) -> AlgebraElement:
        alg = self.left
        return alg.basis_element(x).star() * alg.basis_element(y)

    def left_inner_basis(self, x, y) -> AlgebraElement:
        alg = self.left
        return alg.basis_element(x) * alg.basis_element(y).star()


class GradedBimodule(Bimodule):
    """
    A (FiniteFunctions(Y), FiniteFunctions(X))-bimodule with d[y][x] basis
    vectors (y, x, k) in the block e_y E e_x. The inner products are
    <v, w>_A = delta_vw weight(v) e_x and _B<v, w> = delta_vw weight(v) e_y.
    """

    def __init__(self, left: FiniteFunctions, right: FiniteFunctions, dims: Sequence[Sequence[int]], weights: Optional[Mapping[MIndex, ScalarLike]] = None):
        if not isinstance(left, FiniteFunctions) or not isinstance(right, FiniteFunctions):
            raise ModelError("Graded bimodules live between FiniteFunctions models")
        if len(dims) != len(left.points) or any(len(row) != len(right.points) for row in dims):
            raise ModelError(
                f"Dimension matrix must be {len(left.points)} x {len(right.points)}"
            )
        if any(d < 0 for row in dims for d in row):
            raise ModelError("Block dimensions must be nonnegative")
        self.left = left
        self.right = right
        self.dims = [list(row) for row in dims]
        self._basis = [
            (y, x, k)
            for r, y in enumerate(left.points)
            for c, x in enumerate(right.points)
            for k in range(self.dims[r][c])
        ]
        self.weights = {v: Scalar.of((weights or {}).get(v, 1)) for v in self._basis}

    @classmethod
    def permutation(cls, algebra: FiniteFunctions, sigma: Mapping[str, str]) -> "GradedBimodule":
        """The bimodule l(Phi) of Phi(e_x) = e_sigma(x): d[y][x] = 1 iff y = sigma(x)."""
        points = algebra.points
        dims = [[int(sigma.get(x, x) == y) for x in points] for y in points]
        return cls(algebra, algebra, dims)

    @property
    def name(self) -> str:
        return f"Graded({self.dims})"

    def basis(self):
        return list(self._basis)

    def index_key(self, v):
        return (self.left.index_key(v[0]), self.right.index_key(v[1]), v[2])

    def format_index(self, v):
        return f"{v[0]},{v[1]},{v[2]}"

    def left_basis(self, b, v):
        return {v: ONE} if v[0] == b else {}

    def right_basis(self, v, a):
        return {v: ONE} if v[1] == a else {}

    def right_inner_basis(self, v, w) -> AlgebraElement:
        if v != w:
            return self.right.zero()
        return self.right.basis_element(v[1]) * self.weights[v]

    def left_inner_basis(self, v, w) -> AlgebraElement:
        if v != w:
            return self.left.zero()
        return self.left.basis_element(v[0]) * self.weights[v]


class StandardModule(Bimodule):
    """
    A^n between M_n(A) and A, basis (i, a) = a in the i-th slot, with
    <x, y>_A = sum_i x_i* y_i and _{M_n(A)}<x, y> = (x_i y_j*)_ij.
    """

    def __init__(self, algebra: BasedStarAlgebra, n: int):
        if not algebra.finite:
            raise ModelError("A^n needs a finite model A")
        if n < 1:
            raise ModelError(f"A^n needs n >= 1, got {n}")
        self.right = algebra
        self.left = MatrixAlgebra(n, algebra)
        self.n = n

    @property
    def name(self) -> str:
        return f"Standard({self.right.name}^{self.n})"

    def basis(self):
        return [(i, a) for i in range(self.n) for a in self.right.basis()]

    def index_key(self, x):
        return (x[0], self.right.index_key(x[1]))

    def format_index(self, x):
        return f"{x[0]},{self.right.format_index(x[1])}"

    def basis_name(self, x):
        return f"{self.right.basis_name(x[1])}[{x[0]}]"

    def left_basis(self, b, x):
        i, j, c = b
        if j != x[0]:
            return {}
        return {(i, t): v for t, v in self.right.mul_basis(c, x[1]).items()}

    def right_basis(self, x, a):
        return {(x[0], t): v for t, v in self.right.mul_basis(x[1], a).items()}

    def right_inner_basis(self, x, y) -> AlgebraElement:
        A = self.right
        if x[0] != y[0]:
            return A.zero()
        return A.basis_element(x[1]).star() * A.basis_element(y[1])

    def left_inner_basis(self, x, y) -> AlgebraElement:
        A = self.right
        value = A.basis_element(x[1]) * A.basis_element(y[1]).star()
        return self.left.element({(x[0], y[0], t): c for t, c in value.items()})


class AlgebraMorphism:
    """A linear map Phi: A -> B given by the images of the basis of A."""

    def __init__(self, source: BasedStarAlgebra, target: BasedStarAlgebra, images: Mapping[Index, AlgebraElement]):
        if not source.finite or not target.finite:
            raise ModelError("Algebra morphisms are supported between finite models")
        for i, v in images.items():
            if v.algebra != target:
                raise ModelError(f"Image of {source.basis_name(i)} lies outside of {target.name}")
        self.source = source
        self.target = target
        self.images = {i: images.get(i, target.zero()) for i in source.basis()}

    @classmethod
    def identity(cls, algebra: BasedStarAlgebra) -> "AlgebraMorphism":
        return cls(algebra, algebra, {i: algebra.basis_element(i) for i in algebra.basis()})

    @classmethod
    def permutation(cls, algebra: FiniteFunctions, sigma: Mapping[str, str]) -> "AlgebraMorphism":
        """Phi(e_x) = e_sigma(x)."""
        return cls(algebra, algebra, {x: algebra.basis_element(sigma.get(x, x)) for x in algebra.points})

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        out = self.target.zero()
        for i, c in a.items():
            out = out + self.images[i] * c
        return out

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """self o other."""
        if other.target != self.source:
            raise DomainError("Morphisms do not compose")
        return AlgebraMorphism(other.source, self.target, {i: self(v) for i, v in other.images.items()})

    def defects(self) -> List[Tuple[str, str]]:
        """Failures of being a unital *-isomorphism, as (property, witness)."""
        A = self.source
        out = []
        if self(A.one()) != self.target.one():
            out.append(("unital", "1"))
        for i, j in product(A.basis(), repeat=2):
            a, b = A.basis_element(i), A.basis_element(j)
            if self(a * b) != self(a) * self(b):
                out.append(("multiplicative", f"{A.basis_name(i)}, {A.basis_name(j)}"))
        for i in A.basis():
            a = A.basis_element(i)
            if self(a.star()) != self(a).star():
                out.append(("star", A.basis_name(i)))
        if A.dim != self.target.dim or complex_rank(
            self.target.dim, [v.vector(self.target.basis()) for v in self.images.values()]
        ) != self.target.dim:
            out.append(("bijective", A.name))
        return out

    def inverse(self) -> "AlgebraMorphism":
        B = self.target
        columns = [self.images[i].vector(B.basis()) for i in self.source.basis()]
        images = {}
        for b in B.basis():
            x = complex_solve(columns, B.basis_element(b).vector(B.basis()))
            if x is None:
                raise DomainError(f"{self!r} is not invertible")
            images[b] = self.source.element(dict(zip(self.source.basis(), x)))
        return AlgebraMorphism(B, self.source, images)

    def __repr__(self) -> str:
        return f"AlgebraMorphism({self.source.name} -> {self.target.name})"


class TwistedBimodule(Bimodule):
    """l(Phi): B as a (B, A)-bimodule with x . a = x Phi(a)."""

    def __init__(self, phi: AlgebraMorphism):
        self.phi = phi
        self.left = phi.target
        self.right = phi.source
        self._phi_inverse: Optional[AlgebraMorphism] = None

    @property
    def name(self) -> str:
        return f"Twisted({self.right.name} -> {self.left.name})"

    def basis(self):
        return self.left.basis()

    def index_key(self, x):
        return self.left.index_key(x)

    def basis_name(self, x):
        return self.left.basis_name(x)

    def format_index(self, x):
        return self.left.format_index(x)

    def left_basis(self, b, x):
        return self.left.mul_basis(b, x)

    def right_basis(self, x, a):
        return (self.left.basis_element(x) * self.phi.images[a]).coeffs()

    def right_inner_basis(self, x, y) -> AlgebraElement:
        if self._phi_inverse is None:
            self._phi_inverse = self.phi.inverse()
        B = self.left
        return self._phi_inverse(B.basis_element(x).star() * B.basis_element(y))

    def left_inner_basis(self, x, y) -> AlgebraElement:
        B = self.left
        return B.basis_element(x) * B.basis_element(y).star()


class ConjugateBimodule(Bimodule):
    """
    The conjugate (A, B)-bimodule of a (B, A)-bimodule E: a . conj(x) = conj(x . a*)
    and conj(x) . b = conj(b* . x), on the same basis with conjugated coefficients.
    """

    def __init__(self, base: Bimodule):
        if not base.finite:
            raise ModelError("Conjugates are supported for finite bimodules")
        self.base = base
        self.left = base.right
        self.right = base.left

    @property
    def name(self) -> str:
        return f"Conjugate({self.base.name})"

    def basis(self):
        return self.base.basis()

    def index_key(self, x):
        return self.base.index_key(x)

    def basis_name(self, x):
        return f"conj({self.base.basis_name(x)})"

    def format_index(self, x):
        return self.base.format_index(x)

    def conjugate(self, x: ModuleElement) -> ModuleElement:
        """conj(x) for x in the base bimodule."""
        return ModuleElement(self, {k: c.conjugate() for k, c in x.coeffs().items()})

    def unconjugate(self, x: ModuleElement) -> ModuleElement:
        return ModuleElement(self.base, {k: c.conjugate() for k, c in x.coeffs().items()})

    def left_basis(self, a, x):
        E = self.base
        moved = E.act_right(E.basis_element(x), self.left.basis_element(a).star())
        return {k: c.conjugate() for k, c in moved.coeffs().items()}

    def right_basis(self, x, b):
        E = self.base
        moved = E.act_left(self.right.basis_element(b).star(), E.basis_element(x))
        return {k: c.conjugate() for k, c in moved.coeffs().items()}


class TensorBimodule(Bimodule):
    """
    F (x)_B E for a (C, B)-bimodule F and a (B, A)-bimodule E: the span of pairs
    (f, e) modulo the balanced relations f . b (x) e = f (x) b . e. The basis is
    the set of pairs outside the pivot columns of the relation space, so
    reduction modulo the relations reads off coordinates canonically.
    """

    def __init__(self, F: Bimodule, E: Bimodule):
        if F.right != E.left:
            raise DomainError(f"Cannot tensor {F.name} with {E.name} over different algebras")
        if not (F.finite and E.finite):
            raise ModelError("Tensor products are supported for finite bimodules")
        self.F = F
        self.E = E
        self.left = F.left
        self.right = E.right
        self.pairs = [(f, e) for f in F.basis() for e in E.basis()]
        self._position = {p: k for k, p in enumerate(self.pairs)}
        relations = []
        for f, e in product(F.basis(), E.basis()):
            fe, ee = F.basis_element(f), E.basis_element(e)
            for b in F.right.basis():
                be = F.right.basis_element(b)
                r = self._ambient(F.act_right(fe, be), ee)
                s = self._ambient(fe, E.act_left(be, ee))
                v = [x - y for x, y in zip(r, s)]
                if any(not z.is_zero() for z in v):
                    relations.append(v)
        self.relations = relations
        self._span = complex_subspace(len(self.pairs), relations)
        pivots = set(self._span.pivots)
        self._basis = [p for k, p in enumerate(self.pairs) if 2 * k not in pivots]
        logger.debug(f"{self.name}: dimension {len(self._basis)} from {len(self.pairs)} pairs")

    @property
    def name(self) -> str:
        return f"({self.F.name} (x) {self.E.name})"

    def basis(self):
        return list(self._basis)

    def index_key(self, p):
        return self._position[p]

    def basis_name(self, p):
        return f"{self.F.basis_name(p[0])} (x) {self.E.basis_name(p[1])}"

    def format_index(self, p):
        return f"{self.F.format_index(p[0])}|{self.E.format_index(p[1])}"

    def _ambient(self, f: ModuleElement, e: ModuleElement) -> List[Scalar]:
        v = [Scalar(0)] * len(self.pairs)
        for x, c in f.items():
            for y, d in e.items():
                k = self._position[(x, y)]
                v[k] = v[k] + c * d
        return v

    def project(self, ambient: Sequence[Scalar]) -> ModuleElement:
        reduced = complexify(self._span.reduce(realify(ambient)))
        return ModuleElement(self, {p: reduced[self._position[p]] for p in self._basis})

    def tensor(self, f: ModuleElement, e: ModuleElement) -> ModuleElement:
        """The class of f (x) e."""
        return self.project(self._ambient(f, e))

    def left_basis(self, c, p):
        f, e = p
        moved = self.F.act_left(self.left.basis_element(c), self.F.basis_element(f))
        return self.tensor(moved, self.E.basis_element(e)).coeffs()

    def right_basis(self, p, a):
        f, e = p
        moved = self.E.act_right(self.E.basis_element(e), self.right.basis_element(a))
        return self.tensor(self.F.basis_element(f), moved).coeffs()


def tensor_over(F: Bimodule, E: Bimodule) -> TensorBimodule:
    return TensorBimodule(F, E)


def ell(phi: AlgebraMorphism) -> TwistedBimodule:
    """
    The bimodule l(Phi) of a *-isomorphism Phi: A -> B.

    Raises:
        DomainError: Phi is not a unital *-isomorphism.
    """
    defects = phi.defects()
    if defects:
        kind, witness = defects[0]
        raise DomainError(f"{phi!r} is not a *-isomorphism: {kind} fails on {witness}")
    return TwistedBimodule(phi)


def block_dimensions(E: Bimodule) -> List[List[int]]:
    """dim e_y E e_x for bimodules between FiniteFunctions models."""
    B, A = E.left, E.right
    if not isinstance(B, FiniteFunctions) or not isinstance(A, FiniteFunctions):
        raise ModelError("Block dimensions need FiniteFunctions on both sides")
    basis = E.basis()
    out = []
    for y in B.points:
        row = []
        for x in A.points:
            images = [
                E.act_right(E.act_left(B.basis_element(y), E.basis_element(v)), A.basis_element(x)).vector(basis)
                for v in basis
            ]
            row.append(complex_rank(len(basis), images))
        out.append(row)
    return out


class ModuleMap:
    """A linear map between bimodules with the same algebras, by basis images."""

    def __init__(self, source: Bimodule, target: Bimodule, images: Mapping[MIndex, ModuleElement]):
        self.source = source
        self.target = target
        self.images = {x: images.get(x, target.zero()) for x in source.basis()}

    def __call__(self, x: ModuleElement) -> ModuleElement:
        out = self.target.zero()
        for xi, c in x.items():
            out = out + self.images[xi] * c
        return out

    def matrix(self) -> List[List[Scalar]]:
        basis = self.target.basis()
        columns = [self.images[x].vector(basis) for x in self.source.basis()]
        return [[col[r] for col in columns] for r in range(len(basis))]

    def is_bijective(self) -> bool:
        if self.source.dim != self.target.dim:
            return False
        return not complex_determinant(self.matrix()).is_zero()

    def bimodule_defects(self) -> List[Tuple[str, str]]:
        out = []
        S, T = self.source, self.target
        for x in S.basis():
            xe = S.basis_element(x)
            for b in S.left.basis():
                be = S.left.basis_element(b)
                if self(S.act_left(be, xe)) != T.act_left(be, self(xe)):
                    out.append(("left", f"{S.left.basis_name(b)} . {S.basis_name(x)}"))
            for a in S.right.basis():
                ae = S.right.basis_element(a)
                if self(S.act_right(xe, ae)) != T.act_right(self(xe), ae):
                    out.append(("right", f"{S.basis_name(x)} . {S.right.basis_name(a)}"))
        return out

    def __repr__(self) -> str:
        return f"ModuleMap({self.source.name} -> {self.target.name})"


def find_intertwiner(E1: Bimodule, E2: Bimodule) -> Optional[ModuleMap]:
    """
    A bimodule isomorphism E1 -> E2, or None if there is none. The intertwiners
    form the exact kernel of a linear system in the matrix entries; an invertible
    member is searched along a curve through the kernel that meets one whenever
    the kernel contains an invertible map.
    """
    if E1.left != E2.left or E1.right != E2.right:
        raise DomainError(f"{E1.name} and {E2.name} are bimodules over different algebras")
    if not (E1.finite and E2.finite):
        raise ModelError("Intertwiners are computed between finite bimodules")
    b1, b2 = E1.basis(), E2.basis()
    if len(b1) != len(b2):
        return None
    n = len(b1)
    if n == 0:
        return ModuleMap(E1, E2, {})
    if isinstance(E1.left, FiniteFunctions) and isinstance(E1.right, FiniteFunctions):
        # semisimple on both sides: the blocks decide
        if block_dimensions(E1) != block_dimensions(E2):
            return None
    col = {x: k for k, x in enumerate(b1)}
    row = {x: k for k, x in enumerate(b2)}

    def unknown(eta, xi):
        return row[eta] * n + col[xi]

    rows: List[List[Scalar]] = []
    sides = [
        (E1.left, lambda e, g, z: e.act_left(g, z)),
        (E1.right, lambda e, g, z: e.act_right(z, g)),
    ]
    for alg, act in sides:
        for g in alg.basis():
            ge = alg.basis_element(g)
            for xi in b1:
                # T(g . xi) - g . T(xi) = 0, one equation per output coordinate
                moved = act(E1, ge, E1.basis_element(xi))
                images = {eta: act(E2, ge, E2.basis_element(eta)) for eta in b2}
                for kappa in b2:
                    equation = [Scalar(0)] * (n * n)
                    for zeta, c in moved.items():
                        equation[unknown(kappa, zeta)] = equation[unknown(kappa, zeta)] + c
                    for eta in b2:
                        c = images[eta].coefficient(kappa)
                        if not c.is_zero():
                            equation[unknown(eta, xi)] = equation[unknown(eta, xi)] - c
                    if any(not z.is_zero() for z in equation):
                        rows.append(equation)
    solutions = complex_kernel(n * n, rows)
    if not solutions:
        return None

    def as_matrix(v):
        return [[v[r * n + c] for c in range(n)] for r in range(n)]

    # det(sum_j c_j T_j) has degree <= n in each c_j: the substitution
    # c_j = t^((n+1)^j) keeps its monomials apart
    tries = n * (n + 1) ** (len(solutions) - 1) + 1
    for t in range(1, tries + 1):
        combined = [Scalar(0)] * (n * n)
        for j, v in enumerate(solutions):
            weight = Scalar(t ** ((n + 1) ** j))
            combined = [a + weight * b for a, b in zip(combined, v)]
        if not complex_determinant(as_matrix(combined)).is_zero():
            images = {
                xi: ModuleElement(E2, {eta: combined[unknown(eta, xi)] for eta in b2})
                for xi in b1
            }
            return ModuleMap(E1, E2, images)
    return None


def unit_isomorphism(E: Bimodule) -> ModuleMap:
    """E (x)_A A -> E, f (x) a -> f . a."""
    T = TensorBimodule(E, CanonicalBimodule(E.right))
    images = {
        (f, a): E.act_right(E.basis_element(f), E.right.basis_element(a))
        for f, a in T.basis()
    }
    iso = ModuleMap(T, E, images)
    _require_isomorphism(iso)
    return iso


def associator(G: Bimodule, F: Bimodule, E: Bimodule) -> ModuleMap:
    """(G (x) F) (x) E -> G (x) (F (x) E), (g (x) f) (x) e -> g (x) (f (x) e)."""
    GF = TensorBimodule(G, F)
    left = TensorBimodule(GF, E)
    FE = TensorBimodule(F, E)
    right = TensorBimodule(G, FE)
    images = {}
    for p, e in left.basis():
        g, f = p
        images[(p, e)] = right.tensor(
            G.basis_element(g), FE.tensor(F.basis_element(f), E.basis_element(e))
        )
    iso = ModuleMap(left, right, images)
    _require_isomorphism(iso)
    return iso


def _require_isomorphism(T: ModuleMap):
    defects = T.bimodule_defects()
    if defects:
        raise InconsistencyError(f"{T!r} is not a bimodule map: {defects[0]}")
    if not T.is_bijective():
        raise InconsistencyError(f"{T!r} is not bijective")
