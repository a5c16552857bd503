"""
Chevalley-Eilenberg cochains of a Lie algebra in degrees 0, 1 and 2, with
coefficients in the anti-Hermitian central part of a module algebra, and the
exact computation of Z^1, B^1 and H^1.

The coefficient space is a rational vector space with the distinguished basis
{i*h : h in the canonical Hermitian central basis}. A 1-cochain of a Lie algebra
of dimension d is stored by its coordinates in C^1 = C^0 x ... x C^0 (d blocks).
"""
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

from loguru import logger
from pydantic import BaseModel

from hopfmorita import config
from hopfmorita.errors import DomainError, InconsistencyError, ModelError
from hopfmorita.report import Scope

from hopfmorita.algebra.lie import LieAction
from hopfmorita.algebra.linalg import Subspace, kernel, realify, solve
from hopfmorita.algebra.models import AlgebraElement, BasedStarAlgebra
from hopfmorita.algebra.structure import anti_hermitian_central_basis

Vector = List[Fraction]


def lie_action_of(action) -> LieAction:
    """The underlying Lie action of a LieAction or a LieHopfAction."""
    if isinstance(action, LieAction):
        return action
    inner = getattr(action, "lie_action", None)
    if isinstance(inner, LieAction):
        return inner
    raise DomainError("Chevalley-Eilenberg cochains need an action of a Lie algebra")


class CECochain:
    """
    A cochain of degree 0, 1 or 2. Degree 0 holds one element, degree 1 a value
    per generator index, degree 2 a value per pair i < j; the value on (j, i) is
    the negative and on (i, i) zero.
    """

    __slots__ = ("degree", "algebra", "values")

    def __init__(self, degree: int, algebra: BasedStarAlgebra, values):
        if degree == 0:
            if not isinstance(values, AlgebraElement):
                raise DomainError("A 0-cochain is a single algebra element")
            values = {(): values}
        elif degree == 1:
            values = {(i,): v for i, v in values.items()}
        elif degree == 2:
            values = dict(values)
            for (i, j) in values:
                if not i < j:
                    raise DomainError(f"2-cochains are given on pairs i < j, got ({i}, {j})")
        else:
            raise DomainError(f"Cochains of degree {degree} are not supported")
        for v in values.values():
            if v.algebra != algebra:
                raise DomainError(f"A cochain value lies in {v.algebra.name}, not in {algebra.name}")
        self.degree = degree
        self.algebra = algebra
        self.values: Dict[Tuple[int, ...], AlgebraElement] = {
            k: v for k, v in values.items() if not v.is_zero()
        }

    @classmethod
    def zero(cls, degree: int, algebra: BasedStarAlgebra) -> "CECochain":
        return cls(degree, algebra, algebra.zero() if degree == 0 else {})

    @property
    def element(self) -> AlgebraElement:
        if self.degree != 0:
            raise DomainError("Only 0-cochains are a single element")
        return self(())

    def __call__(self, *args) -> AlgebraElement:
        if len(args) == 1 and isinstance(args[0], tuple):
            args = args[0]
        if self.degree == 2:
            i, j = args
            if i == j:
                return self.algebra.zero()
            if i > j:
                return -self.values.get((j, i), self.algebra.zero())
        return self.values.get(tuple(args), self.algebra.zero())

    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: "CECochain") -> "CECochain":
        if other.degree != self.degree or other.algebra != self.algebra:
            raise DomainError("Cochains of different degrees or algebras")
        keys = set(self.values) | set(other.values)
        return CECochain._raw(self.degree, self.algebra, {k: self(k) + other(k) for k in keys})

    def __neg__(self) -> "CECochain":
        return CECochain._raw(self.degree, self.algebra, {k: -v for k, v in self.values.items()})

    def __sub__(self, other: "CECochain") -> "CECochain":
        return self + (-other)

    def scale(self, c) -> "CECochain":
        return CECochain._raw(self.degree, self.algebra, {k: v * c for k, v in self.values.items()})

    @classmethod
    def _raw(cls, degree, algebra, values) -> "CECochain":
        out = cls.__new__(cls)
        out.degree = degree
        out.algebra = algebra
        out.values = {k: v for k, v in values.items() if not v.is_zero()}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CECochain):
            return NotImplemented
        return self.degree == other.degree and self.algebra == other.algebra and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.values.items())))

    def format(self) -> Dict[str, Dict[str, str]]:
        """Values keyed "xi_i" (degree 1), "xi_i,xi_j" (degree 2) or "" (degree 0)."""
        return {
            ",".join(f"xi_{i}" for i in k): v.format()
            for k, v in sorted(self.values.items())
        }

    def __repr__(self) -> str:
        shown = ", ".join(f"{','.join(f'xi_{i}' for i in k)}: {v}" for k, v in sorted(self.values.items()))
        return f"CECochain[{self.degree}]({shown})"


class CoefficientSpace:
    """
    The anti-Hermitian central part of a model algebra, within the mode window on
    the Laurent model, as a rational vector space with a canonical basis.
    """

    def __init__(self, algebra: BasedStarAlgebra, window: Optional[int] = None):
        if not algebra.finite:
            window = config.DEFAULT_WINDOW if window is None else window
            if window < 0:
                raise DomainError(f"Empty mode window |k| <= {window}")
        self.algebra = algebra
        self.window = window if not algebra.finite else None
        self.indices = algebra.basis() if algebra.finite else algebra.window(window)
        if not self.indices:
            raise DomainError(f"Empty coefficient window for {algebra.name}")
        self.basis: List[AlgebraElement] = anti_hermitian_central_basis(algebra, self.window)
        self._columns = [realify(b.vector(self.indices)) for b in self.basis]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, a: AlgebraElement) -> Optional[Vector]:
        """Rational coordinates of a in the basis, or None if a is outside the space."""
        try:
            target = realify(a.vector(self.indices))
        except ModelError:
            return None
        return solve(self._columns, target)

    def contains(self, a: AlgebraElement) -> bool:
        return self.coordinates(a) is not None

    def element(self, coords: Sequence[Fraction]) -> AlgebraElement:
        out = self.algebra.zero()
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b * Fraction(c)
        return out

    def describe(self) -> str:
        where = f" on |k| <= {self.window}" if self.window is not None else ""
        return f"anti-Hermitian center of {self.algebra.name}{where} (dim {self.dim})"


def ce_d0(a: CECochain, action) -> CECochain:
    """(d0 a)(xi_i) = D_i a."""
    lie_action = lie_action_of(action)
    element = a.element
    return CECochain(
        1,
        a.algebra,
        {i: lie_action.apply(i, element) for i in range(lie_action.lie.dim)},
    )


def ce_d1(alpha: CECochain, action) -> CECochain:
    """(d1 alpha)(xi_i, xi_j) = D_i alpha(xi_j) - D_j alpha(xi_i) - alpha([xi_i, xi_j])."""
    if alpha.degree != 1:
        raise DomainError("ce_d1 needs a 1-cochain")
    lie_action = lie_action_of(action)
    lie = lie_action.lie
    values = {}
    for i in range(lie.dim):
        for j in range(i + 1, lie.dim):
            value = lie_action.apply(i, alpha(j)) - lie_action.apply(j, alpha(i))
            for k, c in enumerate(lie.bracket(i, j)):
                if not c.is_zero():
                    value = value - alpha(k) * c
            values[(i, j)] = value
    return CECochain(2, alpha.algebra, values)


def cochain_from_mapping(algebra: BasedStarAlgebra, values: Mapping[int, Mapping[str, str]]) -> CECochain:
    """A 1-cochain from generator index -> parsed element text."""
    return CECochain(1, algebra, {int(i): algebra.parse_element(v) for i, v in values.items()})


def _flatten(cochain: CECochain) -> Dict[Hashable, Fraction]:
    out = {}
    alg = cochain.algebra
    for k, v in cochain.values.items():
        for i, c in v.items():
            key = (k, alg.index_key(i))
            if c.re:
                out[key + (0,)] = c.re
            if c.im:
                out[key + (1,)] = c.im
    return out


def _dense(flat: Sequence[Dict[Hashable, Fraction]]) -> Tuple[List[Vector], int]:
    """Column vectors of a common coordinate system spanned by all keys."""
    keys = sorted({k for f in flat for k in f})
    position = {k: n for n, k in enumerate(keys)}
    vectors = []
    for f in flat:
        v = [Fraction(0)] * len(keys)
        for k, c in f.items():
            v[position[k]] = c
        vectors.append(v)
    return vectors, len(keys)


class CohomologySummary(BaseModel):
    """JSON form of a CohomologyResult: dimensions and representative cochains."""

    coefficients: str
    coefficient_basis: List[Dict[str, str]] = []
    z1_dim: int
    b1_dim: int
    h1_dim: int
    h1_representatives: List[Dict[str, Dict[str, str]]] = []
    b1_basis: List[Dict[str, Dict[str, str]]] = []
    b1_preimages: List[Dict[str, str]] = []
    scope: Scope = Scope()


class CohomologyResult:
    """
    Z^1, B^1 and H^1 with coefficients in a CoefficientSpace. Vectors are
    coordinates in C^1: block i holds the coordinates of alpha(xi_i).
    Representatives of H^1 are reduced modulo B^1, so a representative is zero
    modulo B^1 only if its class is trivial.
    """

    def __init__(self, action: LieAction, space: CoefficientSpace):
        self.action = action
        self.space = space
        self.lie_dim = action.lie.dim
        self.dim_c1 = space.dim * self.lie_dim
        self.z1: Subspace = Subspace(self.dim_c1)
        self.b1: Subspace = Subspace(self.dim_c1)
        self.b1_preimages: List[CECochain] = []
        self.representatives: List[Vector] = []

    # -- coordinates

    def cochain(self, coords: Sequence[Fraction]) -> CECochain:
        m = self.space.dim
        return CECochain(
            1,
            self.space.algebra,
            {i: self.space.element(coords[i * m:(i + 1) * m]) for i in range(self.lie_dim)},
        )

    def coordinates(self, alpha: CECochain) -> Optional[Vector]:
        """C^1 coordinates of a 1-cochain, or None if a value leaves the coefficient space."""
        out: Vector = []
        for i in range(self.lie_dim):
            c = self.space.coordinates(alpha(i))
            if c is None:
                return None
            out += c
        return out

    # -- classes

    @property
    def z1_basis(self) -> List[CECochain]:
        return [self.cochain(r) for r in self.z1.rows]

    @property
    def b1_basis(self) -> List[CECochain]:
        return [self.cochain(r) for r in self.b1.rows]

    @property
    def h1_basis(self) -> List[CECochain]:
        return [self.cochain(r) for r in self.representatives]

    @property
    def h1_dim(self) -> int:
        return self.z1.dim - self.b1.dim

    def h1_coordinates(self, alpha: CECochain) -> Vector:
        """
        Rational coordinates of the class of a cocycle in the representative basis.

        Raises:
            DomainError: alpha is not a cocycle with values in the coefficient space.
        """
        v = self.coordinates(alpha)
        if v is None or not self.z1.contains(v):
            raise DomainError(f"{alpha} is not a cocycle in {self.space.describe()}")
        reduced = self.b1.reduce(v)
        coords = solve(self.representatives, reduced)
        if coords is None:
            raise InconsistencyError(f"The class of {alpha} is not spanned by the H^1 representatives")
        return coords

    def is_coboundary(self, alpha: CECochain) -> bool:
        v = self.coordinates(alpha)
        return v is not None and self.b1.contains(v)

    def coboundary_preimage(self, alpha: CECochain) -> Optional[CECochain]:
        """A 0-cochain a with d0 a = alpha, or None if alpha is not a coboundary."""
        v = self.coordinates(alpha)
        if v is None or not self.b1.contains(v):
            return None
        coords = self.b1.coordinates(v)
        out = CECochain.zero(0, self.space.algebra)
        for c, pre in zip(coords, self.b1_preimages):
            out = out + pre.scale(c)
        return out

    def summary(self) -> CohomologySummary:
        return CohomologySummary(
            coefficients=self.space.describe(),
            coefficient_basis=[b.format() for b in self.space.basis],
            z1_dim=self.z1.dim,
            b1_dim=self.b1.dim,
            h1_dim=self.h1_dim,
            h1_representatives=[c.format() for c in self.h1_basis],
            b1_basis=[c.format() for c in self.b1_basis],
            b1_preimages=[p.element.format() for p in self.b1_preimages],
            scope=Scope(window=self.space.window),
        )


def h1(action, alg: Optional[BasedStarAlgebra] = None, window: Optional[int] = None) -> CohomologyResult:
    """
    Exact Z^1, B^1 and H^1 of the Lie algebra with coefficients in the
    anti-Hermitian central part of the algebra, restricted to the mode window on
    the Laurent model.

    B^1 is d0(C^0) intersected with C^1: on a window that the action does not
    preserve, coboundaries leaving the window are dropped. Every B^1 basis vector
    carries an explicit 0-cochain preimage.

    Raises:
        DomainError: empty window, or `alg` is not the algebra acted on.
        InconsistencyError: a coboundary fails the cocycle condition.
    """
    lie_action = lie_action_of(action)
    alg = lie_action.algebra if alg is None else alg
    if alg != lie_action.algebra:
        raise DomainError(f"The action is on {lie_action.algebra.name}, not on {alg.name}")
    space = CoefficientSpace(alg, window)
    result = CohomologyResult(lie_action, space)
    m, d = space.dim, lie_action.lie.dim

    # Z^1: kernel of d1 on the C^1 coordinate basis
    unit_cochains = []
    for n in range(result.dim_c1):
        coords = [Fraction(0)] * result.dim_c1
        coords[n] = Fraction(1)
        unit_cochains.append(result.cochain(coords))
    images, nrows = _dense([_flatten(ce_d1(c, lie_action)) for c in unit_cochains])
    rows = [[images[n][r] for n in range(result.dim_c1)] for r in range(nrows)]
    result.z1 = Subspace(result.dim_c1, kernel(rows, result.dim_c1))

    # B^1: combinations t of the C^0 basis with d0(t) inside C^1
    zero_cochains = [CECochain(0, alg, b) for b in space.basis]
    d0_images = [ce_d0(a, lie_action) for a in zero_cochains]
    inside: List[Optional[Vector]] = [result.coordinates(c) for c in d0_images]
    if all(v is not None for v in inside):
        combos = _identity(m)
    else:
        combos = _combinations_inside(result, d0_images)
    image_vectors = []
    preimage_cochains = []
    for t in combos:
        pre = CECochain.zero(0, alg)
        for c, a in zip(t, zero_cochains):
            if c:
                pre = pre + a.scale(c)
        image = ce_d0(pre, lie_action)
        coords = result.coordinates(image)
        if coords is None:
            raise InconsistencyError(f"d0 of {pre} left the coefficient space")
        image_vectors.append(coords)
        preimage_cochains.append(pre)
    result.b1 = Subspace(result.dim_c1, image_vectors)
    for row in result.b1.rows:
        weights = solve(image_vectors, row)
        pre = CECochain.zero(0, alg)
        for c, p in zip(weights, preimage_cochains):
            if c:
                pre = pre + p.scale(c)
        result.b1_preimages.append(pre)
        if not result.z1.contains(row):
            raise InconsistencyError(f"The coboundary {result.cochain(row)} is not a cocycle")

    reduced = [result.b1.reduce(r) for r in result.z1.rows]
    result.representatives = Subspace(result.dim_c1, reduced).rows
    logger.debug(
        f"H^1 over {space.describe()}, dim g = {d}: z1={result.z1.dim}, b1={result.b1.dim},"
        f" h1={result.h1_dim}"
    )
    return result


def _identity(n: int) -> List[Vector]:
    return [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]


def _combinations_inside(result: CohomologyResult, images: Sequence[CECochain]) -> List[Vector]:
    """Coefficient vectors t with sum t_k images[k] inside C^1."""
    space = result.space
    flat = [_flatten(c) for c in images]
    # the C^1 subspace in the same ambient coordinates
    c1_flat = [_flatten(c) for c in (result.cochain(r) for r in _identity(result.dim_c1))]
    vectors, n = _dense(flat + c1_flat)
    inside = Subspace(n, vectors[len(flat):])
    remainders = [inside.reduce(v) for v in vectors[: len(flat)]]
    rows = [[r[k] for r in remainders] for k in range(n)]
    logger.debug(f"Coboundaries leave the window of {space.describe()}; intersecting")
    return kernel(rows, len(images))
