"""
Exact linear algebra over the rationals, on top of sympy's DomainMatrix.

Complex (Gaussian rational) problems are realified: a complex vector
(z_0, ..., z_{n-1}) becomes (re z_0, im z_0, re z_1, im z_1, ...). A complex
subspace realifies to a subspace closed under multiplication by i, and the rref
of such a subspace has its pivots in complete (re, im) pairs, so complex quotient
bases can be read off the rational rref directly.
"""
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as _invariant_factors

from .scalar import Scalar

Vector = List[Fraction]


def to_qq(q: Fraction):
    return QQ(q.numerator, q.denominator)


def from_qq(x) -> Fraction:
    return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """
    Returns the nonzero rows of the reduced row echelon form and the pivot columns.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows or ncols == 0:
        return [], ()
    matrix = DomainMatrix(
        [[to_qq(Fraction(v)) for v in row] for row in rows], (len(rows), ncols), QQ
    )
    reduced, pivots = matrix.rref()
    dense = reduced.to_list()
    return [[from_qq(v) for v in dense[i]] for i in range(len(pivots))], tuple(pivots)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def kernel(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[Vector]:
    """Basis of {v : M v = 0} where M has the given rows."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            v[pivot] = -row[free]
        basis.append(v)
    return basis


class Subspace:
    """
    A rational subspace kept in reduced row echelon form. Reduction against it is
    canonical: two vectors are congruent modulo the subspace iff their reductions
    agree.
    """

    def __init__(self, ncols: int, rows: Sequence[Sequence[Fraction]] = ()):
        self.ncols = ncols
        self.rows, self.pivots = rref(rows, ncols)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        v = list(v)
        for row, pivot in zip(self.rows, self.pivots):
            c = v[pivot]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[Fraction]) -> Optional[Vector]:
        """Coordinates of v in the rref basis, or None if v is not in the span."""
        if not self.contains(v):
            return None
        return [v[p] for p in self.pivots]

    def extended(self, more: Sequence[Sequence[Fraction]]) -> "Subspace":
        return Subspace(self.ncols, list(self.rows) + [list(r) for r in more])


def solve(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[Vector]:
    """
    Finds x with sum_j x_j columns[j] = target, or None. Free variables are zero.
    """
    n = len(columns)
    m = len(target)
    if n == 0:
        return [] if not any(target) else None
    augmented = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    reduced, pivots = rref(augmented, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pivot in zip(reduced, pivots):
        x[pivot] = row[n]
    return x


def realify(values: Sequence[Scalar]) -> Vector:
    out = []
    for z in values:
        out.append(z.re)
        out.append(z.im)
    return out


def complexify(v: Sequence[Fraction]) -> List[Scalar]:
    return [Scalar(v[2 * k], v[2 * k + 1]) for k in range(len(v) // 2)]


def times_i(v: Sequence[Fraction]) -> Vector:
    """Multiplication by i on a realified vector."""
    out = []
    for k in range(len(v) // 2):
        out.append(-v[2 * k + 1])
        out.append(v[2 * k])
    return out


def complex_subspace(ncomplex: int, vectors: Sequence[Sequence[Scalar]]) -> Subspace:
    """The realified complex span of the given complex vectors."""
    rows = []
    for z in vectors:
        v = realify(z)
        rows.append(v)
        rows.append(times_i(v))
    return Subspace(2 * ncomplex, rows)


def complex_rank(ncomplex: int, vectors: Sequence[Sequence[Scalar]]) -> int:
    return complex_subspace(ncomplex, vectors).dim // 2


def complex_kernel(ncomplex_in: int, rows: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    """
    Complex basis of the kernel of a complex matrix given by its rows.
    """
    real_rows = []
    for row in rows:
        # (a + ib)(x + iy) = (ax - by) + i(bx + ay)
        re_row, im_row = [], []
        for z in row:
            re_row += [z.re, -z.im]
            im_row += [z.im, z.re]
        real_rows.append(re_row)
        real_rows.append(im_row)
    chosen: List[List[Scalar]] = []
    span = Subspace(2 * ncomplex_in)
    for v in kernel(real_rows, 2 * ncomplex_in):
        if span.contains(v):
            continue
        chosen.append(complexify(v))
        span = span.extended([v, times_i(v)])
    return chosen


def invariant_factors(rows: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero invariant factors of an integer matrix (Smith normal form diagonal)."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return []
    matrix = DomainMatrix(
        [[ZZ(int(v)) for v in row] for row in rows], (len(rows), len(rows[0])), ZZ
    )
    return [abs(int(f)) for f in _invariant_factors(matrix) if f != 0]


class IntegerLattice:
    """
    A lattice in Q^n spanned by finitely many rational vectors, kept as an integer
    row echelon basis after scaling by a common denominator.
    """

    def __init__(self, ncols: int, generators: Sequence[Sequence[Fraction]]):
        self.ncols = ncols
        generators = [list(g) for g in generators]
        denominators = [v.denominator for g in generators for v in g]
        self.scale = _lcm_all(denominators)
        rows = [[int(v * self.scale) for v in g] for g in generators]
        self.basis = _integer_echelon(rows, ncols)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Fraction]) -> bool:
        scaled = [Fraction(x) * self.scale for x in v]
        if any(x.denominator != 1 for x in scaled):
            return False
        w = [int(x) for x in scaled]
        for row in self.basis:
            pivot = next(k for k, x in enumerate(row) if x)
            if w[pivot] % row[pivot]:
                return False
            c = w[pivot] // row[pivot]
            w = [a - c * b for a, b in zip(w, row)]
        return not any(w)

    def coefficients(self, generators: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Optional[List[int]]:
        """
        Integer coefficients z with sum z_k generators[k] = v, or None. Searches
        the rational solution space and returns the first integral point found by
        the echelon reduction of the augmented system.
        """
        if not self.contains(v):
            return None
        k = len(generators)
        # Columns: generators followed by -v, integer echelon on the transposed
        # system keeps track of the combination.
        rows = []
        for j in range(k):
            rows.append([int(x * self.scale) for x in generators[j]] + [1 if t == j else 0 for t in range(k)])
        target = [int(Fraction(x) * self.scale) for x in v] + [0] * k
        echelon = _integer_echelon(rows, self.ncols + k, stop=self.ncols)
        w = list(target)
        combo = [0] * k
        for row in echelon:
            pivot = next((c for c, x in enumerate(row[: self.ncols]) if x), None)
            if pivot is None:
                continue
            c = w[pivot] // row[pivot]
            w = [a - c * b for a, b in zip(w, row)]
            combo = [a + c * b for a, b in zip(combo, row[self.ncols:])]
        if any(w[: self.ncols]):
            return None
        return combo


def _lcm_all(values: Sequence[int]) -> int:
    result = 1
    for v in values:
        result = result * v // gcd(result, v)
    return result


def _integer_echelon(rows: List[List[int]], ncols: int, stop: Optional[int] = None) -> List[List[int]]:
    """
    Row echelon form over the integers by repeated gcd (euclidean) row steps.
    Only the first `stop` columns are used as pivot columns.
    """
    rows = [list(r) for r in rows if any(r)]
    stop = ncols if stop is None else stop
    echelon = []
    for col in range(stop):
        active = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head = active[0]
            reduced = [head]
            for r in active[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                if r[col] != 0:
                    reduced.append(r)
                elif any(r):
                    rest.append(r)
            active = reduced
        if active:
            head = active[0]
            if head[col] < 0:
                head = [-a for a in head]
            echelon.append(head)
        rows = rest
    return echelon


def _to_qq_i(z: Scalar):
    return QQ_I(to_qq(z.re), to_qq(z.im))


def is_hermitian_matrix(matrix: Sequence[Sequence[Scalar]]) -> bool:
    n = len(matrix)
    return all(matrix[i][j] == matrix[j][i].conjugate() for i in range(n) for j in range(n))


def is_positive_semidefinite(matrix: Sequence[Sequence[Scalar]]) -> bool:
    """
    Exact PSD test for a Hermitian matrix over the Gaussian rationals, by an LDL*
    elimination with diagonal pivoting. A negative diagonal entry of a Schur
    complement refutes PSD, and a Schur complement with zero diagonal is PSD iff
    it vanishes. Non-Hermitian input is not PSD.
    """
    if not is_hermitian_matrix(matrix):
        return False
    rest = [list(row) for row in matrix]
    while rest:
        diagonal = [rest[i][i].re for i in range(len(rest))]
        if any(d < 0 for d in diagonal):
            return False
        p = max(range(len(rest)), key=lambda i: diagonal[i])
        pivot = rest[p][p]
        if pivot.is_zero():
            return all(z.is_zero() for row in rest for z in row)
        others = [i for i in range(len(rest)) if i != p]
        rest = [[rest[i][j] - rest[i][p] * rest[p][j] / pivot for j in others] for i in others]
    return True


def complex_determinant(matrix: Sequence[Sequence[Scalar]]) -> Scalar:
    n = len(matrix)
    if n == 0:
        return Scalar(1)
    det = DomainMatrix(
        [[_to_qq_i(z) for z in row] for row in matrix], (n, n), QQ_I
    ).det()
    return Scalar(from_qq(det.x), from_qq(det.y))


def complex_solve(columns: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> Optional[List[Scalar]]:
    """Finds complex x with sum_j x_j columns[j] = target, or None."""
    real_columns = []
    for column in columns:
        v = realify(column)
        real_columns.append(v)
        real_columns.append(times_i(v))
    x = solve(real_columns, realify(target))
    if x is None:
        return None
    return complexify(x)
