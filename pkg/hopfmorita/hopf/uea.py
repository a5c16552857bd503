"""
The complexified universal enveloping algebra U(g) of a finite-dimensional Lie
algebra, in the PBW basis xi_0^{k_0} ... xi_{d-1}^{k_{d-1}} up to a truncation
order N.

Products are brought to PBW normal form by rewriting the leftmost inversion
xi_j xi_i (j > i) as xi_i xi_j + [xi_j, xi_i]. Straightening never raises the
degree, so a product overflows the truncation iff the concatenated word is longer
than N, and that is an error rather than a silent cut.
"""
from functools import lru_cache
from itertools import product
from math import comb
from typing import Dict, List, Tuple

from hopfmorita import config
from hopfmorita.errors import ModelError, TruncationOverflowError

from hopfmorita.algebra.lie import LieAlgebra
from hopfmorita.algebra.scalar import ONE, Scalar

from .base import HopfAlgebra

Monomial = Tuple[int, ...]
Word = Tuple[int, ...]


class EnvelopingAlgebra(HopfAlgebra):
    def __init__(self, lie: LieAlgebra, truncation: int = None):
        truncation = config.DEFAULT_TRUNCATION if truncation is None else truncation
        if truncation < 0:
            raise ModelError(f"Negative truncation order {truncation}")
        self.lie = lie
        self.dim = lie.dim
        self.truncation = truncation
        self._basis = sorted(_monomials(self.dim, truncation), key=self.key_order)
        self._normal_form = lru_cache(maxsize=None)(self._straighten)

    # PBW calculus -------------------------------------------------------------

    def word(self, m: Monomial) -> Word:
        return tuple(i for i, k in enumerate(m) for _ in range(k))

    def monomial(self, word: Word) -> Monomial:
        return tuple(word.count(i) for i in range(self.dim))

    def generator(self, i: int) -> Monomial:
        return tuple(int(k == i) for k in range(self.dim))

    def normal_form(self, word: Word) -> Dict[Monomial, Scalar]:
        if len(word) > self.truncation:
            raise TruncationOverflowError(len(word), self.truncation)
        return dict(self._normal_form(tuple(word)))

    def _straighten(self, word: Word) -> Tuple[Tuple[Monomial, Scalar], ...]:
        for p in range(len(word) - 1):
            j, i = word[p], word[p + 1]
            if j > i:
                break
        else:
            return ((self.monomial(word), ONE),)
        out: Dict[Monomial, Scalar] = {}
        head, tail = word[:p], word[p + 2 :]
        pieces = [(ONE, head + (i, j) + tail)]
        for k, c in enumerate(self.lie.bracket(j, i)):
            if not c.is_zero():
                pieces.append((c, head + (k,) + tail))
        for c, w in pieces:
            for m, v in self._normal_form(w):
                out[m] = out.get(m, Scalar(0)) + c * v
        return tuple((m, v) for m, v in out.items() if not v.is_zero())

    # Hopf structure -------------------------------------------------------------

    def basis(self) -> List[Monomial]:
        return list(self._basis)

    def key_order(self, m):
        return (sum(m), tuple(-k for k in m))

    def degree(self, m) -> int:
        return sum(m)

    @property
    def unit_key(self):
        return (0,) * self.dim

    def mul_basis(self, g, h):
        return self.normal_form(self.word(g) + self.word(h))

    def coproduct_basis(self, m):
        out = {}
        for j in product(*(range(k + 1) for k in m)):
            c = 1
            for k, jj in zip(m, j):
                c *= comb(k, jj)
            rest = tuple(k - jj for k, jj in zip(m, j))
            out[(tuple(j), rest)] = Scalar(c)
        return out

    def counit_basis(self, m):
        return ONE if not any(m) else Scalar(0)

    def antipode_basis(self, m):
        # S(xi) = -xi, extended as an antihomomorphism
        sign = Scalar((-1) ** sum(m))
        return {k: sign * v for k, v in self.normal_form(tuple(reversed(self.word(m)))).items()}

    def star_basis(self, m):
        # xi* = -xi on the real generators: same basis images as S
        return self.antipode_basis(m)

    def key_name(self, m) -> str:
        factors = []
        for i, k in enumerate(m):
            if k == 1:
                factors.append(f"xi_{i}")
            elif k > 1:
                factors.append(f"xi_{i}^{k}")
        return " ".join(factors) or "1"

    def format_key(self, m) -> str:
        return ",".join(str(k) for k in m)

    def parse_key(self, text: str) -> Monomial:
        try:
            m = tuple(int(t) for t in text.split(",")) if text.strip() else ()
        except ValueError:
            raise ModelError(f"Bad PBW exponent tuple {text!r}")
        if len(m) != self.dim or any(k < 0 for k in m):
            raise ModelError(f"PBW exponent tuple {text!r} does not fit dimension {self.dim}")
        if sum(m) > self.truncation:
            raise TruncationOverflowError(sum(m), self.truncation)
        return m

    def __repr__(self) -> str:
        return f"EnvelopingAlgebra(dim={self.dim}, truncation={self.truncation})"


def _monomials(dim: int, max_degree: int) -> List[Monomial]:
    if dim == 0:
        return [()]
    out = []
    for first in range(max_degree + 1):
        for rest in _monomials(dim - 1, max_degree - first):
            out.append((first,) + rest)
    return out


def uea_mul(a, b):
    """Product of two elements of a truncated enveloping algebra in PBW normal form."""
    return a * b


def coproduct(g):
    return g.coproduct()


def antipode(g):
    return g.antipode()


def counit(g):
    return g.counit()


def hopf_star(g):
    return g.star()
