"""
Common interface of the Hopf *-algebras acting on model algebras, their elements,
Sweedler expansions of coproducts, and the axiom report.
"""
from abc import ABC, abstractmethod
from itertools import product
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Tuple

from hopfmorita.errors import DomainError
from hopfmorita.report import CheckReport, Scope

from hopfmorita.algebra.scalar import ONE, Scalar, ScalarLike

Key = Hashable


class HopfAlgebra(ABC):
    """
    A Hopf *-algebra presented on a basis of keys. For enveloping algebras the
    basis is cut off at the truncation order; group algebras are finite.
    """

    truncation: Optional[int] = None

    @abstractmethod
    def basis(self) -> List[Key]:
        pass

    @abstractmethod
    def mul_basis(self, g: Key, h: Key) -> Dict[Key, Scalar]:
        pass

    @abstractmethod
    def coproduct_basis(self, g: Key) -> Dict[Tuple[Key, Key], Scalar]:
        pass

    @abstractmethod
    def counit_basis(self, g: Key) -> Scalar:
        pass

    @abstractmethod
    def antipode_basis(self, g: Key) -> Dict[Key, Scalar]:
        pass

    @abstractmethod
    def star_basis(self, g: Key) -> Dict[Key, Scalar]:
        pass

    @property
    @abstractmethod
    def unit_key(self) -> Key:
        pass

    @abstractmethod
    def degree(self, g: Key) -> int:
        pass

    @abstractmethod
    def key_name(self, g: Key) -> str:
        pass

    @abstractmethod
    def format_key(self, g: Key) -> str:
        pass

    @abstractmethod
    def parse_key(self, text: str) -> Key:
        pass

    def key_order(self, g: Key) -> Any:
        return g

    def fits(self, *keys: Key) -> bool:
        """True iff the product of the keys stays within the truncation order."""
        if self.truncation is None:
            return True
        return sum(self.degree(g) for g in keys) <= self.truncation

    def scope(self) -> Scope:
        return Scope(truncation=self.truncation)

    def element(self, coeffs: Mapping[Key, ScalarLike]) -> "HopfElement":
        return HopfElement(self, coeffs)

    def basis_element(self, g: Key) -> "HopfElement":
        return HopfElement(self, {g: ONE})

    def one(self) -> "HopfElement":
        return self.basis_element(self.unit_key)


class HopfElement:
    """An element of a HopfAlgebra in canonical sparse form."""

    __slots__ = ("hopf", "_coeffs")

    def __init__(self, hopf: HopfAlgebra, coeffs: Mapping[Key, ScalarLike]):
        self.hopf = hopf
        self._coeffs = {}
        for g, c in coeffs.items():
            c = Scalar.of(c)
            if not c.is_zero():
                self._coeffs[g] = c

    def items(self) -> List[Tuple[Key, Scalar]]:
        return sorted(self._coeffs.items(), key=lambda kv: self.hopf.key_order(kv[0]))

    def coefficient(self, g: Key) -> Scalar:
        return self._coeffs.get(g, Scalar(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def _combine(self, pieces: Iterable[Tuple[Scalar, Mapping[Key, Scalar]]]) -> "HopfElement":
        out: Dict[Key, Scalar] = {}
        for c, terms in pieces:
            for g, v in terms.items():
                out[g] = out.get(g, Scalar(0)) + c * v
        return HopfElement(self.hopf, out)

    def __add__(self, other: "HopfElement") -> "HopfElement":
        return self._combine([(ONE, self._coeffs), (ONE, other._coeffs)])

    def __sub__(self, other: "HopfElement") -> "HopfElement":
        return self._combine([(ONE, self._coeffs), (Scalar(-1), other._coeffs)])

    def __neg__(self) -> "HopfElement":
        return self._combine([(Scalar(-1), self._coeffs)])

    def scale(self, c: ScalarLike) -> "HopfElement":
        return self._combine([(Scalar.of(c), self._coeffs)])

    def __mul__(self, other) -> "HopfElement":
        if not isinstance(other, HopfElement):
            return self.scale(other)
        if other.hopf is not self.hopf:
            raise DomainError("Elements of different Hopf algebras")
        return self._combine(
            (a * b, self.hopf.mul_basis(g, h))
            for (g, a), (h, b) in product(self._coeffs.items(), other._coeffs.items())
        )

    def __rmul__(self, other) -> "HopfElement":
        return self.scale(other)

    def antipode(self) -> "HopfElement":
        return self._combine((c, self.hopf.antipode_basis(g)) for g, c in self._coeffs.items())

    def star(self) -> "HopfElement":
        return self._combine(
            (c.conjugate(), self.hopf.star_basis(g)) for g, c in self._coeffs.items()
        )

    def counit(self) -> Scalar:
        return sum((c * self.hopf.counit_basis(g) for g, c in self._coeffs.items()), Scalar(0))

    def coproduct(self) -> "SweedlerExpansion":
        out: Dict[Tuple[Key, Key], Scalar] = {}
        for g, c in self._coeffs.items():
            for pair, v in self.hopf.coproduct_basis(g).items():
                out[pair] = out.get(pair, Scalar(0)) + c * v
        return SweedlerExpansion(self.hopf, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HopfElement):
            return NotImplemented
        return self.hopf is other.hopf and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for g, c in self.items():
            name = self.hopf.key_name(g)
            terms.append(name if c == 1 else f"({c})*{name}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"HopfElement({self})"


class SweedlerExpansion:
    """Delta(g) = sum g_(1) (x) g_(2), stored on pairs of basis keys."""

    def __init__(self, hopf: HopfAlgebra, terms: Mapping[Tuple[Key, Key], Scalar]):
        self.hopf = hopf
        self.terms = {pair: c for pair, c in terms.items() if not c.is_zero()}

    def pairs(self) -> List[Tuple[HopfElement, HopfElement]]:
        """The expansion as a list of (g_(1), g_(2)) with the coefficient on the left leg."""
        return [
            (self.hopf.basis_element(g).scale(c), self.hopf.basis_element(h))
            for (g, h), c in sorted(
                self.terms.items(),
                key=lambda kv: (self.hopf.key_order(kv[0][0]), self.hopf.key_order(kv[0][1])),
            )
        ]

    def opposite(self) -> "SweedlerExpansion":
        return SweedlerExpansion(self.hopf, {(h, g): c for (g, h), c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SweedlerExpansion):
            return NotImplemented
        return self.hopf is other.hopf and self.terms == other.terms

    def __str__(self) -> str:
        return " + ".join(
            f"({c})*{self.hopf.key_name(g)}(x){self.hopf.key_name(h)}"
            for (g, h), c in sorted(self.terms.items(), key=str)
        ) or "0"


def _tensor_map(terms: Mapping[Tuple[Key, ...], Scalar], slot: int, f) -> Dict[Tuple[Key, ...], Scalar]:
    """Applies a basis map f: key -> {key tuple: scalar} to one slot of a tensor."""
    out: Dict[Tuple[Key, ...], Scalar] = {}
    for keys, c in terms.items():
        for image, v in f(keys[slot]).items():
            new = keys[:slot] + image + keys[slot + 1 :]
            out[new] = out.get(new, Scalar(0)) + c * v
    return {k: v for k, v in out.items() if not v.is_zero()}


def hopf_axiom_report(H: HopfAlgebra) -> CheckReport:
    """
    Checks the Hopf *-algebra axioms on all basis keys (products only where they
    stay within the truncation order):

      - coassociativity, counit identities and cocommutativity,
      - antipode identities m(S (x) id)Delta = eps 1 = m(id (x) S)Delta,
      - associativity of the product, multiplicativity of Delta,
      - (gh)* = h* g*, Delta and eps *-compatible, S(S(g*)*) = g.
    """
    report = CheckReport(name="hopf-axioms", scope=H.scope())
    keys = H.basis()
    name = H.key_name

    def delta(g):
        return {pair: c for pair, c in H.coproduct_basis(g).items()}

    def element(terms):
        return H.element(terms)

    for g in keys:
        dg = delta(g)
        left = _tensor_map(dg, 0, delta)
        right = _tensor_map(dg, 1, delta)
        if left != right:
            report.fail("coassociativity", g=name(g))
        for slot in (0, 1):
            reduced: Dict[Key, Scalar] = {}
            for pair, c in dg.items():
                other = pair[1 - slot]
                reduced[other] = reduced.get(other, Scalar(0)) + c * H.counit_basis(pair[slot])
            if element(reduced) != H.basis_element(g):
                report.fail("counit", g=name(g), slot=slot)
        if SweedlerExpansion(H, dg).opposite() != SweedlerExpansion(H, dg):
            report.fail("cocommutativity", g=name(g))
        expected = H.one().scale(H.counit_basis(g))
        s_left = H.element({})
        s_right = H.element({})
        for (a, b), c in dg.items():
            s_left = s_left + H.basis_element(a).antipode() * H.basis_element(b) * c
            s_right = s_right + H.basis_element(a) * H.basis_element(b).antipode() * c
        if s_left != expected:
            report.fail("antipode", g=name(g), side="left", value=s_left)
        if s_right != expected:
            report.fail("antipode", g=name(g), side="right", value=s_right)

        basis_g = H.basis_element(g)
        if basis_g.star().antipode().star().antipode() != basis_g:
            report.fail("antipode-star", g=name(g))
        if basis_g.star().counit() != basis_g.counit().conjugate():
            report.fail("counit-star", g=name(g))
        star_delta = basis_g.star().coproduct()
        delta_star: Dict[Tuple[Key, Key], Scalar] = {}
        for (a, b), c in dg.items():
            for a2, ca in H.star_basis(a).items():
                for b2, cb in H.star_basis(b).items():
                    delta_star[(a2, b2)] = delta_star.get((a2, b2), Scalar(0)) + c.conjugate() * ca * cb
        if star_delta != SweedlerExpansion(H, delta_star):
            report.fail("coproduct-star", g=name(g))

    for g, h in product(keys, repeat=2):
        if not H.fits(g, h):
            continue
        a, b = H.basis_element(g), H.basis_element(h)
        ab = a * b
        if ab.star() != b.star() * a.star():
            report.fail("product-star", g=name(g), h=name(h))
        # Delta(gh) = Delta(g) Delta(h) in H (x) H
        lhs = ab.coproduct()
        rhs: Dict[Tuple[Key, Key], Scalar] = {}
        for (g1, g2), c in H.coproduct_basis(g).items():
            for (h1, h2), d in H.coproduct_basis(h).items():
                for k1, v1 in H.mul_basis(g1, h1).items():
                    for k2, v2 in H.mul_basis(g2, h2).items():
                        rhs[(k1, k2)] = rhs.get((k1, k2), Scalar(0)) + c * d * v1 * v2
        if lhs != SweedlerExpansion(H, rhs):
            report.fail("coproduct-multiplicative", g=name(g), h=name(h))

    for g, h, k in product(keys, repeat=3):
        if not H.fits(g, h, k):
            continue
        a, b, c = H.basis_element(g), H.basis_element(h), H.basis_element(k)
        if (a * b) * c != a * (b * c):
            report.fail("associativity", g=name(g), h=name(h), k=name(k), lhs=(a * b) * c, rhs=a * (b * c))
    return report
