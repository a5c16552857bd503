"""
The convolution algebra Hom(H, A): linear maps from a Hopf algebra to a model
algebra, stored by their values on the basis of H up to the truncation order, with
the product (a * b)(g) = a(g_(1)) b(g_(2)).
"""
from typing import Dict, List, Mapping

from hopfmorita.errors import DomainError

from hopfmorita.algebra.models import AlgebraElement, BasedStarAlgebra
from hopfmorita.hopf.base import HopfAlgebra, HopfElement, Key


class ConvolutionMap:
    """
    A linear map H -> A given on every basis key of H. Keys missing from `values`
    map to zero, so the value on 1_H is always recorded explicitly.
    """

    __slots__ = ("hopf", "target", "values")

    def __init__(self, hopf: HopfAlgebra, target: BasedStarAlgebra, values: Mapping[Key, AlgebraElement]):
        basis = hopf.basis()
        unknown = set(values) - set(basis)
        if unknown:
            raise DomainError(f"Values given on keys outside of the basis of H: {sorted(map(str, unknown))}")
        for v in values.values():
            if v.algebra != target:
                raise DomainError(f"A value lies in {v.algebra.name}, not in {target.name}")
        self.hopf = hopf
        self.target = target
        self.values: Dict[Key, AlgebraElement] = {g: values.get(g, target.zero()) for g in basis}

    def __call__(self, g: Key) -> AlgebraElement:
        return self.values[g]

    def evaluate(self, h: HopfElement) -> AlgebraElement:
        out = self.target.zero()
        for g, c in h.items():
            out = out + self.values[g] * c
        return out

    def compatible(self, other: "ConvolutionMap") -> bool:
        return self.hopf is other.hopf and self.target == other.target

    def __mul__(self, other: "ConvolutionMap") -> "ConvolutionMap":
        return convolve(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvolutionMap):
            return NotImplemented
        return self.compatible(other) and self.values == other.values

    def __hash__(self) -> int:
        return hash(tuple(sorted((str(g), v) for g, v in self.values.items())))

    def format(self) -> List[Dict]:
        """[{monomial, value}] for every basis key with a nonzero value."""
        return [
            {"monomial": self.hopf.format_key(g), "value": self.values[g].format()}
            for g in self.hopf.basis()
            if not self.values[g].is_zero()
        ]

    def __repr__(self) -> str:
        shown = ", ".join(
            f"{self.hopf.key_name(g)} -> {v}" for g, v in self.values.items() if not v.is_zero()
        )
        return f"ConvolutionMap({shown})"


def unit_map(hopf: HopfAlgebra, target: BasedStarAlgebra) -> ConvolutionMap:
    """The convolution unit e(g) = eps(g) 1_A."""
    one = target.one()
    return ConvolutionMap(hopf, target, {g: one * hopf.counit_basis(g) for g in hopf.basis()})


def convolve(a: ConvolutionMap, b: ConvolutionMap) -> ConvolutionMap:
    if not a.compatible(b):
        raise DomainError("Convolution needs maps on the same H with the same target algebra")
    H = a.hopf
    values = {}
    for g in H.basis():
        total = a.target.zero()
        for (g1, g2), c in H.coproduct_basis(g).items():
            total = total + a(g1) * b(g2) * c
        values[g] = total
    return ConvolutionMap(H, a.target, values)


def inverse_candidate(a: ConvolutionMap) -> ConvolutionMap:
    """g -> a(S(g*))*, the convolution inverse of a member of U(H, A)."""
    H = a.hopf
    return ConvolutionMap(
        H,
        a.target,
        {g: a.evaluate(H.basis_element(g).star().antipode()).star() for g in H.basis()},
    )
