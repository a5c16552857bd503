"""
Exact Gaussian rationals a + b*i. Every identity of the workbench is checked with
these - there is no floating point anywhere.

Text format: "p/q" or "p/q+r/s*i" with optional signs, whitespace-insensitive.
The imaginary unit may stand alone ("i", "-i") or carry a coefficient ("3/2*i").
"""
from fractions import Fraction
import re
from typing import Union

from hopfmorita.errors import ScalarParseError
from hopfmorita.util import format_fraction

_RATIONAL = r"[0-9]+(?:/[0-9]+)?"
_TERM = re.compile(
    rf"(?P<sign>[+-]?)(?:(?P<num>{_RATIONAL})(?P<imag>\*?i)?|(?P<unit>i))"
)

ScalarLike = Union["Scalar", Fraction, int, str]


class Scalar:
    """An exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[Fraction, int] = 0, im: Union[Fraction, int] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def of(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"Cannot convert {value!r} to Scalar")

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        compact = "".join(text.split())
        if not compact:
            raise ScalarParseError(f"Empty scalar text {text!r}")
        re_part = Fraction(0)
        im_part = Fraction(0)
        pos = 0
        while pos < len(compact):
            match = _TERM.match(compact, pos)
            if match is None or match.end() == pos:
                raise ScalarParseError(f"Cannot parse scalar {text!r} at {pos}")
            if pos > 0 and not match.group("sign"):
                raise ScalarParseError(f"Missing sign between terms in {text!r}")
            sign = -1 if match.group("sign") == "-" else 1
            if match.group("unit"):
                im_part += sign
            else:
                try:
                    value = Fraction(match.group("num"))
                except ZeroDivisionError:
                    raise ScalarParseError(f"Zero denominator in {text!r}")
                if match.group("imag"):
                    im_part += sign * value
                else:
                    re_part += sign * value
            pos = match.end()
        return cls(re_part, im_part)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        norm = self.abs2()
        if norm == 0:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar(self.re / norm, -self.im / norm)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return format_fraction(self.re)
        im = f"{format_fraction(abs(self.im))}*i"
        if self.re == 0:
            return im if self.im > 0 else f"-{im}"
        sign = "+" if self.im > 0 else "-"
        return f"{format_fraction(self.re)}{sign}{im}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _coerce(value) -> "Scalar":
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)  # noqa: E741
