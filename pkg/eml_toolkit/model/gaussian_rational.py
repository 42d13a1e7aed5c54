# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the GaussianRational class used for exact value annotations."""

# standard libraries
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Union

Rational = Union[int, Fraction]

# 3.14159265358979 < pi < 3.14159265358980
PI_LOWER: Fraction = Fraction(314159265358979, 10**14)
PI_UPPER: Fraction = Fraction(314159265358980, 10**14)


@dataclass(frozen=True)
class GaussianRational:
    """A complex number re + im*i with exact rational parts.

    Attributes:
        re: The real part.
        im: The imaginary part.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, value: Union["GaussianRational", Rational]) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(Fraction(value), Fraction(0))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        """Returns 1/self.

        Raises:
            ZeroDivisionError: If self is zero.
        """
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("GaussianRational zero has no inverse")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        return self * GaussianRational.of(other).inverse()

    def __pow__(self, exponent: int) -> "GaussianRational":
        if exponent < 0:
            return (self ** (-exponent)).inverse()
        result = GaussianRational(Fraction(1))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_negative_real(self) -> bool:
        return self.im == 0 and self.re < 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> Dict[str, str]:
        return {"re": str(self.re), "im": str(self.im)}


def below_pi(value: Fraction) -> bool:
    """Returns True if |value| < pi is certain; False if it is false or undecided here."""
    return abs(value) <= PI_LOWER


ZERO: GaussianRational = GaussianRational(Fraction(0))
ONE: GaussianRational = GaussianRational(Fraction(1))
I: GaussianRational = GaussianRational(Fraction(0), Fraction(1))
