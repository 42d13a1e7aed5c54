# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the Dyadic class, exact numbers of the form mantissa * 2^exponent."""

# standard libraries
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
import math
from typing import Tuple, Union

# 3rd party libraries
from mpmath.libmp import fzero, from_man_exp

# mpmath's raw float representation (sign, mantissa, exponent, bitcount)
MpfTuple = Tuple[int, int, int, int]


def _canonical(mantissa: int, exponent: int) -> Tuple[int, int]:
    if mantissa == 0:
        return 0, 0
    # strip trailing zero bits so that the mantissa is odd
    shift = (mantissa & -mantissa).bit_length() - 1
    return mantissa >> shift, exponent + shift


@total_ordering
@dataclass(frozen=True, init=False)
class Dyadic:
    """An exact dyadic rational mantissa * 2^exponent in canonical form.

    The mantissa is odd, or both fields are zero. +, -, * and all
    comparisons are exact.

    Attributes:
        mantissa: An arbitrary precision integer.
        exponent: The power of two.
    """

    mantissa: int
    exponent: int

    def __init__(self, mantissa: int = 0, exponent: int = 0) -> None:
        mantissa, exponent = _canonical(int(mantissa), int(exponent))
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    @classmethod
    def from_int(cls, value: int) -> "Dyadic":
        return cls(value, 0)

    @classmethod
    def from_mpf(cls, value: MpfTuple) -> "Dyadic":
        """Converts a finite mpmath raw float.

        Raises:
            ValueError: If the value is infinite or NaN.
        """
        if value == fzero:
            return cls(0, 0)
        if value[1] == 0:
            raise ValueError("Infinite or NaN endpoint can not be represented exactly")
        sign, mantissa, exponent, _ = value
        return cls(-mantissa if sign else mantissa, exponent)

    @classmethod
    def floor_of(cls, value: Fraction, bits: int) -> "Dyadic":
        """Returns the largest multiple of 2^-bits that is <= value."""
        return cls(math.floor(value * (1 << bits)), -bits)

    @classmethod
    def ceil_of(cls, value: Fraction, bits: int) -> "Dyadic":
        """Returns the smallest multiple of 2^-bits that is >= value."""
        return cls(math.ceil(value * (1 << bits)), -bits)

    @classmethod
    def power_of_two(cls, exponent: int) -> "Dyadic":
        return cls(1, exponent)

    def to_mpf(self) -> MpfTuple:
        return from_man_exp(self.mantissa, self.exponent)

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def _aligned(self, other: "Dyadic") -> Tuple[int, int, int]:
        exponent = min(self.exponent, other.exponent)
        return (
            self.mantissa << (self.exponent - exponent),
            other.mantissa << (other.exponent - exponent),
            exponent,
        )

    def __add__(self, other: "Dyadic") -> "Dyadic":
        left, right, exponent = self._aligned(_as_dyadic(other))
        return Dyadic(left + right, exponent)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        left, right, exponent = self._aligned(_as_dyadic(other))
        return Dyadic(left - right, exponent)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        other = _as_dyadic(other)
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.mantissa, self.exponent)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.mantissa), self.exponent)

    def shift(self, bits: int) -> "Dyadic":
        """Returns self * 2^bits."""
        return Dyadic(self.mantissa, self.exponent + bits)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, (Dyadic, int)):
            return NotImplemented
        left, right, _ = self._aligned(_as_dyadic(other))
        return left < right

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.mantissa == other.mantissa and self.exponent == other.exponent

    def __hash__(self) -> int:
        return hash((self.mantissa, self.exponent))

    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def magnitude_bits(self) -> int:
        """Returns e such that 2^(e-1) <= |self| < 2^e (0 for zero)."""
        if self.mantissa == 0:
            return 0
        return self.exponent + abs(self.mantissa).bit_length()

    def __str__(self) -> str:
        """Exact text: '0', '3', '5*2^-4' or '-3*2^7'."""
        if self.exponent == 0 or self.mantissa == 0:
            return str(self.mantissa)
        return f"{self.mantissa}*2^{self.exponent}"

    def __repr__(self) -> str:
        return f"Dyadic({self.mantissa}, {self.exponent})"


def _as_dyadic(value: Union[Dyadic, int]) -> Dyadic:
    if isinstance(value, Dyadic):
        return value
    return Dyadic(value, 0)


ZERO: Dyadic = Dyadic(0, 0)
ONE: Dyadic = Dyadic(1, 0)
