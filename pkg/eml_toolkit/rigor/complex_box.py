# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the ComplexBox class and the outward rounded box operations.

The interval kernels come from mpmath's libmpi layer, which rounds every
endpoint in the outward direction. Endpoints of transcendental results are
additionally widened by a quarter unit in the last place, so that the boxes
stay enclosures even if a kernel is off by one rounding step.
"""

# standard libraries
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple, Union

# 3rd party libraries
from mpmath.libmp import fzero, from_rational, mpf_neg, round_ceiling, round_floor
from mpmath.libmp.libmpi import (
    mpci_abs,
    mpci_add,
    mpci_exp,
    mpci_mul,
    mpci_sub,
    mpi_atan2,
    mpi_exp,
    mpi_log,
    mpi_neg,
    mpi_pi,
)

# local sources
from eml_toolkit.model.gaussian_rational import GaussianRational
from eml_toolkit.rigor.dyadic import Dyadic, MpfTuple
from eml_toolkit.validation.errors import CutViolation, OverflowGuard

MpiTuple = Tuple[MpfTuple, MpfTuple]

# exp(z) with Re z above this bound is refused
EXP_REAL_BOUND: Dyadic = Dyadic.power_of_two(20)


@dataclass(frozen=True)
class ComplexBox:
    """An axis aligned rectangle [re_lo, re_hi] x [im_lo, im_hi] with dyadic corners.

    Attributes:
        re_lo: Lower bound of the real part.
        re_hi: Upper bound of the real part.
        im_lo: Lower bound of the imaginary part.
        im_hi: Upper bound of the imaginary part.
    """

    re_lo: Dyadic
    re_hi: Dyadic
    im_lo: Dyadic
    im_hi: Dyadic

    def __post_init__(self) -> None:
        if self.re_hi < self.re_lo or self.im_hi < self.im_lo:
            raise ValueError(f"Empty box {self}")

    @classmethod
    def point(cls, re: Union[Dyadic, int], im: Union[Dyadic, int] = 0) -> "ComplexBox":
        re = re if isinstance(re, Dyadic) else Dyadic(re)
        im = im if isinstance(im, Dyadic) else Dyadic(im)
        return cls(re, re, im, im)

    @classmethod
    def enclosing(cls, value: GaussianRational, bits: int) -> "ComplexBox":
        """Returns the smallest box with corners on the 2^-bits grid that contains value."""
        return cls(
            Dyadic.floor_of(value.re, bits),
            Dyadic.ceil_of(value.re, bits),
            Dyadic.floor_of(value.im, bits),
            Dyadic.ceil_of(value.im, bits),
        )

    @classmethod
    def from_mpi(cls, re: MpiTuple, im: MpiTuple) -> "ComplexBox":
        return cls(
            Dyadic.from_mpf(re[0]),
            Dyadic.from_mpf(re[1]),
            Dyadic.from_mpf(im[0]),
            Dyadic.from_mpf(im[1]),
        )

    def to_mpi(self) -> Tuple[MpiTuple, MpiTuple]:
        return (
            (self.re_lo.to_mpf(), self.re_hi.to_mpf()),
            (self.im_lo.to_mpf(), self.im_hi.to_mpf()),
        )

    def width(self) -> Dyadic:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def midpoint(self) -> Tuple[Dyadic, Dyadic]:
        return (self.re_lo + self.re_hi).shift(-1), (self.im_lo + self.im_hi).shift(-1)

    def radius(self) -> Dyadic:
        """Returns half of the width, the distance from the midpoint to the farthest edge."""
        return self.width().shift(-1)

    def contains(self, re: Union[Fraction, int], im: Union[Fraction, int] = 0) -> bool:
        return (
            self.re_lo.to_fraction() <= re <= self.re_hi.to_fraction()
            and self.im_lo.to_fraction() <= im <= self.im_hi.to_fraction()
        )

    def contains_box(self, other: "ComplexBox") -> bool:
        return (
            self.re_lo <= other.re_lo
            and other.re_hi <= self.re_hi
            and self.im_lo <= other.im_lo
            and other.im_hi <= self.im_hi
        )

    def overlaps(self, other: "ComplexBox") -> bool:
        return (
            self.re_lo <= other.re_hi
            and other.re_lo <= self.re_hi
            and self.im_lo <= other.im_hi
            and other.im_lo <= self.im_hi
        )

    def inflate(self, amount: Dyadic) -> "ComplexBox":
        return ComplexBox(
            self.re_lo - amount, self.re_hi + amount, self.im_lo - amount, self.im_hi + amount
        )

    def with_imag(self, im_lo: Dyadic, im_hi: Dyadic) -> "ComplexBox":
        return ComplexBox(self.re_lo, self.re_hi, im_lo, im_hi)

    def is_real(self) -> bool:
        return self.im_lo.is_zero() and self.im_hi.is_zero()

    def is_off_cut(self) -> bool:
        """True if the box has positive distance to the closed negative real axis."""
        return self.im_lo > 0 or self.im_hi < 0 or self.re_lo > 0

    def to_json(self) -> Dict[str, str]:
        return {
            "re_lo": str(self.re_lo),
            "re_hi": str(self.re_hi),
            "im_lo": str(self.im_lo),
            "im_hi": str(self.im_hi),
        }

    def __str__(self) -> str:
        return f"[{self.re_lo}, {self.re_hi}] + [{self.im_lo}, {self.im_hi}]i"


def _pad(interval: MpiTuple, prec: int) -> MpiTuple:
    """Widens both endpoints by a quarter unit in the last place at prec bits."""
    low, high = (Dyadic.from_mpf(endpoint) for endpoint in interval)
    if not low.is_zero():
        low = low - Dyadic.power_of_two(low.magnitude_bits() - prec - 2)
    if not high.is_zero():
        high = high + Dyadic.power_of_two(high.magnitude_bits() - prec - 2)
    return low.to_mpf(), high.to_mpf()


def box_add(a: ComplexBox, b: ComplexBox, prec: int) -> ComplexBox:
    return ComplexBox.from_mpi(*mpci_add(a.to_mpi(), b.to_mpi(), prec))


def box_sub(a: ComplexBox, b: ComplexBox, prec: int) -> ComplexBox:
    return ComplexBox.from_mpi(*mpci_sub(a.to_mpi(), b.to_mpi(), prec))


def box_mul(a: ComplexBox, b: ComplexBox, prec: int) -> ComplexBox:
    return ComplexBox.from_mpi(*mpci_mul(a.to_mpi(), b.to_mpi(), prec))


def _check_exp_bound(a: ComplexBox) -> None:
    if a.re_hi > EXP_REAL_BOUND:
        raise OverflowGuard(f"exp argument with real part up to {a.re_hi} exceeds 2^20")


def box_exp(a: ComplexBox, prec: int) -> ComplexBox:
    """Returns a box containing exp(z) for every z in a.

    Raises:
        OverflowGuard: If re_hi exceeds 2^20.
    """
    _check_exp_bound(a)
    re, im = mpci_exp(a.to_mpi(), prec)
    return ComplexBox.from_mpi(_pad(re, prec), _pad(im, prec))


def box_exp_phase(a: ComplexBox, phase: int, prec: int) -> ComplexBox:
    """Returns a real box containing exp(a) for an argument whose imaginary part is phase * pi.

    exp(x + k*pi*i) = (-1)^k * exp(x), so only the real part of a enters.

    Raises:
        OverflowGuard: If re_hi exceeds 2^20.
    """
    _check_exp_bound(a)
    re, _ = a.to_mpi()
    magnitude = _pad(mpi_exp(re, prec), prec)
    if phase % 2:
        magnitude = mpi_neg(magnitude)
    return ComplexBox.from_mpi(magnitude, (fzero, fzero))


def box_log(a: ComplexBox, prec: int) -> ComplexBox:
    """Returns a box containing the principal log(z) for every z in a.

    Raises:
        CutViolation: If a touches zero or the negative real axis.
    """
    if not a.is_off_cut():
        raise CutViolation(f"log argument box {a} touches the branch cut")
    z = a.to_mpi()
    modulus = mpci_abs(z, prec + 20)
    re = mpi_log(modulus, prec)
    im = mpi_atan2(z[1], z[0], prec)
    return ComplexBox.from_mpi(_pad(re, prec), _pad(im, prec))


def _pi_interval(prec: int) -> MpiTuple:
    # two extra bits keep the width at most 2^-prec
    return mpi_pi(prec + 2)


def pi_box(prec: int) -> ComplexBox:
    """Returns a real box containing pi of width at most 2^(1 - prec)."""
    return ComplexBox.from_mpi(_pi_interval(prec), (fzero, fzero))


def box_log_negative_real(value: Union[GaussianRational, Fraction, int], prec: int) -> ComplexBox:
    """Returns a box containing ln|value| + pi*i for an exact negative rational value.

    Raises:
        TypeError: If value is not an exact rational.
        ValueError: If value is not a negative real.
    """
    if isinstance(value, GaussianRational):
        if not value.is_real():
            raise ValueError(f"{value} is not real")
        value = value.re
    if not isinstance(value, (Fraction, int)):
        raise TypeError(f"An exact rational is required, got {type(value).__name__}")
    value = Fraction(value)
    if value >= 0:
        raise ValueError(f"{value} is not negative")
    magnitude = -value
    low = from_rational(magnitude.numerator, magnitude.denominator, prec + 10, round_floor)
    high = from_rational(magnitude.numerator, magnitude.denominator, prec + 10, round_ceiling)
    re = _pad(mpi_log((low, high), prec), prec)
    return ComplexBox.from_mpi(re, _pi_interval(prec))


def box_log_negative_axis(a: ComplexBox, prec: int) -> ComplexBox:
    """Returns a box containing ln|x| + pi*i for every x in a.

    Used for values that are certified to be real; only the real part of a is read.

    Raises:
        CutViolation: If the real part of a is not strictly negative.
    """
    if not a.re_hi < 0:
        raise CutViolation(f"real part of {a} is not strictly negative")
    re, _ = a.to_mpi()
    modulus = (mpf_neg(re[1]), mpf_neg(re[0]))
    return ComplexBox.from_mpi(_pad(mpi_log(modulus, prec), prec), _pi_interval(prec))
