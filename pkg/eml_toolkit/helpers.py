# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains helper functions used in the whole project."""

# standard libraries
from fractions import Fraction
import json
from typing import Any, Optional

# local sources
from eml_toolkit.rigor.complex_box import ComplexBox
from eml_toolkit.rigor.dyadic import Dyadic


def fixed_point(value: Fraction, digits: int) -> str:
    """Returns value rounded to the given number of decimal places, half to even."""
    scaled = round(value * 10**digits)
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + text
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def exact_decimal(value: Dyadic) -> str:
    """Returns the terminating decimal expansion of a dyadic number."""
    digits = max(0, -value.exponent)
    return fixed_point(value.to_fraction(), digits)


def certified_digits(low: Dyadic, high: Dyadic) -> Optional[int]:
    """Returns the largest digit count d such that [low, high] lies within one unit
    of the d-th decimal place of its rounded midpoint.

    Returns None for a point interval, whose value is exact.
    """
    if low == high:
        return None
    lo, hi = low.to_fraction(), high.to_fraction()
    middle = (lo + hi) / 2
    digits = 0
    while True:
        ulp = Fraction(1, 10 ** (digits + 1))
        rounded = Fraction(round(middle / ulp)) * ulp
        if not (rounded - ulp <= lo and hi <= rounded + ulp):
            return digits
        digits += 1


def certified_decimal(low: Dyadic, high: Dyadic) -> str:
    """Prints the midpoint of [low, high] without digits the interval does not certify."""
    digits = certified_digits(low, high)
    if digits is None:
        return exact_decimal(low)
    return fixed_point((low.to_fraction() + high.to_fraction()) / 2, digits)


def format_radius(radius: Dyadic) -> str:
    if radius.is_zero():
        return "0"
    if radius.mantissa == 1:
        return f"2^{radius.exponent}"
    return str(radius)


def format_box(box: ComplexBox) -> str:
    """Returns 're ± r' for a real box and 're + im*i ± r' otherwise."""
    re = certified_decimal(box.re_lo, box.re_hi)
    radius = format_radius(box.radius())
    if box.is_real():
        return f"{re} ± {radius}"
    im = certified_decimal(box.im_lo, box.im_hi)
    if im.startswith("-"):
        return f"{re} - {im[1:]}*i ± {radius}"
    return f"{re} + {im}*i ± {radius}"


def format_mass(mass: Dyadic) -> str:
    """Returns 'p/q = decimal [m*2^e]', all three exact."""
    fraction = mass.to_fraction()
    return f"{fraction} = {exact_decimal(mass)} [{mass}]"


def dump_json(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=True)
