# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains unit tests for the helper functions."""

# standard libraries
from fractions import Fraction
import unittest

# local sources
from eml_toolkit import helpers
from eml_toolkit.rigor.complex_box import ComplexBox
from eml_toolkit.rigor.dyadic import ZERO, Dyadic


class TestHelpers(unittest.TestCase):
    """Testcase containing unit tests for the printing helpers."""

    def test_fixed_point(self):
        self.assertEqual(helpers.fixed_point(Fraction(1, 3), 3), "0.333")
        self.assertEqual(helpers.fixed_point(Fraction(-5, 2), 0), "-2")
        self.assertEqual(helpers.fixed_point(Fraction(1, 8), 2), "0.12")
        self.assertEqual(helpers.fixed_point(Fraction(-1, 100), 2), "-0.01")

    def test_exact_decimal(self):
        self.assertEqual(helpers.exact_decimal(Dyadic(5, -4)), "0.3125")
        self.assertEqual(helpers.exact_decimal(Dyadic(3, 2)), "12")
        self.assertEqual(helpers.exact_decimal(Dyadic(-1, -1)), "-0.5")
        self.assertEqual(helpers.exact_decimal(ZERO), "0")

    def test_certified_digits(self):
        low, high = Dyadic(5, -4), Dyadic(21, -6)
        self.assertEqual(helpers.certified_digits(low, high), 2)
        self.assertEqual(helpers.certified_decimal(low, high), "0.32")
        self.assertIsNone(helpers.certified_digits(low, low))
        self.assertEqual(helpers.certified_decimal(low, low), "0.3125")

    def test_certified_decimal_never_claims_too_much(self):
        third_low = Dyadic.floor_of(Fraction(1, 3), 40)
        third_high = Dyadic.ceil_of(Fraction(1, 3), 40)
        text = helpers.certified_decimal(third_low, third_high)
        self.assertTrue(text.startswith("0.3333333333"))
        digits = len(text) - 2
        unit = Fraction(1, 10**digits)
        self.assertLessEqual(abs(Fraction(text) - Fraction(1, 3)), unit)

    def test_format_radius(self):
        self.assertEqual(helpers.format_radius(ZERO), "0")
        self.assertEqual(helpers.format_radius(Dyadic(1, -10)), "2^-10")
        self.assertEqual(helpers.format_radius(Dyadic(3, -4)), "3*2^-4")

    def test_format_box(self):
        self.assertEqual(helpers.format_box(ComplexBox.point(Dyadic(1, -1))), "0.5 ± 0")
        self.assertEqual(helpers.format_box(ComplexBox.point(1, -2)), "1 - 2*i ± 0")
        self.assertEqual(helpers.format_box(ComplexBox.point(1, Dyadic(3, -1))), "1 + 1.5*i ± 0")
        box = ComplexBox(Dyadic(5, -4), Dyadic(21, -6), ZERO, ZERO)
        self.assertEqual(helpers.format_box(box), "0.32 ± 2^-7")

    def test_format_mass(self):
        self.assertEqual(helpers.format_mass(Dyadic(5, -5)), "5/32 = 0.15625 [5*2^-5]")

    def test_dump_json(self):
        self.assertEqual(
            helpers.dump_json({"b": 1, "a": [1]}), '{\n  "a": [\n    1\n  ],\n  "b": 1\n}'
        )
