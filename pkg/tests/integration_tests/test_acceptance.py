# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains end to end checks of the evaluator, the enumeration and the Omega machinery."""

# standard libraries
from fractions import Fraction
import math
from typing import List
import unittest

# 3rd party libraries
import mpmath

# local sources
from eml_toolkit.compiler.el_compiler import compile_int, compile_log
from eml_toolkit.helpers import certified_decimal, certified_digits
from eml_toolkit.identities import DEFAULT_SEED, run_identity_suite
from eml_toolkit.model.eml_expr import E, ONE, render
from eml_toolkit.model.ranking import catalan, class_offset, enumerate_expressions, rank, unrank
from eml_toolkit.omega.dovetailer import (
    DEFAULT_SOLVE_BUDGET,
    Dovetailer,
    Verdict,
    halting_from_omega_prefix,
)
from eml_toolkit.omega.machines import EvenCountdown, gamma_decode
from eml_toolkit.parser.parsing_utils import parse
from eml_toolkit.rigor import evaluator
from eml_toolkit.rigor.complex_box import box_log_negative_real
from eml_toolkit.rigor.dyadic import Dyadic
from eml_toolkit.rigor.evaluator import EvalLimits, Value, eval_compiled
from eml_toolkit.rigor.oracle import interval_value, oracle_value

E_TEXT = "2.71828182845904523536028747135266249775724709369995957496696762772407663035"
PI_TEXT = "3.14159265358979323846264338327950288419716939937510582097494459230781640628"


def _fraction(value: mpmath.mpf) -> Fraction:
    mantissa, exponent = mpmath.mpf(value).man_exp
    if exponent >= 0:
        return Fraction(mantissa << exponent)
    return Fraction(mantissa, 1 << -exponent)


class TestCertifiedEvaluation(unittest.TestCase):
    """Testcase containing the end to end checks of the certified evaluator."""

    def test_constant_e(self):
        outcome = evaluator.eval(E(ONE, ONE), limits=EvalLimits(target_bits=128))
        self.assertIsInstance(outcome, Value)
        box = outcome.box
        self.assertLessEqual(box.width(), Dyadic.power_of_two(-128))
        self.assertTrue(box.contains(Fraction(E_TEXT)))
        self.assertGreaterEqual(certified_digits(box.re_lo, box.re_hi), 38)
        text = certified_decimal(box.re_lo, box.re_hi)
        self.assertLessEqual(abs(Fraction(text) - Fraction(E_TEXT)), Fraction(1, 10**38))

    def test_zero_encoding(self):
        outcome = evaluator.eval(parse("E(1,E(E(1,1),1))"), limits=EvalLimits(target_bits=128))
        self.assertIsInstance(outcome, Value)
        self.assertTrue(outcome.box.contains(0))
        self.assertLessEqual(outcome.box.width(), Dyadic.power_of_two(-128))

    def test_branch_cut_discrepancy(self):
        tolerance = Fraction(1, 1 << 40)
        pi = Fraction(PI_TEXT)

        # the log template sends -1 to -i*pi
        outcome = eval_compiled(compile_log(compile_int(-1)), EvalLimits(target_bits=48))
        self.assertIsInstance(outcome, Value)
        re, im = (value.to_fraction() for value in outcome.box.midpoint())
        self.assertLessEqual(abs(re), tolerance)
        self.assertLessEqual(abs(im + pi), tolerance)

        # the principal branch sends -1 to +i*pi
        box = box_log_negative_real(-1, 48)
        re, im = (value.to_fraction() for value in box.midpoint())
        self.assertLessEqual(abs(re), tolerance)
        self.assertLessEqual(abs(im - pi), tolerance)

    def test_identity_suite(self):
        results = run_identity_suite(samples=200, seed=DEFAULT_SEED)
        for result in results:
            with self.subTest(identity=result.name):
                self.assertEqual(result.passed, 200, result.failures[:3])

    def test_soundness_and_monotone_refinement(self):
        coarse_limits = EvalLimits(target_bits=32, max_working_bits=1024)
        fine_limits = EvalLimits(target_bits=48, max_working_bits=1024)
        checked = 0
        for n, expr in enumerate_expressions(500):
            fine = evaluator.eval(expr, limits=fine_limits)
            if not isinstance(fine, Value):
                continue
            checked += 1
            with self.subTest(rank=n):
                coarse = evaluator.eval(expr, limits=coarse_limits)
                self.assertIsInstance(coarse, Value)

                # 64 bits above the working precision of either box
                bits = max(fine.working_bits, coarse.working_bits) + 64
                value = oracle_value(expr, bits)
                self.assertIsNotNone(value)
                with mpmath.workprec(bits):
                    value = mpmath.mpc(value)
                    re, im = _fraction(value.real), _fraction(value.imag)
                self.assertTrue(fine.box.contains(re, im))
                self.assertTrue(coarse.box.contains(re, im))

                enclosure = interval_value(expr, fine.working_bits)
                if enclosure is not None:
                    self.assertTrue(enclosure.overlaps(fine.box))
                    self.assertTrue(enclosure.overlaps(coarse.box))

                widened = coarse.box.inflate(Dyadic.power_of_two(-31))
                self.assertTrue(widened.contains_box(fine.box))
        self.assertGreater(checked, 100)


def _brute_force_classes(max_e_count: int) -> List[List[str]]:
    """Renders every expression with at most max_e_count E nodes, grouped by E count."""
    classes = [["1"]]
    for k in range(1, max_e_count + 1):
        classes.append(
            [
                f"E({alpha},{beta})"
                for left in range(k)
                for alpha in classes[left]
                for beta in classes[k - 1 - left]
            ]
        )
    return classes


class TestEnumeration(unittest.TestCase):
    """Testcase containing the end to end checks of rank and unrank."""

    def test_round_trip(self):
        for n in range(10**4):
            self.assertEqual(rank(unrank(n)), n)

    def test_class_sizes(self):
        for k, rendered in enumerate(_brute_force_classes(12)):
            with self.subTest(e_count=k):
                self.assertEqual(len(rendered), math.comb(2 * k, k) // (k + 1))
                self.assertEqual(catalan(k), len(rendered))
                ranked = {
                    render(unrank(n)) for n in range(class_offset(k), class_offset(k + 1))
                }
                self.assertEqual(ranked, set(rendered))
        self.assertEqual(catalan(12), 208012)


class TestOmega(unittest.TestCase):
    """Testcase containing the end to end checks of the dovetailer on even-countdown.

    Attributes:
        dovetailer: One finished run with the default solve budget, shared by the tests.
    """

    @classmethod
    def setUpClass(cls):
        cls.dovetailer = Dovetailer(EvenCountdown(), DEFAULT_SOLVE_BUDGET)
        cls.masses = [bound.mass for bound in cls.dovetailer.run()]

    def test_mass_approaches_a_quarter(self):
        quarter = Dyadic(1, -2)
        self.assertTrue(all(mass <= quarter for mass in self.masses))
        self.assertGreaterEqual(self.masses[-1], quarter - Dyadic.power_of_two(-12))

    def test_halted_programs_match_the_parity_oracle(self):
        halted = {gamma_decode(code) for code in self.dovetailer.halted_codes()}
        small = {payload for payload in halted if payload <= 1 << 10}
        self.assertEqual(small, set(range(2, (1 << 10) + 1, 2)))

    def test_exact_solve(self):
        verdicts = halting_from_omega_prefix(EvenCountdown(), "01", n=11, exact=True)
        self.assertEqual(len(verdicts), 63)
        for code, verdict in verdicts.items():
            expected = Verdict.HALTS if gamma_decode(code) % 2 == 0 else Verdict.LOOPS
            self.assertEqual(verdict, expected, code)
