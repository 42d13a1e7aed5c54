# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains unit tests for the certified evaluator."""

# standard libraries
from fractions import Fraction
import unittest

# 3rd party libraries
import mpmath

# local sources
from eml_toolkit.compiler.el_compiler import CompiledExpr, compile_int
from eml_toolkit.model.eml_expr import ALPHA, BETA, E, ONE
from eml_toolkit.model.gaussian_rational import GaussianRational
from eml_toolkit.parser.parsing_utils import parse
from eml_toolkit.rigor import evaluator
from eml_toolkit.rigor.complex_box import ComplexBox
from eml_toolkit.rigor.dyadic import Dyadic
from eml_toolkit.rigor.evaluator import (
    REASON_BRANCH,
    REASON_OVERFLOW,
    BranchUndecided,
    EvalLimits,
    UndefinedAt,
    Value,
    approximate,
    eval_compiled,
    initial_working_bits,
)

ZERO_ENCODING = parse("E(1,E(E(1,1),1))")


def _mp_fraction(value: mpmath.mpf) -> Fraction:
    mantissa, exponent = value.man_exp
    if exponent >= 0:
        return Fraction(mantissa << exponent)
    return Fraction(mantissa, 1 << -exponent)


def _constant(name: str, bits: int = 400) -> Fraction:
    with mpmath.workprec(bits):
        return _mp_fraction(+getattr(mpmath, name))


def _near(low: Dyadic, high: Dyadic, value: Fraction, slack: Fraction) -> bool:
    return low.to_fraction() - slack <= value <= high.to_fraction() + slack


class TestEvalLimits(unittest.TestCase):
    """Testcase containing unit tests for EvalLimits and the starting precision."""

    def test_invalid_limits(self):
        with self.assertRaises(ValueError):
            EvalLimits(target_bits=0)
        with self.assertRaises(ValueError):
            EvalLimits(target_bits=128, max_working_bits=64)
        with self.assertRaises(ValueError):
            EvalLimits(max_refinements=-1)

    def test_initial_working_bits(self):
        self.assertEqual(initial_working_bits(E(ONE, ONE), EvalLimits(target_bits=64)), 88)
        self.assertEqual(initial_working_bits(ONE, EvalLimits(target_bits=64)), 80)
        capped = EvalLimits(target_bits=10, max_working_bits=20)
        self.assertEqual(initial_working_bits(ZERO_ENCODING, capped), 20)


class TestEvaluator(unittest.TestCase):
    """Testcase containing unit tests for eval, approximate and eval_compiled."""

    def test_one_is_exact(self):
        outcome = evaluator.eval(ONE)
        self.assertIsInstance(outcome, Value)
        self.assertEqual(outcome.box, ComplexBox.point(1))

    def test_e_at_high_precision(self):
        outcome = evaluator.eval(E(ONE, ONE), limits=EvalLimits(target_bits=128))
        self.assertIsInstance(outcome, Value)
        self.assertTrue(outcome.box.is_real())
        self.assertLessEqual(outcome.box.width(), Dyadic.power_of_two(-128))
        slack = Fraction(1, 1 << 300)
        self.assertTrue(_near(outcome.box.re_lo, outcome.box.re_hi, _constant("e"), slack))

    def test_zero_encoding(self):
        outcome = evaluator.eval(ZERO_ENCODING)
        self.assertIsInstance(outcome, Value)
        self.assertTrue(outcome.box.contains(0))
        self.assertTrue(outcome.box.is_real())

    def test_annotated_zero_is_undefined(self):
        expr = E(ONE, ZERO_ENCODING)
        outcome = evaluator.eval(expr, annotations={(BETA,): GaussianRational()})
        self.assertIsInstance(outcome, UndefinedAt)
        self.assertEqual(outcome.path, (BETA,))
        self.assertEqual(outcome.to_json()["path"], "root.beta")

    def test_unannotated_zero_is_undecided(self):
        limits = EvalLimits(target_bits=16, max_working_bits=256)
        outcome = evaluator.eval(E(ONE, ZERO_ENCODING), limits=limits)
        self.assertIsInstance(outcome, BranchUndecided)
        self.assertEqual(outcome.path, (BETA,))
        self.assertEqual(outcome.reason, REASON_BRANCH)
        self.assertTrue(outcome.last_box.contains(0))

    def test_annotated_minus_one_lies_on_the_cut(self):
        minus_one = compile_int(-1)
        expr = E(ONE, minus_one.expr)
        annotations = {(BETA,) + path: value for path, value in minus_one.provenance.items()}
        outcome = evaluator.eval(expr, annotations=annotations)
        self.assertIsInstance(outcome, Value)
        # e - log(-1) = e - pi*i
        slack = Fraction(1, 1 << 100)
        self.assertTrue(_near(outcome.box.re_lo, outcome.box.re_hi, _constant("e"), slack))
        self.assertTrue(_near(outcome.box.im_lo, outcome.box.im_hi, -_constant("pi"), slack))

    def test_leaf_bindings(self):
        outcome = evaluator.eval(E(ONE, ONE), leaves={(ALPHA,): ComplexBox.point(0)})
        self.assertIsInstance(outcome, Value)
        self.assertTrue(outcome.box.contains(1))
        self.assertLessEqual(outcome.box.width(), Dyadic.power_of_two(-64))

    def test_overflow_is_reported(self):
        tower = parse("E(E(E(E(1,1),1),1),1)")
        outcome = evaluator.eval(tower)
        self.assertIsInstance(outcome, BranchUndecided)
        self.assertEqual(outcome.reason, REASON_OVERFLOW)
        self.assertEqual(outcome.path, (ALPHA,))
        self.assertEqual(outcome.to_json()["outcome"], "undecided")

    def test_approximate(self):
        re, im = approximate(E(ONE, ONE), 64)
        self.assertEqual(im, Dyadic(0))
        self.assertLessEqual(abs(re.to_fraction() - _constant("e")), Fraction(1, 1 << 64))
        with self.assertRaises(ValueError):
            approximate(E(ONE, ZERO_ENCODING), 16, annotations={(BETA,): GaussianRational()})

    def test_eval_compiled_checks_the_exact_value(self):
        wrong = CompiledExpr(ONE, GaussianRational(2), {})
        with self.assertRaises(AssertionError):
            eval_compiled(wrong)
        outcome = eval_compiled(CompiledExpr(ONE, GaussianRational(1), {}))
        self.assertIsInstance(outcome, Value)

    def test_refinement_is_monotone(self):
        expr = parse("E(E(1,1),E(1,E(1,1)))")
        coarse = evaluator.eval(expr, limits=EvalLimits(target_bits=32))
        fine = evaluator.eval(expr, limits=EvalLimits(target_bits=48))
        self.assertIsInstance(coarse, Value)
        self.assertIsInstance(fine, Value)
        self.assertTrue(coarse.box.inflate(Dyadic.power_of_two(-31)).contains_box(fine.box))
