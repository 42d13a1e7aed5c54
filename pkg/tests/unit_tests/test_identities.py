# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains unit tests for the substitution identity suite."""

# standard libraries
from fractions import Fraction
import random
import unittest

# 3rd party libraries
import mpmath

# local sources
from eml_toolkit.identities import (
    DEFAULT_SEED,
    IDENTITY_CASES,
    IdentityCase,
    check_sample,
    run_identity_suite,
)
from eml_toolkit.model.gaussian_rational import GaussianRational


def _case(name: str) -> IdentityCase:
    return next(case for case in IDENTITY_CASES if case.name == name)


class TestIdentities(unittest.TestCase):
    """Testcase containing unit tests for check_sample and run_identity_suite."""

    def test_case_names(self):
        self.assertEqual(
            [case.name for case in IDENTITY_CASES],
            ["exp", "log", "mul", "inv", "add", "neg", "add-outside-strip"],
        )

    def test_single_samples(self):
        x = GaussianRational(Fraction(3, 2), Fraction(-1, 4))
        y = GaussianRational(Fraction(-1, 2), Fraction(1))
        self.assertIsNone(check_sample(_case("exp"), {"x": x}, 40))
        self.assertIsNone(check_sample(_case("log"), {"x": x}, 40))
        self.assertIsNone(check_sample(_case("mul"), {"x": x, "y": y}, 40))
        self.assertIsNone(check_sample(_case("add"), {"x": x, "y": y}, 40))

    def test_add_outside_the_strip_is_shifted(self):
        x = GaussianRational(Fraction(1), Fraction(5, 2))
        y = GaussianRational(Fraction(-1, 4), Fraction(5, 2))
        self.assertIsNone(check_sample(_case("add-outside-strip"), {"x": x, "y": y}, 40))
        failure = check_sample(_case("add"), {"x": x, "y": y}, 40)
        self.assertIsNotNone(failure)
        self.assertTrue(failure.startswith("add("))

    def test_wrong_operation_is_reported(self):
        case = IdentityCase("exp-as-log", "exp", lambda rng: {}, mpmath.log)
        failure = check_sample(case, {"x": GaussianRational(2)}, 40)
        self.assertIn("exp-as-log(x=2)", failure)

    def test_small_suite(self):
        results = run_identity_suite(samples=4)
        self.assertEqual(len(results), len(IDENTITY_CASES))
        for result in results:
            with self.subTest(identity=result.name):
                self.assertTrue(result.ok, result.failures)
                self.assertEqual(result.samples, 4)
                self.assertEqual(result.to_json()["passed"], 4)

    def test_samples_are_reproducible(self):
        case = _case("mul")
        first = case.sampler(random.Random(DEFAULT_SEED))
        second = case.sampler(random.Random(DEFAULT_SEED))
        self.assertEqual(first, second)
        for value in first.values():
            self.assertEqual((value.re * 256).denominator, 1)
            self.assertGreaterEqual(value.re**2 + value.im**2, Fraction(1, 256))

    def test_failures_are_collected(self):
        case = IdentityCase(
            "neg-as-identity", "neg", lambda rng: {"x": GaussianRational(1)}, lambda x: x
        )
        (result,) = run_identity_suite(samples=2, cases=[case])
        self.assertFalse(result.ok)
        self.assertEqual(result.passed, 0)
        self.assertEqual(len(result.failures), 2)
