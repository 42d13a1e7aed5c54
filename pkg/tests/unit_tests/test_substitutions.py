# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains unit tests for the substitution templates."""

# standard libraries
import unittest

# local sources
from eml_toolkit.compiler.substitutions import (
    TEMPLATE_TEXTS,
    Template,
    subst_add,
    subst_exp,
    subst_log,
    subst_mul,
    subst_zero,
    template,
)
from eml_toolkit.model.eml_expr import ALPHA, BETA, E, ONE, subexpression
from eml_toolkit.parser.parsing_utils import parse

E_ONE_ONE = E(ONE, ONE)


class TestSubstitutions(unittest.TestCase):
    """Testcase containing unit tests for the Template class and the subst functions."""

    def test_every_template_parses(self):
        arities = {"exp": 1, "log": 1, "zero": 0, "mul": 2, "add": 2, "neg": 1, "inv": 1}
        for name in TEMPLATE_TEXTS:
            with self.subTest(name=name):
                self.assertEqual(len(template(name).holes), arities[name])

    def test_hole_paths(self):
        self.assertEqual(template("exp").holes, {"x": (ALPHA,)})
        self.assertEqual(template("log").holes, {"x": (BETA, ALPHA, BETA)})
        self.assertEqual(template("add").holes["y"], (BETA, ALPHA, BETA, ALPHA))

    def test_template_is_cached(self):
        self.assertIs(template("mul"), template("mul"))

    def test_instantiate_places_bindings_at_the_holes(self):
        zero = subst_zero()
        for name in ("mul", "add"):
            substitution = template(name)
            expr = substitution.instantiate(x=E_ONE_ONE, y=zero)
            with self.subTest(name=name):
                self.assertEqual(subexpression(expr, substitution.holes["x"]), E_ONE_ONE)
                self.assertEqual(subexpression(expr, substitution.holes["y"]), zero)
        closed = TEMPLATE_TEXTS["mul"].replace("x", "1").replace("y", "1")
        self.assertEqual(subst_mul(ONE, ONE), parse(closed))
        self.assertEqual(subst_add(ONE, E_ONE_ONE).e_count, subst_add(ONE, ONE).e_count + 1)

    def test_small_templates(self):
        self.assertEqual(subst_exp(ONE), E_ONE_ONE)
        self.assertEqual(subst_zero(), parse("E(1,E(E(1,1),1))"))
        self.assertEqual(subst_log(ONE), subst_zero())

    def test_wrong_bindings(self):
        with self.assertRaises(ValueError):
            template("mul").instantiate(x=ONE)
        with self.assertRaises(ValueError):
            template("exp").instantiate(x=ONE, y=ONE)

    def test_unknown_template(self):
        with self.assertRaises(KeyError):
            template("sin")

    def test_repeated_hole(self):
        with self.assertRaises(ValueError):
            Template("square", "E(x,x)")
