# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains unit tests for the bijection between ranks and expressions."""

# standard libraries
import unittest

# local sources
from eml_toolkit.model.eml_expr import E, ONE
from eml_toolkit.model.ranking import (
    catalan,
    class_offset,
    enumerate_expressions,
    rank,
    unrank,
)


class TestRanking(unittest.TestCase):
    """Testcase containing unit tests for rank, unrank and the Catalan helpers."""

    def test_catalan(self):
        self.assertEqual([catalan(k) for k in range(8)], [1, 1, 2, 5, 14, 42, 132, 429])
        with self.assertRaises(ValueError):
            catalan(-1)

    def test_class_offset(self):
        self.assertEqual([class_offset(k) for k in range(6)], [0, 1, 2, 4, 9, 23])

    def test_unrank_small(self):
        self.assertEqual(unrank(0), ONE)
        self.assertEqual(unrank(1), E(ONE, ONE))
        self.assertEqual(unrank(2), E(E(ONE, ONE), ONE))
        self.assertEqual(unrank(3), E(ONE, E(ONE, ONE)))
        self.assertEqual(unrank(4), E(E(E(ONE, ONE), ONE), ONE))
        self.assertEqual(unrank(6), E(E(ONE, ONE), E(ONE, ONE)))
        self.assertEqual(unrank(7), E(ONE, E(E(ONE, ONE), ONE)))
        self.assertEqual(unrank(8), E(ONE, E(ONE, E(ONE, ONE))))

    def test_unrank_negative(self):
        with self.assertRaises(ValueError):
            unrank(-1)

    def test_rank(self):
        self.assertEqual(rank(ONE), 0)
        self.assertEqual(rank(E(ONE, E(E(ONE, ONE), ONE))), 7)

    def test_round_trip(self):
        for n in range(600):
            expr = unrank(n)
            self.assertEqual(rank(expr), n)

    def test_ranks_follow_e_count(self):
        previous = 0
        for n in range(200):
            e_count = unrank(n).e_count
            self.assertGreaterEqual(e_count, previous)
            previous = e_count

    def test_enumerate_expressions(self):
        listed = list(enumerate_expressions(3, start=1))
        self.assertEqual([n for n, _ in listed], [1, 2, 3])
        self.assertEqual(listed[0][1], E(ONE, ONE))
        self.assertEqual(list(enumerate_expressions(0)), [])

    def test_deep_expressions(self):
        depth = 1500
        left_chain = ONE
        right_chain = ONE
        for _ in range(depth):
            left_chain = E(left_chain, ONE)
            right_chain = E(ONE, right_chain)
        # the left chain opens its class, the right chain closes it
        self.assertEqual(rank(left_chain), class_offset(depth))
        self.assertEqual(unrank(class_offset(depth)), left_chain)
        self.assertEqual(rank(right_chain), class_offset(depth + 1) - 1)
        self.assertEqual(unrank(class_offset(depth + 1) - 1), right_chain)

    def test_class_offset_negative(self):
        with self.assertRaises(ValueError):
            class_offset(-1)
