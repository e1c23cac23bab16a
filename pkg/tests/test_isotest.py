"""
Tests for multiplier equivalence and isomorphism reports.
"""

import sys
import os
import unittest

from hypothesis import given, settings, strategies as st

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from arith.zmod import units
from config import Settings
from digraphs.circulant import Circulant, multiplier_apply, parse, to_dense
from errors import InvalidInputError, SearchBoundExceeded
from structure.isotest import brute_force_isomorphic, ci_isomorphic, isomorphism_report, multiplier_equivalent


class TestMultiplierEquivalent(unittest.TestCase):

    def test_least_multiplier(self):
        self.assertEqual(multiplier_equivalent(parse("7:1,2,4"), parse("7:3,5,6")), 3)
        self.assertEqual(multiplier_equivalent(parse("7:1,2,4"), parse("7:1,2,4")), 1)

    def test_not_equivalent(self):
        self.assertIsNone(multiplier_equivalent(parse("8:1,2"), parse("8:1,4")))
        self.assertIsNone(multiplier_equivalent(parse("8:1"), parse("8:1,3")))

    def test_different_orders(self):
        with self.assertRaises(InvalidInputError):
            multiplier_equivalent(parse("7:1"), parse("8:1"))

    @settings(max_examples=40)
    @given(st.integers(min_value=2, max_value=15), st.data())
    def test_finds_applied_multiplier(self, n, data):
        s = data.draw(st.sets(st.integers(min_value=1, max_value=n - 1), min_size=1))
        k = data.draw(st.sampled_from(sorted(units(n))))
        c = Circulant(n, tuple(s))
        found = multiplier_equivalent(c, multiplier_apply(c, k))
        self.assertIsNotNone(found)
        self.assertLessEqual(found, k)
        self.assertEqual(multiplier_apply(c, found), multiplier_apply(c, k))


class TestBruteForce(unittest.TestCase):

    def test_witness(self):
        g1, g2 = to_dense(parse("7:1,2,4")), to_dense(parse("7:3,5,6"))
        witness = brute_force_isomorphic(g1, g2)
        self.assertIsNotNone(witness)
        self.assertEqual(g1.relabel(witness.images), g2)

    def test_non_isomorphic(self):
        self.assertIsNone(brute_force_isomorphic(to_dense(parse("8:1,7")), to_dense(parse("8:3,5,4"))))

    def test_search_bound(self):
        with self.assertRaises(SearchBoundExceeded):
            brute_force_isomorphic(to_dense(parse("9:1")), to_dense(parse("9:2")), Settings(aut_bound=8))


class TestIsomorphismReport(unittest.TestCase):

    def test_isomorphic_arc_transitive(self):
        report = isomorphism_report(parse("7:1,2,4"), parse("7:3,5,6"))
        self.assertEqual(report.to_dict(), {"isomorphic": True, "multiplier": 3, "ci_guarantee": True})
        self.assertTrue(ci_isomorphic(parse("7:1,2,4"), parse("7:3,5,6")))

    def test_non_isomorphic_arc_transitive(self):
        report = isomorphism_report(parse("7:1,2,4"), parse("7:1,2,3,4,5,6"))
        self.assertFalse(report.isomorphic)
        self.assertTrue(report.ci_guarantee)

    def test_no_guarantee_outside_the_class(self):
        report = isomorphism_report(parse("5:1,2"), parse("5:2,4"))
        self.assertTrue(report.isomorphic)
        self.assertEqual(report.multiplier, 2)
        self.assertFalse(report.ci_guarantee)

    def test_disconnected(self):
        report = isomorphism_report(parse("6:2,4"), parse("6:2,4"))
        self.assertFalse(report.ci_guarantee)

    def test_above_search_bound(self):
        report = isomorphism_report(parse("9:1,8"), parse("9:2,7"), Settings(aut_bound=8))
        self.assertTrue(report.isomorphic)
        self.assertFalse(report.ci_guarantee)


if __name__ == '__main__':
    unittest.main()
