"""
Tests for the decomposition of connected arc-transitive circulants.
"""

import sys
import os
import unittest

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from checks.suite import load_spot_values
from config import Settings
from digraphs.circulant import complete_circulant, parse, single_loop_circulant
from errors import InvalidInputError, NotArcTransitiveError, NotConnectedError
from structure.decompose import (C4, aut_order, check_normality, decompose, make_decomposition, reconstruct,
                                 structural_violations, verify_decomposition)


class TestDecompose(unittest.TestCase):

    def test_spot_values(self):
        for case in load_spot_values()["aut_orders"]:
            with self.subTest(circulant=case["circulant"]):
                d = decompose(parse(case["circulant"]))
                self.assertEqual(d.gamma0, parse(case["gamma0"]))
                self.assertEqual(d.factor_list, case["factors"])
                self.assertEqual(d.b, case["b"])
                self.assertEqual(aut_order(d), case["aut_order"])

    def test_complete_graphs(self):
        for n in range(4, 9):
            d = decompose(complete_circulant(n))
            self.assertEqual(d, make_decomposition(single_loop_circulant(), [n], 1))

    def test_small_complete_graphs_are_their_own_core(self):
        self.assertEqual(decompose(complete_circulant(2)).gamma0, complete_circulant(2))
        self.assertEqual(decompose(complete_circulant(3)).gamma0, complete_circulant(3))

    def test_single_loop(self):
        d = decompose(single_loop_circulant())
        self.assertEqual((d.gamma0, d.factor_list, d.b), (single_loop_circulant(), [], 1))
        self.assertEqual(aut_order(d), 1)

    def test_c4_is_a_blow_up(self):
        d = decompose(C4)
        self.assertEqual(d, make_decomposition(parse("2:1"), [], 2))

    def test_normal_core_decomposes_to_itself(self):
        d = decompose(parse("13:1,3,9"))
        self.assertEqual((d.gamma0, d.factor_list, d.b), (parse("13:1,3,9"), [], 1))
        self.assertEqual(d.normality_check, "brute-force")

    def test_rejects_disconnected(self):
        with self.assertRaises(NotConnectedError):
            decompose(parse("6:2,4"))

    def test_rejects_non_arc_transitive(self):
        with self.assertRaises(NotArcTransitiveError):
            decompose(parse("5:1,2"))
        with self.assertRaises(NotArcTransitiveError):
            decompose(parse("5:1,2"), Settings(aut_bound=4))

    def test_above_search_bound(self):
        d = decompose(parse("7:1,2,4"), Settings(aut_bound=6))
        self.assertFalse(d.arc_transitivity_verified)
        self.assertEqual(d.normality_check, "structural")
        self.assertEqual(d, make_decomposition(parse("7:1,2,4"), [], 1))

    def test_to_dict(self):
        self.assertEqual(decompose(parse("8:1,2,3,5,6,7")).to_dict(), {
            "gamma0": {"n": 1, "s": [0]},
            "factors": [4],
            "b": 2,
            "aut_order": "384",
        })


class TestReconstruct(unittest.TestCase):

    def test_roundtrip(self):
        for text in ("8:1,2,3,5,6,7", "12:1,2,5,7,10,11", "10:1,3,7,9", "9:1,2,4,5,7,8"):
            with self.subTest(circulant=text):
                c = parse(text)
                d = decompose(c)
                rebuilt = reconstruct(d)
                self.assertEqual(rebuilt.n, c.n)
                self.assertEqual(decompose(rebuilt), d)

    def test_structural_violations(self):
        self.assertIn("gamma0 is C4", structural_violations(make_decomposition(C4, [], 1)))
        self.assertTrue(structural_violations(make_decomposition(parse("3:1,2"), [3], 1)))
        self.assertTrue(structural_violations(make_decomposition(parse("3:1,2"), [6], 1)))
        self.assertTrue(structural_violations(make_decomposition(single_loop_circulant(), [], 2)))
        self.assertEqual(structural_violations(make_decomposition(parse("3:1,2"), [4, 5], 2)), [])

    def test_reconstruct_rejects_bad_triples(self):
        with self.assertRaises(InvalidInputError):
            reconstruct(make_decomposition(C4, [], 1))

    def test_reconstruct_products(self):
        c = reconstruct(make_decomposition(parse("3:1,2"), [4], 1))
        self.assertEqual(c, parse("12:1,2,5,7,10,11"))
        self.assertEqual(reconstruct(make_decomposition(parse("2:1"), [], 2)), C4)


class TestAutOrder(unittest.TestCase):

    def test_formula(self):
        # (2!)^(1*5) * 1 * 1 * 5!
        self.assertEqual(aut_order(make_decomposition(single_loop_circulant(), [5], 2)), 32 * 120)
        self.assertEqual(aut_order(make_decomposition(parse("7:1,2,4"), [], 1)), 21)


class TestCheckNormality(unittest.TestCase):

    def test_methods(self):
        settings = Settings.load()
        self.assertEqual(check_normality(parse("7:1,2,4"), settings), "brute-force")
        self.assertIsNone(check_normality(complete_circulant(5), settings))
        self.assertEqual(check_normality(parse("7:1,2,4"), Settings(aut_bound=6)), "structural")
        self.assertIsNone(check_normality(parse("7:1,2"), Settings(aut_bound=6)))
        self.assertEqual(check_normality(parse("7:1,2,4"), Settings(group_budget=10)), "normalizer")


class TestVerifyDecomposition(unittest.TestCase):

    def test_passes_for_computed_decomposition(self):
        c = parse("12:1,2,5,7,10,11")
        report = verify_decomposition(c, decompose(c))
        self.assertTrue(report.passed, report.to_dict())
        self.assertEqual(report.failed(), [])

    def test_flags_wrong_triple(self):
        c = parse("8:1,2,3,5,6,7")
        report = verify_decomposition(c, make_decomposition(parse("2:1"), [], 2))
        self.assertFalse(report.passed)
        self.assertIn("order", report.failed())

    def test_flags_c4_core(self):
        c = parse("8:1,3,5,7")
        report = verify_decomposition(c, make_decomposition(C4, [], 2))
        self.assertIn("gamma0-not-c4", report.failed())
        self.assertIn("reconstruction-isomorphic", report.failed())

    def test_multiplier_fallback_above_bound(self):
        c = parse("7:1,2,4")
        report = verify_decomposition(c, make_decomposition(c, [], 1), Settings(aut_bound=6))
        self.assertTrue(report.passed, report.to_dict())


if __name__ == '__main__':
    unittest.main()
