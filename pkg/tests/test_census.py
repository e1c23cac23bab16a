"""
Tests for the exhaustive and constructive censuses.
"""

import sys
import os
import unittest

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from checks.suite import load_spot_values
from config import Settings
from digraphs.circulant import parse, single_loop_circulant
from errors import GroupBudgetExceeded, InvalidInputError
from structure.census import (CSV_COLUMNS, arc_signature_constant, census_constructive, census_exhaustive,
                              compare_methods, factor_splits, normal_cores, to_csv, to_json)
from structure.decompose import decompose, reconstruct


class TestHelpers(unittest.TestCase):

    def test_factor_splits(self):
        self.assertEqual(list(factor_splits(12)), [(1, [12]), (3, [4]), (12, [])])
        self.assertEqual(list(factor_splits(1)), [(1, [])])
        self.assertEqual(sorted(factor_splits(60)), [(1, [4, 15]), (1, [5, 12]), (1, [60]), (3, [4, 5]),
                                                     (3, [20]), (4, [15]), (5, [12]), (12, [5]), (15, [4]), (60, [])])

    def test_arc_signature(self):
        self.assertTrue(arc_signature_constant(7, (1, 2, 4)))
        self.assertFalse(arc_signature_constant(5, (1, 2)))

    def test_normal_cores(self):
        settings = Settings.load()
        self.assertEqual(normal_cores(1, settings), [single_loop_circulant()])
        self.assertEqual(normal_cores(4, settings), [parse("4:1")])
        self.assertEqual(normal_cores(7, settings), [parse("7:1"), parse("7:1,6"), parse("7:1,2,4")])


class TestCensus(unittest.TestCase):

    def test_sizes(self):
        for n, size in load_spot_values()["census_sizes"].items():
            with self.subTest(n=n):
                self.assertEqual(len(census_exhaustive(int(n))), size)
                self.assertEqual(len(census_constructive(int(n))), size)

    def test_order_four(self):
        entries = census_exhaustive(4)
        self.assertEqual([e.canonical_s for e in entries], [(1,), (1, 2, 3), (1, 3)])
        self.assertEqual([e.aut_order for e in entries], [4, 24, 8])

    def test_methods_agree(self):
        for n in range(1, 11):
            with self.subTest(n=n):
                self.assertTrue(compare_methods(n).agree)

    def test_entries_roundtrip(self):
        for n in (6, 8, 9, 10):
            for entry in census_exhaustive(n):
                d = entry.decomposition
                self.assertEqual(reconstruct(d).n, n)
                self.assertEqual(decompose(reconstruct(d)), d)

    def test_rejects_non_positive_order(self):
        for n in (0, -3):
            with self.assertRaises(InvalidInputError):
                census_exhaustive(n)
            with self.assertRaises(InvalidInputError):
                census_constructive(n)

    def test_exhaustive_bound(self):
        with self.assertRaises(GroupBudgetExceeded):
            census_exhaustive(9, Settings(exhaustive_bound=8))

    def test_constructive_beyond_exhaustive_bound(self):
        entries = census_constructive(9, Settings(exhaustive_bound=8))
        self.assertEqual([e.canonical_s for e in entries], [e.canonical_s for e in census_exhaustive(9)])

    def test_parallel_scan_matches_serial(self):
        serial = [e.canonical_s for e in census_exhaustive(8)]
        parallel = [e.canonical_s for e in census_exhaustive(8, Settings(threads=2))]
        self.assertEqual(parallel, serial)


class TestOutput(unittest.TestCase):

    def test_csv(self):
        lines = to_csv(census_exhaustive(4)).splitlines()
        self.assertEqual(lines[0], ",".join(CSV_COLUMNS))
        self.assertEqual(lines[2], "4,1;2;3,1,0,4,1,24,true")
        self.assertEqual(len(lines), 4)

    def test_json(self):
        text = to_json(census_exhaustive(3))
        self.assertIn('"canonical_s"', text)
        self.assertEqual(text, to_json(census_exhaustive(3)))


if __name__ == '__main__':
    unittest.main()
