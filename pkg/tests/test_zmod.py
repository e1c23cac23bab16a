"""
Tests for modular arithmetic helpers.
"""

import sys
import os
import unittest
from math import gcd

from hypothesis import given, settings, strategies as st
from sympy import totient

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from arith.zmod import (crt_split, multiplicative_closure, pairwise_coprime, prime_power_parts, subgroup_of_order,
                        unit_subgroups, unitary_divisors, units)
from errors import InvalidInputError


class TestUnits(unittest.TestCase):

    def test_small_moduli(self):
        self.assertEqual(units(1), frozenset({0}))
        self.assertEqual(units(2), frozenset({1}))
        self.assertEqual(units(8), frozenset({1, 3, 5, 7}))
        self.assertEqual(units(12), frozenset({1, 5, 7, 11}))

    def test_rejects_bad_modulus(self):
        for bad in (0, -3, True):
            with self.assertRaises(InvalidInputError):
                units(bad)

    @given(st.integers(min_value=2, max_value=200))
    def test_units_are_coprime(self, n):
        self.assertTrue(all(gcd(k, n) == 1 for k in units(n)))

    def test_count_is_totient(self):
        for n in range(1, 201):
            self.assertEqual(len(units(n)), int(totient(n)), n)


class TestDivisors(unittest.TestCase):

    def test_prime_power_parts(self):
        self.assertEqual(prime_power_parts(1), [])
        self.assertEqual(prime_power_parts(360), [5, 8, 9])

    def test_unitary_divisors(self):
        self.assertEqual(unitary_divisors(12), (1, 3, 4, 12))
        self.assertEqual(unitary_divisors(8), (1, 8))
        self.assertEqual(unitary_divisors(1), (1,))

    @given(st.integers(min_value=1, max_value=2000))
    def test_unitary_divisors_pair_up(self, n):
        divisors = set(unitary_divisors(n))
        self.assertEqual({n // m for m in divisors}, divisors)
        for m in divisors:
            self.assertEqual(n % m, 0)
            self.assertEqual(gcd(m, n // m), 1)

    def test_pairwise_coprime(self):
        self.assertTrue(pairwise_coprime([3, 4, 5]))
        self.assertFalse(pairwise_coprime([3, 4, 6]))
        self.assertTrue(pairwise_coprime([]))

    def test_subgroup_of_order(self):
        self.assertEqual(subgroup_of_order(12, 3), frozenset({0, 4, 8}))
        with self.assertRaises(InvalidInputError):
            subgroup_of_order(12, 5)


class TestCrtSplit(unittest.TestCase):

    def test_coordinates(self):
        split = crt_split(12, [3, 4])
        self.assertEqual(split.forward(7), (1, 3))
        self.assertEqual(split.inverse((1, 3)), 7)
        self.assertEqual(split.coordinate(7, 1), 3)

    def test_rejects_bad_parts(self):
        with self.assertRaises(InvalidInputError):
            crt_split(12, [2, 6])
        with self.assertRaises(InvalidInputError):
            crt_split(12, [3, 5])
        with self.assertRaises(InvalidInputError):
            crt_split(12, [])

    def test_rejects_out_of_range(self):
        split = crt_split(6, [2, 3])
        with self.assertRaises(InvalidInputError):
            split.forward(6)
        with self.assertRaises(InvalidInputError):
            split.inverse((2, 0))

    @settings(max_examples=50)
    @given(st.integers(min_value=1, max_value=300))
    def test_bijection(self, n):
        split = crt_split(n, prime_power_parts(n) or [1])
        self.assertEqual({split.inverse(split.forward(x)) for x in range(n)}, set(range(n)))


class TestUnitSubgroups(unittest.TestCase):

    def test_closure(self):
        self.assertEqual(multiplicative_closure([2], 7), frozenset({1, 2, 4}))
        self.assertEqual(multiplicative_closure([], 9), frozenset({1}))

    def test_cyclic_unit_group(self):
        # units(7) is cyclic of order 6: one subgroup per divisor
        self.assertEqual([len(h) for h in unit_subgroups(7)], [1, 2, 3, 6])

    def test_non_cyclic_unit_group(self):
        subgroups = unit_subgroups(8)
        self.assertEqual(len(subgroups), 5)
        self.assertEqual(subgroups[0], frozenset({1}))
        self.assertEqual(subgroups[-1], frozenset({1, 3, 5, 7}))

    def test_trivial_modulus(self):
        self.assertEqual(unit_subgroups(1), [frozenset({0})])


if __name__ == '__main__':
    unittest.main()
