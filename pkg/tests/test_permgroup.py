"""
Tests for permutations, stabilizer chains and automorphism groups.
"""

import sys
import os
import unittest
from itertools import permutations
from math import factorial

import numpy as np
from hypothesis import given, settings, strategies as st

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from config import Settings
from digraphs import digraph as dg
from digraphs.circulant import complete_circulant, parse, to_dense
from errors import GroupBudgetExceeded, InvalidInputError, NotArcTransitiveError, NotConnectedError, SearchBoundExceeded
from perms.permgroup import (PermGroup, Permutation, StabilizerChain, arc_orbit_size, automorphism_group,
                             circulant_automorphism_group, coordinatewise, is_arc_transitive, is_normal_circulant, normalizer_criterion,
                             normalizer_order, regular_cyclic_subgroups, wreath_generators)


def cycle(n):
    return Permutation(tuple((i + 1) % n for i in range(n)))


def transposition(n, a, b):
    images = list(range(n))
    images[a], images[b] = b, a
    return Permutation(tuple(images))


class TestPermutation(unittest.TestCase):

    def test_rejects_non_permutation(self):
        with self.assertRaises(InvalidInputError):
            Permutation((0, 0, 1))

    def test_product_is_left_to_right(self):
        p = Permutation((1, 0, 2))
        q = Permutation((0, 2, 1))
        # 0 -> 1 under p, then 1 -> 2 under q
        self.assertEqual((p * q)(0), 2)
        self.assertEqual((q * p)(0), 1)

    def test_inverse(self):
        c = cycle(5)
        self.assertTrue((c * c.inverse()).is_identity())
        self.assertEqual(c.inverse()(0), 4)

    def test_cycles(self):
        p = Permutation((1, 0, 3, 4, 2))
        self.assertEqual(p.cycles(), [(0, 1), (2, 3, 4)])
        self.assertEqual(p.cycle_string(), "(0 1)(2 3 4)")
        self.assertEqual(Permutation.identity(3).cycle_string(), "()")
        self.assertEqual(p.first_moved(), 0)


class TestStabilizerChain(unittest.TestCase):

    def test_symmetric_group_order(self):
        for n in range(2, 7):
            chain = StabilizerChain(n, [cycle(n), transposition(n, 0, 1)])
            self.assertEqual(chain.order(), factorial(n))

    def test_cyclic_group(self):
        chain = StabilizerChain(7, [cycle(7)])
        self.assertEqual(chain.order(), 7)
        self.assertTrue(chain.contains(cycle(7) * cycle(7) * cycle(7)))
        self.assertFalse(chain.contains(transposition(7, 0, 1)))

    def test_trivial_group(self):
        chain = StabilizerChain(4, [])
        self.assertEqual(chain.order(), 1)
        self.assertEqual(list(chain.elements()), [Permutation.identity(4)])

    def test_elements_are_distinct(self):
        chain = StabilizerChain(4, [cycle(4), transposition(4, 0, 1)])
        elements = list(chain.elements())
        self.assertEqual(len(set(elements)), 24)

    def test_element_blocks_match_elements(self):
        chain = StabilizerChain(5, [cycle(5), transposition(5, 0, 1)])
        expected = {p.images for p in chain.elements()}
        for rows in (1, 7, 1 << 15):
            got = [tuple(int(x) for x in row) for block in chain.element_blocks(rows) for row in block]
            self.assertEqual(len(got), 120)
            self.assertEqual(set(got), expected)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=2, max_value=7), st.data())
    def test_random_generators_close(self, n, data):
        perms = data.draw(st.lists(st.permutations(list(range(n))), min_size=1, max_size=3))
        gens = [Permutation(tuple(p)) for p in perms]
        chain = StabilizerChain(n, gens)
        for a in gens:
            for b in gens:
                self.assertTrue(chain.contains(a * b))
        self.assertEqual(chain.order(), len({p.images for p in chain.elements()}))


class TestPermGroup(unittest.TestCase):

    def test_membership_and_elements(self):
        p = Permutation((1, 2, 0, 4, 5, 3))
        grp = PermGroup(6, [p])
        self.assertEqual(grp.order, 3)
        self.assertTrue(grp.contains(p * p))
        self.assertFalse(grp.contains(Permutation((1, 0, 2, 3, 4, 5))))
        self.assertEqual({q.images for q in grp.elements()}, {(0, 1, 2, 3, 4, 5), p.images, (p * p).images})

    def test_degree_mismatch(self):
        with self.assertRaises(InvalidInputError):
            PermGroup(4, [cycle(5)])


class TestAutomorphismGroup(unittest.TestCase):

    def test_known_orders(self):
        cases = {
            "5:1": 5,
            "5:1,4": 10,
            "4:1,2,3": 24,
            "7:1,2,4": 21,
            "8:1,3,5,7": 1152,
            "8:1,2,3,5,6,7": 384,
            "12:1,2,5,7,10,11": 144,
        }
        for text, order in cases.items():
            with self.subTest(circulant=text):
                self.assertEqual(automorphism_group(to_dense(parse(text))).order, order)

    def test_generators_are_automorphisms(self):
        g = to_dense(parse("10:1,3,7,9"))
        for p in automorphism_group(g).generators:
            self.assertTrue(g.is_automorphism(p.images))

    def test_single_vertex(self):
        self.assertEqual(automorphism_group(dg.single_loop()).order, 1)

    def test_edgeless(self):
        self.assertEqual(automorphism_group(dg.edgeless(4)).order, 24)

    def test_search_bound(self):
        with self.assertRaises(SearchBoundExceeded):
            automorphism_group(dg.directed_cycle(10), Settings(aut_bound=9))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=6), st.data())
    def test_order_matches_enumeration(self, order, data):
        bits = data.draw(st.lists(st.booleans(), min_size=order * order, max_size=order * order))
        adj = np.array(bits, dtype=bool).reshape(order, order)
        np.fill_diagonal(adj, False)
        g = dg.DenseDigraph(adj)
        count = sum(1 for p in permutations(range(order)) if g.is_automorphism(p))
        self.assertEqual(automorphism_group(g).order, count)


class TestArcTransitivity(unittest.TestCase):

    def test_arc_transitive(self):
        self.assertTrue(is_arc_transitive(to_dense(parse("7:1,2,4"))))
        self.assertTrue(is_arc_transitive(to_dense(parse("8:1,3,5,7"))))
        self.assertFalse(is_arc_transitive(to_dense(parse("5:1,2"))))

    def test_orbit_size(self):
        g = to_dense(parse("6:1,2"))
        self.assertEqual(arc_orbit_size(g, automorphism_group(g)), 6)

    def test_no_arcs(self):
        g = dg.edgeless(3)
        with self.assertRaises(InvalidInputError):
            arc_orbit_size(g, automorphism_group(g))


class TestNormality(unittest.TestCase):

    def test_regular_cyclic_subgroups(self):
        self.assertEqual(len(regular_cyclic_subgroups(automorphism_group(to_dense(parse("5:1,4"))))), 1)
        # S_4 has three cyclic subgroups generated by 4-cycles
        self.assertEqual(len(regular_cyclic_subgroups(automorphism_group(dg.complete_graph(4)))), 3)

    def test_limit(self):
        found = regular_cyclic_subgroups(automorphism_group(dg.complete_graph(5)), limit=2)
        self.assertEqual(len(found), 2)

    def test_budget(self):
        grp = automorphism_group(dg.complete_graph(6))
        with self.assertRaises(GroupBudgetExceeded):
            regular_cyclic_subgroups(grp, Settings(group_budget=100))

    def test_normal_circulants(self):
        for text, normal in (("7:1,2,4", True), ("5:1,4", True), ("4:1,2,3", False), ("4:1,3", True),
                             ("8:1,3,5,7", False)):
            with self.subTest(circulant=text):
                c = parse(text)
                self.assertEqual(is_normal_circulant(c), normal)
                self.assertEqual(normalizer_criterion(c), normal)

    def test_normality_needs_arc_transitive_input(self):
        c = parse("8:1,2,5")
        # Aut is the normalizer, but it holds a second regular cyclic subgroup
        self.assertTrue(normalizer_criterion(c))
        self.assertEqual(len(regular_cyclic_subgroups(circulant_automorphism_group(c))), 2)
        with self.assertRaises(NotArcTransitiveError):
            is_normal_circulant(c)
        with self.assertRaises(NotConnectedError):
            is_normal_circulant(parse("6:2,4"))

    def test_circulant_group_checks_bound_first(self):
        self.assertEqual(circulant_automorphism_group(parse("7:1,2,4")).order, 21)
        with self.assertRaises(SearchBoundExceeded):
            circulant_automorphism_group(parse("50000:1"))

    def test_normalizer_order(self):
        self.assertEqual(normalizer_order(parse("7:1,2,4")), 21)
        self.assertEqual(normalizer_order(complete_circulant(4)), 8)


class TestProductActions(unittest.TestCase):

    def test_coordinatewise_is_automorphism_of_tensor(self):
        g1, g2 = to_dense(parse("3:1")), to_dense(parse("4:1,3"))
        product = dg.tensor_product(g1, g2)
        for p1 in automorphism_group(g1).generators:
            for p2 in automorphism_group(g2).generators:
                self.assertTrue(product.is_automorphism(coordinatewise(p1, p2).images))

    def test_wreath_generators(self):
        g = to_dense(parse("3:1"))
        grp = automorphism_group(g)
        wreath = PermGroup(6, wreath_generators(grp, 2))
        self.assertEqual(wreath.order, 2 ** 3 * 3)
        blown = dg.lex_product(g, 2)
        for p in wreath.generators:
            self.assertTrue(blown.is_automorphism(p.images))
        self.assertEqual(automorphism_group(blown).order, wreath.order)


if __name__ == '__main__':
    unittest.main()
