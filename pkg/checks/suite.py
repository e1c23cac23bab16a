"""
Verification suite: every structural claim the library relies on, checked
against backtracking search over all small cases.
"""

import json
import logging
import os
import time
from dataclasses import dataclass
from math import factorial, gcd
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from arith.zmod import units
from config import Settings
from digraphs import digraph as dg
from digraphs.circulant import (Circulant, canonical_multiplier_form, complete_circulant, lex_circulant, lex_relabeling,
                                multiplier_apply, multiplier_stabilizer, parse, tensor_circulant,
                                translation_stabilizer, to_dense)
from errors import CirculantError
from perms.permgroup import (Permutation, automorphism_group, coordinatewise, normalizer_criterion,
                             regular_cyclic_subgroups, wreath_generators)
from structure.census import CensusEntry, census_constructive, census_exhaustive, compare_methods
from structure.decompose import C4, aut_order, decompose, make_decomposition, reconstruct, verify_decomposition
from structure.isotest import brute_force_isomorphic, multiplier_equivalent

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

ROUNDTRIP_MAX_N = 20
AUT_FORMULA_MAX_N = 14
CI_MAX_N = 16
NORMALITY_MAX_N = 14
REGULARITY_MAX_N = 16
THICK_NORMAL_MAX_N = 20
CENSUS_MAX_N = 16
PRODUCT_INSTANCES = 200
PRODUCT_MAX_ORDER = 24
ELEMENT_COUNT_MAX = 10 ** 6


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "seconds": round(self.seconds, 3)}


def load_spot_values(data_dir: str = DATA_DIR) -> Dict[str, Any]:
    """Read the reference values; an unreadable file yields {}."""
    path = os.path.join(data_dir, "spot_values.json")
    try:
        with open(path, "r") as f:
            return json.load(f)
    except (FileNotFoundError, json.JSONDecodeError):
        logger.warning("spot values not found at %s", path)
        return {}


class _Census:
    """Census lists per order, computed once per suite run."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self._cache: Dict[int, List[CensusEntry]] = {}
        self._scanned: Dict[int, List[CensusEntry]] = {}

    def __call__(self, n: int) -> List[CensusEntry]:
        if n not in self._cache:
            if n <= self.settings.exhaustive_bound:
                self._cache[n] = census_exhaustive(n, self.settings)
            else:
                self._cache[n] = census_constructive(n, self.settings)
        return self._cache[n]

    def upto(self, max_n: int) -> List[CensusEntry]:
        return [e for n in range(1, max_n + 1) for e in self(n)]

    def exhaustive_upto(self, max_n: int) -> List[CensusEntry]:
        """Scanned census lists, past the configured exhaustive bound if need be."""
        entries = []
        for n in range(1, max_n + 1):
            if n <= self.settings.exhaustive_bound:
                entries.extend(self(n))
                continue
            if n not in self._scanned:
                wider = self.settings.model_copy(update={"exhaustive_bound": n})
                self._scanned[n] = census_exhaustive(n, wider)
            entries.extend(self._scanned[n])
        return entries


def check_decomposition_roundtrip(census: _Census, max_n: int) -> Tuple[bool, str]:
    settings = census.settings
    count = 0
    for entry in census.upto(min(max_n, ROUNDTRIP_MAX_N)):
        c, d = entry.circulant, entry.decomposition
        report = verify_decomposition(c, d, settings)
        if not report.passed:
            return False, f"{c}: failed {report.failed()}"
        again = decompose(reconstruct(d), settings)
        if (again.factors, again.b) != (d.factors, d.b) or not _same_class(again.gamma0, d.gamma0):
            return False, f"{c}: re-decomposition differs"
        k = max(units(c.n))
        moved = decompose(multiplier_apply(c, k), settings)
        if (moved.factors, moved.b) != (d.factors, d.b) or not _same_class(moved.gamma0, d.gamma0):
            return False, f"{c}: multiplier translate by {k} decomposes differently"
        count += 1
    return True, f"{count} circulants"


def _same_class(c1: Circulant, c2: Circulant) -> bool:
    return canonical_multiplier_form(c1).representative == canonical_multiplier_form(c2).representative


def check_aut_order_formula(census: _Census, max_n: int) -> Tuple[bool, str]:
    count = 0
    for entry in census.upto(min(max_n, AUT_FORMULA_MAX_N)):
        actual = automorphism_group(to_dense(entry.circulant), census.settings).order
        if actual != entry.aut_order:
            return False, f"{entry.circulant}: formula {entry.aut_order}, search {actual}"
        count += 1
    return True, f"{count} circulants"


def check_ci_property(census: _Census, max_n: int) -> Tuple[bool, str]:
    settings = census.settings
    pairs = 0
    for n in range(1, min(max_n, CI_MAX_N) + 1):
        entries = census(n)
        for entry in entries:
            c = entry.circulant
            for k in sorted(units(n)):
                image = multiplier_apply(c, k)
                if multiplier_equivalent(c, image) is None:
                    return False, f"{c} and {image}: no multiplier found"
                if brute_force_isomorphic(to_dense(c), to_dense(image), settings) is None:
                    return False, f"{c} and {image}: multiplier is not an isomorphism"
                pairs += 1
        for i, first in enumerate(entries):
            for second in entries[i + 1:]:
                c1, c2 = first.circulant, second.circulant
                if multiplier_equivalent(c1, c2) is not None:
                    return False, f"{c1} and {c2} are distinct census classes but multiplier-equivalent"
                if brute_force_isomorphic(to_dense(c1), to_dense(c2), settings) is not None:
                    return False, f"{c1} and {c2} are isomorphic without a multiplier"
                pairs += 1
    return True, f"{pairs} pairs"


def check_normality_criterion(census: _Census, max_n: int) -> Tuple[bool, str]:
    settings = census.settings
    checked = skipped = 0
    for entry in census.upto(min(max_n, NORMALITY_MAX_N)):
        c = entry.circulant
        group = automorphism_group(to_dense(c), settings)
        if group.order > settings.group_budget:
            skipped += 1
            continue
        unique = len(regular_cyclic_subgroups(group, settings)) == 1
        if unique != normalizer_criterion(c, group):
            return False, f"{c}: unique regular cyclic subgroup = {unique}, normalizer test disagrees"
        checked += 1
    return True, f"{checked} circulants, {skipped} above group budget"


def check_normal_multiplier_regularity(census: _Census, max_n: int) -> Tuple[bool, str]:
    settings = census.settings
    normal = 0
    for entry in census.upto(min(max_n, REGULARITY_MAX_N)):
        c = entry.circulant
        if c.n == 1 or not normalizer_criterion(c, settings=settings):
            continue
        if any(gcd(x, c.n) != 1 for x in c.s):
            return False, f"{c}: connection set contains a non-unit"
        stab = multiplier_stabilizer(c)
        if len(stab) != c.size or {(k * c.s[0]) % c.n for k in stab} != c.set():
            return False, f"{c}: multiplier stabilizer is not regular on S"
        normal += 1
    return True, f"{normal} normal circulants"


def check_thick_normal_is_c4(census: _Census, max_n: int) -> Tuple[bool, str]:
    settings = census.settings
    found = []
    for entry in census.exhaustive_upto(min(max_n, THICK_NORMAL_MAX_N)):
        c = entry.circulant
        if c.n == 1 or len(translation_stabilizer(c)) == 1:
            continue
        if normalizer_criterion(c, settings=settings):
            found.append(str(c))
    expected = [str(C4)] if max_n >= 4 else []
    return found == expected, f"R-thick normal: {found or 'none'}"


def _random_digraph(rng: np.random.Generator, order: int) -> dg.DenseDigraph:
    adj = rng.random((order, order)) < 0.5
    np.fill_diagonal(adj, False)
    return dg.DenseDigraph(adj)


def _random_circulant(rng: np.random.Generator, max_n: int = 8) -> Circulant:
    n = int(rng.integers(2, max_n + 1))
    size = int(rng.integers(1, n))
    return Circulant(n, tuple(sorted(int(x) for x in rng.choice(np.arange(1, n), size=size, replace=False))))


def check_product_identities(census: _Census, max_n: int) -> Tuple[bool, str]:
    settings = census.settings
    rng = np.random.default_rng(settings.seed)
    instances = PRODUCT_INSTANCES if max_n >= CENSUS_MAX_N else max(10, 10 * max_n)
    for i in range(instances):
        a, s = int(rng.integers(1, 5)), int(rng.integers(1, 4))
        m, l = int(rng.integers(1, 4)), int(rng.integers(1, 3))
        while a * m * s > PRODUCT_MAX_ORDER:
            m -= 1
        g, sigma = _random_digraph(rng, a), _random_digraph(rng, s)

        left = dg.tensor_product(dg.lex_product(g, m), sigma)
        right = dg.lex_product(dg.tensor_product(g, sigma), m)
        if brute_force_isomorphic(left, right, settings) is None:
            return False, f"instance {i}: blow-up does not commute with the tensor product"
        if dg.lex_product(dg.lex_product(g, m), l) != dg.lex_product(g, m * l):
            return False, f"instance {i}: iterated blow-up differs from a single one"
        c = _random_circulant(rng)
        labeled = to_dense(lex_circulant(c, m)).relabel(lex_relabeling(c.n, m))
        if labeled != dg.lex_product(to_dense(c), m):
            return False, f"instance {i}: {c} blown up by {m} differs from the lexicographic product"

        tensor = dg.tensor_product(g, sigma)
        ga, gs = automorphism_group(g, settings), automorphism_group(sigma, settings)
        lifts = [coordinatewise(p1, p2)
                 for p1 in ga.generators or [Permutation.identity(a)]
                 for p2 in gs.generators or [Permutation.identity(s)]]
        if not all(tensor.is_automorphism(p.images) for p in lifts):
            return False, f"instance {i}: coordinatewise automorphism fails on the tensor product"

        blown = dg.lex_product(g, m)
        if not all(blown.is_automorphism(p.images) for p in wreath_generators(ga, m)):
            return False, f"instance {i}: wreath generator is not an automorphism"
        if dg.is_r_thin(g) and a * m <= settings.aut_bound:
            whole = automorphism_group(blown, settings)
            if not all(whole.contains(p) for p in wreath_generators(ga, m)):
                return False, f"instance {i}: wreath generator missing from the searched group"
            if whole.order % (factorial(m) ** a * ga.order):
                return False, f"instance {i}: wreath order does not divide |Aut|"
    return True, f"{instances} random instances"


def check_census_agreement(census: _Census, max_n: int) -> Tuple[bool, str]:
    settings = census.settings
    top = min(max_n, CENSUS_MAX_N, settings.exhaustive_bound)
    sizes = []
    for n in range(1, top + 1):
        comparison = compare_methods(n, settings)
        if not comparison.agree:
            return False, f"n={n}: only exhaustive {comparison.only_exhaustive}, only constructive {comparison.only_constructive}"
        sizes.append(len(comparison.exhaustive))
    seen = set()
    for n in range(1, top + 1):
        for entry in census(n):
            d = entry.decomposition
            key = (canonical_multiplier_form(d.gamma0).representative, d.factors, d.b)
            if key in seen:
                return False, f"two classes share the triple of {entry.circulant}"
            seen.add(key)
    return True, f"sizes for n=1..{top}: {sizes}"


def check_c4_collapse(census: _Census, max_n: int) -> Tuple[bool, str]:
    settings = census.settings
    cases = 0
    for m, b in ((5, 1), (5, 2), (7, 1)):
        left = lex_circulant(tensor_circulant(C4, complete_circulant(m)), b)
        right = lex_circulant(tensor_circulant(Circulant(2, (1,)), complete_circulant(m)), 2 * b)
        if multiplier_equivalent(left, right) is None:
            return False, f"C4 x K_{m} blown up by {b}: no multiplier to (K_2 x K_{m}) blown up by {2 * b}"
        if left.n <= settings.aut_bound and brute_force_isomorphic(to_dense(left), to_dense(right), settings) is None:
            return False, f"C4 x K_{m} blown up by {b} is not isomorphic to (K_2 x K_{m}) blown up by {2 * b}"
        if decompose(left, settings) != make_decomposition(Circulant(2, (1,)), [m], 2 * b):
            return False, f"C4 x K_{m} blown up by {b} decomposes unexpectedly"
        cases += 1
    return True, f"{cases} cases"


def check_spot_values(census: _Census, max_n: int) -> Tuple[bool, str]:
    settings = census.settings
    data = load_spot_values()
    if not data:
        return False, "spot value data missing"
    for item in data.get("aut_orders", []):
        c = parse(item["circulant"])
        d = decompose(c, settings)
        expected = make_decomposition(parse(item["gamma0"]), item["factors"], item["b"])
        if d != expected:
            return False, f"{c}: decomposition {d.to_dict()}"
        if aut_order(d) != item["aut_order"]:
            return False, f"{c}: formula gives {aut_order(d)}, expected {item['aut_order']}"
        group = automorphism_group(to_dense(c), settings)
        if group.order != item["aut_order"]:
            return False, f"{c}: search disagrees with {item['aut_order']}"
        if group.order <= ELEMENT_COUNT_MAX and sum(1 for _ in group.elements()) != group.order:
            return False, f"{c}: stabilizer chain order differs from its element count"
    for n, size in data.get("census_sizes", {}).items():
        n = int(n)
        if n <= max(max_n, 4) and len(census(n)) != size:
            return False, f"census of order {n} has {len(census(n))} classes, expected {size}"
    return True, f"{len(data.get('aut_orders', []))} automorphism counts"


CHECKS: List[Tuple[str, Callable[[_Census, int], Tuple[bool, str]]]] = [
    ("decomposition-roundtrip", check_decomposition_roundtrip),
    ("aut-order-formula", check_aut_order_formula),
    ("ci-property", check_ci_property),
    ("normality-criterion", check_normality_criterion),
    ("normal-multiplier-regularity", check_normal_multiplier_regularity),
    ("thick-normal-is-c4", check_thick_normal_is_c4),
    ("product-identities", check_product_identities),
    ("census-agreement", check_census_agreement),
    ("c4-collapse", check_c4_collapse),
    ("spot-values", check_spot_values),
]


def run_suite(max_n: int = ROUNDTRIP_MAX_N, settings: Optional[Settings] = None,
              only: Optional[List[str]] = None) -> List[CheckOutcome]:
    """
    Run the checks in order.

    Args:
        max_n: Largest circulant order swept by any check
        settings: Search bounds
        only: Restrict to these check names

    Returns:
        One outcome per check; a CirculantError raised inside a check is
        reported as a failure of that check, anything else propagates
    """
    settings = settings or Settings.load()
    census = _Census(settings)
    outcomes = []
    for name, check in CHECKS:
        if only and name not in only:
            continue
        start = time.perf_counter()
        try:
            passed, detail = check(census, max_n)
        except CirculantError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        logger.info("%s: %s in %.2fs (%s)", name, "pass" if passed else "FAIL", elapsed, detail)
        outcomes.append(CheckOutcome(name, passed, detail, elapsed))
    return outcomes
