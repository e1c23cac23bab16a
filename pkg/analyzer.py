"""
Facade over the library used by the CLI and the web app.

Every method takes circulants in text form and returns plain dicts ready
for JSON output.
"""

import logging
from math import gcd
from typing import Any, Dict, List, Optional

from checks.suite import run_suite
from config import Settings
from digraphs import digraph as dg
from digraphs.circulant import (Circulant, is_connected, lex_circulant, parse, tensor_circulant, to_dense)
from errors import InvalidInputError
from perms.permgroup import arc_orbit_size, circulant_automorphism_group, normalizer_order, regular_cyclic_subgroups
from structure import census as census_mod
from structure.decompose import aut_order, decompose, verify_decomposition
from structure.isotest import isomorphism_report

logger = logging.getLogger(__name__)


class CirculantAnalyzer:
    """
    Entry point for the command-line and HTTP surfaces.
    """

    def __init__(self, settings: Optional[Settings] = None, json_input: bool = False):
        """
        Args:
            settings: Search bounds; defaults to ``Settings.load()``
            json_input: Require circulant arguments in their JSON form
        """
        self.settings = settings or Settings.load()
        self.json_input = json_input

    def read(self, text: str) -> Circulant:
        if self.json_input and not text.strip().startswith("{"):
            raise InvalidInputError(f"expected a JSON circulant, got {text!r}")
        return parse(text)

    def decompose(self, text: str, verify: bool = False) -> Dict[str, Any]:
        c = self.read(text)
        d = decompose(c, self.settings)
        result = d.to_dict()
        result["arc_transitivity_verified"] = d.arc_transitivity_verified
        result["normality_check"] = d.normality_check
        if verify:
            result["verification"] = verify_decomposition(c, d, self.settings).to_dict()
        return result

    def isomorphism(self, first: str, second: str) -> Dict[str, Any]:
        return isomorphism_report(self.read(first), self.read(second), self.settings).to_dict()

    def automorphisms(self, text: str) -> Dict[str, Any]:
        """Generators and order by search, plus the decomposition formula when it applies."""
        c = self.read(text)
        group = circulant_automorphism_group(c, self.settings)
        g = to_dense(c)
        result: Dict[str, Any] = {
            "circulant": c.to_dict(),
            "generators": [p.cycle_string() for p in group.generators],
            "order": str(group.order),
        }
        transitive = g.arc_count() > 0 and arc_orbit_size(g, group) == g.arc_count()
        result["arc_transitive"] = transitive
        if transitive and is_connected(c):
            result["formula_order"] = str(aut_order(decompose(c, self.settings)))
        return result

    def arc_transitivity(self, text: str) -> Dict[str, Any]:
        c = self.read(text)
        group = circulant_automorphism_group(c, self.settings)
        g = to_dense(c)
        orbit = arc_orbit_size(g, group)
        return {
            "circulant": c.to_dict(),
            "arc_transitive": orbit == g.arc_count(),
            "arc_orbit_size": orbit,
            "arc_count": g.arc_count(),
        }

    def normality(self, text: str) -> Dict[str, Any]:
        """
        Normality by the normalizer test, which holds for every circulant.

        The count of regular cyclic subgroups is evidence only. It decides
        normality just for connected arc-transitive input, and it is
        reported only when the group is within the enumeration budget.
        """
        c = self.read(text)
        group = circulant_automorphism_group(c, self.settings)
        g = to_dense(c)
        expected = normalizer_order(c)
        in_class = is_connected(c) and arc_orbit_size(g, group) == g.arc_count()
        result: Dict[str, Any] = {
            "circulant": c.to_dict(),
            "aut_order": str(group.order),
            "normalizer_order": str(expected),
            "normal": group.order == expected,
            "connected_arc_transitive": in_class,
            "regular_cyclic_subgroups": None,
        }
        if group.order <= self.settings.group_budget:
            result["regular_cyclic_subgroups"] = len(regular_cyclic_subgroups(group, self.settings))
        else:
            logger.warning("Aut(%s) has order %d, above the enumeration budget; subgroup count skipped", c, group.order)
        return result

    def census(self, n: int, method: str = "exhaustive") -> List[census_mod.CensusEntry]:
        if method == "exhaustive":
            return census_mod.census_exhaustive(n, self.settings)
        if method == "constructive":
            return census_mod.census_constructive(n, self.settings)
        raise InvalidInputError(f"unknown census method {method!r}")

    def compare_census(self, n: int) -> census_mod.MethodComparison:
        return census_mod.compare_methods(n, self.settings)

    def tensor(self, first: str, second: str) -> Dict[str, Any]:
        """Circulant when the orders are coprime, explicit digraph otherwise."""
        c1, c2 = self.read(first), self.read(second)
        if gcd(c1.n, c2.n) == 1:
            return {"circulant": tensor_circulant(c1, c2).to_dict()}
        return {"digraph": dg.tensor_product(to_dense(c1), to_dense(c2)).to_dict()}

    def lex(self, text: str, b: int) -> Dict[str, Any]:
        c = self.read(text)
        if c.n == 1 and b > 1:
            return {"digraph": dg.lex_product(to_dense(c), b).to_dict()}
        return {"circulant": lex_circulant(c, b).to_dict()}

    def verify_theorems(self, max_n: int, only: Optional[List[str]] = None) -> List[Dict[str, Any]]:
        return [outcome.to_dict() for outcome in run_suite(max_n, self.settings, only)]
