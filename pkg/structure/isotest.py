"""
Isomorphism of circulants.

For connected arc-transitive circulants two connection sets give isomorphic
digraphs exactly when a multiplier maps one onto the other, so the
multiplier scan is the decision procedure; the backtracking search is kept
as an independent oracle.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from config import Settings
from digraphs.circulant import Circulant, is_connected, to_dense
from digraphs.digraph import DenseDigraph
from digraphs.search import find_isomorphism
from arith.zmod import units
from errors import InvalidInputError, SearchBoundExceeded
from perms.permgroup import Permutation, automorphism_group, is_arc_transitive

logger = logging.getLogger(__name__)


def multiplier_equivalent(c1: Circulant, c2: Circulant) -> Optional[int]:
    """
    Find a unit k with k * S1 = S2.

    Returns:
        The least such k, or None

    Raises:
        InvalidInputError: if the orders differ
    """
    if c1.n != c2.n:
        raise InvalidInputError(f"circulants have different orders {c1.n} and {c2.n}")
    if c1.size != c2.size:
        return None
    for k in sorted(units(c1.n)):
        if tuple(sorted((k * x) % c1.n for x in c1.s)) == c2.s:
            return k
    return None


def brute_force_isomorphic(g1: DenseDigraph, g2: DenseDigraph, settings: Optional[Settings] = None) -> Optional[Permutation]:
    """An arc-preserving bijection g1 -> g2 found by backtracking, or None."""
    settings = settings or Settings.load()
    largest = max(g1.order, g2.order)
    if largest > settings.aut_bound:
        raise SearchBoundExceeded(f"isomorphism search on {largest} vertices exceeds the bound {settings.aut_bound}")
    if g1.order != g2.order:
        return None
    images = find_isomorphism(g1, g2)
    return Permutation(tuple(images)) if images is not None else None


@dataclass(frozen=True)
class IsoReport:
    """
    ``ci_guarantee`` is true when both inputs were verified connected and
    arc-transitive, so a missing multiplier proves non-isomorphism.
    """

    isomorphic: bool
    multiplier: Optional[int]
    ci_guarantee: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"isomorphic": self.isomorphic, "multiplier": self.multiplier, "ci_guarantee": self.ci_guarantee}


def _in_ci_class(c: Circulant, settings: Settings) -> bool:
    if not is_connected(c):
        return False
    if c.n > settings.aut_bound:
        logger.warning("arc-transitivity of %s not checked: order %d exceeds the search bound", c, c.n)
        return False
    if c.n == 1:
        return True
    g = to_dense(c)
    return is_arc_transitive(g, automorphism_group(g, settings))


def isomorphism_report(c1: Circulant, c2: Circulant, settings: Optional[Settings] = None) -> IsoReport:
    settings = settings or Settings.load()
    k = multiplier_equivalent(c1, c2)
    guarantee = _in_ci_class(c1, settings) and _in_ci_class(c2, settings)
    if not guarantee:
        logger.warning("answer for %s vs %s rests on multiplier equivalence only", c1, c2)
    return IsoReport(k is not None, k, guarantee)


def ci_isomorphic(c1: Circulant, c2: Circulant, settings: Optional[Settings] = None) -> bool:
    """Isomorphism decided by the multiplier test."""
    return isomorphism_report(c1, c2, settings).isomorphic
