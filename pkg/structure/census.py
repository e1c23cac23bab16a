"""
Census of connected arc-transitive circulants of a given order, up to
isomorphism, computed two independent ways.

The exhaustive method scans every connection set up to multipliers and
tests arc-transitivity by backtracking. The constructive method assembles
every admissible decomposition triple and rebuilds the circulants. Both
return the same entry for the same isomorphism class, so the two lists can
be compared directly.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass
from itertools import combinations
from math import prod
from multiprocessing import Pool
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from arith.zmod import check_modulus, prime_power_parts, unit_subgroups
from config import Settings
from digraphs.circulant import (Circulant, canonical_multiplier_form, is_connected, is_undirected,
                                single_loop_circulant, to_dense)
from errors import GroupBudgetExceeded
from perms.permgroup import automorphism_group, is_arc_transitive, normalizer_criterion
from structure.decompose import C4, Decomposition, aut_order, decompose, make_decomposition, reconstruct

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["n", "canonical_s", "n0", "s0", "factors", "b", "aut_order", "undirected"]


@dataclass(frozen=True)
class CensusEntry:
    """One isomorphism class, named by its multiplier-minimal connection set."""

    n: int
    canonical_s: Tuple[int, ...]
    decomposition: Decomposition
    aut_order: int
    undirected: bool

    @property
    def circulant(self) -> Circulant:
        return Circulant(self.n, self.canonical_s)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "canonical_s": list(self.canonical_s),
            "decomposition": self.decomposition.to_dict(),
            "aut_order": str(self.aut_order),
            "undirected": self.undirected,
        }

    def csv_row(self) -> List[str]:
        d = self.decomposition
        return [
            str(self.n),
            ";".join(map(str, self.canonical_s)),
            str(d.gamma0.n),
            ";".join(map(str, d.gamma0.s)),
            ";".join(map(str, d.factor_list)),
            str(d.b),
            str(self.aut_order),
            "true" if self.undirected else "false",
        ]


def make_entry(c: Circulant, settings: Settings) -> CensusEntry:
    rep = canonical_multiplier_form(c).representative
    d = decompose(rep, settings)
    return CensusEntry(rep.n, rep.s, d, aut_order(d), is_undirected(rep))


def arc_signature_constant(n: int, s: Sequence[int]) -> bool:
    """
    Necessary condition for arc-transitivity: for each s in S the tuple
    (2-paths 0 -> s, common out-neighbours of 0 and s, common in-neighbours
    of 0 and s, whether s -> 0 is an arc) is the same.
    """
    members = set(s)
    negated = {(-x) % n for x in s}
    signature = None
    for x in s:
        back = {(x - y) % n for y in s}
        forward = {(x + y) % n for y in s}
        current = (len(members & back), len(members & forward), len(negated & back), (-x) % n in members)
        if signature is None:
            signature = current
        elif current != signature:
            return False
    return True


def _scan_masks(job: Tuple[int, int, int, Settings]) -> List[Tuple[int, ...]]:
    n, lo, hi, settings = job
    found = []
    for mask in range(lo, hi):
        s = tuple(i + 1 for i in range(n - 1) if mask >> i & 1)
        c = Circulant(n, s)
        if canonical_multiplier_form(c).representative.s != s:
            continue
        if not is_connected(c) or not arc_signature_constant(n, s):
            continue
        g = to_dense(c)
        if is_arc_transitive(g, automorphism_group(g, settings)):
            found.append(s)
    return found


def _shards(total: int, count: int) -> List[Tuple[int, int]]:
    step = max(1, -(-total // count))
    return [(lo, min(lo + step, total + 1)) for lo in range(1, total + 1, step)]


def census_exhaustive(n: int, settings: Optional[Settings] = None) -> List[CensusEntry]:
    """
    Every connected arc-transitive circulant of order n, found by scanning
    multiplier-minimal connection sets.

    Raises:
        InvalidInputError: if n is not a positive integer
        GroupBudgetExceeded: if n exceeds ``settings.exhaustive_bound``
    """
    n = check_modulus(n)
    settings = settings or Settings.load()
    if n > settings.exhaustive_bound:
        raise GroupBudgetExceeded(f"exhaustive census of order {n} exceeds the bound {settings.exhaustive_bound}")
    if n == 1:
        return [make_entry(single_loop_circulant(), settings)]

    total = (1 << (n - 1)) - 1
    jobs = [(n, lo, hi, settings) for lo, hi in _shards(total, settings.threads * 4)]
    if settings.threads > 1:
        with Pool(processes=settings.threads) as pool:
            results = pool.map(_scan_masks, jobs)
    else:
        results = [_scan_masks(job) for job in jobs]

    sets = sorted(s for shard in results for s in shard)
    logger.info("exhaustive census n=%d: %d classes from %d connection sets", n, len(sets), total)
    return [make_entry(Circulant(n, s), settings) for s in sets]


def _set_partitions(items: List[int]) -> Iterator[List[List[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [[first]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]


def factor_splits(m: int) -> Iterator[Tuple[int, List[int]]]:
    """
    Ways to write m = n0 * n1 * ... * nr with pairwise coprime parts and
    every n_i >= 4; yields (n0, sorted factors).
    """
    components = prime_power_parts(m) if m > 1 else []
    seen = set()
    for k in range(len(components) + 1):
        for core in combinations(components, k):
            rest = [p for p in components if p not in core]
            for partition in _set_partitions(rest):
                factors = sorted(prod(block) for block in partition)
                if any(f < 4 for f in factors):
                    continue
                key = (prod(core), tuple(factors))
                if key not in seen:
                    seen.add(key)
                    yield key[0], factors


def normal_cores(n0: int, settings: Settings) -> List[Circulant]:
    """
    Connected arc-transitive normal circulants of order n0 other than C4,
    one per multiplier class. Candidates are the subgroups M of units(n0)
    used as connection sets.
    """
    if n0 == 1:
        return [single_loop_circulant()]
    cores = []
    for subgroup in unit_subgroups(n0):
        c = Circulant(n0, tuple(subgroup))
        if c == C4:
            continue
        g = to_dense(c)
        group = automorphism_group(g, settings)
        if is_arc_transitive(g, group) and normalizer_criterion(c, group):
            cores.append(c)
    return cores


def census_constructive(n: int, settings: Optional[Settings] = None) -> List[CensusEntry]:
    """Every connected arc-transitive circulant of order n, rebuilt from decomposition triples."""
    n = check_modulus(n)
    settings = settings or Settings.load()
    if n == 1:
        return [make_entry(single_loop_circulant(), settings)]

    core_cache: Dict[int, List[Circulant]] = {}
    entries: Dict[Tuple[int, ...], CensusEntry] = {}
    for b in (d for d in range(1, n + 1) if n % d == 0):
        for n0, factors in factor_splits(n // b):
            if n0 * prod(factors) == 1:
                continue
            if n0 not in core_cache:
                core_cache[n0] = normal_cores(n0, settings)
            for gamma0 in core_cache[n0]:
                c = reconstruct(make_decomposition(gamma0, factors, b))
                entry = make_entry(c, settings)
                entries.setdefault(entry.canonical_s, entry)
    logger.info("constructive census n=%d: %d classes", n, len(entries))
    return [entries[key] for key in sorted(entries)]


@dataclass(frozen=True)
class MethodComparison:
    n: int
    exhaustive: List[Tuple[int, ...]]
    constructive: List[Tuple[int, ...]]

    @property
    def only_exhaustive(self) -> List[Tuple[int, ...]]:
        return sorted(set(self.exhaustive) - set(self.constructive))

    @property
    def only_constructive(self) -> List[Tuple[int, ...]]:
        return sorted(set(self.constructive) - set(self.exhaustive))

    @property
    def agree(self) -> bool:
        return self.exhaustive == self.constructive

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "agree": self.agree,
            "exhaustive": [list(s) for s in self.exhaustive],
            "constructive": [list(s) for s in self.constructive],
            "only_exhaustive": [list(s) for s in self.only_exhaustive],
            "only_constructive": [list(s) for s in self.only_constructive],
        }


def compare_methods(n: int, settings: Optional[Settings] = None) -> MethodComparison:
    settings = settings or Settings.load()
    exhaustive = [e.canonical_s for e in census_exhaustive(n, settings)]
    constructive = [e.canonical_s for e in census_constructive(n, settings)]
    comparison = MethodComparison(n, exhaustive, constructive)
    if not comparison.agree:
        logger.warning("census methods disagree at n=%d: %s / %s", n, comparison.only_exhaustive, comparison.only_constructive)
    return comparison


def to_csv(entries: Sequence[CensusEntry]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for entry in entries:
        writer.writerow(entry.csv_row())
    return buffer.getvalue()


def to_json(entries: Sequence[CensusEntry]) -> str:
    return json.dumps([entry.to_dict() for entry in entries], indent=2)
