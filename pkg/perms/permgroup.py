"""
Permutation groups for automorphism questions about small digraphs.

Products are read left to right: ``p * q`` applies p first, then q.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd, prod
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from config import Settings
from digraphs.circulant import Circulant, is_connected, multiplier_stabilizer, to_dense
from digraphs.digraph import DenseDigraph
from digraphs.search import BacktrackSearch
from errors import (GroupBudgetExceeded, InvalidInputError, NotArcTransitiveError, NotConnectedError,
                    SearchBoundExceeded, TheoremViolation)

logger = logging.getLogger(__name__)

BLOCK_ROWS = 1 << 15


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..n-1}; vertex i maps to images[i]."""

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise InvalidInputError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        q = other.images
        return Permutation(tuple(q[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def first_moved(self) -> int:
        for i, j in enumerate(self.images):
            if i != j:
                return i
        raise InvalidInputError("identity moves no point")

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        seen: Set[int] = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles()]
        return "".join(parts) or "()"

    def __str__(self) -> str:
        return self.cycle_string()


class StabilizerChain:
    """
    Base, strong generating set and transversals of a permutation group.

    Built by deterministic Schreier-Sims: levels are checked deepest first,
    every Schreier generator of a level is stripped through the levels
    below it, and a nontrivial residue is added as a strong generator before
    resuming at the level where stripping stopped. Transversals are only ever
    extended, so earlier coset representatives stay valid.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (), base: Sequence[int] = ()):
        self.degree = degree
        self.base: List[int] = []
        self.strong: List[Permutation] = []
        self._trans: List[Dict[int, Permutation]] = []
        self._trans_inv: List[Dict[int, Permutation]] = []
        self._checked: List[Set[Tuple[int, int]]] = []
        self.sifts = 0

        gens = [g for g in generators if not g.is_identity()]
        for g in gens:
            if g.degree != degree:
                raise InvalidInputError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.strong = list(gens)
        for point in base:
            self._add_base_point(point)
        for g in gens:
            if all(g(b) == b for b in self.base):
                self._add_base_point(g.first_moved())
        for level in range(len(self.base)):
            self._grow_orbit(level)
        self._schreier_sims()
        logger.debug("stabilizer chain: base %s, %d strong generators, %d sifts", self.base, len(self.strong), self.sifts)

    @classmethod
    def from_strong_generators(cls, degree: int, base: Sequence[int], generators: Sequence[Permutation]) -> "StabilizerChain":
        """
        Wrap a generating set already known to be strong relative to ``base``
        (the generators fixing the first i base points generate the pointwise
        stabilizer of those points). Only transversals are computed.
        """
        chain = cls.__new__(cls)
        chain.degree = degree
        chain.base = []
        chain.strong = [g for g in generators if not g.is_identity()]
        chain._trans, chain._trans_inv, chain._checked = [], [], []
        chain.sifts = 0
        for point in base:
            chain._add_base_point(point)
        for level in range(len(chain.base)):
            chain._grow_orbit(level)
        return chain

    def _add_base_point(self, point: int) -> None:
        identity = Permutation.identity(self.degree)
        self.base.append(point)
        self._trans.append({point: identity})
        self._trans_inv.append({point: identity})
        self._checked.append(set())

    def _level_generators(self, level: int) -> List[Tuple[int, Permutation]]:
        fixed = self.base[:level]
        return [(k, s) for k, s in enumerate(self.strong) if all(s(b) == b for b in fixed)]

    def _grow_orbit(self, level: int) -> None:
        trans, trans_inv = self._trans[level], self._trans_inv[level]
        gens = [s for _, s in self._level_generators(level)]
        frontier = list(trans)
        while frontier:
            u = frontier.pop()
            for s in gens:
                v = s(u)
                if v not in trans:
                    trans[v] = trans[u] * s
                    trans_inv[v] = trans[v].inverse()
                    frontier.append(v)

    def strip(self, g: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        """Sift g from ``start`` down; returns the residue and the level where sifting stopped."""
        for level in range(start, len(self.base)):
            u = g(self.base[level])
            if u not in self._trans[level]:
                return g, level
            g = g * self._trans_inv[level][u]
        return g, len(self.base)

    def _check_level(self, level: int) -> Optional[int]:
        trans = self._trans[level]
        for u in sorted(trans):
            for k, s in self._level_generators(level):
                if (u, k) in self._checked[level]:
                    continue
                self._checked[level].add((u, k))
                schreier = trans[u] * s * self._trans_inv[level][s(u)]
                self.sifts += 1
                residue, stop = self.strip(schreier, level + 1)
                if residue.is_identity():
                    continue
                if stop == len(self.base):
                    self._add_base_point(residue.first_moved())
                self.strong.append(residue)
                for deeper in range(level + 1, stop + 1):
                    self._grow_orbit(deeper)
                return stop
        return None

    def _schreier_sims(self) -> None:
        level = len(self.base) - 1
        while level >= 0:
            resume = self._check_level(level)
            level = level - 1 if resume is None else resume

    def orbit_sizes(self) -> List[int]:
        return [len(t) for t in self._trans]

    def order(self) -> int:
        return prod(self.orbit_sizes())

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, stop = self.strip(g)
        return stop == len(self.base) and residue.is_identity()

    def elements(self) -> Iterator[Permutation]:
        """Every group element exactly once, as products of coset representatives."""
        reps = [[self._trans[level][u] for u in sorted(self._trans[level])] for level in range(len(self.base))]
        identity = Permutation.identity(self.degree)
        for choice in product(*reversed(reps)):
            g = identity
            for r in choice:
                g = g * r
            yield g

    def element_blocks(self, rows: int = BLOCK_ROWS) -> Iterator[np.ndarray]:
        """
        Every group element exactly once, as rows of integer image arrays.

        Deep levels are expanded with numpy into a block of at most ``rows``
        rows; the remaining shallow levels are iterated one combination at a
        time and composed onto the block.
        """
        reps = [np.array([self._trans[level][u].images for u in sorted(self._trans[level])], dtype=np.intp)
                for level in range(len(self.base))]
        inner = np.arange(self.degree, dtype=np.intp)[None, :]
        split = len(reps)
        while split > 0 and inner.shape[0] * reps[split - 1].shape[0] <= rows:
            split -= 1
            level = reps[split]
            inner = level[:, inner].reshape(-1, self.degree)
        outer = reps[:split]
        for choice in product(*(range(r.shape[0]) for r in reversed(outer))):
            composed = np.arange(self.degree, dtype=np.intp)
            for level, idx in zip(reversed(outer), choice):
                composed = level[idx][composed]
            yield composed[inner]


class PermGroup:
    """
    Group generated by permutations of {0..degree-1}; the stabilizer chain is
    built on first use unless one is supplied.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], chain: Optional[StabilizerChain] = None):
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(generators)
        for g in self.generators:
            if g.degree != degree:
                raise InvalidInputError(f"generator of degree {g.degree} in a group of degree {degree}")
        if chain is not None:
            self.__dict__["chain"] = chain

    @cached_property
    def chain(self) -> StabilizerChain:
        return StabilizerChain(self.degree, self.generators)

    @property
    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def elements(self) -> Iterator[Permutation]:
        return self.chain.elements()

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"


def _orbit_under(point: int, gens: Sequence[Permutation]) -> Set[int]:
    seen = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g(x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def automorphism_group(g: DenseDigraph, settings: Optional[Settings] = None) -> PermGroup:
    """
    Full automorphism group of a digraph by backtracking.

    Points are handled from the last to the first. At point i the earlier
    points stay fixed, and for every candidate image of i outside the orbit
    of the generators found so far a search either produces a new generator
    or rules out the candidate's whole orbit. The generators then form a
    strong generating set for the base 0, 1, ..., so the order is the product
    of the orbit sizes without any further sifting.

    Args:
        g: Digraph with at most ``settings.aut_bound`` vertices
        settings: Search bounds; defaults to ``Settings.load()``

    Returns:
        The automorphism group with its stabilizer chain attached

    Raises:
        SearchBoundExceeded: if the digraph is too large
    """
    settings = settings or Settings.load()
    n = g.order
    if n > settings.aut_bound:
        raise SearchBoundExceeded(f"automorphism search on {n} vertices exceeds the bound {settings.aut_bound}")

    search = BacktrackSearch(g, g)
    gens: List[Permutation] = []
    base: List[int] = []
    searches = 0
    for i in range(n - 1, -1, -1):
        fixed = {j: j for j in range(i)}
        cand = search.constrained(fixed)
        orbit = _orbit_under(i, gens)
        ruled_out: Set[int] = set()
        for w in np.flatnonzero(cand[i]):
            w = int(w)
            if w in orbit or w in ruled_out:
                continue
            searches += 1
            images = search.find({**fixed, i: w})
            if images is None:
                ruled_out |= _orbit_under(w, gens)
                continue
            gens.append(Permutation(tuple(images)))
            orbit = _orbit_under(i, gens)
        if len(orbit) > 1:
            base.append(i)

    base.reverse()
    logger.debug("automorphism search on %d vertices: %d searches, %d generators", n, searches, len(gens))
    gens.reverse()
    chain = StabilizerChain.from_strong_generators(n, base, gens)
    return PermGroup(n, gens, chain)


def arc_orbit_size(g: DenseDigraph, group: PermGroup) -> int:
    """Size of the orbit of the first arc (row-major) under the group."""
    arcs = g.arcs()
    if not arcs:
        raise InvalidInputError("digraph has no arcs")
    start = arcs[0]
    seen = {start}
    frontier = [start]
    while frontier:
        u, v = frontier.pop()
        for p in group.generators:
            image = (p(u), p(v))
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return len(seen)


def is_arc_transitive(g: DenseDigraph, group: Optional[PermGroup] = None, settings: Optional[Settings] = None) -> bool:
    """True iff the automorphism group is transitive on arcs."""
    group = group or automorphism_group(g, settings)
    return arc_orbit_size(g, group) == g.arc_count()


def _is_full_cycle_rows(block: np.ndarray) -> np.ndarray:
    rows = np.arange(block.shape[0])
    x = block[:, 0].copy()
    ok = np.ones(block.shape[0], dtype=bool)
    for _ in range(block.shape[1] - 1):
        ok &= x != 0
        x = block[rows, x]
    return ok & (x == 0)


def regular_cyclic_subgroups(grp: PermGroup, settings: Optional[Settings] = None,
                              limit: Optional[int] = None) -> List[Permutation]:
    """
    Every cyclic subgroup acting regularly on the points.

    Such a subgroup is generated by a full cycle; each one is reported once,
    by its generator with the lexicographically least image list. The result
    is sorted. With ``limit`` the scan stops once that many are found.

    Raises:
        GroupBudgetExceeded: if |grp| exceeds ``settings.group_budget``
    """
    settings = settings or Settings.load()
    order = grp.order
    if order > settings.group_budget:
        raise GroupBudgetExceeded(f"group of order {order} exceeds the enumeration budget {settings.group_budget}")
    n = grp.degree
    seen: Set[Tuple[int, ...]] = set()
    found: List[Permutation] = []
    for block in grp.chain.element_blocks():
        for row in block[_is_full_cycle_rows(block)]:
            images = tuple(int(x) for x in row)
            if images in seen:
                continue
            sigma = Permutation(images)
            generators = []
            power = sigma
            for k in range(1, n + 1):
                if gcd(k, n) == 1:
                    generators.append(power.images)
                power = power * sigma
            seen.update(generators)
            found.append(Permutation(min(generators)))
            if limit is not None and len(found) >= limit:
                found.sort(key=lambda p: p.images)
                return found
    found.sort(key=lambda p: p.images)
    logger.debug("%d regular cyclic subgroups in a group of order %d", len(found), order)
    return found


def circulant_automorphism_group(c: Circulant, settings: Optional[Settings] = None) -> PermGroup:
    """Aut(c), with the order bound checked before the adjacency matrix is built."""
    settings = settings or Settings.load()
    if c.n > settings.aut_bound:
        raise SearchBoundExceeded(f"automorphism search on {c.n} vertices exceeds the bound {settings.aut_bound}")
    return automorphism_group(to_dense(c), settings)


def normalizer_order(c: Circulant) -> int:
    """Order of the normalizer of the translations in Aut: n times the multiplier stabilizer size."""
    return c.n * len(multiplier_stabilizer(c))


def normalizer_criterion(c: Circulant, group: Optional[PermGroup] = None, settings: Optional[Settings] = None) -> bool:
    """Normality as |Aut(c)| = n * |multiplier stabilizer|. Holds for any circulant."""
    group = group or circulant_automorphism_group(c, settings)
    return group.order == normalizer_order(c)


def is_normal_circulant(c: Circulant, group: Optional[PermGroup] = None, settings: Optional[Settings] = None) -> bool:
    """
    True iff Aut(c) has exactly one regular cyclic subgroup.

    Only meaningful for connected arc-transitive circulants; other input
    raises NotConnectedError or NotArcTransitiveError. The answer is
    cross-checked against the normalizer criterion.
    """
    settings = settings or Settings.load()
    if not is_connected(c):
        raise NotConnectedError(f"{c} is not connected")
    group = group or circulant_automorphism_group(c, settings)
    if not is_arc_transitive(to_dense(c), group):
        raise NotArcTransitiveError(f"{c} is not arc-transitive")
    unique = len(regular_cyclic_subgroups(group, settings)) == 1
    if unique != normalizer_criterion(c, group):
        raise TheoremViolation(f"normality tests disagree for {c}: unique regular cyclic subgroup = {unique}")
    return unique


def coordinatewise(p1: Permutation, p2: Permutation) -> Permutation:
    """(u, w) -> (p1(u), p2(w)) on serialized pairs u * deg(p2) + w."""
    m = p2.degree
    return Permutation(tuple(p1(u) * m + p2(w) for u in range(p1.degree) for w in range(m)))


def wreath_generators(group: PermGroup, b: int) -> List[Permutation]:
    """
    Generators of S_b wr group acting on serialized blow-up vertices u * b + x:
    the top group moves whole blocks, and one transposition plus one b-cycle
    act inside block 0.
    """
    n = group.degree
    out = [Permutation(tuple(g(u) * b + x for u in range(n) for x in range(b))) for g in group.generators]
    if b >= 2:
        swap = list(range(n * b))
        swap[0], swap[1] = 1, 0
        out.append(Permutation(tuple(swap)))
        rotate = list(range(n * b))
        for x in range(b):
            rotate[x] = (x + 1) % b
        out.append(Permutation(tuple(rotate)))
    return out
