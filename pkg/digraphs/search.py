"""
Backtracking search for arc-preserving bijections between two digraphs.

A boolean candidate matrix ``cand[v, w]`` (may source vertex v map to target
vertex w) starts from per-vertex invariants and is narrowed after each
assignment by comparing adjacency, 2-path and common-neighbour counts
against the assigned pair.
"""

import logging
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from digraphs.digraph import DenseDigraph

logger = logging.getLogger(__name__)


def _pair_matrices(g: DenseDigraph) -> List[np.ndarray]:
    a = g.adjacency.astype(np.int64)
    return [a, a @ a, a @ a.T, a.T @ a]


def _vertex_invariants(mats: List[np.ndarray]) -> List[Tuple]:
    a = mats[0]
    rows = []
    for v in range(a.shape[0]):
        key = [int(a[v].sum()), int(a[:, v].sum()), int(a[v, v])]
        for m in mats[1:]:
            key.append(tuple(np.sort(m[v])))
            key.append(tuple(np.sort(m[:, v])))
            key.append(int(m[v, v]))
        rows.append(tuple(key))
    return rows


class BacktrackSearch:
    """
    Finds isomorphisms source -> target, optionally extending a fixed
    partial map. Construct once per (source, target) pair; every call to
    ``find`` starts from the same invariant-filtered candidate matrix.

    Vertices are assigned in order of fewest remaining candidates (lowest
    index on ties) and candidates are tried in ascending order, so results
    are deterministic.
    """

    def __init__(self, source: DenseDigraph, target: DenseDigraph):
        self.source = source
        self.target = target
        self.n = source.order
        self.nodes = 0
        self._feasible = source.order == target.order and source.arc_count() == target.arc_count()
        if not self._feasible:
            return

        self._src = _pair_matrices(source)
        self._dst = _pair_matrices(target)
        src_inv = _vertex_invariants(self._src)
        dst_inv = _vertex_invariants(self._dst)
        self._initial = np.array([[s == d for d in dst_inv] for s in src_inv], dtype=bool)
        if sorted(src_inv) != sorted(dst_inv):
            self._feasible = False

    def initial_candidates(self) -> np.ndarray:
        return self._initial.copy()

    def refine(self, cand: np.ndarray, v: int, w: int) -> np.ndarray:
        """Narrow ``cand`` after assigning v -> w; returns a new matrix."""
        out = cand.copy()
        for x, y in zip(self._src, self._dst):
            out &= x[:, v][:, None] == y[:, w][None, :]
            out &= x[v, :][:, None] == y[w, :][None, :]
        out[:, w] = False
        out[v, :] = False
        out[v, w] = True
        return out

    def constrained(self, fixed: Mapping[int, int]) -> Optional[np.ndarray]:
        """Candidate matrix with the given assignments applied, or None if contradictory."""
        if not self._feasible:
            return None
        cand = self.initial_candidates()
        for v, w in fixed.items():
            if not cand[v, w]:
                return None
            cand = self.refine(cand, v, w)
        if not cand.any(axis=1).all():
            return None
        return cand

    def find(self, fixed: Optional[Mapping[int, int]] = None) -> Optional[List[int]]:
        """
        Search for an isomorphism extending ``fixed``.

        Args:
            fixed: Source vertex -> target vertex assignments that must hold

        Returns:
            The image list of an isomorphism, or None if none exists
        """
        fixed = dict(fixed or {})
        cand = self.constrained(fixed)
        if cand is None:
            return None
        self.nodes = 0
        result = self._extend(cand, fixed)
        logger.debug("backtracking visited %d nodes (order %d)", self.nodes, self.n)
        return result

    def _extend(self, cand: np.ndarray, assigned: Dict[int, int]) -> Optional[List[int]]:
        self.nodes += 1
        if len(assigned) == self.n:
            images = [assigned[v] for v in range(self.n)]
            return images if self._is_isomorphism(images) else None

        counts = cand.sum(axis=1)
        best, best_count = -1, self.n + 1
        for v in range(self.n):
            if v in assigned:
                continue
            c = int(counts[v])
            if c == 0:
                return None
            if c < best_count:
                best, best_count = v, c

        for w in np.flatnonzero(cand[best]):
            w = int(w)
            narrowed = self.refine(cand, best, w)
            if not narrowed.any(axis=1).all():
                continue
            assigned[best] = w
            result = self._extend(narrowed, assigned)
            if result is not None:
                return result
            del assigned[best]
        return None

    def _is_isomorphism(self, images: List[int]) -> bool:
        p = np.asarray(images, dtype=np.intp)
        return bool(np.array_equal(self.target.adjacency[np.ix_(p, p)], self.source.adjacency))


def find_isomorphism(g1: DenseDigraph, g2: DenseDigraph, fixed: Optional[Mapping[int, int]] = None) -> Optional[List[int]]:
    """One-shot wrapper around BacktrackSearch."""
    return BacktrackSearch(g1, g2).find(fixed)
