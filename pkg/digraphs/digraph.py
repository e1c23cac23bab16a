"""
Explicit digraphs on vertices 0..order-1 backed by a dense boolean matrix.

Products serialize vertex pairs row-major with the first factor major:
(u, w) in g1 x g2 is u * |V(g2)| + w, and (u, x) in g[K_b complement] is u * b + x.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from errors import InvalidInputError

logger = logging.getLogger(__name__)


class DenseDigraph:
    """
    A digraph stored as an order x order boolean adjacency matrix.

    Loops (true diagonal entries) are only accepted when ``allow_loops`` is
    set; the single-vertex loop is the one place the decomposition needs them.
    """

    __slots__ = ("_adj", "allow_loops")

    def __init__(self, adjacency: Any, allow_loops: bool = False):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] < 1:
            raise InvalidInputError(f"adjacency must be a nonempty square matrix, got shape {adj.shape}")
        if not allow_loops and adj.diagonal().any():
            raise InvalidInputError("digraph has loops but was not built with allow_loops=True")
        adj.setflags(write=False)
        self._adj = adj
        self.allow_loops = bool(allow_loops)

    @property
    def order(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only view of the adjacency matrix."""
        return self._adj

    def _check_vertex(self, v: int) -> int:
        if not 0 <= v < self.order:
            raise InvalidInputError(f"vertex {v} out of range for order {self.order}")
        return int(v)

    def out_neighborhood(self, v: int) -> FrozenSet[int]:
        """Vertices w with an arc v -> w."""
        v = self._check_vertex(v)
        return frozenset(int(w) for w in np.flatnonzero(self._adj[v]))

    def in_neighborhood(self, v: int) -> FrozenSet[int]:
        """Vertices u with an arc u -> v."""
        v = self._check_vertex(v)
        return frozenset(int(u) for u in np.flatnonzero(self._adj[:, v]))

    def arc_count(self) -> int:
        return int(self._adj.sum())

    def arcs(self) -> List[Tuple[int, int]]:
        """All arcs in row-major order."""
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(self._adj))]

    def has_loops(self) -> bool:
        return bool(self._adj.diagonal().any())

    def is_automorphism(self, images: Sequence[int]) -> bool:
        """True if the vertex map i -> images[i] preserves arcs and non-arcs."""
        p = np.asarray(images, dtype=np.intp)
        if p.shape != (self.order,) or sorted(p.tolist()) != list(range(self.order)):
            return False
        return bool(np.array_equal(self._adj[np.ix_(p, p)], self._adj))

    def relabel(self, images: Sequence[int]) -> "DenseDigraph":
        """The isomorphic copy in which vertex v is renamed images[v]."""
        p = np.asarray(images, dtype=np.intp)
        if sorted(p.tolist()) != list(range(self.order)):
            raise InvalidInputError("relabeling must be a permutation of the vertices")
        out = np.zeros_like(self._adj)
        out[np.ix_(p, p)] = self._adj
        return DenseDigraph(out, allow_loops=self.allow_loops)

    def to_dict(self) -> Dict[str, Any]:
        return {"order": self.order, "arcs": [list(a) for a in self.arcs()]}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseDigraph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash((self.order, np.packbits(self._adj).tobytes()))

    def __repr__(self) -> str:
        return f"DenseDigraph(order={self.order}, arcs={self.arc_count()})"


@dataclass(frozen=True)
class VertexPartition:
    """Disjoint nonempty blocks covering 0..order-1, each block sorted, blocks ordered by minimum."""

    order: int
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        seen: List[int] = []
        for block in self.blocks:
            if not block:
                raise InvalidInputError("partition blocks must be nonempty")
            seen.extend(block)
        if sorted(seen) != list(range(self.order)):
            raise InvalidInputError(f"blocks do not partition the {self.order} vertices")

    @classmethod
    def from_blocks(cls, order: int, blocks: Iterable[Iterable[int]]) -> "VertexPartition":
        normalized = sorted((tuple(sorted(int(v) for v in b)) for b in blocks), key=lambda b: b[:1])
        return cls(order, tuple(normalized))

    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)


def from_arcs(order: int, arcs: Iterable[Tuple[int, int]], allow_loops: bool = False) -> DenseDigraph:
    adj = np.zeros((order, order), dtype=bool)
    for u, v in arcs:
        if not (0 <= u < order and 0 <= v < order):
            raise InvalidInputError(f"arc ({u}, {v}) out of range for order {order}")
        adj[u, v] = True
    return DenseDigraph(adj, allow_loops=allow_loops)


def complete_graph(n: int) -> DenseDigraph:
    """K_n with both arc directions on every edge."""
    return DenseDigraph(~np.eye(n, dtype=bool))


def directed_cycle(n: int) -> DenseDigraph:
    return from_arcs(n, [(v, (v + 1) % n) for v in range(n)], allow_loops=(n == 1))


def edgeless(n: int) -> DenseDigraph:
    return DenseDigraph(np.zeros((n, n), dtype=bool))


def single_loop() -> DenseDigraph:
    return DenseDigraph([[True]], allow_loops=True)


def tensor_product(g1: DenseDigraph, g2: DenseDigraph) -> DenseDigraph:
    """
    Tensor (direct) product g1 x g2.

    Args:
        g1: First factor (major coordinate)
        g2: Second factor

    Returns:
        Digraph on pairs with ((u1,u2),(v1,v2)) an arc iff both coordinate
        pairs are arcs
    """
    adj = np.kron(g1.adjacency, g2.adjacency).astype(bool)
    return DenseDigraph(adj, allow_loops=g1.has_loops() and g2.has_loops())


def lex_product(g: DenseDigraph, b: int) -> DenseDigraph:
    """
    Lexicographic product g[K_b complement]: every vertex blown up into b
    independent copies.
    """
    if isinstance(b, bool) or not isinstance(b, (int, np.integer)) or b < 1:
        raise InvalidInputError(f"blow-up multiplicity must be a positive integer, got {b!r}")
    adj = np.kron(g.adjacency, np.ones((int(b), int(b)), dtype=bool)).astype(bool)
    return DenseDigraph(adj, allow_loops=g.allow_loops)


def quotient(g: DenseDigraph, p: VertexPartition) -> DenseDigraph:
    """
    Collapse each block to a vertex; blocks i, j are joined when some arc
    runs from block i to block j. Arcs inside a block become loops.
    """
    if p.order != g.order:
        raise InvalidInputError(f"partition is over {p.order} vertices, digraph has {g.order}")
    indicator = np.zeros((g.order, len(p.blocks)), dtype=np.int64)
    for i, block in enumerate(p.blocks):
        indicator[list(block), i] = 1
    counts = indicator.T @ g.adjacency.astype(np.int64) @ indicator
    return DenseDigraph(counts > 0, allow_loops=True)


def thickness_classes(g: DenseDigraph) -> VertexPartition:
    """Group vertices that share both their out- and in-neighbourhoods."""
    adj = g.adjacency
    groups: Dict[Tuple[bytes, bytes], List[int]] = {}
    for v in range(g.order):
        key = (adj[v].tobytes(), adj[:, v].tobytes())
        groups.setdefault(key, []).append(v)
    return VertexPartition.from_blocks(g.order, groups.values())


def is_r_thin(g: DenseDigraph) -> bool:
    return thickness_classes(g).is_discrete()


def is_connected(g: DenseDigraph) -> bool:
    """Weak connectivity of the underlying graph."""
    if g.order == 1:
        return True
    components, _ = connected_components(csr_matrix(g.adjacency), directed=True, connection="weak")
    return components == 1
