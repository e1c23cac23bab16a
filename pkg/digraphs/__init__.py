"""
Dense digraphs, circulant digraphs and backtracking isomorphism search.
"""

from digraphs.digraph import DenseDigraph, VertexPartition
from digraphs.circulant import Circulant, parse, to_dense
from digraphs.search import BacktrackSearch, find_isomorphism

__all__ = [
    'DenseDigraph',
    'VertexPartition',
    'Circulant',
    'parse',
    'to_dense',
    'BacktrackSearch',
    'find_isomorphism',
]
