"""
Structure theory of connected arc-transitive circulants: the decomposition
into a normal core, complete factors and a blow-up, isomorphism testing and
the census.
"""

from structure.decompose import Decomposition, aut_order, decompose, reconstruct, verify_decomposition
from structure.isotest import isomorphism_report, multiplier_equivalent
from structure.census import CensusEntry, census_constructive, census_exhaustive

__all__ = [
    'Decomposition',
    'aut_order',
    'decompose',
    'reconstruct',
    'verify_decomposition',
    'isomorphism_report',
    'multiplier_equivalent',
    'CensusEntry',
    'census_constructive',
    'census_exhaustive',
]
