"""
Permutation groups: stabilizer chains, automorphism groups of digraphs and
normality tests for circulants.
"""
