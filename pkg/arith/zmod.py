"""
Arithmetic of the cyclic group Z_n: units, CRT coordinates and divisors.

All functions are pure; n = 1 is a legal modulus (the one-element group).
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, prod
from typing import Dict, FrozenSet, List, Sequence, Tuple

from sympy import divisors, factorint

from errors import InvalidInputError

Modulus = int


def check_modulus(n: int) -> int:
    """Validate a group order and return it as a plain int."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"modulus must be a positive integer, got {n!r}")
    return n


@lru_cache(maxsize=512)
def units(n: Modulus) -> FrozenSet[int]:
    """
    Multipliers of Z_n.

    Args:
        n: Group order

    Returns:
        {k in 0..n-1 : gcd(k, n) = 1}; for n = 1 this is {0}, the identity
        automorphism of the one-element group
    """
    check_modulus(n)
    if n == 1:
        return frozenset({0})
    return frozenset(k for k in range(1, n) if gcd(k, n) == 1)


def prime_power_parts(n: Modulus) -> List[int]:
    """The prime-power components p^e of n, ascending."""
    check_modulus(n)
    return sorted(p ** e for p, e in factorint(n).items())


@lru_cache(maxsize=512)
def unitary_divisors(n: Modulus) -> Tuple[int, ...]:
    """All m | n with gcd(m, n/m) = 1, ascending."""
    check_modulus(n)
    return tuple(m for m in divisors(n) if gcd(m, n // m) == 1)


def pairwise_coprime(values: Sequence[int]) -> bool:
    return all(gcd(a, b) == 1 for i, a in enumerate(values) for b in values[i + 1:])


@dataclass(frozen=True)
class CrtSplit:
    """
    Coordinates of Z_n as Z_{parts[0]} x ... x Z_{parts[-1]}.

    The forward map sends x to (x mod parts[0], ..., x mod parts[-1]); the
    inverse is CRT reconstruction. Both are tabulated on construction.
    """

    n: int
    parts: Tuple[int, ...]
    _forward: Tuple[Tuple[int, ...], ...] = field(repr=False, compare=False, default=())
    _inverse: Dict[Tuple[int, ...], int] = field(repr=False, compare=False, default_factory=dict)

    def forward(self, x: int) -> Tuple[int, ...]:
        if not 0 <= x < self.n:
            raise InvalidInputError(f"{x} is not an element of Z_{self.n}")
        return self._forward[x]

    def inverse(self, coords: Sequence[int]) -> int:
        key = tuple(coords)
        if key not in self._inverse:
            raise InvalidInputError(f"{key} is not a coordinate vector for parts {self.parts}")
        return self._inverse[key]

    def coordinate(self, x: int, index: int) -> int:
        return self._forward[x][index]


@lru_cache(maxsize=256)
def _crt_split(n: int, parts: Tuple[int, ...]) -> CrtSplit:
    forward = tuple(tuple(x % p for p in parts) for x in range(n))
    inverse = {coords: x for x, coords in enumerate(forward)}
    return CrtSplit(n, parts, forward, inverse)


def crt_split(n: Modulus, parts: Sequence[int]) -> CrtSplit:
    """
    Build CRT coordinates for Z_n.

    Args:
        n: Group order
        parts: Pairwise coprime positive integers whose product is n

    Returns:
        The coordinate bijection

    Raises:
        InvalidInputError: if the parts are not coprime or do not multiply to n
    """
    check_modulus(n)
    parts = tuple(int(p) for p in parts)
    if not parts or any(p < 1 for p in parts):
        raise InvalidInputError(f"CRT parts must be positive integers, got {parts}")
    if prod(parts) != n:
        raise InvalidInputError(f"CRT parts {parts} do not multiply to {n}")
    if not pairwise_coprime(parts):
        raise InvalidInputError(f"CRT parts {parts} are not pairwise coprime")
    return _crt_split(n, parts)


def subgroup_of_order(n: Modulus, d: int) -> FrozenSet[int]:
    """The unique subgroup of Z_n of order d: {0, n/d, 2n/d, ...}."""
    check_modulus(n)
    if d < 1 or n % d:
        raise InvalidInputError(f"{d} does not divide {n}")
    step = n // d
    return frozenset(range(0, n, step))


def multiplicative_closure(generators: Sequence[int], n: Modulus) -> FrozenSet[int]:
    """The subgroup of units(n) generated by the given units."""
    one = 1 % n
    group = {one}
    frontier = [one]
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = (x * g) % n
            if y not in group:
                group.add(y)
                frontier.append(y)
    return frozenset(group)


def unit_subgroups(n: Modulus) -> List[FrozenSet[int]]:
    """
    Every subgroup of units(n), ordered by size then by sorted elements.

    Subgroups are grown from cyclic ones by joining pairs until nothing new
    appears; units(n) is tiny at the orders this package handles.
    """
    check_modulus(n)
    cyclic = {multiplicative_closure([k], n) for k in units(n)}
    found = set(cyclic)
    frontier = list(found)
    while frontier:
        new = []
        for a in frontier:
            for b in cyclic:
                joined = multiplicative_closure(sorted(a | b), n)
                if joined not in found:
                    found.add(joined)
                    new.append(joined)
        frontier = new
    return sorted(found, key=lambda h: (len(h), sorted(h)))
