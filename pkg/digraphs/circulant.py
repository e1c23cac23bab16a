"""
Circulant digraphs Cay(Z_n, S): vertex x points to y iff y - x lies in S.

Connection sets are stored sorted, so equality of circulants is equality of
(n, s). The only circulant carrying a loop is the single loop Cay(Z_1, {0}).
"""

import json
import logging
from dataclasses import dataclass
from math import gcd
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from arith.zmod import check_modulus, crt_split, subgroup_of_order, unitary_divisors, units
from digraphs.digraph import DenseDigraph
from errors import InvalidInputError, TheoremViolation
from schemas import CirculantModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Circulant:
    """Cay(Z_n, S) with S kept as a sorted tuple of distinct residues."""

    n: int
    s: Tuple[int, ...]

    def __post_init__(self):
        check_modulus(self.n)
        try:
            members = sorted({int(x) for x in self.s})
        except (TypeError, ValueError):
            raise InvalidInputError(f"connection set must contain integers, got {self.s!r}")
        if not members:
            raise InvalidInputError("connection set must be nonempty")
        if members[0] < 0 or members[-1] >= self.n:
            raise InvalidInputError(f"connection set {members} has elements outside Z_{self.n}")
        if self.n > 1 and members[0] == 0:
            raise InvalidInputError("0 may only appear in the connection set of the single loop Cay(Z_1, {0})")
        object.__setattr__(self, "s", tuple(members))

    @property
    def size(self) -> int:
        return len(self.s)

    def set(self) -> FrozenSet[int]:
        return frozenset(self.s)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "s": list(self.s)}

    def __str__(self) -> str:
        return f"{self.n}:{','.join(map(str, self.s))}"


def single_loop_circulant() -> Circulant:
    return Circulant(1, (0,))


def complete_circulant(n: int) -> Circulant:
    """K_n as Cay(Z_n, Z_n minus 0); the single loop when n = 1."""
    check_modulus(n)
    if n == 1:
        return single_loop_circulant()
    return Circulant(n, tuple(range(1, n)))


def parse(text: str) -> Circulant:
    """
    Read a circulant from ``"n:s1,s2,..."`` or ``{"n": .., "s": [..]}``.

    Raises:
        InvalidInputError: if the text matches neither form or describes an
            invalid circulant
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            model = CirculantModel.model_validate(json.loads(text))
        except (json.JSONDecodeError, ValueError) as e:
            raise InvalidInputError(f"invalid circulant JSON: {e}")
        return Circulant(model.n, tuple(model.s))

    head, sep, tail = text.partition(":")
    if not sep:
        raise InvalidInputError(f"expected 'n:s1,s2,...', got {text!r}")
    try:
        n = int(head)
        s = tuple(int(x) for x in tail.split(",") if x.strip())
    except ValueError:
        raise InvalidInputError(f"non-integer entry in {text!r}")
    return Circulant(n, s)


def to_dense(c: Circulant) -> DenseDigraph:
    """Explicit digraph with arc x -> y iff (y - x) mod n is in S."""
    idx = np.arange(c.n)
    diff = (idx[None, :] - idx[:, None]) % c.n
    return DenseDigraph(np.isin(diff, c.s), allow_loops=(c.n == 1))


def is_connected(c: Circulant) -> bool:
    """S generates Z_n, i.e. gcd(n, S) = 1."""
    g = c.n
    for x in c.s:
        g = gcd(g, x)
    return g == 1


def is_undirected(c: Circulant) -> bool:
    """S = -S."""
    return all((-x) % c.n in c.set() for x in c.s)


def translation_stabilizer(c: Circulant) -> FrozenSet[int]:
    """
    The subgroup {u : S + u = S} of Z_n.

    Its order is the multiplicity b in c = quotient[K_b complement]; S is a
    union of its cosets.
    """
    members = c.set()
    return frozenset(u for u in range(c.n) if all((x + u) % c.n in members for x in c.s))


def lex_relabeling(n: int, b: int) -> List[int]:
    """
    Vertex map Z_{nb} -> serialized lex_product vertices: x goes to
    (x mod n) * b + x // n.
    """
    return [(x % n) * b + x // n for x in range(n * b)]


def thin_quotient(c: Circulant) -> Tuple[Circulant, int]:
    """
    Collapse the translation stabilizer.

    Args:
        c: Circulant of order at least 2

    Returns:
        (Cay(Z_{n/b}, S mod n/b), b) where b = |translation_stabilizer(c)|;
        the quotient is R-thin and c is its lexicographic blow-up by b

    Raises:
        InvalidInputError: for the single loop
        TheoremViolation: if S is not a union of stabilizer cosets
    """
    if c.n < 2:
        raise InvalidInputError("thin_quotient needs a circulant of order at least 2")
    h = translation_stabilizer(c)
    b = len(h)
    if h != subgroup_of_order(c.n, b):
        raise TheoremViolation(f"translation stabilizer of {c} is not the order-{b} subgroup")
    if b == 1:
        return c, 1

    m = c.n // b
    reduced = sorted({x % m for x in c.s})
    if len(reduced) * b != len(c.s):
        raise TheoremViolation(f"{c} is not a union of cosets of its translation stabilizer")
    if reduced[0] == 0:
        raise InvalidInputError(f"{c} meets its translation stabilizer; the quotient would carry a loop")
    logger.debug("thin quotient of %s: order %d, multiplicity %d", c, m, b)
    return Circulant(m, tuple(reduced)), b


def crt_factor_split(c: Circulant, m: int) -> Optional[Circulant]:
    """
    Split off a complete factor K_m along the CRT coordinate of order m.

    In coordinates Z_{n/m} x Z_m the split exists when S = S' x (Z_m minus 0).
    For m = n the residual is the single loop. A residual whose connection
    set would contain 0 is reported as no split.

    Args:
        c: Connected R-thin circulant
        m: Unitary divisor of n, at least 2

    Returns:
        Cay(Z_{n/m}, S') or None
    """
    if m < 2 or m not in unitary_divisors(c.n):
        raise InvalidInputError(f"{m} is not a unitary divisor of {c.n} that is at least 2")
    k = c.n // m
    split = crt_split(c.n, [k, m])
    residual = set()
    for x in c.s:
        a, r = split.forward(x)
        if r == 0:
            return None
        residual.add(a)
    if len(c.s) != len(residual) * (m - 1):
        return None
    if k == 1:
        return single_loop_circulant()
    if 0 in residual:
        return None
    return Circulant(k, tuple(residual))


def _check_unit(k: int, n: int) -> int:
    if n == 1:
        return 0
    if gcd(k, n) != 1:
        raise InvalidInputError(f"{k} is not a unit modulo {n}")
    return k % n


def multiplier_apply(c: Circulant, k: int) -> Circulant:
    """Cay(Z_n, kS); isomorphic to c via x -> kx."""
    k = _check_unit(k, c.n)
    return Circulant(c.n, tuple((k * x) % c.n for x in c.s))


def _scaled(c: Circulant, k: int) -> Tuple[int, ...]:
    return tuple(sorted((k * x) % c.n for x in c.s))


def multiplier_stabilizer(c: Circulant) -> FrozenSet[int]:
    """{k in units(n) : kS = S}."""
    return frozenset(k for k in units(c.n) if _scaled(c, k) == c.s)


@dataclass(frozen=True)
class MultiplierClass:
    """
    Multiplier orbit of a circulant, given by its lexicographically least
    member. ``multiplier`` is the least unit sending the input onto the
    representative.
    """

    representative: Circulant
    stabilizer_units: FrozenSet[int]
    multiplier: int


def canonical_multiplier_form(c: Circulant) -> MultiplierClass:
    best_k, best = None, None
    for k in sorted(units(c.n)):
        image = _scaled(c, k)
        if best is None or image < best:
            best_k, best = k, image
    return MultiplierClass(Circulant(c.n, best), multiplier_stabilizer(c), best_k)


def tensor_circulant(c1: Circulant, c2: Circulant) -> Circulant:
    """
    Circulant form of the tensor product for coprime orders:
    Cay(Z_{n1 n2}, {x : x mod n1 in S1, x mod n2 in S2}).
    """
    if gcd(c1.n, c2.n) != 1:
        raise InvalidInputError(f"tensor product of circulants needs coprime orders, got {c1.n} and {c2.n}")
    n = c1.n * c2.n
    s1, s2 = c1.set(), c2.set()
    return Circulant(n, tuple(x for x in range(n) if x % c1.n in s1 and x % c2.n in s2))


def lex_circulant(c: Circulant, b: int) -> Circulant:
    """Circulant form of c[K_b complement]: Cay(Z_{nb}, {x : x mod n in S})."""
    if isinstance(b, bool) or not isinstance(b, int) or b < 1:
        raise InvalidInputError(f"blow-up multiplicity must be a positive integer, got {b!r}")
    if b == 1:
        return c
    if c.n == 1:
        raise InvalidInputError("the single loop cannot be blown up into a circulant")
    members = c.set()
    return Circulant(c.n * b, tuple(x for x in range(c.n * b) if x % c.n in members))
