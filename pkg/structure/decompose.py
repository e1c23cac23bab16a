"""
Tensor-lexicographic decomposition of connected arc-transitive circulants.

Every such circulant is (gamma0 x K_n1 x ... x K_nr)[K_b complement] for a
unique triple (gamma0, {n1, ..., nr}, b) where gamma0 is a connected
arc-transitive normal circulant other than C4, every n_i is at least 4, and
n0, n1, ..., nr are pairwise coprime.
"""

import logging
from dataclasses import dataclass, field
from math import factorial, gcd, prod
from typing import Any, Dict, List, Optional

from multiset import FrozenMultiset

from arith.zmod import pairwise_coprime, unitary_divisors
from config import Settings
from digraphs.circulant import (Circulant, complete_circulant, crt_factor_split, is_connected,
                                lex_circulant, multiplier_stabilizer, single_loop_circulant,
                                tensor_circulant, thin_quotient, to_dense)
from errors import InvalidInputError, NotArcTransitiveError, NotConnectedError, TheoremViolation
from perms.permgroup import (PermGroup, automorphism_group, is_arc_transitive, normalizer_criterion,
                             regular_cyclic_subgroups)
from structure.isotest import brute_force_isomorphic, multiplier_equivalent

logger = logging.getLogger(__name__)

C4 = Circulant(4, (1, 3))


@dataclass(frozen=True)
class Decomposition:
    """
    The triple (gamma0, factors, b).

    ``arc_transitivity_verified`` and ``normality_check`` record how much of
    the input was checked by brute force; they do not take part in equality.
    """

    gamma0: Circulant
    factors: FrozenMultiset
    b: int
    arc_transitivity_verified: bool = field(default=True, compare=False)
    normality_check: str = field(default="brute-force", compare=False)

    @property
    def factor_list(self) -> List[int]:
        return sorted(self.factors)

    @property
    def core_order(self) -> int:
        """n0 * n1 * ... * nr."""
        return self.gamma0.n * prod(self.factors)

    @property
    def n(self) -> int:
        return self.core_order * self.b

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma0": self.gamma0.to_dict(),
            "factors": self.factor_list,
            "b": self.b,
            "aut_order": str(aut_order(self)),
        }


def make_decomposition(gamma0: Circulant, factors: List[int], b: int) -> Decomposition:
    return Decomposition(gamma0, FrozenMultiset(factors), b)


def structural_violations(d: Decomposition) -> List[str]:
    """Invariant failures that can be read off the triple without any search."""
    problems = []
    if d.b < 1:
        problems.append(f"b = {d.b} is not positive")
    if any(m < 4 for m in d.factors):
        problems.append(f"factor orders {d.factor_list} include one below 4")
    if not pairwise_coprime([d.gamma0.n] + d.factor_list):
        problems.append(f"orders {[d.gamma0.n] + d.factor_list} are not pairwise coprime")
    if d.gamma0 == C4:
        problems.append("gamma0 is C4")
    if d.core_order == 1 and d.b != 1:
        problems.append("the single loop cannot be blown up")
    return problems


def _structurally_normal(c: Circulant) -> bool:
    """Every element of S is a unit and the multiplier stabilizer is regular on S."""
    if c.n == 1:
        return True
    if any(gcd(x, c.n) != 1 for x in c.s):
        return False
    stab = multiplier_stabilizer(c)
    first = c.s[0]
    return len(stab) == c.size and {(k * first) % c.n for k in stab} == c.set()


def check_normality(c: Circulant, settings: Settings, group: Optional[PermGroup] = None) -> Optional[str]:
    """
    Decide whether c is normal as far as the budgets allow.

    Returns:
        The method that confirmed normality ("brute-force", "normalizer" or
        "structural"), or None if c is not normal
    """
    if c.n > settings.aut_bound:
        logger.warning("normality of %s checked structurally only: order %d exceeds the search bound", c, c.n)
        return "structural" if _structurally_normal(c) else None

    group = group or automorphism_group(to_dense(c), settings)
    normal = normalizer_criterion(c, group)
    if group.order > settings.group_budget:
        return "normalizer" if normal else None
    unique = len(regular_cyclic_subgroups(group, settings, limit=2)) == 1
    if unique != normal:
        raise TheoremViolation(f"normality tests disagree for {c}")
    return "brute-force" if normal else None


def decompose(c: Circulant, settings: Optional[Settings] = None) -> Decomposition:
    """
    Compute the decomposition of a connected arc-transitive circulant.

    The blow-up multiplicity b is the order of the translation stabilizer.
    Complete factors are then split off the R-thin quotient along CRT
    coordinates, trying unitary divisors of at least 4 in ascending order and
    starting over after each split; what remains is gamma0.

    Args:
        c: The circulant
        settings: Search bounds; arc-transitivity is only checked when
            c.n <= settings.aut_bound

    Returns:
        The decomposition

    Raises:
        NotConnectedError: if S does not generate Z_n
        NotArcTransitiveError: if c is shown not to be arc-transitive
        TheoremViolation: if the result breaks a decomposition invariant
    """
    settings = settings or Settings.load()
    if not is_connected(c):
        raise NotConnectedError(f"{c} is not connected")
    if c.n == 1:
        return make_decomposition(single_loop_circulant(), [], 1)

    verified = c.n <= settings.aut_bound
    if verified:
        g = to_dense(c)
        if not is_arc_transitive(g, automorphism_group(g, settings)):
            raise NotArcTransitiveError(f"{c} is not arc-transitive")
    else:
        logger.warning("arc-transitivity of %s not verified: order %d exceeds the search bound", c, c.n)

    residual, b = thin_quotient(c)
    factors: List[int] = []
    progress = True
    while progress:
        progress = False
        for m in unitary_divisors(residual.n):
            if m < 4:
                continue
            split = crt_factor_split(residual, m)
            if split is not None:
                logger.debug("split K_%d off %s leaving %s", m, residual, split)
                factors.append(m)
                residual = split
                progress = True
                break

    problems = structural_violations(make_decomposition(residual, factors, b))
    if problems:
        raise TheoremViolation(f"decomposition of {c}: {'; '.join(problems)}")

    group0 = None
    if residual.n <= settings.aut_bound:
        g0 = to_dense(residual)
        group0 = automorphism_group(g0, settings)
        if residual.n > 1 and not is_arc_transitive(g0, group0):
            _fail(c, verified, f"gamma0 {residual} is not arc-transitive")
    method = check_normality(residual, settings, group0)
    if method is None:
        _fail(c, verified, f"gamma0 {residual} is not normal")

    d = Decomposition(residual, FrozenMultiset(factors), b, verified, method)
    logger.info("decomposed %s: gamma0 %s, factors %s, b %d", c, residual, d.factor_list, b)
    return d


def _fail(c: Circulant, verified: bool, reason: str) -> None:
    if verified:
        raise TheoremViolation(f"decomposition of {c}: {reason}")
    raise NotArcTransitiveError(f"{c} is not arc-transitive ({reason})")


def reconstruct(d: Decomposition) -> Circulant:
    """
    Rebuild the circulant (gamma0 x K_n1 x ... x K_nr)[K_b complement].

    Raises:
        InvalidInputError: if the triple breaks a structural invariant
    """
    problems = structural_violations(d)
    if problems:
        raise InvalidInputError("; ".join(problems))
    core = d.gamma0
    for m in d.factor_list:
        core = tensor_circulant(core, complete_circulant(m))
    return lex_circulant(core, d.b)


def aut_order(d: Decomposition) -> int:
    """|Aut| = (b!)^(n0 n1...nr) * n0 * |multiplier stabilizer of gamma0| * n1! ... nr!."""
    wreath_base = factorial(d.b) ** d.core_order
    gamma0_part = d.gamma0.n * len(multiplier_stabilizer(d.gamma0))
    return wreath_base * gamma0_part * prod(factorial(m) for m in d.factors)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class DecompositionReport:
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "checks": [check.to_dict() for check in self.checks]}


def verify_decomposition(c: Circulant, d: Decomposition, settings: Optional[Settings] = None) -> DecompositionReport:
    """
    Check a claimed decomposition of c; failures become report entries.

    Reconstruction is compared by backtracking when c is within the search
    bound and by multiplier equivalence otherwise. The automorphism count is
    compared only when Aut(c) can be computed.
    """
    settings = settings or Settings.load()
    checks: List[CheckResult] = []
    g0 = d.gamma0

    checks.append(CheckResult("gamma0-connected", is_connected(g0)))
    group0 = None
    if g0.n <= settings.aut_bound:
        group0 = automorphism_group(to_dense(g0), settings)
        transitive = g0.n == 1 or is_arc_transitive(to_dense(g0), group0)
        checks.append(CheckResult("gamma0-arc-transitive", transitive))
    else:
        checks.append(CheckResult("gamma0-arc-transitive", True, "not checked: above search bound"))
    try:
        method = check_normality(g0, settings, group0)
        checks.append(CheckResult("gamma0-normal", method is not None, method or ""))
    except TheoremViolation as e:
        checks.append(CheckResult("gamma0-normal", False, str(e)))
    checks.append(CheckResult("gamma0-not-c4", g0 != C4))
    checks.append(CheckResult("factors-at-least-4", all(m >= 4 for m in d.factors), str(d.factor_list)))
    checks.append(CheckResult("pairwise-coprime", pairwise_coprime([g0.n] + d.factor_list)))
    checks.append(CheckResult("order", d.n == c.n, f"{d.n} vs {c.n}"))

    try:
        rebuilt: Optional[Circulant] = reconstruct(d)
    except InvalidInputError as e:
        rebuilt = None
        checks.append(CheckResult("reconstruction-isomorphic", False, str(e)))
    if rebuilt is not None:
        if rebuilt.n != c.n:
            checks.append(CheckResult("reconstruction-isomorphic", False, f"rebuilt order {rebuilt.n}"))
        elif c.n <= settings.aut_bound:
            witness = brute_force_isomorphic(to_dense(rebuilt), to_dense(c), settings)
            checks.append(CheckResult("reconstruction-isomorphic", witness is not None, "backtracking"))
        else:
            k = multiplier_equivalent(rebuilt, c)
            checks.append(CheckResult("reconstruction-isomorphic", k is not None, "multiplier equivalence"))

    if c.n <= settings.aut_bound:
        actual = automorphism_group(to_dense(c), settings).order
        predicted = aut_order(d)
        checks.append(CheckResult("aut-order", actual == predicted, f"{predicted} vs {actual}"))

    return DecompositionReport(checks)
