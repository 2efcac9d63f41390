"""Exact inclusion lattice of Hardy and weighted Bergman spaces.

Comparisons preserve exact arithmetic when inputs are ints or Fractions and
fall back to a 1e-12 relative tolerance for floats; the strict/non-strict
split between the inclusion cases must never be blurred by rounding.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .analytic import classify_extremal_membership, make_extremal_map
from .spaces import Bergman, Hardy, MembershipVerdict, SpaceParams

_TOL = 1e-12


class UndecidableInclusionError(ValueError):
    """The lattice carries no rule for this inclusion direction."""


def _exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _cmp(x, y) -> int:
    """-1, 0, +1; exact on rationals, tolerant on floats."""
    if _exact(x) and _exact(y):
        return (x > y) - (x < y)
    fx, fy = float(x), float(y)
    if abs(fx - fy) <= _TOL * max(1.0, abs(fx), abs(fy)):
        return 0
    return -1 if fx < fy else 1


class Rule(enum.Enum):
    HARDY_ORDER = "hardy-order"
    DUREN_EMBEDDING = "duren-embedding"
    AREVALO_EQ = "arevalo-case-a"
    AREVALO_DOWN = "arevalo-case-b"
    AREVALO_UP = "arevalo-case-c"
    KULIKOV_LINE = "kulikov-line"


@dataclass(frozen=True)
class InclusionVerdict:
    included: bool
    rule: Rule


def hardy_inclusion(q, p) -> bool:
    """H^q subset of H^p iff p <= q."""
    if not (float(p) > 0 and float(q) > 0):
        raise ValueError("Hardy exponents must be positive")
    return _cmp(p, q) <= 0


def hardy_in_bergman(q, p, alpha) -> bool:
    """Sufficient embedding H^q in A^p_alpha when q >= p/(alpha+2).

    A False return means "not guaranteed by this rule"; it is not a
    disproof of the inclusion.
    """
    if not (float(p) > 0 and float(q) > 0 and float(alpha) > -1):
        raise ValueError("invalid space parameters")
    return _cmp(q * (alpha + 2), p) >= 0


def bergman_inclusion(p, alpha, q, beta) -> InclusionVerdict:
    """Exact characterization of A^p_alpha subset of A^q_beta."""
    if not (float(p) > 0 and float(q) > 0):
        raise ValueError("Bergman exponents must be positive")
    if not (float(alpha) > -1 and float(beta) > -1):
        raise ValueError("Bergman weights must exceed -1")
    c = _cmp(p, q)
    if c == 0:
        return InclusionVerdict(_cmp(alpha, beta) <= 0, Rule.AREVALO_EQ)
    if c > 0:
        # strict inequality: (alpha+1)/p < (beta+1)/q
        return InclusionVerdict(_cmp((alpha + 1) * q, (beta + 1) * p) < 0,
                                Rule.AREVALO_DOWN)
    return InclusionVerdict(_cmp((alpha + 2) * q, (beta + 2) * p) <= 0,
                            Rule.AREVALO_UP)


def kulikov_chain(r, spaces) -> bool:
    """Consistency of the critical-line chain H^r in A^{p_1}_{a_1} in ...

    Each (p_i, alpha_i) must satisfy p_i/(alpha_i+2) = r and the list must be
    sorted by increasing p.
    """
    spaces = list(spaces)
    if not spaces:
        raise ValueError("need at least one space on the line")
    prev_p = None
    for p, alpha in spaces:
        if _cmp(p, r * (alpha + 2)) != 0:
            raise ValueError(f"space ({p}, {alpha}) is off the line p/(alpha+2)={r}")
        if prev_p is not None and _cmp(prev_p, p) > 0:
            raise ValueError("spaces must be sorted by increasing p")
        prev_p = p
    p1, a1 = spaces[0]
    if not hardy_in_bergman(r, p1, a1):
        return False
    for (p, a), (pq, b) in zip(spaces[:-1], spaces[1:]):
        if not bergman_inclusion(p, a, pq, b).included:
            return False
    return True


def space_inclusion(src: SpaceParams, dst: SpaceParams) -> InclusionVerdict:
    """Dispatch on the four source/target combinations."""
    if isinstance(src, Hardy) and isinstance(dst, Hardy):
        return InclusionVerdict(hardy_inclusion(src.p, dst.p), Rule.HARDY_ORDER)
    if isinstance(src, Hardy) and isinstance(dst, Bergman):
        return InclusionVerdict(hardy_in_bergman(src.p, dst.p, dst.alpha),
                                Rule.DUREN_EMBEDDING)
    if isinstance(src, Bergman) and isinstance(dst, Bergman):
        return bergman_inclusion(src.p, src.alpha, dst.p, dst.alpha)
    raise UndecidableInclusionError(
        "A^p_alpha in H^q is not decided by this lattice")


# ---------------------------------------------------------------------------
# number assembly from membership verdicts


@dataclass(frozen=True)
class NumbersSummary:
    h: float
    b: float
    b_alpha: dict
    violations: tuple[str, ...]


def assemble_numbers(memberships: dict) -> NumbersSummary:
    """sup-assemble h, b, b_alpha from certified verdicts and cross-check.

    Inconclusive entries are ignored.  Violations list certified pairs that
    contradict the Hardy ordering, the H^q in A^p_alpha embedding, or the
    exact Bergman inclusion rules.
    """
    hardy_mem, hardy_non = [], []
    berg_mem, berg_non = [], []
    for space, verdict in memberships.items():
        if not isinstance(verdict, MembershipVerdict) or verdict.inconclusive:
            continue
        if isinstance(space, Hardy):
            (hardy_mem if verdict.member else hardy_non).append(space)
        else:
            (berg_mem if verdict.member else berg_non).append(space)

    h = max([0.0] + [s.p for s in hardy_mem])
    alphas = {s.alpha for s in berg_mem} | {s.alpha for s in berg_non}
    b_alpha = {a: max([0.0] + [s.p for s in berg_mem if s.alpha == a])
               for a in sorted(alphas)}
    b = max([0.0] + [s.ratio for s in berg_mem])

    violations = []
    for m in hardy_mem:
        for n in hardy_non:
            if _cmp(n.p, m.p) <= 0:
                violations.append(
                    f"member of {m} but not of the larger space {n}")
    for m in hardy_mem:
        for n in berg_non:
            if hardy_in_bergman(m.p, n.p, n.alpha):
                violations.append(
                    f"member of {m} but not of {n} although {m} embeds in it")
    for m in berg_mem:
        for n in berg_non:
            if bergman_inclusion(m.p, m.alpha, n.p, n.alpha).included:
                violations.append(
                    f"member of {m} but not of {n} although {m} is included in it")
    return NumbersSummary(h, b, b_alpha, tuple(violations))


# ---------------------------------------------------------------------------
# extremal exponent of the constructed family


@dataclass(frozen=True)
class ExtremalExponents:
    h: float
    p_d: float
    C: float


def extremal_pD(a: float, b: float) -> ExtremalExponents:
    """Predicted Hardy number 1/a and extremal exponent p_D = 1/b of the
    image domain of the constructed map; cross-checked against the exact
    membership classifier (the critical-line membership flips at p = 1/b)."""
    if not 0 < a <= 2:
        raise ValueError("require 0 < a <= 2")
    if not b > 0:
        raise ValueError("require b > 0")
    if b > a + _TOL:
        raise ValueError("require b <= a, otherwise p_D would fall below h")
    fab = make_extremal_map(a, b)
    p_flip = 1.0 / b
    for factor, expect_member in ((1.0, False), (1.02, True), (0.98, False)):
        p = p_flip * factor
        alpha = a * p - 2.0
        if alpha <= -1.0:
            continue
        verdict = classify_extremal_membership(fab, p, alpha)
        if verdict.member != expect_member:
            raise RuntimeError(
                f"extremal membership does not flip at p = 1/b: p={p}, {verdict}")
    return ExtremalExponents(h=1.0 / a, p_d=p_flip, C=fab.C)
