import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbnum.analytic import PowerMap, bgp_membership
from hbnum.lattice import (
    ExtremalExponents,
    Rule,
    UndecidableInclusionError,
    assemble_numbers,
    bergman_inclusion,
    extremal_pD,
    hardy_in_bergman,
    hardy_inclusion,
    kulikov_chain,
    space_inclusion,
)
from hbnum.spaces import Bergman, Hardy, inconclusive, member, non_member


def test_hardy_inclusion_cases():
    assert hardy_inclusion(2, 1)
    assert not hardy_inclusion(1, 2)
    assert hardy_inclusion(1, 1)


def test_hardy_in_bergman_cases():
    assert hardy_in_bergman(1, 2, 0)
    assert not hardy_in_bergman(0.4, 1, 0)
    # exact boundary q = p/(alpha+2)
    assert hardy_in_bergman(Fraction(1, 2), Fraction(1), Fraction(0))
    assert hardy_in_bergman(0.5, 1.0, 0.0)


def test_bergman_inclusion_spec_cases():
    v = bergman_inclusion(5, 2, 2, 0)
    assert not v.included and v.rule is Rule.AREVALO_DOWN
    v = bergman_inclusion(2, 0, 2, 1)
    assert v.included and v.rule is Rule.AREVALO_EQ
    v = bergman_inclusion(1, 0, 2, 2)
    assert v.included and v.rule is Rule.AREVALO_UP


def test_bergman_inclusion_strictness_boundaries():
    # case b is strict: equality of (alpha+1)/p and (beta+1)/q must fail
    assert not bergman_inclusion(Fraction(2), Fraction(1), Fraction(1), Fraction(0)).included
    assert bergman_inclusion(Fraction(2), Fraction(1, 2), Fraction(1), Fraction(0)).included
    # case c is non-strict: equality of (alpha+2)/p and (beta+2)/q passes
    assert bergman_inclusion(Fraction(1), Fraction(0), Fraction(2), Fraction(2)).included
    # ... and one step past the boundary fails
    assert not bergman_inclusion(Fraction(1), Fraction(0), Fraction(2),
                                 Fraction(2) - Fraction(1, 1000)).included


def test_bergman_inclusion_validation():
    with pytest.raises(ValueError):
        bergman_inclusion(0, 0, 1, 0)
    with pytest.raises(ValueError):
        bergman_inclusion(1, -2, 1, 0)


_frac_p = st.fractions(min_value=Fraction(1, 10), max_value=Fraction(10))
_frac_alpha = st.fractions(min_value=Fraction(-9, 10), max_value=Fraction(5))


@given(_frac_p, _frac_alpha)
@settings(max_examples=200)
def test_bergman_inclusion_reflexive(p, alpha):
    assert bergman_inclusion(p, alpha, p, alpha).included


@given(_frac_p, _frac_alpha, _frac_p, _frac_alpha, _frac_p, _frac_alpha)
@settings(max_examples=500)
def test_bergman_inclusion_transitive(p1, a1, p2, a2, p3, a3):
    first = bergman_inclusion(p1, a1, p2, a2).included
    second = bergman_inclusion(p2, a2, p3, a3).included
    if first and second:
        assert bergman_inclusion(p1, a1, p3, a3).included


def test_kulikov_chain_examples():
    assert kulikov_chain(Fraction(1, 2), [(Fraction(1), Fraction(0)),
                                          (Fraction(2), Fraction(2))])
    assert kulikov_chain(1, [(2, 0), (3, 1)])
    with pytest.raises(ValueError):
        kulikov_chain(Fraction(1, 2), [(Fraction(2), Fraction(2)),
                                       (Fraction(1), Fraction(0))])
    with pytest.raises(ValueError):
        kulikov_chain(Fraction(1, 2), [(Fraction(1), Fraction(1))])


@given(st.fractions(min_value=Fraction(1, 8), max_value=Fraction(4)),
       st.lists(_frac_alpha, min_size=1, max_size=5))
@settings(max_examples=200)
def test_kulikov_chain_always_holds_on_line(r, alphas):
    spaces = [(r * (a + 2), a) for a in sorted(set(alphas))]
    assert kulikov_chain(r, spaces)


def test_critical_line_agreement_with_case_c():
    rng = np.random.default_rng(11)
    for _ in range(100):
        r = Fraction(int(rng.integers(1, 30)), int(rng.integers(1, 30)))
        a1 = Fraction(int(rng.integers(-9, 30)), 10)
        a2 = a1 + Fraction(int(rng.integers(0, 20)), 10)
        p1, p2 = r * (a1 + 2), r * (a2 + 2)
        chain = kulikov_chain(r, [(p1, a1), (p2, a2)])
        if p1 == p2:
            direct = bergman_inclusion(p1, a1, p2, a2).included
        else:
            direct = bergman_inclusion(p1, a1, p2, a2).rule is Rule.AREVALO_UP \
                and bergman_inclusion(p1, a1, p2, a2).included
        assert chain and direct


def test_space_inclusion_dispatch():
    assert space_inclusion(Hardy(2), Hardy(1)).included
    v = space_inclusion(Hardy(1), Bergman(2, 0))
    assert v.included and v.rule is Rule.DUREN_EMBEDDING
    assert not space_inclusion(Bergman(5, 2), Bergman(2, 0)).included
    with pytest.raises(UndecidableInclusionError):
        space_inclusion(Bergman(2, 0), Hardy(1))


def test_assemble_numbers_power_map_exponents():
    """Verdicts produced by the exact classifier for (1-z)^{-1}."""
    memberships = {}
    for p in (0.25, 0.5, 0.75, 0.9, 0.99):
        memberships[Hardy(p)] = member(1.0 - p)
    for p in (1.01, 1.5, 2.5):
        memberships[Hardy(p)] = non_member(1.0 - p)
    for p in (0.5, 1.0, 1.5, 1.9, 1.99):
        memberships[Bergman(p, 0.0)] = bgp_membership(PowerMap(1.0), p, 0.0)
    for p in (2.01, 2.5, 4.0):
        memberships[Bergman(p, 0.0)] = bgp_membership(PowerMap(1.0), p, 0.0)
    summary = assemble_numbers(memberships)
    assert summary.h == 0.99                      # sup of Hardy members -> 1
    assert summary.b_alpha[0.0] == 1.99           # sup of Bergman members -> 2
    assert summary.b == pytest.approx(0.995)      # sup p/(alpha+2) -> 1
    assert summary.violations == ()


def test_assemble_numbers_flags_violations():
    bad = {Hardy(2.0): member(0.1), Hardy(1.0): non_member(-0.1)}
    summary = assemble_numbers(bad)
    assert summary.violations
    bad2 = {Hardy(1.0): member(0.1), Bergman(1.5, 0.0): non_member(-0.1)}
    assert assemble_numbers(bad2).violations
    bad3 = {Bergman(2.0, 0.0): member(0.1), Bergman(2.0, 1.0): non_member(-0.1)}
    assert assemble_numbers(bad3).violations


def test_assemble_numbers_ignores_inconclusive():
    summary = assemble_numbers({Hardy(1.0): inconclusive(0.0)})
    assert summary.h == 0.0 and summary.violations == ()


def test_assemble_numbers_remark_set_is_consistent():
    summary = assemble_numbers({Bergman(5, 2): member(1.0),
                                Bergman(2, 0): non_member(-1.0)})
    assert summary.b == pytest.approx(1.25)
    assert summary.b_alpha[0] == 0.0
    assert summary.violations == ()


def test_assemble_numbers_empty():
    summary = assemble_numbers({})
    assert summary.h == 0.0 and summary.b == 0.0 and summary.b_alpha == {}


def test_extremal_pD_values():
    exps = extremal_pD(2.0, 1.0)
    assert exps == ExtremalExponents(h=0.5, p_d=1.0, C=exps.C)
    assert extremal_pD(1.0, 1.0).h == extremal_pD(1.0, 1.0).p_d == 1.0
    with pytest.raises(ValueError):
        extremal_pD(1.0, 2.0)
    with pytest.raises(ValueError):
        extremal_pD(3.0, 1.0)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_extremal_pD_flip_grid(a):
    for b in (a / 4.0, a / 2.0, a):
        exps = extremal_pD(a, b)
        assert exps.h == pytest.approx(1.0 / a)
        assert exps.p_d == pytest.approx(1.0 / b)
        assert exps.p_d >= exps.h - 1e-12
