import math

import numpy as np
import pytest

from hbnum.estimator import (
    EstimatorOptions,
    Method,
    ProfileDataError,
    ProfileRangeError,
    bergman_nonmembership_via_psi,
    estimate_bergman_numbers,
    estimate_hardy_number,
    hardy_lemma_integral,
    hardy_membership_via_psi,
)
from hbnum.geometry import (
    ComplementOf,
    Disk,
    DomainSpec,
    ExteriorOfDisk,
    Point,
    Sector,
    SlitPlane,
)
from hbnum.green import green_evaluator
from hbnum.psi import PsiProfile, build_profile

SLIT = DomainSpec(SlitPlane(0.25, math.pi), 1.0)
POLAR = DomainSpec(ComplementOf((Point(0), Point(1))), 0.5 + 0.5j)


@pytest.fixture(scope="module")
def slit_profile():
    return build_profile(green_evaluator(SLIT), 0.5, 1e5, 8)


@pytest.fixture(scope="module")
def disk_profile():
    spec = DomainSpec(Disk(0, 1.0), 0.0)
    return build_profile(green_evaluator(spec), 0.05, 2e3, 8)


def test_slit_hardy_number(slit_profile):
    est = estimate_hardy_number(SLIT, slit_profile)
    assert est.method is Method.LIMINF_SLOPE
    assert est.value == pytest.approx(0.5, abs=0.03)
    assert est.confidence >= 0.0
    assert len(est.window_slopes) >= 2


def test_sector_hardy_number():
    spec = DomainSpec(Sector(0, 0.0, math.pi / 4), 1.0)
    prof = build_profile(green_evaluator(spec), 0.25, 1e4, 8)
    est = estimate_hardy_number(spec, prof)
    assert est.value == pytest.approx(2.0, abs=0.1)


def test_exterior_disk_hardy_number():
    spec = DomainSpec(ExteriorOfDisk(5, 1), 0.0)
    prof = build_profile(green_evaluator(spec), 0.5, 4e3, 8)
    est = estimate_hardy_number(spec, prof)
    assert 0.0 <= est.value <= 0.05


def test_polar_shortcut_is_exact():
    est = estimate_hardy_number(POLAR, None)
    assert est.value == 0.0
    assert est.method is Method.POLAR_SHORTCUT
    numbers = estimate_bergman_numbers(est, [-0.5, 0.0, 2.0])
    assert numbers.b == 0.0
    assert all(v == 0.0 for v in numbers.b_alpha.values())


def test_disk_profile_gives_infinity(disk_profile):
    spec = DomainSpec(Disk(0, 1.0), 0.0)
    est = estimate_hardy_number(spec, disk_profile)
    assert est.value == math.inf
    assert est.method is Method.INFINITY_CAP


def test_bergman_numbers_scaling():
    est = estimate_hardy_number(SLIT, build_profile(green_evaluator(SLIT), 0.5, 1e4, 8))
    numbers = estimate_bergman_numbers(est, [0.0, 1.0])
    assert numbers.b == est.value
    assert numbers.b_alpha[0.0] == pytest.approx(2.0 * est.value)
    assert numbers.b_alpha[1.0] == pytest.approx(3.0 * est.value)
    inf_numbers = estimate_bergman_numbers(
        estimate_hardy_number(DomainSpec(Disk(0, 1.0), 0.0),
                              build_profile(green_evaluator(DomainSpec(Disk(0, 1.0), 0.0)),
                                            0.05, 2e3, 8)), [0.0])
    assert inf_numbers.b == math.inf and inf_numbers.b_alpha[0.0] == math.inf


def test_range_precondition():
    prof = build_profile(green_evaluator(SLIT), 0.5, 100.0, 8)
    with pytest.raises(ProfileRangeError):
        estimate_hardy_number(SLIT, prof)


def test_interior_zero_is_data_error():
    radii = np.geomspace(0.5, 1e5, 50)
    values = 1.0 / np.sqrt(radii)
    values[25] = 0.0
    prof = PsiProfile(SLIT, 1.0, radii, values, np.zeros_like(radii), "closed-form")
    with pytest.raises(ProfileDataError):
        estimate_hardy_number(SLIT, prof)


def test_infinity_cap_option():
    radii = np.geomspace(0.5, 1e5, 60)
    values = radii ** -60.0        # decay faster than the default cap of 50
    prof = PsiProfile(SLIT, 1.0, radii, values, np.zeros_like(radii), "closed-form")
    est = estimate_hardy_number(SLIT, prof)
    assert est.value == math.inf and est.method is Method.INFINITY_CAP
    est2 = estimate_hardy_number(SLIT, prof, EstimatorOptions(infinity_cap=100.0))
    assert est2.value == pytest.approx(60.0, rel=1e-6)


def test_membership_bracketing(slit_profile):
    assert hardy_membership_via_psi(slit_profile, 0.4).member
    assert hardy_membership_via_psi(slit_profile, 0.8).non_member
    assert bergman_nonmembership_via_psi(slit_profile, 2.0, 0.0).non_member


def test_membership_inconclusive_at_critical_exponent(slit_profile):
    v = hardy_membership_via_psi(slit_profile, 0.5)
    assert v.inconclusive
    assert abs(v.margin) <= 0.05


def test_membership_monotone_in_p(slit_profile):
    # if f in H^{p2} then f in H^{p1} for p1 < p2
    ps = np.linspace(0.05, 1.5, 25)
    verdicts = [hardy_membership_via_psi(slit_profile, float(p)) for p in ps]
    seen_member = [v.member for v in verdicts]
    first_non = next((i for i, v in enumerate(verdicts) if not v.member), len(ps))
    assert all(seen_member[:first_non])
    assert not any(seen_member[first_non:])


def test_bergman_member_via_ratio():
    spec = DomainSpec(Sector(0, 0.0, math.pi / 2), 1.0)
    prof = build_profile(green_evaluator(spec), 0.25, 1e4, 8)
    v = bergman_nonmembership_via_psi(prof, 1.0, 0.0)   # ratio 1/2 < h = 1
    assert v.member
    v2 = bergman_nonmembership_via_psi(prof, 2.0, 0.0)  # ratio 1 = h: tail critical
    assert not v2.member


def test_disk_membership_everywhere(disk_profile):
    assert hardy_membership_via_psi(disk_profile, 7.0).member
    assert bergman_nonmembership_via_psi(disk_profile, 5.0, 0.5).member


def test_lemma_integral_pieces(slit_profile):
    pieces = hardy_lemma_integral(slit_profile, 0.4)
    assert pieces["near"] > 0.0
    assert pieces["middle"] > 0.0
    assert math.isfinite(pieces["total"])
    assert pieces["tail_exponent"] == pytest.approx(0.5, abs=0.02)
    div = hardy_lemma_integral(slit_profile, 0.8)
    assert div["tail"] == math.inf


def test_lemma_integral_validation(slit_profile):
    with pytest.raises(ValueError):
        hardy_lemma_integral(slit_profile, -1.0)
    with pytest.raises(ValueError):
        bergman_nonmembership_via_psi(slit_profile, 1.0, -1.5)


def test_strip_hits_infinity_cap():
    # psi of a strip decays exponentially, so the slope windows blow through
    # the cap and the estimate is +inf
    from hbnum.geometry import Strip
    spec = DomainSpec(Strip(0.0, 0.3, 1.0), 0.0)
    prof = build_profile(green_evaluator(spec), 0.05, 1100.0, 8)
    est = estimate_hardy_number(spec, prof)
    assert est.value == math.inf and est.method is Method.INFINITY_CAP
