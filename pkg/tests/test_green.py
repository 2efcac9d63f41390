import math

import numpy as np
import pytest

from hbnum.geometry import (
    ClosedDisk,
    ComplementOf,
    Disk,
    DomainSpec,
    ExteriorOfDisk,
    Point,
    PolarComplementError,
    Sector,
    SlitPlane,
    Strip,
    contains,
)
from hbnum.green import (
    GreenEvaluator,
    UnsupportedBackendError,
    WoSConfig,
    closed_form_green,
    closed_form_green_many,
    green_disk,
    green_evaluator,
    green_half_plane,
    wos_green,
)
from hbnum.wos import EstimationError, run_batch

HALF_PLANE = DomainSpec(Sector(0, 0.0, math.pi / 2), 1.0)
SLIT = DomainSpec(SlitPlane(0.25, math.pi), 1.0)
EXT = DomainSpec(ExteriorOfDisk(5, 1), 0.0)
DISK = DomainSpec(Disk(0, 1.0), 0.0)
STRIP = DomainSpec(Strip(0.0, 0.0, 1.0), 0.0)

CANONICAL = [DISK, HALF_PLANE, SLIT, STRIP, EXT,
             DomainSpec(Sector(1j, 0.7, 2.0), 1j + complex(math.cos(0.7), math.sin(0.7)))]


def test_green_disk_at_origin_pole():
    assert green_disk(0.5, 0.0) == pytest.approx(math.log(2), rel=1e-14)


def test_green_disk_generic_pair():
    # |1 - z conj(w)| = 0.85, |z - w| = 0.2
    assert green_disk(0.5, 0.3) == pytest.approx(math.log(0.85 / 0.2), rel=1e-14)


def test_green_disk_symmetry():
    assert green_disk(0.3j, 0.5) == pytest.approx(green_disk(0.5, 0.3j), rel=1e-14)


def test_green_disk_domain_error():
    with pytest.raises(ValueError):
        green_disk(1.5, 0.0)
    with pytest.raises(ValueError):
        green_disk(0.0, -2.0)


def test_green_disk_pole_and_boundary():
    assert green_disk(0.5, 0.5) == math.inf
    assert green_disk(1.0, 0.3) == 0.0


def test_half_plane_value():
    assert green_half_plane(2.0, 1.0) == pytest.approx(math.log(3), rel=1e-14)
    assert closed_form_green(HALF_PLANE, 2.0, 1.0) == pytest.approx(math.log(3), rel=1e-14)


def test_slit_plane_value():
    # sqrt transport: zeta = sqrt(z - 1/4), half-plane formula
    zeta, zeta0 = math.sqrt(1.75), math.sqrt(0.75)
    want = math.log((zeta + zeta0) / (zeta - zeta0))
    assert closed_form_green(SLIT, 2.0, 1.0) == pytest.approx(want, rel=1e-12)


def test_extended_by_zero():
    assert closed_form_green(SLIT, -1.0, 1.0) == 0.0
    assert closed_form_green(DISK, 2.0, 0.0) == 0.0
    assert closed_form_green(EXT, 5.2, 0.0) == 0.0


def test_exterior_disk_value():
    # inversion u = 1/(z-5): g = g_D(-1/5, -1/3) = log|(1-1/15)/(2/15)| = log 7
    assert closed_form_green(EXT, 0.0, 2.0) == pytest.approx(math.log(7), rel=1e-12)


def test_pole_at_equal_arguments():
    assert closed_form_green(DISK, 0.3, 0.3) == math.inf


def test_unsupported_backend():
    spec = DomainSpec(ComplementOf((ClosedDisk(5, 1),)), 0.0)
    with pytest.raises(UnsupportedBackendError):
        closed_form_green(spec, 1.0, 0.0)
    with pytest.raises(UnsupportedBackendError):
        GreenEvaluator(spec, "closed-form")


def test_polar_complement_rejected():
    spec = DomainSpec(ComplementOf((Point(0), Point(1))), 0.5j)
    with pytest.raises(PolarComplementError):
        green_evaluator(spec)
    with pytest.raises(PolarComplementError):
        wos_green(spec, 1j, 0.5j, WoSConfig(walks=10))


def _interior_points(spec, rng, n):
    pts = []
    base = spec.base_point
    while len(pts) < n:
        z = base + complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if contains(spec, z):
            pts.append(z)
    return pts


@pytest.mark.parametrize("spec", CANONICAL)
def test_nonnegative_and_symmetric(spec):
    rng = np.random.default_rng(3)
    pts = _interior_points(spec, rng, 8)
    for z in pts:
        for w in pts:
            if z == w:
                continue
            g1 = closed_form_green(spec, z, w)
            g2 = closed_form_green(spec, w, z)
            assert g1 >= 0.0
            assert g1 == pytest.approx(g2, abs=1e-10, rel=1e-10)


@pytest.mark.parametrize("spec", CANONICAL)
def test_pole_law(spec):
    # g(w0 + d e^{i t}, w0) + log d stays bounded and settles as d -> 0
    w0 = spec.base_point
    thetas = np.linspace(0, 2 * math.pi, 13)[:-1]
    rows = []
    for delta in (1e-2, 1e-4, 1e-6):
        zs = w0 + delta * np.exp(1j * thetas)
        vals = closed_form_green_many(spec, zs, w0) + math.log(delta)
        rows.append(vals)
        assert np.all(np.abs(vals) < 20.0)
    assert np.max(np.abs(rows[-1] - rows[-2])) < 1e-2


@pytest.mark.parametrize("spec,boundary_point", [
    (DISK, 1.0),
    (HALF_PLANE, 1j),
    (SLIT, -1.0 + 0j),
    (STRIP, 2 + 1j),
    (EXT, 5 + 1j),
])
def test_boundary_decay(spec, boundary_point):
    w0 = spec.base_point
    inward = w0 - boundary_point
    inward /= abs(inward)
    z = boundary_point + 1e-6 * inward
    assert closed_form_green(spec, z, w0) < 1e-3


# ---------------------------------------------------------------------------
# walk-on-spheres


def test_wos_disk_against_green_disk():
    cfg = WoSConfig(walks=10_000, seed=5, epsilon_shell=1e-5)
    est, se = wos_green(DISK, 0.5, 0.0, cfg)
    assert abs(est - math.log(2)) <= 3 * se + 5e-5


def test_wos_complement_disk_matches_inversion_oracle():
    spec = DomainSpec(ComplementOf((ClosedDisk(5, 1),)), 0.0)
    cfg = WoSConfig(walks=20_000, seed=17, epsilon_shell=1e-4)
    est, se = wos_green(spec, 0.0, 2.0, cfg)
    want = closed_form_green(EXT, 0.0, 2.0)
    assert abs(est - want) <= 3 * se + 5e-4


def test_wos_outside_domain_is_zero():
    cfg = WoSConfig(walks=10, seed=0)
    assert wos_green(DISK, 2.0, 0.3, cfg) == (0.0, 0.0)


def test_wos_requires_distinct_points():
    with pytest.raises(ValueError):
        wos_green(DISK, 0.3, 0.3, WoSConfig(walks=10))


def test_wos_deterministic_for_fixed_seed():
    spec = DomainSpec(ComplementOf((ClosedDisk(5, 1), ClosedDisk(-5, 1))), 0.0)
    cfg = WoSConfig(walks=4_000, seed=42, epsilon_shell=1e-3)
    a = wos_green(spec, 30.0, 0.0, cfg)
    b = wos_green(spec, 30.0, 0.0, cfg)
    assert a == b
    c = wos_green(spec, 30.0, 0.0, WoSConfig(walks=4_000, seed=43, epsilon_shell=1e-3))
    assert c != a


def test_wos_seed_offset_changes_stream():
    ev = green_evaluator(DomainSpec(ComplementOf((ClosedDisk(5, 1),)), 0.0), "wos",
                         WoSConfig(walks=2_000, seed=9, epsilon_shell=1e-3))
    v1, _ = ev.values_and_errors(np.array([1.0 + 0j]), 0.0, seed_offset=0)
    v2, _ = ev.values_and_errors(np.array([1.0 + 0j]), 0.0, seed_offset=1)
    assert v1[0] != v2[0]


def test_wos_step_limit_reported():
    spec = DomainSpec(ComplementOf((ClosedDisk(5, 1),)), 0.0)
    cfg = WoSConfig(walks=500, seed=1, epsilon_shell=1e-9, max_steps=3)
    with pytest.raises(EstimationError):
        wos_green(spec, 0.0, 2.0, cfg)


def test_wos_batch_mixed_inside_outside():
    zs = np.array([0.5 + 0j, 2.0 + 0j, 0.2j])
    batch = run_batch(DISK, zs, 0.1, WoSConfig(walks=500, seed=3, epsilon_shell=1e-4))
    assert batch.values[1] == 0.0 and batch.stderrs[1] == 0.0
    assert batch.values[0] > 0.0 and batch.values[2] > 0.0


def test_wos_config_validation():
    with pytest.raises(ValueError):
        WoSConfig(walks=0)
    with pytest.raises(ValueError):
        WoSConfig(epsilon_shell=-1.0)
    with pytest.raises(ValueError):
        WoSConfig(epsilon_shell=1.0, sphere_cap=0.5).resolve(DISK, [0.1], 0.0)


def test_wos_cross_check_on_strip():
    cfg = WoSConfig(walks=20_000, seed=31, epsilon_shell=1e-4)
    est, se = wos_green(STRIP, 0.5 + 0.3j, 0.0, cfg)
    want = closed_form_green(STRIP, 0.5 + 0.3j, 0.0)
    assert abs(est - want) <= 3 * se + 5e-4


@pytest.mark.parametrize("spec", [
    SLIT,
    DomainSpec(SlitPlane(1 + 1j, 0.7), 1 + 1j - complex(math.cos(0.7), math.sin(0.7))),
    DomainSpec(Sector(2j, 2.5, 0.9 * math.pi), 2j + complex(math.cos(2.5), math.sin(2.5))),
])
def test_branch_cut_continuity(spec):
    # sample g densely along an in-domain circle passing close to the removed
    # ray; a wrong branch choice would show up as a jump between neighbours
    w0 = spec.base_point
    thetas = np.linspace(0.0, 2 * math.pi, 4001)
    zs = w0 + 3.0 * np.exp(1j * thetas)
    vals = closed_form_green_many(spec, zs, w0)
    inside = vals > 0
    jumps = np.abs(np.diff(vals))
    between_inside = inside[:-1] & inside[1:]
    assert np.all(jumps[between_inside] < 0.05)
