"""Integral means psi(r) of the Green function over circles about the base point.

psi(r) integrates g(base + r e^{i theta}, base) over theta in [0, 2pi), with
the integrand extended by zero outside the domain.  The circle is split at
the angles where it crosses the domain boundary, so each quadrature panel
sees a smooth integrand; panels are then refined by doubling a fixed
Gauss-Legendre rule until the relative change drops below tolerance.  Monte
Carlo backends use a fixed 256-node rule instead (sampling noise dominates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    ClosedDisk,
    ComplementOf,
    Disk,
    DomainSpec,
    ExteriorOfDisk,
    Point,
    Sector,
    Segment,
    SlitPlane,
    Strip,
    SpecError,
    contains,
    distance_to_complement,
    unit,
)
from .green import GreenEvaluator

TWO_PI = 2.0 * math.pi


class PoleProximityError(ValueError):
    """Circle radius below machine resolution of the Green pole."""


# ---------------------------------------------------------------------------
# circle / boundary crossing angles


def _circle_circle(c0: complex, r: float, c1: complex, r1: float) -> list[float]:
    d = abs(c1 - c0)
    if d == 0.0 or d >= r + r1 or d <= abs(r - r1):
        return []
    cosphi = (r * r + d * d - r1 * r1) / (2.0 * r * d)
    cosphi = min(1.0, max(-1.0, cosphi))
    phi = math.acos(cosphi)
    theta_c = math.atan2((c1 - c0).imag, (c1 - c0).real)
    return [theta_c - phi, theta_c + phi]


def _circle_param_line(c0: complex, r: float, origin: complex, direction: complex,
                       t_lo: float, t_hi: float) -> list[float]:
    # intersect |origin + t*direction - c0| = r with t in [t_lo, t_hi]
    w = origin - c0
    b = (w * direction.conjugate()).real
    disc = b * b - (abs(w) ** 2 - r * r)
    if disc < 0.0:
        return []
    s = math.sqrt(disc)
    out = []
    for t in (-b - s, -b + s):
        if t_lo <= t <= t_hi:
            p = origin + t * direction - c0
            out.append(math.atan2(p.imag, p.real))
    return out


def boundary_crossing_angles(spec: DomainSpec, center: complex, r: float) -> list[float]:
    """Angles (sorted, in [0, 2pi)) where the circle crosses the domain boundary."""
    k = spec.kind
    cuts: list[float] = []
    inf = math.inf
    if isinstance(k, Disk):
        cuts += _circle_circle(center, r, k.center, k.radius)
    elif isinstance(k, ExteriorOfDisk):
        cuts += _circle_circle(center, r, k.center, k.radius)
    elif isinstance(k, Sector):
        for sign in (+1.0, -1.0):
            d = unit(k.bisector_angle + sign * k.half_angle)
            cuts += _circle_param_line(center, r, k.vertex, d, 0.0, inf)
    elif isinstance(k, SlitPlane):
        cuts += _circle_param_line(center, r, k.tip, unit(k.ray_angle), 0.0, inf)
    elif isinstance(k, Strip):
        u = unit(k.direction)
        for sign in (+1.0, -1.0):
            p0 = k.anchor + sign * k.half_width * (1j * u)
            cuts += _circle_param_line(center, r, p0, u, -inf, inf)
    elif isinstance(k, ComplementOf):
        for ob in k.obstacles:
            if isinstance(ob, ClosedDisk):
                cuts += _circle_circle(center, r, ob.center, ob.radius)
            elif isinstance(ob, Segment):
                d = ob.b - ob.a
                L = abs(d)
                cuts += _circle_param_line(center, r, ob.a, d / L, 0.0, L)
            # Point obstacles never cut an arc of positive measure
    else:
        raise SpecError(f"unknown domain kind {k!r}")

    cuts = sorted(c % TWO_PI for c in cuts)
    dedup: list[float] = []
    for c in cuts:
        if not dedup or c - dedup[-1] > 1e-13:
            dedup.append(c)
    if len(dedup) > 1 and (dedup[0] + TWO_PI) - dedup[-1] <= 1e-13:
        dedup.pop()
    return dedup


def _inside_arcs(spec: DomainSpec, center: complex, r: float) -> list[tuple[float, float]]:
    cuts = boundary_crossing_angles(spec, center, r)
    if not cuts:
        probe = center + r * unit(0.1234567)
        return [(0.0, TWO_PI)] if contains(spec, probe) else []
    arcs = []
    for i, lo in enumerate(cuts):
        hi = cuts[i + 1] if i + 1 < len(cuts) else cuts[0] + TWO_PI
        mid = 0.5 * (lo + hi)
        if contains(spec, center + r * unit(mid)):
            arcs.append((lo, hi))
    return arcs


# ---------------------------------------------------------------------------
# quadrature


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _panel_nodes(lo: float, hi: float, panels: int, order: int):
    x, w = _gl(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    thetas = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return thetas, weights


@dataclass(frozen=True)
class CircleRule:
    """Quadrature nodes on the in-domain arcs of one circle, with values."""

    r: float
    thetas: np.ndarray
    weights: np.ndarray
    values: np.ndarray
    stderrs: np.ndarray
    quad_error: float

    @property
    def integral(self) -> float:
        return float(self.weights @ self.values)

    @property
    def mc_error(self) -> float:
        return float(np.sqrt(np.sum((self.weights * self.stderrs) ** 2)))

    def moment(self, power: float) -> float:
        """Integral of g^power over the circle with the same nodes."""
        return float(self.weights @ self.values**power)


_EMPTY = np.zeros(0)


def circle_rule(evaluator: GreenEvaluator, r: float, rtol: float = 1e-8,
                wos_nodes: int = 256, seed_offset: int = 0) -> CircleRule:
    spec = evaluator.spec
    base = evaluator.base_point
    if r <= 0:
        raise ValueError("psi radius must be positive")
    if r < 1e-12 * max(1.0, abs(base)):
        raise PoleProximityError(f"radius {r} is below pole resolution")
    arcs = _inside_arcs(spec, base, r)
    if not arcs:
        return CircleRule(r, _EMPTY, _EMPTY, _EMPTY, _EMPTY, 0.0)

    if evaluator.backend == "wos":
        # fixed rule; distribute nodes over arcs by length, at least 8 each
        total = sum(hi - lo for lo, hi in arcs)
        counts = [max(8, int(round(wos_nodes * (hi - lo) / total))) for lo, hi in arcs]
        th_list, w_list = [], []
        for (lo, hi), n in zip(arcs, counts):
            x, w = _gl(n)
            th_list.append(0.5 * (lo + hi) + 0.5 * (hi - lo) * x)
            w_list.append(0.5 * (hi - lo) * w)
        thetas = np.concatenate(th_list)
        weights = np.concatenate(w_list)
        zs = base + r * np.exp(1j * thetas)
        values, errs = evaluator.values_and_errors(zs, seed_offset=seed_offset)
        return CircleRule(r, thetas, weights, values, errs, 0.0)

    # closed form: per-arc panel doubling with a fixed 16-point rule
    order = 16
    all_th, all_w, all_v = [], [], []
    quad_err = 0.0
    running = 0.0
    for lo, hi in arcs:
        panels = 1
        thetas, weights = _panel_nodes(lo, hi, panels, order)
        vals = evaluator.values_and_errors(base + r * np.exp(1j * thetas))[0]
        est = float(weights @ vals)
        for _ in range(14):
            panels *= 2
            thetas, weights = _panel_nodes(lo, hi, panels, order)
            vals = evaluator.values_and_errors(base + r * np.exp(1j * thetas))[0]
            new = float(weights @ vals)
            delta = abs(new - est)
            est = new
            if delta <= rtol * max(abs(running + est), 1e-300):
                break
        quad_err += delta
        running += est
        all_th.append(thetas)
        all_w.append(weights)
        all_v.append(vals)
    return CircleRule(r, np.concatenate(all_th), np.concatenate(all_w),
                      np.concatenate(all_v), np.zeros(sum(v.size for v in all_v)),
                      quad_err)


def psi_at(evaluator: GreenEvaluator, r: float, rtol: float = 1e-8,
           seed_offset: int = 0) -> tuple[float, float]:
    """(psi(r), error bound); the bound adds 3x aggregated MC stderr for WoS."""
    rule = circle_rule(evaluator, r, rtol=rtol, seed_offset=seed_offset)
    if rule.thetas.size == 0:
        return 0.0, 0.0
    return rule.integral, rule.quad_error + 3.0 * rule.mc_error


# ---------------------------------------------------------------------------
# profiles


@dataclass(frozen=True)
class PsiProfile:
    spec: DomainSpec
    base_point: complex
    radii: np.ndarray
    values: np.ndarray
    quad_errors: np.ndarray
    engine: str

    def __post_init__(self):
        if np.any(np.diff(self.radii) <= 0):
            raise ValueError("profile radii must be strictly increasing")
        if np.any(self.values < 0):
            raise ValueError("psi values must be nonnegative")

    def write_csv(self, fh) -> None:
        fh.write("r,psi,err\n")
        for r, v, e in zip(self.radii, self.values, self.quad_errors):
            fh.write(f"{float(r)!r},{float(v)!r},{float(e)!r}\n")

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            self.write_csv(fh)


def log_grid(r_min: float, r_max: float, points_per_decade: int) -> np.ndarray:
    if not 0 < r_min < r_max:
        raise ValueError("need 0 < r_min < r_max")
    if points_per_decade < 4:
        raise ValueError("points_per_decade must be >= 4")
    decades = math.log10(r_max / r_min)
    n = max(2, int(round(decades * points_per_decade)) + 1)
    return np.geomspace(r_min, r_max, n)


def build_profile(evaluator: GreenEvaluator, r_min: float, r_max: float,
                  points_per_decade: int = 8, rtol: float = 1e-8) -> PsiProfile:
    radii = log_grid(r_min, r_max, points_per_decade)
    values = np.empty(radii.shape)
    errors = np.empty(radii.shape)
    for k, r in enumerate(radii):
        values[k], errors[k] = psi_at(evaluator, float(r), rtol=rtol, seed_offset=k)
    return PsiProfile(evaluator.spec, evaluator.base_point, radii, values,
                      errors, evaluator.backend)


def check_monotone(profile: PsiProfile) -> list[tuple[int, int]]:
    """Index pairs where psi increases beyond the combined error bars.

    A few-ulp cushion is added so profiles that have plateaued at their
    limiting value do not report one-bit rounding noise as violations.
    """
    v, e = profile.values, profile.quad_errors
    out = []
    for k in range(len(v) - 1):
        ulps = 8.0 * np.finfo(float).eps * max(abs(v[k]), abs(v[k + 1]))
        if v[k + 1] > v[k] + e[k] + e[k + 1] + ulps:
            out.append((k, k + 1))
    return out


def check_pole_asymptote(evaluator: GreenEvaluator, radii) -> bool:
    """True iff psi(r) + 2 pi log r stays bounded (no trend) as r -> 0."""
    base = evaluator.base_point
    d0 = distance_to_complement(evaluator.spec, base)
    radii = np.asarray(sorted(radii), dtype=float)
    if radii.size < 2 or radii[-1] >= 0.5 * d0:
        raise ValueError("pole-asymptote radii must lie in (0, dist/2)")
    resid = np.array([psi_at(evaluator, float(r))[0] + TWO_PI * math.log(r)
                      for r in radii])
    slope = np.polyfit(np.log(radii), np.abs(resid), 1)[0]
    return bool(abs(slope) <= 0.05)


def jensen_gaps(evaluator: GreenEvaluator, r: float, alphas,
                rtol: float = 1e-8) -> list[tuple[float, float, float]]:
    """[(alpha, lhs, rhs)] for (psi/2pi)^{a+2} <= (1/2pi) int g^{a+2}.

    Both sides use the same quadrature nodes, so the inequality is an exact
    consequence of convexity up to float rounding.
    """
    rule = circle_rule(evaluator, r, rtol=rtol)
    out = []
    for alpha in alphas:
        power = alpha + 2.0
        if rule.thetas.size == 0:
            out.append((alpha, 0.0, 0.0))
            continue
        lhs = (rule.integral / TWO_PI) ** power
        rhs = rule.moment(power) / TWO_PI
        out.append((alpha, lhs, rhs))
    return out
