"""Membership tests for explicit holomorphic functions on the unit disk.

Three routes:

* area-integral (Littlewood-Paley) criteria, evaluated by 2-D polar
  quadrature with a delta-sweep toward the boundary and a convergence-trend
  verdict;
* the sup-norm integral criterion for univalent maps, which for the built-in
  families reduces exactly to a (1-r)^s log^{-t} integral classified
  symbolically;
* the extremal family (1-z)^{-a} log(C/(1-z))^{-b}, with a constructive
  choice of C and a sampled univalence check on the right half-plane.

All boundary-singular quantities are evaluated in log-magnitude form.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .spaces import MembershipVerdict, inconclusive, member, non_member


class UnivalenceError(ValueError):
    """Function family is not known to be univalent."""


# ---------------------------------------------------------------------------
# function specs


@dataclass(frozen=True)
class PowerMap:
    """f(z) = (1 - z)^{-a}, a > 0."""

    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("power-map exponent must be positive")


@dataclass(frozen=True)
class KoebeSquare:
    """f(z) = 1/(1 - z)^2, the extremal map of the slit plane."""


@dataclass(frozen=True)
class ExtremalFab:
    """f(z) = (1 - z)^{-a} log(C/(1-z))^{-b} on the unit disk.

    Instances from make_extremal_map satisfy the univalence margin
    (b/a + 1) arctan(pi / (2 log(C/2))) <= pi/4; direct construction only
    requires C > 2 so that deliberately undersized constants can be probed.
    """

    a: float
    b: float
    C: float

    def __post_init__(self):
        if not 0 < self.a <= 2:
            raise ValueError("require 0 < a <= 2")
        if not self.b > 0:
            raise ValueError("require b > 0")
        if not self.C > 2:
            raise ValueError("require C > 2 (positive logarithm on [0,1))")


@dataclass(frozen=True)
class CustomFunction:
    """Arbitrary holomorphic function given by numpy-aware evaluators."""

    f: callable
    fprime: callable
    m_inf: callable | None = None     # r -> sup_{|z|=r} |f|
    univalent: bool = False


AnalyticFunctionSpec = PowerMap | KoebeSquare | ExtremalFab | CustomFunction


def _fab_log_factor(fab: ExtremalFab, z: np.ndarray) -> np.ndarray:
    # L(z) = log(C/(1-z)) = log C - log(1-z), always in the right half-plane
    return math.log(fab.C) - np.log(1.0 - z)


def _log_abs_f_fprime(spec: AnalyticFunctionSpec, z: np.ndarray):
    """(log|f|, log|f'|), stable arbitrarily close to z = 1."""
    if isinstance(spec, KoebeSquare):
        spec = PowerMap(2.0)
    if isinstance(spec, PowerMap):
        l1 = np.log(np.abs(1.0 - z))
        a = spec.a
        return -a * l1, math.log(a) - (a + 1.0) * l1
    if isinstance(spec, ExtremalFab):
        l1 = np.log(np.abs(1.0 - z))
        L = _fab_log_factor(spec, z)
        logf = -spec.a * l1 - spec.b * np.log(np.abs(L))
        # f' = f (a + b/L)/(1-z)
        logfp = logf + np.log(np.abs(spec.a + spec.b / L)) - l1
        return logf, logfp
    if isinstance(spec, CustomFunction):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(spec.f(z))), np.log(np.abs(spec.fprime(z)))
    raise TypeError(f"unknown function spec {spec!r}")


def _log_abs_f_minus_f0(spec: AnalyticFunctionSpec, z: np.ndarray) -> np.ndarray:
    """log|f(z) - f(0)| without forming f near its singularity."""
    if isinstance(spec, KoebeSquare):
        spec = PowerMap(2.0)
    if isinstance(spec, PowerMap):
        # f0/f = (1-z)^a
        ratio = np.exp(spec.a * np.log(1.0 - z))
        return -spec.a * np.log(np.abs(1.0 - z)) + np.log(np.abs(1.0 - ratio))
    if isinstance(spec, ExtremalFab):
        L = _fab_log_factor(spec, z)
        L0 = math.log(spec.C)
        ratio = np.exp(spec.a * np.log(1.0 - z) + spec.b * (np.log(L) - math.log(L0)))
        logf = _log_abs_f_fprime(spec, z)[0]
        return logf + np.log(np.abs(1.0 - ratio))
    if isinstance(spec, CustomFunction):
        f0 = complex(spec.f(np.zeros(1, dtype=complex))[0])
        with np.errstate(divide="ignore"):
            return np.log(np.abs(spec.f(z) - f0))
    raise TypeError(f"unknown function spec {spec!r}")


# ---------------------------------------------------------------------------
# exact classifier for (1-r)^s log(C/(1-r))^{-t} integrals


class IntegralClass(enum.Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"


@dataclass(frozen=True)
class LogPowerIntegralForm:
    """int_0^1 (1-r)^s log(C/(1-r))^{-t} dr with C > 2."""

    s: float
    t: float
    C: float

    def __post_init__(self):
        if not self.C > 2:
            raise ValueError("require C > 2")


def classify_log_power_integral(form: LogPowerIntegralForm) -> IntegralClass:
    """Exact convergence test: converges iff s > -1, or s = -1 and t > 1."""
    if form.s > -1.0:
        return IntegralClass.CONVERGES
    if form.s == -1.0 and form.t > 1.0:
        return IntegralClass.CONVERGES
    return IntegralClass.DIVERGES


# ---------------------------------------------------------------------------
# Littlewood-Paley area criteria


@dataclass(frozen=True)
class LPQuadrature:
    deltas: tuple[float, ...] = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
    radial_nodes: int = 24
    angular_nodes: int = 12
    member_ratio: float = 0.8      # geometric decay threshold on increments
    growth_tol: float = 0.05       # power-growth exponent threshold in 1/delta


DEFAULT_LP = LPQuadrature()

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(n: int):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _theta_edges(width: float) -> np.ndarray:
    # panels graded geometrically away from the boundary singularity at theta=0
    edges = [0.0]
    w = max(width, 1e-9)
    while w < math.pi:
        edges.append(w)
        w *= 6.0
    edges.append(math.pi)
    return np.asarray(edges)


def _angular_integral(values_fn, r: float, order: int) -> float:
    """Integral over theta in (-pi, pi] of the integrand at radius r."""
    x, w = _gl(order)
    edges = _theta_edges(1.0 - r)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        th = mid + half * x
        # mirror panels: the integrand of both built-in and custom specs is
        # evaluated on +-theta explicitly (no symmetry assumption)
        total += float(np.sum(w * half * (values_fn(r, th) + values_fn(r, -th))))
    return total


def _radial_chunk(values_fn, r_lo: float, r_hi: float, quad: LPQuadrature) -> float:
    """Integral over the annulus r in [r_lo, r_hi] (times r dr already inside)."""
    x, w = _gl(quad.radial_nodes)
    # integrate in u = log(1 - r) to resolve the boundary approach
    u_lo, u_hi = math.log(1.0 - r_hi), math.log(1.0 - r_lo)
    mid, half = 0.5 * (u_lo + u_hi), 0.5 * (u_hi - u_lo)
    total = 0.0
    for ui, wi in zip(mid + half * x, w * half):
        r = 1.0 - math.exp(ui)
        ang = _angular_integral(values_fn, r, quad.angular_nodes)
        total += wi * ang * r * math.exp(ui)   # dr = e^u du
    return total


def _inner_disk_integral(values_fn, r_hi: float, quad: LPQuadrature) -> float:
    """Integral over |z| <= r_hi with panels graded toward both 0 and r_hi."""
    edges = [0.0]
    e = 1e-8
    while e < 0.5 * r_hi:
        edges.append(e)
        e *= 100.0
    edges += [0.5 * r_hi, 0.9 * r_hi, r_hi]
    x, w = _gl(quad.radial_nodes)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        for ri, wi in zip(mid + half * x, w * half):
            total += wi * _angular_integral(values_fn, ri, quad.angular_nodes) * ri
    return total


def _trend_verdict(partials: list[float], quad: LPQuadrature,
                   extra_diag: dict) -> MembershipVerdict:
    increments = np.diff(partials)
    diag = {"partial_integrals": list(partials), **extra_diag}
    if partials[-1] > 0 and increments[-1] <= 1e-10 * partials[-1]:
        return member(math.inf, **diag)
    if np.any(increments <= 0):
        return member(math.inf, **diag)
    ratios = increments[1:] / increments[:-1]
    diag["increment_ratios"] = list(map(float, ratios))
    if np.all(ratios <= quad.member_ratio):
        return member(float(-np.log10(ratios.max())), **diag)
    beta = float(np.mean(np.log10(ratios)))
    diag["growth_exponent"] = beta
    if beta > quad.growth_tol:
        return non_member(-beta, **diag)
    return inconclusive(-beta, **diag)


def _lp_area_test(spec: AnalyticFunctionSpec, p: float, weight_power: float,
                  subtract_f0: bool, quad: LPQuadrature) -> MembershipVerdict:
    def values(r, th):
        z = r * np.exp(1j * th)
        if subtract_f0:
            logf = _log_abs_f_minus_f0(spec, z)
            logfp = _log_abs_f_fprime(spec, z)[1]
        else:
            logf, logfp = _log_abs_f_fprime(spec, z)
        expo = (p - 2.0) * logf + 2.0 * logfp
        vals = np.exp(np.minimum(expo, 700.0))
        if np.any(np.isnan(vals)):
            raise ValueError("NaN in area integrand")
        return vals * math.log(1.0 / r) ** weight_power

    deltas = quad.deltas
    partials = [_inner_disk_integral(values, 1.0 - deltas[0], quad)]
    for d_prev, d_next in zip(deltas[:-1], deltas[1:]):
        partials.append(partials[-1] +
                        _radial_chunk(values, 1.0 - d_prev, 1.0 - d_next, quad))
    return _trend_verdict(partials, quad, {"deltas": list(deltas)})


def lp_hardy_membership(spec: AnalyticFunctionSpec, p: float,
                        quad: LPQuadrature = DEFAULT_LP) -> MembershipVerdict:
    """Hardy membership via the area integral with weight log(1/|z|)."""
    if p <= 0:
        raise ValueError("p must be positive")
    return _lp_area_test(spec, p, 1.0, False, quad)


def lp_bergman_membership(spec: AnalyticFunctionSpec, p: float, alpha: float,
                          quad: LPQuadrature = DEFAULT_LP) -> MembershipVerdict:
    """Weighted-Bergman membership via the area integral with weight
    log(1/|z|)^{alpha+2}; tests f - f(0) (constants lie in every space)."""
    if p <= 0 or not alpha > -1:
        raise ValueError("need p > 0 and alpha > -1")
    return _lp_area_test(spec, p, alpha + 2.0, True, quad)


# ---------------------------------------------------------------------------
# univalent route: sup-norm integral criterion


def _power_exponent(alpha: float, a: float, p: float) -> float:
    """alpha + 1 - a p, snapped to exactly -1 within float tolerance.

    Parameters entered on the critical line alpha + 2 = a p routinely carry
    one-ulp rounding; the symbolic classifier's strictness must test the log
    exponent there, not fall off the line.
    """
    s = alpha + 1.0 - a * p
    if s != -1.0 and abs(s + 1.0) <= 1e-12 * max(1.0, abs(alpha) + 1.0, a * p):
        return -1.0
    return s


def _log_power_form(spec: AnalyticFunctionSpec, p: float,
                    alpha: float) -> LogPowerIntegralForm | None:
    if isinstance(spec, KoebeSquare):
        spec = PowerMap(2.0)
    if isinstance(spec, PowerMap):
        if spec.a > 2:
            raise UnivalenceError("(1-z)^{-a} is univalent only for a <= 2")
        # C is irrelevant when t = 0; any admissible constant works
        return LogPowerIntegralForm(_power_exponent(alpha, spec.a, p), 0.0, math.e**2)
    if isinstance(spec, ExtremalFab):
        return LogPowerIntegralForm(_power_exponent(alpha, spec.a, p),
                                    spec.b * p, spec.C)
    return None


def bgp_membership(spec: AnalyticFunctionSpec, p: float, alpha: float,
                   quad: LPQuadrature = DEFAULT_LP) -> MembershipVerdict:
    """Univalent-map criterion int_0^1 (1-r)^{alpha+1} M_inf^p(r) dr < inf.

    For the built-in families M_inf(r) = f(r) and the test is classified
    exactly; custom univalent functions with an m_inf evaluator are swept
    numerically like the area tests.
    """
    if p <= 0 or not alpha > -1:
        raise ValueError("need p > 0 and alpha > -1")
    form = _log_power_form(spec, p, alpha)
    if form is not None:
        margin = form.s + 1.0 if form.s != -1.0 else form.t - 1.0
        if classify_log_power_integral(form) is IntegralClass.CONVERGES:
            return member(margin, form=form)
        return non_member(margin, form=form)
    if not (isinstance(spec, CustomFunction) and spec.univalent and spec.m_inf):
        raise UnivalenceError(
            "sup-norm criterion requires a univalent function family")
    x, w = _gl(quad.radial_nodes)

    def chunk(d_hi, d_lo):
        u_lo, u_hi = math.log(d_lo), math.log(d_hi)
        mid, half = 0.5 * (u_lo + u_hi), 0.5 * (u_hi - u_lo)
        tot = 0.0
        for ui, wi in zip(mid + half * x, w * half):
            d = math.exp(ui)
            tot += wi * d ** (alpha + 2.0) * float(spec.m_inf(1.0 - d)) ** p
        return tot

    partials = [chunk(1.0, quad.deltas[0])]
    for d_prev, d_next in zip(quad.deltas[:-1], quad.deltas[1:]):
        partials.append(partials[-1] + chunk(d_prev, d_next))
    return _trend_verdict(partials, quad, {"deltas": list(quad.deltas)})


# ---------------------------------------------------------------------------
# the extremal family


def univalence_margin(fab: ExtremalFab) -> float:
    """(b/a + 1) arctan(pi/(2 log(C/2))), to be kept at or below pi/4."""
    return (fab.b / fab.a + 1.0) * math.atan(math.pi / (2.0 * math.log(fab.C / 2.0)))


def make_extremal_map(a: float, b: float) -> ExtremalFab:
    """Choose C so the univalence margin equals pi/4 (factor 2 of safety
    below the pi/2 bound that univalence requires)."""
    if not 0 < a <= 2:
        raise ValueError("require 0 < a <= 2")
    if not b > 0:
        raise ValueError("require b > 0")
    beta = b / a
    C = 2.0 * math.exp(math.pi / (2.0 * math.tan(math.pi / (4.0 * (beta + 1.0)))))
    return ExtremalFab(a, b, C)


def check_univalence_sampled(fab: ExtremalFab, samples: int = 10_000) -> bool:
    """Sampled necessary condition Re F'(w) > 0 on  Re w > 1/2.

    F(w) = w / log(C w)^beta with beta = b/a represents f_{1, b/a}; its
    univalence (plus the power a <= 2) gives univalence of the full map.
    Points cover radii up to 1e6 around w = 1/2 over the full angle range,
    from a deterministic low-discrepancy sequence.  The reflection law
    conj(F(w)) = F(conj(w)) is asserted along the way.
    """
    beta = fab.b / fab.a

    def F(w):
        return w * np.exp(-beta * np.log(np.log(fab.C * w)))

    u = qmc.Halton(d=2, scramble=False).random(samples)
    rho = 10.0 ** (-3.0 + 9.0 * u[:, 0])
    phi = math.pi * (u[:, 1] - 0.5) * 0.999999
    w = 0.5 + rho * np.exp(1j * phi)

    L = np.log(fab.C * w)
    fprime = (L - beta) * np.exp(-(beta + 1.0) * np.log(L))

    refl = F(np.conj(w[:64])) - np.conj(F(w[:64]))
    scale = np.abs(F(w[:64])) + 1.0
    if np.any(np.abs(refl) > 1e-10 * scale):
        raise RuntimeError("reflection law conj(F(w)) = F(conj(w)) violated")

    return bool(np.all(fprime.real > 0.0))


def classify_extremal_membership(fab: ExtremalFab, p: float,
                                 alpha: float) -> MembershipVerdict:
    """Exact Bergman membership of the extremal map via the symbolic form.

    On the critical line p/(alpha+2) = 1/a this reduces to p > 1/b; off the
    line it reduces to the ratio comparison with 1/a.
    """
    if p <= 0 or not alpha > -1:
        raise ValueError("need p > 0 and alpha > -1")
    form = LogPowerIntegralForm(_power_exponent(alpha, fab.a, p), fab.b * p, fab.C)
    margin = form.s + 1.0 if form.s != -1.0 else form.t - 1.0
    if classify_log_power_integral(form) is IntegralClass.CONVERGES:
        return member(margin, form=form)
    return non_member(margin, form=form)
