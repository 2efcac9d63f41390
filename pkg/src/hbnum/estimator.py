"""Hardy/Bergman numbers of a domain from its psi profile.

The Hardy number is the liminf of -log psi(r)/log r as r grows; it is
estimated as the minimum of least-squares slopes over sliding one-decade
windows in the tail of a log-spaced profile (a liminf must not be
over-averaged by a single global fit).  The Bergman numbers then follow
exactly: b = h and b_alpha = (alpha+2) h.

Membership of the covering map in a single space is decided from the
integral criteria int r^{p-1} psi dr (Hardy, two-sided) and
int r^{p-1} psi^{alpha+2} dr (Bergman, divergence is disqualifying; the
convergent direction is routed through the number equality instead, since
the integral test alone is only necessary).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    DomainSpec,
    complement_scale,
    ensure_extended_nonneg,
    is_polar_complement,
)
from .psi import TWO_PI, PsiProfile
from .spaces import MembershipVerdict, inconclusive, member, non_member


class ProfileRangeError(ValueError):
    """Profile grid does not reach far enough for a tail estimate."""


class ProfileDataError(ValueError):
    """Profile contains nonpositive values surrounded by positive ones."""


class Method(enum.Enum):
    LIMINF_SLOPE = "liminf-slope"
    POLAR_SHORTCUT = "polar-shortcut"
    INFINITY_CAP = "infinity-cap"


@dataclass(frozen=True)
class EstimatorOptions:
    infinity_cap: float = 50.0
    slope_tol: float = 0.05
    min_decades: float = 3.0
    window_decades: float = 1.0


DEFAULT_OPTIONS = EstimatorOptions()


@dataclass(frozen=True)
class NumberEstimate:
    value: float                      # extended nonnegative real (may be +inf)
    window_slopes: tuple[tuple[float, float], ...]
    confidence: float                 # spread (max - min) of tail-window slopes
    method: Method
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        ensure_extended_nonneg(self.value)
        if not self.confidence >= 0.0:
            raise ValueError("confidence must be nonnegative")


def _check_range(spec: DomainSpec, profile: PsiProfile, opts: EstimatorOptions) -> None:
    scale = complement_scale(spec)
    r_max = float(profile.radii[-1])
    decades = math.log10(r_max / scale)
    if decades < opts.min_decades - 1e-9:
        raise ProfileRangeError(
            f"profile reaches {decades:.2f} decades beyond the complement scale "
            f"{scale:g}; need {opts.min_decades:g}")


def _tail_windows(radii: np.ndarray, values: np.ndarray,
                  opts: EstimatorOptions) -> list[tuple[float, float]]:
    """(window start radius, fitted decay exponent) over the grid's upper half."""
    log10r = np.log10(radii)
    mid = 0.5 * (log10r[0] + log10r[-1])
    lnr = np.log(radii)
    lnv = np.log(values)
    out = []
    for i in range(len(radii)):
        if log10r[i] < mid:
            continue
        hi = log10r[i] + opts.window_decades
        if hi > log10r[-1] + 1e-9:
            break
        sel = (log10r >= log10r[i] - 1e-12) & (log10r <= hi + 1e-12)
        if sel.sum() < 3:
            continue
        slope = np.polyfit(lnr[sel], lnv[sel], 1)[0]
        out.append((float(radii[i]), float(-slope)))
    if not out:
        sel = log10r >= mid
        slope = np.polyfit(lnr[sel], lnv[sel], 1)[0]
        out.append((float(radii[sel][0]), float(-slope)))
    return out


def estimate_hardy_number(spec: DomainSpec, profile: PsiProfile | None,
                          opts: EstimatorOptions = DEFAULT_OPTIONS) -> NumberEstimate:
    """Hardy number estimate; profile may be omitted for polar complements."""
    if is_polar_complement(spec):
        return NumberEstimate(0.0, (), 0.0, Method.POLAR_SHORTCUT,
                              {"reason": "polar complement, all numbers vanish"})
    if profile is None:
        raise ValueError("non-polar domains require a psi profile")
    _check_range(spec, profile, opts)

    values = np.asarray(profile.values, dtype=float)
    radii = np.asarray(profile.radii, dtype=float)
    pos = values > 0.0
    if not pos.all():
        idx = np.flatnonzero(~pos)
        interior = idx[(idx > 0) & (idx < len(values) - 1)]
        bad = interior[(values[interior - 1] > 0) & (values[interior + 1] > 0)]
        if bad.size:
            raise ProfileDataError(
                f"nonpositive psi at r={radii[bad[0]]:g} between positive neighbours")
        if not pos[-1]:
            # compactly supported psi: -log psi / log r is +inf on the tail
            return NumberEstimate(math.inf, (), 0.0, Method.INFINITY_CAP,
                                  {"reason": "psi vanishes identically on the tail"})
        radii, values = radii[pos], values[pos]

    windows = _tail_windows(radii, values, opts)
    slopes = [s for _, s in windows]
    value = max(0.0, min(slopes))
    confidence = max(slopes) - min(slopes)
    if value > opts.infinity_cap:
        return NumberEstimate(math.inf, tuple(windows), confidence,
                              Method.INFINITY_CAP,
                              {"reason": f"slope exceeds cap {opts.infinity_cap:g}"})
    return NumberEstimate(value, tuple(windows), confidence, Method.LIMINF_SLOPE)


@dataclass(frozen=True)
class BergmanNumbers:
    b: float
    b_alpha: dict


def estimate_bergman_numbers(hardy: NumberEstimate, alphas) -> BergmanNumbers:
    """b = h and b_alpha = (alpha+2) h, with inf*c = inf and 0*c = 0."""
    h = hardy.value
    return BergmanNumbers(b=h, b_alpha={float(a): (float(a) + 2.0) * h for a in alphas})


# ---------------------------------------------------------------------------
# integral membership tests (section on the covering map)


def _fit_pole_constant(radii: np.ndarray, values: np.ndarray) -> float:
    n = min(4, len(radii))
    return float(np.mean(values[:n] + TWO_PI * np.log(radii[:n])))


def _fit_tail_power(radii: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Fit psi ~ A r^{-s} over the last decade of positive values."""
    pos = values > 0
    if not pos[-1]:
        return math.inf, 0.0    # compact support: infinitely fast decay
    r_hi = radii[-1]
    sel = pos & (radii >= r_hi / 10.0 - 1e-12)
    if sel.sum() < 2:
        sel = pos
    coef = np.polyfit(np.log(radii[sel]), np.log(values[sel]), 1)
    return float(-coef[0]), float(math.exp(coef[1]))


def hardy_lemma_integral(profile: PsiProfile, p: float,
                         weight_power: float = 1.0) -> dict:
    """Three-piece evaluation of int_0^inf r^{p-1} psi(r)^weight_power dr.

    Near zero psi is modelled as -2 pi log r + c (fitted) and integrated
    semi-analytically; the gridded range uses the trapezoid rule in log r;
    the tail uses the fitted power law.  Returns the pieces and the fitted
    tail exponent of psi^weight_power.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    radii = np.asarray(profile.radii, dtype=float)
    values = np.asarray(profile.values, dtype=float)

    c = _fit_pole_constant(radii, values)
    r0 = radii[0]
    if weight_power == 1.0:
        near = r0**p * (c / p - TWO_PI * math.log(r0) / p + TWO_PI / p**2)
    else:
        # int_0^{r0} r^{p-1} (c - 2 pi ln r)^w dr via u = ln(r0/r)
        from scipy.integrate import quad
        c0 = c - TWO_PI * math.log(r0)
        w = weight_power
        near = r0**p * quad(lambda u: math.exp(-p * u) * (c0 + TWO_PI * u) ** w,
                            0.0, np.inf)[0]

    f = values**weight_power * radii**p
    middle = float(np.trapezoid(f, np.log(radii)))

    s_psi, amp = _fit_tail_power(radii, values)
    s = s_psi * weight_power
    r_hi = radii[-1]
    if s > p:
        tail = (amp**weight_power) * r_hi ** (p - s) / (s - p) if math.isfinite(s) else 0.0
    else:
        tail = math.inf
    return {"near": float(near), "middle": middle, "tail": float(tail),
            "tail_exponent": float(s), "pole_constant": c,
            "total": float(near + middle + tail)}


def hardy_membership_via_psi(profile: PsiProfile, p: float,
                             opts: EstimatorOptions = DEFAULT_OPTIONS) -> MembershipVerdict:
    """Covering map in H^p iff int r^{p-1} psi dr < inf; decided by the tail."""
    _check_range(profile.spec, profile, opts)
    pieces = hardy_lemma_integral(profile, p)
    s = pieces["tail_exponent"]
    margin = s - p
    if margin > opts.slope_tol:
        return member(margin, **pieces)
    if margin < -opts.slope_tol:
        return non_member(margin, **pieces)
    return inconclusive(margin, slope_tol=opts.slope_tol, **pieces)


def bergman_nonmembership_via_psi(profile: PsiProfile, p: float, alpha: float,
                                  opts: EstimatorOptions = DEFAULT_OPTIONS) -> MembershipVerdict:
    """Bergman test: divergence of int r^{p-1} psi^{alpha+2} disqualifies.

    Convergence alone is only necessary, so the member verdict is issued via
    the number equality h = b_alpha/(alpha+2): member when p/(alpha+2) falls
    clearly below the Hardy estimate, inconclusive otherwise.
    """
    if not alpha > -1:
        raise ValueError("alpha must exceed -1")
    _check_range(profile.spec, profile, opts)
    pieces = hardy_lemma_integral(profile, p, weight_power=alpha + 2.0)
    s_eff = pieces["tail_exponent"]
    margin = s_eff - p
    if margin < -opts.slope_tol:
        return non_member(margin, **pieces)
    if margin <= opts.slope_tol:
        return inconclusive(margin, slope_tol=opts.slope_tol, **pieces)
    hardy = estimate_hardy_number(profile.spec, profile, opts)
    ratio = p / (alpha + 2.0)
    gap = (hardy.value - hardy.confidence) - ratio
    if gap > 0:
        return member(gap, hardy_estimate=hardy.value,
                      hardy_confidence=hardy.confidence, ratio=ratio, **pieces)
    return inconclusive(gap, hardy_estimate=hardy.value,
                        hardy_confidence=hardy.confidence, ratio=ratio, **pieces)
