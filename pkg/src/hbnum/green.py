"""Green functions of planar domains, extended by zero outside the domain.

Canonical domains are handled in closed form by conformal transport to the
unit disk or the right half-plane; complement-of-obstacles domains fall back
to walk-on-spheres Monte Carlo.  All formulas are arranged as log1p of a
positive ratio, which keeps full relative accuracy both near the pole and in
the far tail (where g can be ~1e-18).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    ComplementOf,
    Disk,
    DomainSpec,
    ExteriorOfDisk,
    PolarComplementError,
    Sector,
    SlitPlane,
    SpecError,
    Strip,
    contains,
    is_polar_complement,
    unit,
)
from .wos import WoSConfig, run_batch, wos_green

__all__ = [
    "green_disk",
    "green_half_plane",
    "closed_form_green",
    "closed_form_green_many",
    "GreenEvaluator",
    "green_evaluator",
    "UnsupportedBackendError",
    "WoSConfig",
    "wos_green",
]


class UnsupportedBackendError(SpecError):
    """Requested backend cannot evaluate this domain kind."""


_BOUNDARY_TOL = 1e-12


def green_disk(z: complex, w: complex) -> float:
    """Green function of the unit disk, log|(1 - z conj(w))/(z - w)|.

    Uses the identity |1 - z conj(w)|^2 - |z - w|^2 = (1-|z|^2)(1-|w|^2) for
    a cancellation-free evaluation.  Returns +inf at z == w.
    """
    az2 = abs(z) ** 2
    aw2 = abs(w) ** 2
    if az2 > 1.0 + _BOUNDARY_TOL or aw2 > 1.0 + _BOUNDARY_TOL:
        raise ValueError("green_disk arguments must lie in the closed unit disk")
    if z == w:
        return math.inf
    num = max(0.0, 1.0 - az2) * max(0.0, 1.0 - aw2)
    den = abs(z - w) ** 2
    return 0.5 * math.log1p(num / den)


def green_half_plane(zeta: complex, zeta0: complex) -> float:
    """Green function of the right half-plane, log|(zeta + conj(zeta0))/(zeta - zeta0)|."""
    if zeta.real < -_BOUNDARY_TOL or zeta0.real < -_BOUNDARY_TOL:
        raise ValueError("green_half_plane arguments must have Re >= 0")
    if zeta == zeta0:
        return math.inf
    num = 4.0 * max(0.0, zeta0.real) * max(0.0, zeta.real)
    den = abs(zeta - zeta0) ** 2
    return 0.5 * math.log1p(num / den)


def _disk_green_arrays(u: np.ndarray, u0: complex) -> np.ndarray:
    num = np.maximum(0.0, 1.0 - np.abs(u) ** 2) * max(0.0, 1.0 - abs(u0) ** 2)
    den = np.abs(u - u0) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 0.5 * np.log1p(num / den)
    out[den == 0.0] = np.inf
    return out


def _half_plane_green_polar(log_mod: np.ndarray, arg: np.ndarray,
                            zeta0: complex) -> np.ndarray:
    """g_H for zeta given in polar form exp(log_mod + i*arg); overflow-safe."""
    x0, y0 = zeta0.real, zeta0.imag
    out = np.empty_like(log_mod)
    big = log_mod > 300.0
    small = ~big
    if small.any():
        zeta = np.exp(log_mod[small] + 1j * arg[small])
        num = 4.0 * x0 * np.maximum(0.0, zeta.real)
        den = np.abs(zeta - zeta0) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = 0.5 * np.log1p(num / den)
        vals[den == 0.0] = np.inf
        out[small] = vals
    if big.any():
        # divide through by |zeta|^2; exp(-log_mod) may underflow to 0 -> g=0
        eml = np.exp(-log_mod[big])
        c = np.cos(arg[big])
        s = np.sin(arg[big])
        den = 1.0 - 2.0 * (x0 * c + y0 * s) * eml + (x0 * x0 + y0 * y0) * eml * eml
        out[big] = 0.5 * np.log1p(4.0 * x0 * np.maximum(0.0, c) * eml / den)
    return out


def _sector_like_params(kind) -> tuple[complex, float, float]:
    """(vertex, bisector, half_angle) treating a slit plane as a half_angle-pi sector."""
    if isinstance(kind, Sector):
        return kind.vertex, kind.bisector_angle, kind.half_angle
    return kind.tip, kind.ray_angle + math.pi, math.pi


def closed_form_green_many(spec: DomainSpec, zs, w0: complex) -> np.ndarray:
    """Vectorized g_spec(z, w0) over an array of z; zero outside the domain."""
    k = spec.kind
    if isinstance(k, ComplementOf):
        raise UnsupportedBackendError(
            "no closed form for complement-of-obstacles domains; use walk-on-spheres")
    if not contains(spec, w0):
        raise SpecError("Green pole w0 must be an interior point")
    zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
    out = np.zeros(zs.shape, dtype=np.float64)

    if isinstance(k, Disk):
        u = (zs - k.center) / k.radius
        inside = np.abs(u) < 1.0
        u0 = (w0 - k.center) / k.radius
        out[inside] = _disk_green_arrays(u[inside], u0)
        return out

    if isinstance(k, ExteriorOfDisk):
        d = zs - k.center
        inside = np.abs(d) > k.radius
        u = np.empty_like(d)
        u[inside] = k.radius / d[inside]
        u0 = k.radius / (w0 - k.center)
        # the puncture at u=0 (image of infinity) is polar and ignored
        out[inside] = _disk_green_arrays(u[inside], u0)
        return out

    if isinstance(k, (Sector, SlitPlane)):
        vertex, bisector, half = _sector_like_params(k)
        rot = unit(-bisector)
        w = (zs - vertex) * rot
        ang = np.angle(w)
        inside = (np.abs(ang) < half) & (w != 0)
        power = math.pi / (2.0 * half)
        with np.errstate(divide="ignore"):
            log_mod = power * np.log(np.abs(w[inside]))
        arg = power * ang[inside]
        w0m = (w0 - vertex) * rot
        zeta0 = cmath.exp(power * cmath.log(w0m))
        out[inside] = _half_plane_green_polar(log_mod, arg, zeta0)
        return out

    if isinstance(k, Strip):
        scale = math.pi / (2.0 * k.half_width)
        rot = unit(-k.direction)
        s = (zs - k.anchor) * rot * scale
        inside = np.abs(s.imag) < 0.5 * math.pi
        zeta0 = cmath.exp((w0 - k.anchor) * rot * scale)
        out[inside] = _half_plane_green_polar(s.real[inside], s.imag[inside], zeta0)
        return out

    raise SpecError(f"unknown domain kind {k!r}")


def closed_form_green(spec: DomainSpec, z: complex, w0: complex) -> float:
    """g_spec(z, w0) by conformal transport; 0 outside the domain, +inf at the pole."""
    if z == w0:
        if not contains(spec, w0):
            raise SpecError("Green pole w0 must be an interior point")
        return math.inf
    return float(closed_form_green_many(spec, [z], w0)[0])


@dataclass(frozen=True)
class GreenEvaluator:
    """Uniform interface over the closed-form and Monte Carlo backends.

    values_and_errors returns (values, stderrs); stderrs are zero for the
    closed form.  Immutable and safe to share.
    """

    spec: DomainSpec
    backend: str                      # "closed-form" | "wos"
    wos_config: WoSConfig | None = None

    def __post_init__(self):
        if is_polar_complement(self.spec):
            raise PolarComplementError(
                "polar complement: the domain has no Green function")
        if self.backend not in ("closed-form", "wos"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.backend == "closed-form" and isinstance(self.spec.kind, ComplementOf):
            raise UnsupportedBackendError(
                "complement-of-obstacles domains require the wos backend")
        if self.backend == "wos" and self.wos_config is None:
            object.__setattr__(self, "wos_config", WoSConfig())

    @property
    def base_point(self) -> complex:
        return self.spec.base_point

    def green(self, z: complex, w0: complex | None = None) -> float:
        w0 = self.base_point if w0 is None else w0
        if self.backend == "closed-form":
            return closed_form_green(self.spec, z, w0)
        return wos_green(self.spec, z, w0, self.wos_config)[0]

    def values_and_errors(self, zs, w0: complex | None = None,
                          seed_offset: int = 0):
        w0 = self.base_point if w0 is None else w0
        if self.backend == "closed-form":
            vals = closed_form_green_many(self.spec, zs, w0)
            return vals, np.zeros_like(vals)
        cfg = self.wos_config
        if seed_offset:
            cfg = WoSConfig(walks=cfg.walks, seed=cfg.seed + seed_offset,
                            epsilon_shell=cfg.epsilon_shell,
                            sphere_cap=cfg.sphere_cap, max_steps=cfg.max_steps)
        batch = run_batch(self.spec, zs, w0, cfg)
        return batch.values, batch.stderrs


def green_evaluator(spec: DomainSpec, engine: str = "auto",
                    cfg: WoSConfig | None = None) -> GreenEvaluator:
    """Pick the natural backend: closed form for canonical kinds, else WoS."""
    if engine == "auto":
        engine = "wos" if isinstance(spec.kind, ComplementOf) else "closed-form"
    return GreenEvaluator(spec, engine, cfg)
