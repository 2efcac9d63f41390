"""Walk-on-spheres Monte Carlo evaluation of Green functions.

Each walk jumps to a uniform point on the largest complement-free circle
(capped at ``sphere_cap``) until it lands within ``epsilon_shell`` of the
complement, then scores the boundary data.  Two exactness refinements:

* For domains whose complement is bounded, the plain score
  ``log|exit - w0|`` misses the harmonic term that grows like ``log|z|`` at
  infinity.  Scoring the difference ``log|exit - w0| - log|exit - a|`` for a
  fixed reference point ``a`` outside the domain restores the exact Green
  function (the corrective term vanishes identically when the domain is
  bounded, and equals the pole-at-infinity contribution otherwise).
* Planar Brownian motion is only neighbourhood-recurrent, so a walker far
  outside the obstacles would need an unbounded number of uniform jumps to
  come back.  Whenever the walker leaves a circle enclosing every obstacle,
  it re-enters through a single exact harmonic-measure jump (Kelvin
  inversion + wrapped-Cauchy sampling), which is identical in law to the
  skipped excursion.

Per-walk RNG streams are derived deterministically from (seed, walk index)
with splitmix64, so serial and parallel runs agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit, prange

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
    SpecError,
    Strip,
    complement_scale,
    contains,
    is_polar_complement,
    unit,
    PolarComplementError,
)


class EstimationError(RuntimeError):
    """Monte Carlo estimate unusable (too many walks hit the step limit)."""


@dataclass(frozen=True)
class WoSConfig:
    """Walk-on-spheres sampling parameters.

    epsilon_shell and sphere_cap may be left as None to use the defaults
    1e-6 x complement scale and 1e4 x (1 + |z| + |w0|) respectively.
    """

    walks: int = 10_000
    seed: int = 0
    epsilon_shell: float | None = None
    sphere_cap: float | None = None
    max_steps: int = 200_000

    def __post_init__(self):
        if self.walks < 1:
            raise ValueError("walks must be >= 1")
        if self.epsilon_shell is not None and not self.epsilon_shell > 0:
            raise ValueError("epsilon_shell must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")

    def resolve(self, spec: DomainSpec, zs, w0: complex) -> tuple[float, float]:
        eps = self.epsilon_shell
        if eps is None:
            eps = 1e-6 * complement_scale(spec)
        zmax = max((abs(z) for z in np.atleast_1d(zs)), default=0.0)
        cap = self.sphere_cap
        if cap is None:
            cap = 1e4 * (1.0 + zmax + abs(w0))
        if cap < eps:
            raise ValueError("sphere_cap must be >= epsilon_shell")
        return float(eps), float(cap)


# geometry table row kinds
_K_DISK_OBSTACLE = 0.0
_K_SEGMENT = 1.0
_K_POINT = 2.0
_K_CONTAINING_DISK = 3.0
_K_RAY = 4.0
_K_HALFPLANE = 5.0


def build_table(spec: DomainSpec):
    """Flatten the complement geometry into a numeric table for the kernel.

    Returns (table, enclosure, anchor): enclosure is (ex, ey, radius) when the
    complement is bounded (else None); anchor is a point of the complement
    used for the bounded-complement score correction (else None).
    """
    k = spec.kind
    rows: list[tuple[float, ...]] = []
    anchors: list[complex] = []
    bounded = False
    if isinstance(k, Disk):
        rows.append((_K_CONTAINING_DISK, k.center.real, k.center.imag, k.radius, 0.0, 0.0))
    elif isinstance(k, ExteriorOfDisk):
        rows.append((_K_DISK_OBSTACLE, k.center.real, k.center.imag, k.radius, 0.0, 0.0))
        anchors.append(k.center)
        bounded = True
    elif isinstance(k, Sector):
        for sign in (+1.0, -1.0):
            d = unit(k.bisector_angle + sign * k.half_angle)
            rows.append((_K_RAY, k.vertex.real, k.vertex.imag, d.real, d.imag, 0.0))
    elif isinstance(k, SlitPlane):
        d = unit(k.ray_angle)
        rows.append((_K_RAY, k.tip.real, k.tip.imag, d.real, d.imag, 0.0))
    elif isinstance(k, Strip):
        n = 1j * unit(k.direction)
        base = (n.conjugate() * k.anchor).real
        rows.append((_K_HALFPLANE, n.real, n.imag, base + k.half_width, 0.0, 0.0))
        rows.append((_K_HALFPLANE, -n.real, -n.imag, -base + k.half_width, 0.0, 0.0))
    elif isinstance(k, ComplementOf):
        bounded = True
        for ob in k.obstacles:
            if isinstance(ob, ClosedDisk):
                rows.append((_K_DISK_OBSTACLE, ob.center.real, ob.center.imag, ob.radius, 0.0, 0.0))
                anchors.append(ob.center)
            elif isinstance(ob, Segment):
                rows.append((_K_SEGMENT, ob.a.real, ob.a.imag, ob.b.real, ob.b.imag, 0.0))
                anchors.append(0.5 * (ob.a + ob.b))
            else:
                rows.append((_K_POINT, ob.location.real, ob.location.imag, 0.0, 0.0, 0.0))
                anchors.append(ob.location)
    else:
        raise SpecError(f"unknown domain kind {k!r}")

    table = np.asarray(rows, dtype=np.float64)
    if not bounded:
        return table, None, None

    # enclosing circle with a factor-2 margin; every obstacle is strictly inside
    pts: list[complex] = []
    ext: list[float] = []
    for row in rows:
        kind = row[0]
        if kind == _K_DISK_OBSTACLE:
            pts.append(complex(row[1], row[2]))
            ext.append(row[3])
        elif kind == _K_SEGMENT:
            pts.append(0.5 * complex(row[1] + row[3], row[2] + row[4]))
            ext.append(0.5 * math.hypot(row[3] - row[1], row[4] - row[2]))
        else:
            pts.append(complex(row[1], row[2]))
            ext.append(0.0)
    center = sum(pts) / len(pts)
    rho = max(abs(p - center) + e for p, e in zip(pts, ext))
    enclosure = (center.real, center.imag, 2.0 * rho + 1.0)
    # prefer a non-polar obstacle as the reference point
    anchor = anchors[0]
    for row, a in zip([r for r in rows if r[0] != _K_CONTAINING_DISK], anchors):
        if row[0] != _K_POINT:
            anchor = a
            break
    return table, enclosure, anchor


_U64 = np.uint64
_GOLD = _U64(0x9E3779B97F4A7C15)
_INV_2_53 = 1.0 / 9007199254740992.0


@njit(inline="always")
def _mix64(z):
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


@njit(inline="always")
def _stream_init(seed, idx):
    return _mix64(_mix64(seed + _GOLD * (idx + _U64(1))))


@njit(inline="always")
def _next_u01(state):
    # splitmix64: counter stream, 53-bit uniform output
    state = state + _GOLD
    z = _mix64(state)
    return state, (z >> _U64(11)) * _INV_2_53


@njit(inline="always")
def _dist_to_complement(table, x, y):
    best = 1e300
    for k in range(table.shape[0]):
        kind = table[k, 0]
        if kind == 0.0:
            dx = x - table[k, 1]
            dy = y - table[k, 2]
            d = math.sqrt(dx * dx + dy * dy) - table[k, 3]
            if d < 0.0:
                d = 0.0
        elif kind == 1.0:
            ax = table[k, 1]
            ay = table[k, 2]
            vx = table[k, 3] - ax
            vy = table[k, 4] - ay
            t = ((x - ax) * vx + (y - ay) * vy) / (vx * vx + vy * vy)
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
            dx = x - (ax + t * vx)
            dy = y - (ay + t * vy)
            d = math.sqrt(dx * dx + dy * dy)
        elif kind == 2.0:
            dx = x - table[k, 1]
            dy = y - table[k, 2]
            d = math.sqrt(dx * dx + dy * dy)
        elif kind == 3.0:
            dx = x - table[k, 1]
            dy = y - table[k, 2]
            d = table[k, 3] - math.sqrt(dx * dx + dy * dy)
            if d < 0.0:
                d = 0.0
        elif kind == 4.0:
            ox = table[k, 1]
            oy = table[k, 2]
            ux = table[k, 3]
            uy = table[k, 4]
            t = (x - ox) * ux + (y - oy) * uy
            if t < 0.0:
                t = 0.0
            dx = x - (ox + t * ux)
            dy = y - (oy + t * uy)
            d = math.sqrt(dx * dx + dy * dy)
        else:
            d = table[k, 3] - (x * table[k, 1] + y * table[k, 2])
            if d < 0.0:
                d = 0.0
        if d < best:
            best = d
    return best


TWO_PI = 2.0 * math.pi


@njit(parallel=True, cache=True)
def _run_walks(table, zx, zy, wx, wy, ax, ay, corrected, use_enc, ex, ey, er,
               eps, cap, max_steps, n_walks, seed):
    npts = zx.size
    scores = np.empty((npts, n_walks), dtype=np.float64)
    for f in prange(npts * n_walks):
        i = f // n_walks
        state = _stream_init(seed, _U64(f))
        x = zx[i]
        y = zy[i]
        captured = False
        for _ in range(max_steps):
            if use_enc:
                rdx = x - ex
                rdy = y - ey
                rr = math.sqrt(rdx * rdx + rdy * rdy)
                if rr > er:
                    # exact re-entry: harmonic measure on the enclosing circle
                    # seen from outside = wrapped Cauchy at the Kelvin image
                    state, u = _next_u01(state)
                    half = math.pi * (u - 0.5)
                    rho = er / rr
                    phi = math.atan2(rdy, rdx)
                    th = phi + 2.0 * math.atan2((1.0 - rho) * math.sin(half),
                                                (1.0 + rho) * math.cos(half))
                    x = ex + er * math.cos(th)
                    y = ey + er * math.sin(th)
                    continue
            d = _dist_to_complement(table, x, y)
            if d < eps:
                captured = True
                break
            r = d if d < cap else cap
            state, u = _next_u01(state)
            th = TWO_PI * u
            x += r * math.cos(th)
            y += r * math.sin(th)
        if captured:
            s = 0.5 * math.log((x - wx) ** 2 + (y - wy) ** 2)
            if corrected:
                s -= 0.5 * math.log((x - ax) ** 2 + (y - ay) ** 2)
            scores[i, f - i * n_walks] = s
        else:
            scores[i, f - i * n_walks] = np.nan
    return scores


@dataclass(frozen=True)
class WosBatch:
    values: np.ndarray      # Green estimates, clamped at 0
    stderrs: np.ndarray     # sample standard error of the mean
    clamped: np.ndarray     # bool, negative raw estimate clamped to 0
    fail_fraction: np.ndarray


def run_batch(spec: DomainSpec, zs, w0: complex, cfg: WoSConfig,
              max_fail_fraction: float = 0.01) -> WosBatch:
    """Estimate g(z, w0) for every z in zs with cfg.walks walks per point."""
    if is_polar_complement(spec):
        raise PolarComplementError("polar complement: no Green function")
    zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
    if np.any(zs == w0):
        raise ValueError("walk-on-spheres requires z != w0")
    table, enclosure, anchor = build_table(spec)
    eps, cap = cfg.resolve(spec, zs, w0)

    inside = np.array([contains(spec, complex(z)) for z in zs])
    values = np.zeros(zs.shape, dtype=np.float64)
    stderrs = np.zeros(zs.shape, dtype=np.float64)
    clamped = np.zeros(zs.shape, dtype=bool)
    fails = np.zeros(zs.shape, dtype=np.float64)
    if not inside.any():
        return WosBatch(values, stderrs, clamped, fails)

    z_act = zs[inside]
    corrected = anchor is not None
    ax, ay = (anchor.real, anchor.imag) if corrected else (0.0, 0.0)
    use_enc = enclosure is not None
    ex, ey, er = enclosure if use_enc else (0.0, 0.0, 0.0)
    if use_enc and eps >= er:
        raise ValueError("epsilon_shell too large for the obstacle geometry")

    scores = _run_walks(
        table,
        np.ascontiguousarray(z_act.real), np.ascontiguousarray(z_act.imag),
        float(w0.real), float(w0.imag), ax, ay, corrected,
        use_enc, ex, ey, er, eps, cap, int(cfg.max_steps), int(cfg.walks),
        _U64(cfg.seed & 0xFFFFFFFFFFFFFFFF),
    )

    n_ok = np.sum(~np.isnan(scores), axis=1)
    frac_fail = 1.0 - n_ok / cfg.walks
    if np.any(frac_fail > max_fail_fraction):
        worst = float(frac_fail.max())
        raise EstimationError(
            f"{worst:.1%} of walks exceeded max_steps={cfg.max_steps}")

    base = -np.log(np.abs(z_act - w0))
    if corrected:
        base = base + np.log(np.abs(z_act - anchor))
    with np.errstate(invalid="ignore"):
        mean = np.nanmean(scores, axis=1)
        sd = np.nanstd(scores, axis=1, ddof=1)
    raw = base + mean
    est = np.maximum(raw, 0.0)

    values[inside] = est
    stderrs[inside] = sd / np.sqrt(np.maximum(n_ok, 1))
    clamped[inside] = raw < 0.0
    fails[inside] = frac_fail
    return WosBatch(values, stderrs, clamped, fails)


def wos_green(spec: DomainSpec, z: complex, w0: complex,
              cfg: WoSConfig) -> tuple[float, float]:
    """Monte Carlo estimate of g_spec(z, w0); returns (estimate, stderr)."""
    batch = run_batch(spec, [z], w0, cfg)
    return float(batch.values[0]), float(batch.stderrs[0])
