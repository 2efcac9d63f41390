"""Declarative planar-domain specs and exact geometric predicates.

A domain is described either by a canonical shape (disk, sector, slit plane,
strip, exterior of a disk) or as the complement of a finite list of obstacles
(closed disks, closed segments, points).  Every spec carries a base point that
must lie in the open domain.  All types are immutable; all predicates are pure.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from pathlib import Path


class SpecError(ValueError):
    """Invalid or inconsistent domain specification."""


class PolarComplementError(SpecError):
    """Operation requires a non-polar complement (a Green function)."""


def ensure_extended_nonneg(x: float) -> float:
    """Validate an extended nonnegative real: >= 0 or +inf, never NaN."""
    x = float(x)
    if math.isnan(x):
        raise ValueError("extended nonnegative real cannot be NaN")
    if x < 0.0:
        raise ValueError(f"extended nonnegative real cannot be negative: {x}")
    return x


# ---------------------------------------------------------------------------
# obstacles (for ComplementOf specs)


@dataclass(frozen=True)
class ClosedDisk:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise SpecError("obstacle disk radius must be positive")

    def distance(self, z: complex) -> float:
        return max(0.0, abs(z - self.center) - self.radius)

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) <= self.radius


@dataclass(frozen=True)
class Segment:
    a: complex
    b: complex

    def __post_init__(self):
        if self.a == self.b:
            raise SpecError("degenerate segment; use a Point obstacle")

    def distance(self, z: complex) -> float:
        return _point_segment_distance(z, self.a, self.b)

    def contains(self, z: complex) -> bool:
        return self.distance(z) == 0.0


@dataclass(frozen=True)
class Point:
    location: complex

    def distance(self, z: complex) -> float:
        return abs(z - self.location)

    def contains(self, z: complex) -> bool:
        return z == self.location


Obstacle = ClosedDisk | Segment | Point


def _point_segment_distance(z: complex, a: complex, b: complex) -> float:
    d = b - a
    t = ((z - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * d))


def unit(angle: float) -> complex:
    """e^{i angle} with components snapped to exact 0/+-1 near the axes.

    Keeps axis-aligned rays and slits exact (cmath.exp(1j*pi) has a 1e-16
    imaginary part, which would put on-boundary points strictly inside).
    """
    c, s = math.cos(angle), math.sin(angle)
    if abs(c) < 1e-15:
        c = 0.0
    elif abs(abs(c) - 1.0) < 1e-15:
        c = math.copysign(1.0, c)
    if abs(s) < 1e-15:
        s = 0.0
    elif abs(abs(s) - 1.0) < 1e-15:
        s = math.copysign(1.0, s)
    return complex(c, s)


def _point_ray_distance(z: complex, origin: complex, angle: float) -> float:
    # closed ray {origin + t e^{i angle} : t >= 0}
    d = unit(angle)
    t = max(0.0, ((z - origin) * d.conjugate()).real)
    return abs(z - (origin + t * d))


# ---------------------------------------------------------------------------
# domain kinds


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise SpecError("disk radius must be positive")


@dataclass(frozen=True)
class Sector:
    """Open angular region {z : |arg((z - vertex) e^{-i bisector})| < half_angle}."""

    vertex: complex
    bisector_angle: float
    half_angle: float

    def __post_init__(self):
        if not 0.0 < self.half_angle <= math.pi:
            raise SpecError("sector half_angle must lie in (0, pi]")


@dataclass(frozen=True)
class SlitPlane:
    """Plane minus the closed ray {tip + t e^{i ray_angle} : t >= 0}."""

    tip: complex
    ray_angle: float


@dataclass(frozen=True)
class Strip:
    """Open strip of given half-width about the line through anchor at direction."""

    anchor: complex
    direction: float
    half_width: float

    def __post_init__(self):
        if not self.half_width > 0:
            raise SpecError("strip half_width must be positive")


@dataclass(frozen=True)
class ExteriorOfDisk:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise SpecError("disk radius must be positive")


@dataclass(frozen=True)
class ComplementOf:
    obstacles: tuple[Obstacle, ...]

    def __post_init__(self):
        obstacles = tuple(self.obstacles)
        object.__setattr__(self, "obstacles", obstacles)
        if not obstacles:
            raise SpecError("ComplementOf requires at least one obstacle")


DomainKind = Disk | Sector | SlitPlane | Strip | ExteriorOfDisk | ComplementOf


@dataclass(frozen=True)
class DomainSpec:
    kind: DomainKind
    base_point: complex

    def __post_init__(self):
        if distance_to_complement(self, self.base_point) <= 0.0:
            raise SpecError("base_point must lie in the open domain")

    @property
    def polar_complement(self) -> bool:
        return is_polar_complement(self)


# ---------------------------------------------------------------------------
# predicates


def contains(spec: DomainSpec, z: complex) -> bool:
    """True iff z lies in the open domain (boundary counts as outside)."""
    k = spec.kind
    if isinstance(k, Disk):
        return abs(z - k.center) < k.radius
    if isinstance(k, Sector):
        w = (z - k.vertex) * unit(-k.bisector_angle)
        if w == 0:
            return False
        return abs(cmath.phase(w)) < k.half_angle
    if isinstance(k, SlitPlane):
        return _point_ray_distance(z, k.tip, k.ray_angle) > 0.0
    if isinstance(k, Strip):
        w = (z - k.anchor) * unit(-k.direction)
        return abs(w.imag) < k.half_width
    if isinstance(k, ExteriorOfDisk):
        return abs(z - k.center) > k.radius
    if isinstance(k, ComplementOf):
        return not any(ob.contains(z) for ob in k.obstacles)
    raise SpecError(f"unknown domain kind {k!r}")


def distance_to_complement(spec: DomainSpec, z: complex) -> float:
    """Exact Euclidean distance from z to the complement; 0 if z is outside."""
    k = spec.kind
    if isinstance(k, Disk):
        return max(0.0, k.radius - abs(z - k.center))
    if isinstance(k, Sector):
        if not contains(spec, z):
            return 0.0
        d1 = _point_ray_distance(z, k.vertex, k.bisector_angle + k.half_angle)
        d2 = _point_ray_distance(z, k.vertex, k.bisector_angle - k.half_angle)
        return min(d1, d2)
    if isinstance(k, SlitPlane):
        return _point_ray_distance(z, k.tip, k.ray_angle)
    if isinstance(k, Strip):
        w = (z - k.anchor) * unit(-k.direction)
        return max(0.0, k.half_width - abs(w.imag))
    if isinstance(k, ExteriorOfDisk):
        return max(0.0, abs(z - k.center) - k.radius)
    if isinstance(k, ComplementOf):
        return min(ob.distance(z) for ob in k.obstacles)
    raise SpecError(f"unknown domain kind {k!r}")


def is_polar_complement(spec: DomainSpec) -> bool:
    """True iff the complement is a finite point set (hence polar)."""
    k = spec.kind
    if isinstance(k, ComplementOf):
        return all(isinstance(ob, Point) for ob in k.obstacles)
    return False


def has_bounded_complement(spec: DomainSpec) -> bool:
    return isinstance(spec.kind, (ExteriorOfDisk, ComplementOf))


def complement_scale(spec: DomainSpec) -> float:
    """Reference scale for profile grids: diameter of the bounded complement,
    or |base_point| + 1 when the complement is unbounded."""
    k = spec.kind
    if isinstance(k, ExteriorOfDisk):
        return 2.0 * k.radius
    if isinstance(k, ComplementOf):
        pts = []
        for ob in k.obstacles:
            if isinstance(ob, ClosedDisk):
                pts.extend([ob.center - ob.radius, ob.center + ob.radius,
                            ob.center - 1j * ob.radius, ob.center + 1j * ob.radius])
            elif isinstance(ob, Segment):
                pts.extend([ob.a, ob.b])
            else:
                pts.append(ob.location)
        diam = max(abs(p - q) for p in pts for q in pts)
        return max(diam, 1e-9)
    return abs(spec.base_point) + 1.0


# ---------------------------------------------------------------------------
# serialization (JSON, lossless round trip)


def _c2j(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _j2c(v) -> complex:
    re, im = v
    return complex(float(re), float(im))


def _obstacle_to_dict(ob: Obstacle) -> dict:
    if isinstance(ob, ClosedDisk):
        return {"kind": "closed_disk", "center": _c2j(ob.center), "radius": ob.radius}
    if isinstance(ob, Segment):
        return {"kind": "segment", "a": _c2j(ob.a), "b": _c2j(ob.b)}
    return {"kind": "point", "location": _c2j(ob.location)}


def _obstacle_from_dict(d: dict) -> Obstacle:
    k = d["kind"]
    if k == "closed_disk":
        return ClosedDisk(_j2c(d["center"]), float(d["radius"]))
    if k == "segment":
        return Segment(_j2c(d["a"]), _j2c(d["b"]))
    if k == "point":
        return Point(_j2c(d["location"]))
    raise SpecError(f"unknown obstacle kind {k!r}")


def spec_to_dict(spec: DomainSpec) -> dict:
    k = spec.kind
    if isinstance(k, Disk):
        d = {"kind": "disk", "center": _c2j(k.center), "radius": k.radius}
    elif isinstance(k, Sector):
        d = {"kind": "sector", "vertex": _c2j(k.vertex),
             "bisector_angle": k.bisector_angle, "half_angle": k.half_angle}
    elif isinstance(k, SlitPlane):
        d = {"kind": "slit_plane", "tip": _c2j(k.tip), "ray_angle": k.ray_angle}
    elif isinstance(k, Strip):
        d = {"kind": "strip", "anchor": _c2j(k.anchor),
             "direction": k.direction, "half_width": k.half_width}
    elif isinstance(k, ExteriorOfDisk):
        d = {"kind": "exterior_of_disk", "center": _c2j(k.center), "radius": k.radius}
    elif isinstance(k, ComplementOf):
        d = {"kind": "complement_of",
             "obstacles": [_obstacle_to_dict(ob) for ob in k.obstacles]}
    else:
        raise SpecError(f"unknown domain kind {k!r}")
    d["base_point"] = _c2j(spec.base_point)
    return d


def spec_from_dict(d: dict) -> DomainSpec:
    try:
        kind_name = d["kind"]
        base = _j2c(d["base_point"])
        if kind_name == "disk":
            kind = Disk(_j2c(d["center"]), float(d["radius"]))
        elif kind_name == "sector":
            kind = Sector(_j2c(d["vertex"]), float(d["bisector_angle"]),
                          float(d["half_angle"]))
        elif kind_name == "slit_plane":
            kind = SlitPlane(_j2c(d["tip"]), float(d["ray_angle"]))
        elif kind_name == "strip":
            kind = Strip(_j2c(d["anchor"]), float(d["direction"]),
                         float(d["half_width"]))
        elif kind_name == "exterior_of_disk":
            kind = ExteriorOfDisk(_j2c(d["center"]), float(d["radius"]))
        elif kind_name == "complement_of":
            kind = ComplementOf(tuple(_obstacle_from_dict(o) for o in d["obstacles"]))
        else:
            raise SpecError(f"unknown domain kind {kind_name!r}")
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed domain spec: {exc}") from exc
    return DomainSpec(kind, base)


def save_spec(spec: DomainSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec_to_dict(spec), indent=2) + "\n")


def load_spec(path: str | Path) -> DomainSpec:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read domain spec {path}: {exc}") from exc
    return spec_from_dict(data)


def translate(spec: DomainSpec, v: complex) -> DomainSpec:
    """The spec shifted by v (base point included)."""
    k = spec.kind
    if isinstance(k, Disk):
        nk = Disk(k.center + v, k.radius)
    elif isinstance(k, Sector):
        nk = Sector(k.vertex + v, k.bisector_angle, k.half_angle)
    elif isinstance(k, SlitPlane):
        nk = SlitPlane(k.tip + v, k.ray_angle)
    elif isinstance(k, Strip):
        nk = Strip(k.anchor + v, k.direction, k.half_width)
    elif isinstance(k, ExteriorOfDisk):
        nk = ExteriorOfDisk(k.center + v, k.radius)
    else:
        moved = []
        for ob in k.obstacles:
            if isinstance(ob, ClosedDisk):
                moved.append(ClosedDisk(ob.center + v, ob.radius))
            elif isinstance(ob, Segment):
                moved.append(Segment(ob.a + v, ob.b + v))
            else:
                moved.append(Point(ob.location + v))
        nk = ComplementOf(tuple(moved))
    return DomainSpec(nk, spec.base_point + v)
