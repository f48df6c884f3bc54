"""Planar polygon geometry for building surfaces.

Areas and normals use Newell's method, which is robust for arbitrary planar
polygons in 3D: summing the cross products of consecutive vertex pairs gives
a vector whose magnitude is twice the signed area and whose direction is the
polygon normal. Space volumes fall back to the divergence theorem over the
closed bounding surface set when the model file does not declare one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateGeometry

# Exporter floating-point noise routinely leaves vertices a hair off-plane.
COPLANARITY_TOL_M = 1e-6


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for v in (self.x, self.y, self.z):
            if not math.isfinite(v):
                raise DegenerateGeometry(f"non-finite coordinate in {self!r}")

    def __sub__(self, other: "Point3") -> tuple[float, float, float]:
        return (self.x - other.x, self.y - other.y, self.z - other.z)


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _norm(a):
    return math.sqrt(_dot(a, a))


@dataclass(frozen=True)
class Polygon:
    """Ordered planar loop of at least three vertices."""

    vertices: tuple[Point3, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise DegenerateGeometry("polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def newell_vector(self) -> tuple[float, float, float]:
        """Area-weighted normal: magnitude = 2 x area, direction = normal."""
        sx = sy = sz = 0.0
        vs = self.vertices
        for i, a in enumerate(vs):
            b = vs[(i + 1) % len(vs)]
            sx += (a.y - b.y) * (a.z + b.z)
            sy += (a.z - b.z) * (a.x + b.x)
            sz += (a.x - b.x) * (a.y + b.y)
        return (sx, sy, sz)

    def area(self) -> float:
        """Unsigned polygon area in m²; independent of winding direction."""
        a = 0.5 * _norm(self.newell_vector())
        if a <= 0.0:
            raise DegenerateGeometry("zero-area polygon (collinear vertices)")
        return a

    def normal(self) -> tuple[float, float, float]:
        """Unit normal following the vertex winding (right-hand rule)."""
        n = self.newell_vector()
        m = _norm(n)
        if m == 0.0:
            raise DegenerateGeometry("zero-area polygon (collinear vertices)")
        return (n[0] / m, n[1] / m, n[2] / m)

    def centroid(self) -> Point3:
        n = len(self.vertices)
        return Point3(
            sum(v.x for v in self.vertices) / n,
            sum(v.y for v in self.vertices) / n,
            sum(v.z for v in self.vertices) / n,
        )

    def validate(self, coplanarity_tol: float = COPLANARITY_TOL_M) -> None:
        """Raise DegenerateGeometry unless planar, simple, and of positive area."""
        self.area()  # collinearity / zero area
        n = self.normal()
        c = self.centroid()
        for v in self.vertices:
            if abs(_dot(v - c, n)) > coplanarity_tol:
                raise DegenerateGeometry(
                    f"vertex {v} off plane by more than {coplanarity_tol} m"
                )
        if self._self_intersects(n):
            raise DegenerateGeometry("polygon edges self-intersect")

    def _self_intersects(self, normal) -> bool:
        # Project onto the dominant axis plane, then test non-adjacent edge
        # pairs. Vertex counts are tiny (quads mostly), so O(n^2) is fine.
        ax = max(range(3), key=lambda i: abs(normal[i]))
        keep = [i for i in range(3) if i != ax]
        pts = [
            ((v.x, v.y, v.z)[keep[0]], (v.x, v.y, v.z)[keep[1]])
            for v in self.vertices
        ]
        n = len(pts)
        for i in range(n):
            a1, a2 = pts[i], pts[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                b1, b2 = pts[j], pts[(j + 1) % n]
                if _segments_cross(a1, a2, b1, b2):
                    return True
        return False

    def min_z(self) -> float:
        return min(v.z for v in self.vertices)

    def max_z(self) -> float:
        return max(v.z for v in self.vertices)


def _orient(p, q, r):
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _segments_cross(a1, a2, b1, b2) -> bool:
    d1 = _orient(b1, b2, a1)
    d2 = _orient(b1, b2, a2)
    d3 = _orient(a1, a2, b1)
    d4 = _orient(a1, a2, b2)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def polygon_area(polygon: Polygon) -> float:
    """Area of a planar polygon via the projected-normal (Newell) method."""
    return polygon.area()


def tilt_azimuth(polygon: Polygon) -> tuple[float, float]:
    """Surface tilt and compass azimuth in degrees from the winding normal.

    Tilt is the angle between the outward normal and vertical: 0 = facing
    straight up, 90 = vertical wall, 180 = facing straight down. Azimuth is
    measured clockwise from north (0 = N, 90 = E); horizontal surfaces
    report azimuth 0 by convention.
    """
    nx, ny, nz = polygon.normal()
    tilt = math.degrees(math.acos(max(-1.0, min(1.0, nz))))
    horiz = math.hypot(nx, ny)
    if horiz < 1e-12:
        return (tilt, 0.0)
    azimuth = math.degrees(math.atan2(nx, ny)) % 360.0
    return (tilt, azimuth)


def enclosed_volume(polygons: list[Polygon]) -> float:
    """Volume enclosed by a set of polygons with outward-consistent winding.

    Divergence theorem: V = (1/3) |sum over faces of (centroid . n) * A|.
    """
    acc = 0.0
    for p in polygons:
        nv = p.newell_vector()  # = 2 * A * n_hat
        c = p.centroid()
        acc += 0.5 * _dot((c.x, c.y, c.z), nv)
    return abs(acc) / 3.0
