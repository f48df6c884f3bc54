import math

import pytest
from hypothesis import given, strategies as st

from gse.errors import DegenerateGeometry
from gse.geometry import (
    Point3,
    Polygon,
    enclosed_volume,
    polygon_area,
    tilt_azimuth,
)

from .helpers import box_polygons


def poly(*pts):
    return Polygon(tuple(Point3(*p) for p in pts))


def test_unit_square_area():
    square = poly((0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0))
    assert polygon_area(square) == pytest.approx(1.0, abs=1e-12)


def test_reversed_square_same_area():
    square = poly((0, 1, 0), (1, 1, 0), (1, 0, 0), (0, 0, 0))
    assert polygon_area(square) == pytest.approx(1.0, abs=1e-12)


def test_345_right_triangle():
    # oracle: half base times height = 0.5 * 3 * 4 = 6
    triangle = poly((0, 0, 0), (3, 0, 0), (3, 4, 0))
    assert polygon_area(triangle) == pytest.approx(6.0, abs=1e-12)


def test_box_surface_area_sum():
    lx, ly, lz = 3.2, 4.7, 2.9
    total = sum(p.area() for p in box_polygons(lx, ly, lz).values())
    expected = 2 * (lx * ly + lx * lz + ly * lz)
    assert total == pytest.approx(expected, rel=1e-9)


def test_fewer_than_three_vertices_rejected():
    with pytest.raises(DegenerateGeometry):
        poly((0, 0, 0), (1, 0, 0))


def test_collinear_vertices_rejected():
    degenerate = poly((0, 0, 0), (1, 0, 0), (2, 0, 0))
    with pytest.raises(DegenerateGeometry):
        degenerate.area()


def test_offplane_vertex_rejected():
    warped = poly((0, 0, 0), (1, 0, 0), (1, 1, 0.01), (0, 1, 0))
    with pytest.raises(DegenerateGeometry):
        warped.validate()


def test_bowtie_rejected():
    bowtie = poly((0, 0, 0), (1, 1, 0), (1, 0, 0), (0, 1, 0))
    with pytest.raises(DegenerateGeometry):
        bowtie.validate()


def test_nonfinite_point_rejected():
    with pytest.raises(DegenerateGeometry):
        Point3(float("nan"), 0, 0)


def test_tilt_azimuth_conventions():
    faces = box_polygons(4, 5, 3)
    assert tilt_azimuth(faces["roof"]) == pytest.approx((0.0, 0.0), abs=1e-9)
    tilt, _ = tilt_azimuth(faces["floor"])
    assert tilt == pytest.approx(180.0, abs=1e-9)
    assert tilt_azimuth(faces["south"]) == pytest.approx((90.0, 180.0), abs=1e-9)
    assert tilt_azimuth(faces["north"]) == pytest.approx((90.0, 0.0), abs=1e-9)
    assert tilt_azimuth(faces["east"]) == pytest.approx((90.0, 90.0), abs=1e-9)
    assert tilt_azimuth(faces["west"]) == pytest.approx((90.0, 270.0), abs=1e-9)


def test_enclosed_volume_box():
    assert enclosed_volume(list(box_polygons(4, 5, 3).values())) == pytest.approx(
        60.0, rel=1e-12
    )


@st.composite
def convex_planar_polygon(draw):
    # Star-shaped around the origin: evenly spaced rays with bounded jitter,
    # so angles stay strictly increasing and the area is always positive.
    n = draw(st.integers(min_value=3, max_value=8))
    radii = [draw(st.floats(min_value=0.5, max_value=10.0)) for _ in range(n)]
    jitter = [draw(st.floats(min_value=0.0, max_value=0.5)) for _ in range(n)]
    angles = [2 * math.pi * (i + j) / n for i, j in zip(range(n), jitter)]
    return [(r * math.cos(a), r * math.sin(a)) for r, a in zip(radii, angles)]


@given(
    convex_planar_polygon(),
    st.floats(min_value=-math.pi, max_value=math.pi),
    st.floats(min_value=-50, max_value=50),
    st.floats(min_value=-50, max_value=50),
    st.floats(min_value=-50, max_value=50),
)
def test_area_invariant_under_rigid_motion(points2d, angle, dx, dy, dz):
    flat = poly(*[(x, y, 0.0) for x, y in points2d])
    # Rotate about the x axis, then translate: areas must be preserved.
    moved = poly(
        *[
            (
                x + dx,
                y * math.cos(angle) + dy,
                y * math.sin(angle) + dz,
            )
            for x, y in points2d
        ]
    )
    assert moved.area() == pytest.approx(flat.area(), rel=1e-9)
