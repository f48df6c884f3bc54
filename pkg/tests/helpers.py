"""Shared independent oracles and model factories for the tests.

The embodied-energy oracle here deliberately re-walks the model as a flat
(surface x layer) enumeration, spreadsheet-style, without touching the
production accumulator; tests assert the two agree.
"""
from __future__ import annotations

import asyncio

import httpx

from gse.geometry import Point3, Polygon
from gse.materials.records import MaterialRecord, canonical_name
from gse.model import (
    BuildingModel,
    Construction,
    MaterialLayer,
    Space,
    Surface,
    SurfaceKind,
    derive_orientation,
)
from gse.weather import WeatherRecord, WeatherYear, _MONTH_DAYS


class SyncASGITransport(httpx.BaseTransport):
    """Drive an ASGI app from a synchronous httpx client in tests."""

    def __init__(self, app):
        self._inner = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        async def call():
            response = await self._inner.handle_async_request(request)
            await response.aread()
            return response

        response = asyncio.run(call())
        headers = [
            (k, v)
            for k, v in response.headers.raw
            if k.lower() not in (b"content-length", b"transfer-encoding")
        ]
        return httpx.Response(
            status_code=response.status_code,
            headers=headers,
            content=response.content,
            request=request,
        )


def brute_force_ee_mj(model: BuildingModel, materials) -> float:
    """Flat re-summation: sum over every surface and layer independently."""
    total = 0.0
    for surface in model.surfaces.values():
        opaque = surface.geometry.area() - sum(o.geometry.area() for o in surface.openings)
        for layer in model.constructions[surface.construction_ref].layers:
            rec = materials[canonical_name(layer.material_ref)]
            total += rec.ee_coeff * opaque * layer.thickness * rec.density
        for opening in surface.openings:
            area = opening.geometry.area()
            for layer in model.constructions[opening.construction_ref].layers:
                rec = materials[canonical_name(layer.material_ref)]
                total += rec.ee_coeff * area * layer.thickness * rec.density
    return total


def brute_force_ew_l(model: BuildingModel, materials) -> float:
    total = 0.0
    for surface in model.surfaces.values():
        opaque = surface.geometry.area() - sum(o.geometry.area() for o in surface.openings)
        for layer in model.constructions[surface.construction_ref].layers:
            rec = materials[canonical_name(layer.material_ref)]
            total += rec.ew_coeff * opaque * layer.thickness * rec.density
        for opening in surface.openings:
            area = opening.geometry.area()
            for layer in model.constructions[opening.construction_ref].layers:
                rec = materials[canonical_name(layer.material_ref)]
                total += rec.ew_coeff * area * layer.thickness * rec.density
    return total


def constant_weather(
    dry_bulb: float = 20.0,
    direct_normal: float = 0.0,
    diffuse_horizontal: float = 0.0,
    wind_speed: float = 0.0,
    latitude: float = 40.0,
    longitude: float = -75.0,
    tz_offset: float = -5.0,
) -> WeatherYear:
    records = []
    for month, days in enumerate(_MONTH_DAYS, start=1):
        for day in range(1, days + 1):
            for hour in range(1, 25):
                records.append(
                    WeatherRecord(
                        month=month, day=day, hour=hour, dry_bulb=dry_bulb,
                        direct_normal=direct_normal,
                        diffuse_horizontal=diffuse_horizontal,
                        wind_speed=wind_speed,
                    )
                )
    return WeatherYear(
        latitude=latitude, longitude=longitude, tz_offset_hours=tz_offset,
        elevation=0.0, records=tuple(records),
    )


def box_polygons(lx: float, ly: float, lz: float) -> dict[str, Polygon]:
    """Outward-wound faces of an axis-aligned box at the origin."""

    def poly(*pts):
        return Polygon(tuple(Point3(*p) for p in pts))

    return {
        "floor": poly((0, 0, 0), (0, ly, 0), (lx, ly, 0), (lx, 0, 0)),
        "roof": poly((0, 0, lz), (lx, 0, lz), (lx, ly, lz), (0, ly, lz)),
        "south": poly((0, 0, 0), (lx, 0, 0), (lx, 0, lz), (0, 0, lz)),
        "north": poly((0, ly, 0), (0, ly, lz), (lx, ly, lz), (lx, ly, 0)),
        "west": poly((0, 0, 0), (0, 0, lz), (0, ly, lz), (0, ly, 0)),
        "east": poly((lx, 0, 0), (lx, ly, 0), (lx, ly, lz), (lx, 0, lz)),
    }


def box_model(
    lx: float = 4.0,
    ly: float = 5.0,
    lz: float = 3.0,
    layers: tuple[MaterialLayer, ...] = (MaterialLayer("boxmat", 0.2),),
    floor_kind: SurfaceKind = SurfaceKind.SLAB_ON_GRADE,
) -> BuildingModel:
    """Programmatic single-zone box with one construction on every face."""
    surfaces = {}
    for name, poly in box_polygons(lx, ly, lz).items():
        tilt, azimuth = derive_orientation(poly)
        kind = {
            "floor": floor_kind,
            "roof": SurfaceKind.ROOF,
        }.get(name, SurfaceKind.EXTERIOR_WALL)
        surfaces[f"su-{name}"] = Surface(
            id=f"su-{name}", kind=kind, geometry=poly, construction_ref="con-box",
            adjacent_space_ids=("sp-box",), tilt=tilt, azimuth=azimuth,
        )
    construction = Construction(id="con-box", name="box shell", layers=layers)
    space = Space(
        id="sp-box", name="box", volume=lx * ly * lz, floor_area=lx * ly,
        bounding_surface_ids=tuple(surfaces),
    )
    return BuildingModel(
        spaces={"sp-box": space}, surfaces=surfaces,
        constructions={"con-box": construction}, latitude=40.0, longitude=-75.0,
    )


def box_material(
    conductivity: float = 0.5,
    density: float = 2000.0,
    specific_heat: float = 900.0,
    name: str = "boxmat",
) -> dict[str, MaterialRecord]:
    return {
        name: MaterialRecord(
            canonical_name=name, conductivity=conductivity, density=density,
            specific_heat=specific_heat, ee_coeff=1.0, ew_coeff=0.5,
            source_tag="test dataset",
        )
    }
