"""Bundled synthetic fixtures: building models and weather years.

Four gbXML models of growing complexity (single room, two rooms, four rooms
on two levels, and a 30-space single-story block with 182 surfaces including
parapets, foundation walls, and canopy overhangs) plus three deterministic
synthetic EPW files for a cold, a temperate, and a hot-humid site. The EPW
content is procedurally generated from fixed seeds, so fixtures can be
materialized anywhere and always hash identically.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from pathlib import Path

M_PER_FOOT = 0.3048

# ---------------------------------------------------------------------------
# gbXML builders
# ---------------------------------------------------------------------------

# (material name, thickness m) stacks, outside-to-inside.
CONSTRUCTIONS: dict[str, tuple[str, list[tuple[str, float]]]] = {
    "con-extwall": (
        "Exterior wall, brick on batt",
        [("Brick, Common", 0.09), ("Insulation, Fiberglass Batt", 0.14),
         ("Gypsum Board", 0.016)],
    ),
    "con-roof": (
        "Roof, shingle on batt",
        [("Asphalt Shingle", 0.006), ("Plywood", 0.015),
         ("Insulation, Fiberglass Batt", 0.20), ("Gypsum Board", 0.016)],
    ),
    "con-slab": (
        "Slab on grade, insulated",
        [("Concrete, Cast In Situ", 0.15),
         ("Insulation, Expanded Polystyrene", 0.05)],
    ),
    "con-intwall": (
        "Interior partition, stud cavity",
        [("Gypsum Board", 0.016), ("Air Cavity", 0.09), ("Gypsum Board", 0.016)],
    ),
    "con-intfloor": (
        "Interzone floor, topped deck",
        [("Plywood", 0.018), ("Concrete, Cast In Situ", 0.10)],
    ),
    "con-window": ("Single glazing", [("Glass, Float", 0.006)]),
    "con-foundation": (
        "Foundation stem wall",
        [("Concrete, Cast In Situ", 0.20)],
    ),
    "con-canopy": (
        "Canopy deck",
        [("Steel, Structural", 0.003), ("Plywood", 0.025)],
    ),
}


def _fmt(v: float) -> str:
    return repr(round(v, 10))


class _GbXmlWriter:
    def __init__(self, unit: str = "Meters"):
        self.unit = unit
        self.scale = 1.0 if unit == "Meters" else 1.0 / M_PER_FOOT
        self.spaces: list[str] = []
        self.surfaces: list[str] = []
        self.used_constructions: dict[str, None] = {}
        self.lat = 38.85
        self.lon = -77.04

    def space(self, sid: str, name: str, volume: float | None,
              area: float | None) -> None:
        parts = [f'    <Space id="{sid}">', f"      <Name>{name}</Name>"]
        if area is not None:
            parts.append(f"      <Area>{_fmt(area * self.scale ** 2)}</Area>")
        if volume is not None:
            parts.append(f"      <Volume>{_fmt(volume * self.scale ** 3)}</Volume>")
        parts.append("    </Space>")
        self.spaces.append("\n".join(parts))

    def surface(self, sid: str, stype: str, cref: str, vertices,
                adjacent=(), openings=()) -> None:
        self.used_constructions.setdefault(cref, None)
        parts = [
            f'    <Surface id="{sid}" surfaceType="{stype}" constructionIdRef="{cref}">'
        ]
        for space_id in adjacent:
            parts.append(f'      <AdjacentSpaceId spaceIdRef="{space_id}"/>')
        parts.append(self._polyloop(vertices, indent="      "))
        for opening in openings:
            parts.append(opening)
        parts.append("    </Surface>")
        self.surfaces.append("\n".join(parts))

    def opening(self, oid: str, otype: str, cref: str, vertices,
                shgc: float | None = None) -> str:
        self.used_constructions.setdefault(cref, None)
        parts = [
            f'      <Opening id="{oid}" openingType="{otype}" constructionIdRef="{cref}">'
        ]
        parts.append(self._polyloop(vertices, indent="        "))
        if shgc is not None:
            parts.append(f"        <SolarHeatGainCoeff>{shgc}</SolarHeatGainCoeff>")
        parts.append("      </Opening>")
        return "\n".join(parts)

    def _polyloop(self, vertices, indent: str) -> str:
        rows = [f"{indent}<PlanarGeometry>", f"{indent}  <PolyLoop>"]
        for x, y, z in vertices:
            rows.append(
                f"{indent}    <CartesianPoint>"
                f"<Coordinate>{_fmt(x * self.scale)}</Coordinate>"
                f"<Coordinate>{_fmt(y * self.scale)}</Coordinate>"
                f"<Coordinate>{_fmt(z * self.scale)}</Coordinate>"
                f"</CartesianPoint>"
            )
        rows.append(f"{indent}  </PolyLoop>")
        rows.append(f"{indent}</PlanarGeometry>")
        return "\n".join(rows)

    def render(self) -> bytes:
        mats: list[str] = []
        layers: list[str] = []
        cons: list[str] = []
        mat_ids: dict[tuple[str, float], str] = {}
        for cref in self.used_constructions:
            cname, stack = CONSTRUCTIONS[cref]
            layer_id = f"lay-{cref}"
            refs = []
            for name, thickness in stack:
                key = (name, thickness)
                if key not in mat_ids:
                    mid = f"mat-{len(mat_ids) + 1}"
                    mat_ids[key] = mid
                    mats.append(
                        f'  <Material id="{mid}">\n'
                        f"    <Name>{name}</Name>\n"
                        f"    <Thickness>{_fmt(thickness * self.scale)}</Thickness>\n"
                        f"  </Material>"
                    )
                refs.append(f'    <MaterialId materialIdRef="{mat_ids[key]}"/>')
            layers.append(
                f'  <Layer id="{layer_id}">\n' + "\n".join(refs) + "\n  </Layer>"
            )
            cons.append(
                f'  <Construction id="{cref}">\n'
                f"    <Name>{cname}</Name>\n"
                f'    <LayerId layerIdRef="{layer_id}"/>\n'
                f"  </Construction>"
            )
        body = "\n".join(
            [
                '<?xml version="1.0" encoding="UTF-8"?>',
                f'<gbXML xmlns="http://www.gbxml.org/schema" lengthUnit="{self.unit}"'
                ' temperatureUnit="C" useSIUnitsForResults="true" version="0.37">',
                '  <Campus id="campus-1">',
                "    <Location>",
                f"      <Latitude>{self.lat}</Latitude>",
                f"      <Longitude>{self.lon}</Longitude>",
                "    </Location>",
                '    <Building id="building-1" buildingType="Office">',
                *self.spaces,
                "    </Building>",
                *self.surfaces,
                "  </Campus>",
                *cons,
                *layers,
                *mats,
                "</gbXML>",
                "",
            ]
        )
        return body.encode("utf-8")


def _box_walls(x0, y0, x1, y1, z0, z1):
    """Outward-wound wall loops keyed by compass facade."""
    return {
        "s": [(x0, y0, z0), (x1, y0, z0), (x1, y0, z1), (x0, y0, z1)],
        "n": [(x0, y1, z0), (x0, y1, z1), (x1, y1, z1), (x1, y1, z0)],
        "w": [(x0, y0, z0), (x0, y0, z1), (x0, y1, z1), (x0, y1, z0)],
        "e": [(x1, y0, z0), (x1, y1, z0), (x1, y1, z1), (x1, y0, z1)],
    }


def _floor(x0, y0, x1, y1, z):
    return [(x0, y0, z), (x0, y1, z), (x1, y1, z), (x1, y0, z)]  # faces down


def _ceiling(x0, y0, x1, y1, z):
    return [(x0, y0, z), (x1, y0, z), (x1, y1, z), (x0, y1, z)]  # faces up


def single_room_gbxml(unit: str = "Meters") -> bytes:
    """One 4x5x3 m room: 6 surfaces, 1 space, south window."""
    w = _GbXmlWriter(unit)
    w.space("sp-1", "Room 1", volume=60.0, area=20.0)
    walls = _box_walls(0, 0, 4, 5, 0, 3)
    window = w.opening(
        "win-1", "FixedWindow", "con-window",
        [(1.25, 0, 0.9), (2.75, 0, 0.9), (2.75, 0, 2.1), (1.25, 0, 2.1)],
        shgc=0.7,
    )
    w.surface("su-floor", "SlabOnGrade", "con-slab", _floor(0, 0, 4, 5, 0), ["sp-1"])
    w.surface("su-roof", "Roof", "con-roof", _ceiling(0, 0, 4, 5, 3), ["sp-1"])
    w.surface("su-wall-s", "ExteriorWall", "con-extwall", walls["s"], ["sp-1"],
              openings=[window])
    w.surface("su-wall-n", "ExteriorWall", "con-extwall", walls["n"], ["sp-1"])
    w.surface("su-wall-w", "ExteriorWall", "con-extwall", walls["w"], ["sp-1"])
    w.surface("su-wall-e", "ExteriorWall", "con-extwall", walls["e"], ["sp-1"])
    return w.render()


def two_room_gbxml() -> bytes:
    """Two 4x5x3 m rooms sharing one wall, plus a partition stub in room A."""
    w = _GbXmlWriter()
    w.space("sp-a", "Room A", volume=60.0, area=20.0)
    w.space("sp-b", "Room B", volume=60.0, area=20.0)
    for sid, (x0, x1) in (("a", (0, 4)), ("b", (4, 8))):
        space = f"sp-{sid}"
        w.surface(f"su-floor-{sid}", "SlabOnGrade", "con-slab",
                  _floor(x0, 0, x1, 5, 0), [space])
        w.surface(f"su-roof-{sid}", "Roof", "con-roof",
                  _ceiling(x0, 0, x1, 5, 3), [space])
        walls = _box_walls(x0, 0, x1, 5, 0, 3)
        w.surface(f"su-wall-s-{sid}", "ExteriorWall", "con-extwall", walls["s"], [space])
        w.surface(f"su-wall-n-{sid}", "ExteriorWall", "con-extwall", walls["n"], [space])
    w.surface("su-wall-w-a", "ExteriorWall", "con-extwall",
              _box_walls(0, 0, 4, 5, 0, 3)["w"], ["sp-a"])
    w.surface("su-wall-e-b", "ExteriorWall", "con-extwall",
              _box_walls(4, 0, 8, 5, 0, 3)["e"], ["sp-b"])
    # Shared wall listed once with both neighbors.
    w.surface("su-wall-shared", "InteriorWall", "con-intwall",
              [(4, 0, 0), (4, 5, 0), (4, 5, 3), (4, 0, 3)], ["sp-a", "sp-b"])
    # Partition stub entirely inside room A: same space on both sides.
    w.surface("su-partition-a", "InteriorWall", "con-intwall",
              [(1, 2, 0), (3, 2, 0), (3, 2, 3), (1, 2, 3)], ["sp-a", "sp-a"])
    return w.render()


def four_room_gbxml() -> bytes:
    """Four 5x5x3 m rooms on two levels; volumes left for derivation."""
    w = _GbXmlWriter()
    rooms = {
        "r1": (0, 5, 0, 3), "r2": (5, 10, 0, 3),
        "r3": (0, 5, 3, 6), "r4": (5, 10, 3, 6),
    }
    for rid in rooms:
        w.space(f"sp-{rid}", f"Room {rid[1:]}", volume=None, area=None)
    for rid, (x0, x1, z0, z1) in rooms.items():
        space = f"sp-{rid}"
        walls = _box_walls(x0, 0, x1, 5, z0, z1)
        w.surface(f"su-{rid}-s", "ExteriorWall", "con-extwall", walls["s"], [space])
        w.surface(f"su-{rid}-n", "ExteriorWall", "con-extwall", walls["n"], [space])
        if x0 == 0:
            w.surface(f"su-{rid}-w", "ExteriorWall", "con-extwall", walls["w"], [space])
        else:
            w.surface(f"su-{rid}-e", "ExteriorWall", "con-extwall", walls["e"], [space])
    w.surface("su-floor-r1", "SlabOnGrade", "con-slab", _floor(0, 0, 5, 5, 0), ["sp-r1"])
    w.surface("su-floor-r2", "SlabOnGrade", "con-slab", _floor(5, 0, 10, 5, 0), ["sp-r2"])
    w.surface("su-roof-r3", "Roof", "con-roof", _ceiling(0, 0, 5, 5, 6), ["sp-r3"])
    w.surface("su-roof-r4", "Roof", "con-roof", _ceiling(5, 0, 10, 5, 6), ["sp-r4"])
    w.surface("su-mid-left", "Ceiling", "con-intfloor", _ceiling(0, 0, 5, 5, 3),
              ["sp-r1", "sp-r3"])
    w.surface("su-mid-right", "Ceiling", "con-intfloor", _ceiling(5, 0, 10, 5, 3),
              ["sp-r2", "sp-r4"])
    w.surface("su-iw-lower", "InteriorWall", "con-intwall",
              [(5, 0, 0), (5, 5, 0), (5, 5, 3), (5, 0, 3)], ["sp-r1", "sp-r2"])
    w.surface("su-iw-upper", "InteriorWall", "con-intwall",
              [(5, 0, 3), (5, 5, 3), (5, 5, 6), (5, 0, 6)], ["sp-r3", "sp-r4"])
    return w.render()


def large_model_gbxml() -> bytes:
    """Single-story 6x5 room grid: 30 spaces, exactly 182 surfaces.

    131 space-bounding surfaces plus 22 roof parapet segments, 22 below-grade
    foundation stem walls, and 7 south canopy panels. South-row rooms carry
    one window each.
    """
    w = _GbXmlWriter()
    nx, ny = 6, 5
    dx = dy = 4.0
    h = 3.0

    def sp(c, r):
        return f"sp-{c}-{r}"

    for c in range(nx):
        for r in range(ny):
            w.space(sp(c, r), f"Room {c}-{r}", volume=dx * dy * h, area=dx * dy)

    for c in range(nx):
        for r in range(ny):
            x0, y0 = c * dx, r * dy
            x1, y1 = x0 + dx, y0 + dy
            w.surface(f"su-floor-{c}-{r}", "SlabOnGrade", "con-slab",
                      _floor(x0, y0, x1, y1, 0), [sp(c, r)])
            w.surface(f"su-roof-{c}-{r}", "Roof", "con-roof",
                      _ceiling(x0, y0, x1, y1, h), [sp(c, r)])

    # Vertical planes normal to x: exterior at c=0 and c=nx, interior between.
    for c in range(nx + 1):
        x = c * dx
        for r in range(ny):
            y0, y1 = r * dy, (r + 1) * dy
            if c == 0:
                loop = [(x, y0, 0), (x, y0, h), (x, y1, h), (x, y1, 0)]
                w.surface(f"su-wx-{c}-{r}", "ExteriorWall", "con-extwall",
                          loop, [sp(0, r)])
            elif c == nx:
                loop = [(x, y0, 0), (x, y1, 0), (x, y1, h), (x, y0, h)]
                w.surface(f"su-wx-{c}-{r}", "ExteriorWall", "con-extwall",
                          loop, [sp(nx - 1, r)])
            else:
                loop = [(x, y0, 0), (x, y1, 0), (x, y1, h), (x, y0, h)]
                w.surface(f"su-wx-{c}-{r}", "InteriorWall", "con-intwall",
                          loop, [sp(c - 1, r), sp(c, r)])

    # Vertical planes normal to y; south exterior walls get a window.
    for r in range(ny + 1):
        y = r * dy
        for c in range(nx):
            x0, x1 = c * dx, (c + 1) * dx
            if r == 0:
                loop = [(x0, y, 0), (x1, y, 0), (x1, y, h), (x0, y, h)]
                mid = (x0 + x1) / 2
                window = w.opening(
                    f"win-{c}", "FixedWindow", "con-window",
                    [(mid - 1.0, y, 0.9), (mid + 1.0, y, 0.9),
                     (mid + 1.0, y, 2.1), (mid - 1.0, y, 2.1)],
                    shgc=0.7,
                )
                w.surface(f"su-wy-{r}-{c}", "ExteriorWall", "con-extwall",
                          loop, [sp(c, 0)], openings=[window])
            elif r == ny:
                loop = [(x0, y, 0), (x0, y, h), (x1, y, h), (x1, y, 0)]
                w.surface(f"su-wy-{r}-{c}", "ExteriorWall", "con-extwall",
                          loop, [sp(c, ny - 1)])
            else:
                loop = [(x0, y, 0), (x0, y, h), (x1, y, h), (x1, y, 0)]
                w.surface(f"su-wy-{r}-{c}", "InteriorWall", "con-intwall",
                          loop, [sp(c, r - 1), sp(c, r)])

    # Perimeter extras: parapets above the roof plane and foundation stem
    # walls below grade, one segment per perimeter room edge (22 each),
    # plus 7 canopy panels over the south facade.
    top, para_h, found_d = h, 0.6, 0.9
    xmax, ymax = nx * dx, ny * dy

    def parapet(pid, loop, space):
        w.surface(pid, "ExteriorWall", "con-extwall", loop, [space])

    def foundation(pid, loop, space):
        w.surface(pid, "UndergroundWall", "con-foundation", loop, [space])

    for c in range(nx):
        x0, x1 = c * dx, (c + 1) * dx
        parapet(f"su-para-s-{c}",
                [(x0, 0, top), (x1, 0, top), (x1, 0, top + para_h), (x0, 0, top + para_h)],
                sp(c, 0))
        parapet(f"su-para-n-{c}",
                [(x0, ymax, top), (x0, ymax, top + para_h), (x1, ymax, top + para_h),
                 (x1, ymax, top)],
                sp(c, ny - 1))
        foundation(f"su-found-s-{c}",
                   [(x0, 0, -found_d), (x1, 0, -found_d), (x1, 0, 0), (x0, 0, 0)],
                   sp(c, 0))
        foundation(f"su-found-n-{c}",
                   [(x0, ymax, -found_d), (x0, ymax, 0), (x1, ymax, 0),
                    (x1, ymax, -found_d)],
                   sp(c, ny - 1))
    for r in range(ny):
        y0, y1 = r * dy, (r + 1) * dy
        parapet(f"su-para-w-{r}",
                [(0, y0, top), (0, y0, top + para_h), (0, y1, top + para_h), (0, y1, top)],
                sp(0, r))
        parapet(f"su-para-e-{r}",
                [(xmax, y0, top), (xmax, y1, top), (xmax, y1, top + para_h),
                 (xmax, y0, top + para_h)],
                sp(nx - 1, r))
        foundation(f"su-found-w-{r}",
                   [(0, y0, -found_d), (0, y1, -found_d), (0, y1, 0), (0, y0, 0)],
                   sp(0, r))
        foundation(f"su-found-e-{r}",
                   [(xmax, y0, -found_d), (xmax, y0, 0), (xmax, y1, 0),
                    (xmax, y1, -found_d)],
                   sp(nx - 1, r))

    panel = xmax / 7
    for k in range(7):
        x0, x1 = k * panel, (k + 1) * panel
        w.surface(f"su-canopy-{k}", "Shade", "con-canopy",
                  _ceiling(x0, -1.5, x1, 0.0, 2.5), [])
    return w.render()


# ---------------------------------------------------------------------------
# Synthetic EPW weather
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Site:
    name: str
    state: str
    latitude: float
    longitude: float
    tz_offset: float
    elevation: float
    t_mean: float
    t_seasonal: float
    t_diurnal: float
    sigma_day: float
    wind_base: float
    seed: int


SITES = {
    "washington_dc": Site("Washington DC", "DC", 38.85, -77.04, -5.0, 20.0,
                          14.0, 12.5, 5.0, 3.0, 3.5, 20011),
    "houston_tx": Site("Houston TX", "TX", 29.98, -95.36, -6.0, 30.0,
                       20.5, 9.0, 4.5, 2.5, 3.0, 77001),
    "emmonak_ak": Site("Emmonak AK", "AK", 62.78, -164.49, -9.0, 4.0,
                       -1.5, 15.0, 3.5, 3.5, 5.0, 99581),
}

_MONTH_DAYS = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def _smooth(values: list[float], window: int = 3) -> list[float]:
    n = len(values)
    half = window // 2
    return [
        sum(values[(i + k) % n] for k in range(-half, half + 1)) / window
        for i in range(n)
    ]


def synthetic_epw(site_key: str) -> str:
    """Deterministic plausible TMY-style year for one of the bundled sites."""
    site = SITES[site_key]
    rng = random.Random(site.seed)
    anomaly = _smooth([rng.gauss(0.0, site.sigma_day) for _ in range(365)])
    clearness = _smooth([0.35 + 0.65 * rng.random() for _ in range(365)])
    phi = math.radians(site.latitude)

    lines = [
        f"LOCATION,{site.name},{site.state},USA,SYNTHETIC,000000,"
        f"{site.latitude},{site.longitude},{site.tz_offset},{site.elevation}",
        "DESIGN CONDITIONS,0",
        "TYPICAL/EXTREME PERIODS,0",
        "GROUND TEMPERATURES,0",
        "HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0",
        "COMMENTS 1,deterministic synthetic weather for engine fixtures",
        "COMMENTS 2,generated from fixed per-site seeds",
        "DATA PERIODS,1,1,Data,Sunday, 1/ 1,12/31",
    ]

    day_of_year = 0
    for month, days in enumerate(_MONTH_DAYS, start=1):
        for day in range(1, days + 1):
            day_of_year += 1
            t_base = site.t_mean - site.t_seasonal * math.cos(
                2 * math.pi * (day_of_year - 15) / 365.0
            ) + anomaly[day_of_year - 1]
            clear = clearness[day_of_year - 1]
            decl = math.radians(
                23.45 * math.sin(math.radians(360.0 * (284 + day_of_year) / 365.0))
            )
            for hour in range(1, 25):
                t = t_base - site.t_diurnal * math.cos(
                    2 * math.pi * (hour - 15) / 24.0
                ) + rng.gauss(0.0, 0.2)
                t = max(-89.0, min(59.0, t))
                # Sun elevation at the half hour, local solar time approximated
                # by clock time (good enough for plausible radiation).
                omega = math.radians(15.0 * (hour - 0.5 - 12.0))
                sin_alt = (
                    math.sin(phi) * math.sin(decl)
                    + math.cos(phi) * math.cos(decl) * math.cos(omega)
                )
                if sin_alt > 0.01:
                    air_mass = 1.0 / sin_alt
                    dni = 950.0 * (0.7 ** (air_mass**0.678)) * clear
                    dhi = sin_alt * (60.0 + 180.0 * (1.0 - clear))
                else:
                    dni = dhi = 0.0
                wind = max(
                    0.0,
                    site.wind_base
                    + 1.5 * math.sin(2 * math.pi * day_of_year / 19.0)
                    + rng.gauss(0.0, 0.8),
                )
                ghi = dni * max(sin_alt, 0.0) + dhi
                row = [
                    "2017", str(month), str(day), str(hour), "0", "?9?9?9?9",
                    f"{t:.1f}", f"{t - 2.0:.1f}", "80", "101325",
                    "9999", "9999", "9999",
                    f"{ghi:.0f}", f"{dni:.0f}", f"{dhi:.0f}",
                    "999900", "999900", "999900", "9999",
                    "180", f"{wind:.1f}",
                    "5", "5", "777.7", "77777", "9", "999999999", "999",
                    "0.999", "999", "99", "999", "999", "99",
                ]
                lines.append(",".join(row))
    return "\n".join(lines) + "\n"


MODEL_BUILDERS = {
    "single_room": single_room_gbxml,
    "two_room": two_room_gbxml,
    "four_room": four_room_gbxml,
    "large_model": large_model_gbxml,
}


def write_fixtures(outdir) -> dict[str, Path]:
    """Materialize every bundled model and weather fixture under `outdir`."""
    outdir = Path(outdir)
    models_dir = outdir / "models"
    weather_dir = outdir / "weather"
    models_dir.mkdir(parents=True, exist_ok=True)
    weather_dir.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}
    for name, builder in MODEL_BUILDERS.items():
        path = models_dir / f"{name}.xml"
        path.write_bytes(builder())
        paths[name] = path
    for site_key in SITES:
        path = weather_dir / f"{site_key}.epw"
        path.write_text(synthetic_epw(site_key), encoding="utf-8")
        paths[site_key] = path
    return paths
