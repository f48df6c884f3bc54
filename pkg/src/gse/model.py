"""Building decomposition: spaces, surfaces, assemblies, material layers.

The model mirrors how the engines consume a building: each space is bounded
by surfaces, each surface carries an assembly (construction) made of ordered
material layers, and openings punch through their host surfaces. Procedural
classification resolves the cases exporters encode ambiguously: parapets,
below-grade walls and slabs, same-space partitions, and overhangs.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .errors import SchemaViolation, UnclassifiableSurface, UnresolvedMaterial
from .geometry import Polygon, tilt_azimuth

GROUND_DATUM_TOL_M = 1e-6


class SurfaceKind(enum.Enum):
    EXTERIOR_WALL = "ExteriorWall"
    INTERIOR_WALL = "InteriorWall"
    ROOF = "Roof"
    EXPOSED_FLOOR = "ExposedFloor"
    SLAB_ON_GRADE = "SlabOnGrade"
    UNDERGROUND_WALL = "UndergroundWall"
    UNDERGROUND_SLAB = "UndergroundSlab"
    CEILING = "Ceiling"
    AIR = "Air"
    SHADE = "Shade"


WALL_KINDS = {
    SurfaceKind.EXTERIOR_WALL,
    SurfaceKind.INTERIOR_WALL,
    SurfaceKind.UNDERGROUND_WALL,
}

# Kinds that separate a space from the outdoors or the ground.
EXTERIOR_KINDS = {
    SurfaceKind.EXTERIOR_WALL,
    SurfaceKind.ROOF,
    SurfaceKind.EXPOSED_FLOOR,
    SurfaceKind.SLAB_ON_GRADE,
    SurfaceKind.UNDERGROUND_WALL,
    SurfaceKind.UNDERGROUND_SLAB,
}

INTERIOR_KINDS = {SurfaceKind.INTERIOR_WALL, SurfaceKind.CEILING, SurfaceKind.AIR}

GROUND_KINDS = {
    SurfaceKind.SLAB_ON_GRADE,
    SurfaceKind.UNDERGROUND_WALL,
    SurfaceKind.UNDERGROUND_SLAB,
}


class Boundary(enum.Enum):
    """Thermal boundary condition a surface conducts against."""

    OUTDOOR = "Outdoor"
    GROUND = "Ground"
    INTERZONE = "InterZone"
    ADIABATIC = "Adiabatic"


@dataclass(frozen=True)
class SurfaceFlags:
    parapet: bool = False
    partition: bool = False
    overhang: bool = False
    foundation: bool = False

    def any(self) -> bool:
        return self.parapet or self.partition or self.overhang or self.foundation


class OpeningKind(enum.Enum):
    WINDOW = "Window"
    DOOR = "Door"


@dataclass(frozen=True)
class Opening:
    id: str
    kind: OpeningKind
    geometry: Polygon
    construction_ref: str
    u_value_override: float | None = None
    shgc: float | None = None  # engine default applies when None

    def area(self) -> float:
        return self.geometry.area()


@dataclass(frozen=True)
class MaterialLayer:
    material_ref: str  # canonical material name
    thickness: float  # m

    def __post_init__(self):
        if self.thickness <= 0:
            raise SchemaViolation(
                f"layer of {self.material_ref!r} has non-positive thickness"
            )


@dataclass(frozen=True)
class Construction:
    id: str
    name: str
    layers: tuple[MaterialLayer, ...]  # outside-to-inside

    def __post_init__(self):
        if not self.layers:
            raise SchemaViolation(f"construction {self.id!r} has no layers")
        object.__setattr__(self, "layers", tuple(self.layers))


@dataclass(frozen=True)
class Surface:
    id: str
    kind: SurfaceKind
    geometry: Polygon
    construction_ref: str
    adjacent_space_ids: tuple[str, ...] = ()
    openings: tuple[Opening, ...] = ()
    tilt: float = 0.0
    azimuth: float = 0.0
    flags: SurfaceFlags = field(default_factory=SurfaceFlags)
    boundary: Boundary = Boundary.OUTDOOR

    def __post_init__(self):
        object.__setattr__(self, "adjacent_space_ids", tuple(self.adjacent_space_ids))
        object.__setattr__(self, "openings", tuple(self.openings))

    def gross_area(self) -> float:
        return self.geometry.area()

    def opening_area(self) -> float:
        return sum(o.area() for o in self.openings)

    def opaque_area(self) -> float:
        """Host area net of openings; openings are costed separately."""
        return self.gross_area() - self.opening_area()


@dataclass(frozen=True)
class Space:
    id: str
    name: str
    volume: float  # m3
    floor_area: float  # m2
    bounding_surface_ids: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "bounding_surface_ids", tuple(self.bounding_surface_ids)
        )


@dataclass(frozen=True)
class BuildingModel:
    """Immutable, queryable decomposition of one parsed building."""

    spaces: dict[str, Space]
    surfaces: dict[str, Surface]
    constructions: dict[str, Construction]
    latitude: float
    longitude: float
    source_path: str = ""
    ground_elevation: float = 0.0
    classified: bool = False

    def material_refs(self) -> list[str]:
        """Distinct material names referenced anywhere, in first-use order."""
        seen: dict[str, None] = {}
        for c in self.constructions.values():
            for layer in c.layers:
                seen.setdefault(layer.material_ref, None)
        return list(seen)

    def construction_for(self, ref: str) -> Construction:
        try:
            return self.constructions[ref]
        except KeyError:
            raise UnresolvedMaterial([ref]) from None

    def surfaces_of_space(self, space_id: str) -> list[Surface]:
        space = self.spaces[space_id]
        return [self.surfaces[sid] for sid in space.bounding_surface_ids]

    def with_constructions(self, constructions: dict[str, Construction]) -> "BuildingModel":
        return replace(self, constructions=dict(constructions))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

_DECLARED_KIND = {kind.value: kind for kind in SurfaceKind}
# Common exporter aliases seen in the wild.
_DECLARED_KIND.update(
    {
        "InteriorFloor": SurfaceKind.CEILING,
        "RaisedFloor": SurfaceKind.EXPOSED_FLOOR,
        "UndergroundCeiling": SurfaceKind.UNDERGROUND_SLAB,
        "FreestandingColumn": SurfaceKind.SHADE,
    }
)


def declared_kind(surface_type: str | None, surface_id: str) -> SurfaceKind:
    if surface_type is None:
        raise UnclassifiableSurface(f"surface {surface_id!r} has no declared type")
    try:
        return _DECLARED_KIND[surface_type]
    except KeyError:
        raise UnclassifiableSurface(
            f"surface {surface_id!r} declares unknown type {surface_type!r}"
        ) from None


def _building_top(model: BuildingModel) -> float:
    """Highest ceiling plane: per space, the top of its roof/ceiling faces."""
    tops = []
    for space_id in model.spaces:
        zs = [
            s.geometry.max_z()
            for s in model.surfaces_of_space(space_id)
            if s.kind in (SurfaceKind.ROOF, SurfaceKind.CEILING)
        ]
        if zs:
            tops.append(max(zs))
    return max(tops) if tops else float("inf")


def _is_horizontal(surface: Surface) -> bool:
    return surface.tilt <= 45.0 or surface.tilt >= 135.0


def classify_surface(
    surface: Surface, model: BuildingModel, building_top: float | None = None
) -> Surface:
    """Apply the procedural rules on top of the declared surface type.

    Rules, in order:
      * wall with one adjacent space, entirely above every roof/ceiling
        plane -> parapet (kept for material takeoff, dropped from the zone
        heat balance);
      * surface entirely at or below the ground datum -> ground-contact
        boundary (+foundation flag);
      * interior surface listing the same space twice -> partition
        (no net conduction, still thermal mass and material);
      * horizontal exterior surface bounding no space -> overhang.
    """
    if building_top is None:
        building_top = _building_top(model)
    datum = model.ground_elevation

    kind = surface.kind
    flags = dict(parapet=False, partition=False, overhang=False, foundation=False)
    boundary = Boundary.OUTDOOR

    n_adj = len(surface.adjacent_space_ids)

    if (
        kind in WALL_KINDS
        and n_adj == 1
        and surface.geometry.min_z() >= building_top - GROUND_DATUM_TOL_M
    ):
        flags["parapet"] = True
        kind = SurfaceKind.EXTERIOR_WALL

    if surface.geometry.max_z() <= datum + GROUND_DATUM_TOL_M:
        boundary = Boundary.GROUND
        # Flag only surfaces that actually extend below grade; a slab at the
        # datum is ordinary ground contact, not a foundation special case.
        if surface.geometry.min_z() < datum - GROUND_DATUM_TOL_M:
            flags["foundation"] = True
        if kind in WALL_KINDS:
            kind = SurfaceKind.UNDERGROUND_WALL
        elif kind not in (SurfaceKind.SLAB_ON_GRADE, SurfaceKind.UNDERGROUND_SLAB):
            kind = SurfaceKind.UNDERGROUND_SLAB
    elif kind in GROUND_KINDS:
        boundary = Boundary.GROUND

    if n_adj == 2:
        boundary = Boundary.INTERZONE
        if kind not in INTERIOR_KINDS:
            kind = SurfaceKind.INTERIOR_WALL if kind in WALL_KINDS else SurfaceKind.CEILING
        if surface.adjacent_space_ids[0] == surface.adjacent_space_ids[1]:
            flags["partition"] = True
            boundary = Boundary.ADIABATIC
    elif n_adj == 1 and kind in INTERIOR_KINDS and not flags["parapet"]:
        # Interior kind facing an unmodeled space: keep the mass, conduct
        # nothing.
        boundary = Boundary.ADIABATIC

    if n_adj == 0:
        if _is_horizontal(surface):
            flags["overhang"] = True
            boundary = Boundary.ADIABATIC
        elif kind is SurfaceKind.SHADE:
            boundary = Boundary.ADIABATIC
        else:
            raise UnclassifiableSurface(
                f"surface {surface.id!r} bounds no space and is not horizontal or Shade"
            )

    if flags["parapet"] or flags["overhang"]:
        boundary = Boundary.ADIABATIC

    return replace(surface, kind=kind, flags=SurfaceFlags(**flags), boundary=boundary)


def classify_model(model: BuildingModel) -> BuildingModel:
    """Classify every surface; idempotent on its own output."""
    top = _building_top(model)
    surfaces = {
        sid: classify_surface(s, model, building_top=top)
        for sid, s in model.surfaces.items()
    }
    return replace(model, surfaces=surfaces, classified=True)


# ---------------------------------------------------------------------------
# Capacitance takeoff
# ---------------------------------------------------------------------------


def space_capacitance_inputs(
    space_id: str, model: BuildingModel
) -> list[tuple[float, tuple[MaterialLayer, ...]]]:
    """Areas and layer stacks feeding a space's thermal-mass estimate.

    Interzone surfaces lump half of their mass into each adjacent space, so
    summing over both spaces recovers the whole wall. Parapets and overhangs
    stay out entirely: they are material takeoff only. Openings contribute
    their own construction over their own area, and their host contributes
    only its net opaque area.
    """
    if space_id not in model.spaces:
        raise KeyError(space_id)
    entries: list[tuple[float, tuple[MaterialLayer, ...]]] = []
    for surface in model.surfaces_of_space(space_id):
        if surface.flags.parapet or surface.flags.overhang:
            continue
        construction = model.construction_for(surface.construction_ref)
        share = 0.5 if len(surface.adjacent_space_ids) == 2 else 1.0
        entries.append((surface.opaque_area() * share, construction.layers))
        for opening in surface.openings:
            oc = model.construction_for(opening.construction_ref)
            entries.append((opening.area() * share, oc.layers))
    return entries


def validate_model(model: BuildingModel) -> None:
    """Check cross-reference invariants the parser must guarantee."""
    for sid, surface in model.surfaces.items():
        if surface.construction_ref not in model.constructions:
            raise SchemaViolation(
                f"surface {sid!r} references missing construction "
                f"{surface.construction_ref!r}"
            )
        for space_id in surface.adjacent_space_ids:
            if space_id not in model.spaces:
                raise SchemaViolation(
                    f"surface {sid!r} adjacent to missing space {space_id!r}"
                )
        for opening in surface.openings:
            if opening.construction_ref not in model.constructions:
                raise SchemaViolation(
                    f"opening {opening.id!r} references missing construction "
                    f"{opening.construction_ref!r}"
                )
            if opening.area() >= surface.gross_area():
                raise SchemaViolation(
                    f"opening {opening.id!r} is not smaller than its host {sid!r}"
                )
    for space_id, space in model.spaces.items():
        if space.volume <= 0:
            raise SchemaViolation(f"space {space_id!r} has non-positive volume")
        for sid in space.bounding_surface_ids:
            if sid not in model.surfaces:
                raise SchemaViolation(
                    f"space {space_id!r} bounded by missing surface {sid!r}"
                )


def derive_orientation(geometry: Polygon) -> tuple[float, float]:
    return tilt_azimuth(geometry)


def enclosed_volume_of_space(bounding: list["Surface"], space_id: str) -> float:
    """Divergence-theorem volume of a space from its bounding surfaces.

    Face windings in a file are not reliable, so each face's contribution is
    oriented outward relative to the centroid of the space before summing.
    Exact for convex rooms and close enough for the mildly concave ones
    exporters produce; files carrying an explicit volume bypass this.
    """
    if not bounding:
        raise SchemaViolation(f"space {space_id!r} has no bounding surfaces")
    centers = [s.geometry.centroid() for s in bounding]
    cx = sum(c.x for c in centers) / len(centers)
    cy = sum(c.y for c in centers) / len(centers)
    cz = sum(c.z for c in centers) / len(centers)
    volume = 0.0
    for surface in bounding:
        nv = surface.geometry.newell_vector()  # 2 * A * n_hat
        c = surface.geometry.centroid()
        outward = (c.x - cx, c.y - cy, c.z - cz)
        contrib = 0.5 * (c.x * nv[0] + c.y * nv[1] + c.z * nv[2])
        if nv[0] * outward[0] + nv[1] * outward[1] + nv[2] * outward[2] < 0:
            contrib = -contrib
        volume += contrib
    return abs(volume) / 3.0
