"""gbXML reader producing a validated :class:`~gse.model.BuildingModel`.

Handles the Campus > Building > Space / Surface layout with the usual
Construction -> LayerId -> Layer -> MaterialId -> Material indirection.
Namespaces are ignored (files in the wild are inconsistent about them),
unknown elements are skipped, and all lengths are normalized to meters from
the file's declared unit system. Material names become the canonical
references looked up against the property store; any thermal property values
embedded in the file are ignored in favor of the provenance-tracked store.
"""
from __future__ import annotations

import io
import math
import xml.etree.ElementTree as ET

from .errors import MalformedXml, SchemaViolation, UnitError
from .geometry import Point3, Polygon
from .model import (
    BuildingModel,
    Construction,
    MaterialLayer,
    Opening,
    OpeningKind,
    Space,
    Surface,
    declared_kind,
    derive_orientation,
    enclosed_volume_of_space,
    validate_model,
)

_LENGTH_UNIT_M = {
    "meters": 1.0,
    "feet": 0.3048,
    "inches": 0.0254,
    "centimeters": 0.01,
    "millimeters": 0.001,
    "kilometers": 1000.0,
    "miles": 1609.344,
}

_WINDOW_TYPES = {
    "fixedwindow": OpeningKind.WINDOW,
    "operablewindow": OpeningKind.WINDOW,
    "fixedskylight": OpeningKind.WINDOW,
    "operableskylight": OpeningKind.WINDOW,
    "window": OpeningKind.WINDOW,
    "slidingdoor": OpeningKind.DOOR,
    "nonslidingdoor": OpeningKind.DOOR,
    "door": OpeningKind.DOOR,
}


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _children(elem, name: str):
    return [c for c in elem if _local(c.tag) == name]


def _child(elem, name: str):
    found = _children(elem, name)
    return found[0] if found else None


def _text(elem, name: str) -> str | None:
    c = _child(elem, name)
    if c is None or c.text is None:
        return None
    return c.text.strip()


def _float(elem, name: str) -> float | None:
    t = _text(elem, name)
    return float(t) if t not in (None, "") else None


def _iter_named(root, name: str):
    for elem in root.iter():
        if _local(elem.tag) == name:
            yield elem


def parse_gbxml(document) -> BuildingModel:
    """Parse gbXML bytes/text/stream into a BuildingModel (unclassified)."""
    if isinstance(document, (bytes, bytearray)):
        data = bytes(document)
    elif isinstance(document, str):
        data = document.encode("utf-8")
    elif hasattr(document, "read"):
        raw = document.read()
        data = raw.encode("utf-8") if isinstance(raw, str) else raw
    else:
        raise TypeError("document must be bytes, str, or a readable stream")

    try:
        root = ET.parse(io.BytesIO(data)).getroot()
    except ET.ParseError as exc:
        raise MalformedXml(f"unparseable XML: {exc}") from exc
    if _local(root.tag) != "gbXML":
        raise SchemaViolation(f"root element is {_local(root.tag)!r}, expected gbXML")

    unit = (root.get("lengthUnit") or "Meters").strip().lower()
    try:
        scale = _LENGTH_UNIT_M[unit]
    except KeyError:
        raise UnitError(f"unrecognized length unit {root.get('lengthUnit')!r}") from None

    campus = _child(root, "Campus")
    if campus is None:
        raise SchemaViolation("no Campus element")

    latitude = longitude = 0.0
    ground_elevation = 0.0
    location = _child(campus, "Location")
    if location is not None:
        latitude = _float(location, "Latitude") or 0.0
        longitude = _float(location, "Longitude") or 0.0
        ge = _float(location, "GroundElevation")
        if ge is not None:
            ground_elevation = ge * scale

    materials = _parse_materials(root, scale)
    layers = _parse_layers(root, materials)
    constructions = _parse_constructions(root, layers)

    spaces_raw: dict[str, dict] = {}
    for sp in _iter_named(campus, "Space"):
        sid = sp.get("id")
        if not sid:
            raise SchemaViolation("Space without id")
        spaces_raw[sid] = {
            "name": _text(sp, "Name") or sid,
            "volume": _scale_or_none(_float(sp, "Volume"), scale**3),
            "area": _scale_or_none(_float(sp, "Area"), scale**2),
            "surface_ids": [],
        }

    surfaces: dict[str, Surface] = {}
    for su in _iter_named(campus, "Surface"):
        surface = _parse_surface(su, scale, constructions)
        if surface.id in surfaces:
            raise SchemaViolation(f"duplicate surface id {surface.id!r}")
        for space_id in surface.adjacent_space_ids:
            if space_id not in spaces_raw:
                raise SchemaViolation(
                    f"surface {surface.id!r} adjacent to unknown space {space_id!r}"
                )
            spaces_raw[space_id]["surface_ids"].append(surface.id)
        surfaces[surface.id] = surface

    surfaces = _orient_outward(surfaces, spaces_raw)

    spaces: dict[str, Space] = {}
    for sid, raw in spaces_raw.items():
        if len(raw["surface_ids"]) < 4:
            raise SchemaViolation(
                f"space {sid!r} is bounded by {len(raw['surface_ids'])} surfaces; "
                "a closed space needs at least 4"
            )
        bounding = [surfaces[i] for i in raw["surface_ids"]]
        volume = raw["volume"]
        if volume is None:
            volume = enclosed_volume_of_space(bounding, sid)
        floor_area = raw["area"]
        if floor_area is None:
            # Horizontal faces at the space's lowest level; an interzone
            # ceiling is the floor of the space above it regardless of how
            # its loop was wound.
            horizontal = [
                s for s in bounding if s.tilt <= 45.0 or s.tilt >= 135.0
            ]
            if horizontal:
                low = min(s.geometry.centroid().z for s in horizontal)
                floor_area = sum(
                    s.geometry.area()
                    for s in horizontal
                    if abs(s.geometry.centroid().z - low) <= 1e-6
                )
            else:
                floor_area = 0.0
        if volume <= 0:
            raise SchemaViolation(f"space {sid!r} has non-positive volume")
        spaces[sid] = Space(
            id=sid,
            name=raw["name"],
            volume=volume,
            floor_area=floor_area,
            bounding_surface_ids=tuple(raw["surface_ids"]),
        )

    model = BuildingModel(
        spaces=spaces,
        surfaces=surfaces,
        constructions=constructions,
        latitude=latitude,
        longitude=longitude,
        ground_elevation=ground_elevation,
    )
    validate_model(model)
    return model


def parse_gbxml_file(path) -> BuildingModel:
    with open(path, "rb") as fh:
        model = parse_gbxml(fh)
    return BuildingModel(
        spaces=model.spaces,
        surfaces=model.surfaces,
        constructions=model.constructions,
        latitude=model.latitude,
        longitude=model.longitude,
        source_path=str(path),
        ground_elevation=model.ground_elevation,
    )


def _scale_or_none(value: float | None, factor: float) -> float | None:
    return None if value is None else value * factor


def _parse_materials(root, scale: float) -> dict[str, tuple[str, float]]:
    """Material element id -> (canonical name ref, thickness in meters)."""
    out: dict[str, tuple[str, float]] = {}
    for m in _iter_named(root, "Material"):
        mid = m.get("id")
        if not mid:
            continue
        name = _text(m, "Name") or mid
        thickness = _float(m, "Thickness")
        tel = _child(m, "Thickness")
        tscale = scale
        if tel is not None and tel.get("unit"):
            tscale = _LENGTH_UNIT_M.get(tel.get("unit").strip().lower(), scale)
        out[mid] = (name, thickness * tscale if thickness is not None else math.nan)
    return out


def _parse_layers(root, materials) -> dict[str, list[MaterialLayer]]:
    out: dict[str, list[MaterialLayer]] = {}
    for layer in _iter_named(root, "Layer"):
        lid = layer.get("id")
        if not lid:
            continue
        stack: list[MaterialLayer] = []
        for ref in _children(layer, "MaterialId"):
            mid = ref.get("materialIdRef")
            if mid not in materials:
                raise SchemaViolation(
                    f"layer {lid!r} references missing material {mid!r}"
                )
            name, thickness = materials[mid]
            if not math.isfinite(thickness):
                raise SchemaViolation(
                    f"material {mid!r} ({name!r}) lacks a Thickness element"
                )
            stack.append(MaterialLayer(material_ref=name, thickness=thickness))
        out[lid] = stack
    return out


def _parse_constructions(root, layers) -> dict[str, Construction]:
    out: dict[str, Construction] = {}
    for con in _iter_named(root, "Construction"):
        cid = con.get("id")
        if not cid:
            continue
        stack: list[MaterialLayer] = []
        for ref in _children(con, "LayerId"):
            lid = ref.get("layerIdRef")
            if lid not in layers:
                raise SchemaViolation(
                    f"construction {cid!r} references missing layer {lid!r}"
                )
            stack.extend(layers[lid])
        if not stack:
            raise SchemaViolation(f"construction {cid!r} has no material layers")
        out[cid] = Construction(
            id=cid, name=_text(con, "Name") or cid, layers=tuple(stack)
        )
    return out


def _parse_polyloop(container, scale: float, owner: str) -> Polygon:
    geometry = _child(container, "PlanarGeometry")
    loop = _child(geometry, "PolyLoop") if geometry is not None else None
    if loop is None:
        raise SchemaViolation(f"{owner} has no PlanarGeometry/PolyLoop")
    points = []
    for cp in _children(loop, "CartesianPoint"):
        coords = [float(c.text) for c in _children(cp, "Coordinate")]
        if len(coords) != 3:
            raise SchemaViolation(f"{owner} has a CartesianPoint without 3 coordinates")
        points.append(Point3(coords[0] * scale, coords[1] * scale, coords[2] * scale))
    if len(points) < 3:
        raise SchemaViolation(f"{owner} polygon has fewer than 3 vertices")
    polygon = Polygon(tuple(points))
    polygon.validate()
    return polygon


def _parse_surface(su, scale: float, constructions) -> Surface:
    sid = su.get("id")
    if not sid:
        raise SchemaViolation("Surface without id")
    kind = declared_kind(su.get("surfaceType"), sid)
    cref = su.get("constructionIdRef")
    if not cref:
        raise SchemaViolation(f"surface {sid!r} has no constructionIdRef")
    if cref not in constructions:
        raise SchemaViolation(
            f"surface {sid!r} references missing construction {cref!r}"
        )

    adjacent = []
    for adj in _children(su, "AdjacentSpaceId"):
        ref = adj.get("spaceIdRef")
        if ref:
            adjacent.append(ref)
    if len(adjacent) > 2:
        raise SchemaViolation(f"surface {sid!r} lists {len(adjacent)} adjacent spaces")

    polygon = _parse_polyloop(su, scale, f"surface {sid!r}")

    openings = []
    for op in _children(su, "Opening"):
        oid = op.get("id") or f"{sid}-opening-{len(openings)}"
        otype = (op.get("openingType") or "FixedWindow").strip().lower()
        okind = _WINDOW_TYPES.get(otype, OpeningKind.WINDOW)
        ocref = op.get("constructionIdRef")
        if not ocref:
            raise SchemaViolation(f"opening {oid!r} has no constructionIdRef")
        if ocref not in constructions:
            raise SchemaViolation(
                f"opening {oid!r} references missing construction {ocref!r}"
            )
        ogeom = _parse_polyloop(op, scale, f"opening {oid!r}")
        u_override = _float(op, "U-value")
        shgc = _float(op, "SolarHeatGainCoeff")
        openings.append(
            Opening(
                id=oid,
                kind=okind,
                geometry=ogeom,
                construction_ref=ocref,
                u_value_override=u_override,
                shgc=shgc,
            )
        )

    tilt, azimuth = derive_orientation(polygon)
    return Surface(
        id=sid,
        kind=kind,
        geometry=polygon,
        construction_ref=cref,
        adjacent_space_ids=tuple(adjacent),
        openings=tuple(openings),
        tilt=tilt,
        azimuth=azimuth,
    )


def _orient_outward(surfaces: dict[str, Surface], spaces_raw) -> dict[str, Surface]:
    """Flip single-adjacency surfaces whose normal points into their space.

    Exporters do not agree on winding direction; solar incidence and the
    divergence-theorem volume both need outward normals.
    """
    centroids: dict[str, Point3] = {}
    for space_id, raw in spaces_raw.items():
        pts = [surfaces[sid].geometry.centroid() for sid in raw["surface_ids"]]
        if pts:
            centroids[space_id] = Point3(
                sum(p.x for p in pts) / len(pts),
                sum(p.y for p in pts) / len(pts),
                sum(p.z for p in pts) / len(pts),
            )

    out: dict[str, Surface] = {}
    for sid, surface in surfaces.items():
        if len(surface.adjacent_space_ids) == 1:
            space_id = surface.adjacent_space_ids[0]
            center = centroids.get(space_id)
            if center is not None:
                n = surface.geometry.normal()
                c = surface.geometry.centroid()
                outward = (c.x - center.x, c.y - center.y, c.z - center.z)
                if n[0] * outward[0] + n[1] * outward[1] + n[2] * outward[2] < 0:
                    flipped = Polygon(tuple(reversed(surface.geometry.vertices)))
                    tilt, azimuth = derive_orientation(flipped)
                    surface = Surface(
                        id=surface.id,
                        kind=surface.kind,
                        geometry=flipped,
                        construction_ref=surface.construction_ref,
                        adjacent_space_ids=surface.adjacent_space_ids,
                        openings=surface.openings,
                        tilt=tilt,
                        azimuth=azimuth,
                    )
        out[sid] = surface
    return out
