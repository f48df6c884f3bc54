"""Embodied energy and water takeoff over the building decomposition.

Per material layer the embodied energy is coefficient x volume x density;
volumes come from surface areas (net of openings, which are costed against
their own constructions) times layer thickness. The same per-material sums
are re-aggregated to surface, assembly, and building level, so the four
levels are consistent by construction. Full precision is kept throughout;
rounding happens only when a report is rendered.

Surfaces excluded from the thermal balance (parapets, overhangs,
partitions) still carry real material, so they are always included here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import UnresolvedMaterial
from .materials.records import MaterialRecord, canonical_name
from .model import BuildingModel, MaterialLayer

BTU_PER_MJ = 947.817  # single authoritative conversion constant
BTU_PER_KWH = 3.6 * BTU_PER_MJ  # 1 kWh = 3.6 MJ


def mj_to_btu(mj: float) -> float:
    return mj * BTU_PER_MJ


def btu_to_mj(btu: float) -> float:
    return btu / BTU_PER_MJ


@dataclass(frozen=True)
class EEBreakdown:
    per_material_mj: dict[str, float]
    per_surface_mj: dict[str, float]
    per_assembly_mj: dict[str, float]
    per_material_ew_l: dict[str, float]
    embodied_water_l: float

    @property
    def total_mj(self) -> float:
        return sum(self.per_surface_mj.values())

    @property
    def total_btu(self) -> float:
        return mj_to_btu(self.total_mj)


def material_ee(area: float, layer: MaterialLayer, props: MaterialRecord) -> float:
    """Embodied energy of one layer over one area, MJ."""
    return props.ee_coeff * (area * layer.thickness) * props.density


def material_ew(area: float, layer: MaterialLayer, props: MaterialRecord) -> float:
    """Embodied water of one layer over one area, liters."""
    return props.ew_coeff * (area * layer.thickness) * props.density


@dataclass
class _Accumulator:
    per_material: dict[str, float] = field(default_factory=dict)
    per_surface: dict[str, float] = field(default_factory=dict)
    per_assembly: dict[str, float] = field(default_factory=dict)
    per_material_ew: dict[str, float] = field(default_factory=dict)
    ew_total: float = 0.0

    def add(self, surface_id: str, assembly_id: str, name: str,
            ee_mj: float, ew_l: float) -> None:
        self.per_material[name] = self.per_material.get(name, 0.0) + ee_mj
        self.per_surface[surface_id] = self.per_surface.get(surface_id, 0.0) + ee_mj
        self.per_assembly[assembly_id] = self.per_assembly.get(assembly_id, 0.0) + ee_mj
        self.per_material_ew[name] = self.per_material_ew.get(name, 0.0) + ew_l
        self.ew_total += ew_l


def aggregate(
    model: BuildingModel, materials: Mapping[str, MaterialRecord]
) -> EEBreakdown:
    """Sum embodied energy and water at all four aggregation levels.

    Raises UnresolvedMaterial listing every missing name at once, so nothing
    is ever silently skipped.
    """
    missing = [
        ref for ref in model.material_refs()
        if canonical_name(ref) not in materials
    ]
    if missing:
        raise UnresolvedMaterial(missing)

    acc = _Accumulator()
    for surface in model.surfaces.values():
        construction = model.construction_for(surface.construction_ref)
        _add_stack(acc, surface.id, construction.id, surface.opaque_area(),
                   construction.layers, materials)
        for opening in surface.openings:
            oc = model.construction_for(opening.construction_ref)
            _add_stack(acc, surface.id, oc.id, opening.area(), oc.layers, materials)

    return EEBreakdown(
        per_material_mj=acc.per_material,
        per_surface_mj=acc.per_surface,
        per_assembly_mj=acc.per_assembly,
        per_material_ew_l=acc.per_material_ew,
        embodied_water_l=acc.ew_total,
    )


def _add_stack(acc, surface_id, assembly_id, area, layers, materials) -> None:
    for layer in layers:
        key = canonical_name(layer.material_ref)
        props = materials[key]
        acc.add(
            surface_id,
            assembly_id,
            key,
            material_ee(area, layer, props),
            material_ew(area, layer, props),
        )


def embodied_water(
    model: BuildingModel, materials: Mapping[str, MaterialRecord]
) -> float:
    """Total embodied water in liters over the same volume x density basis."""
    return aggregate(model, materials).embodied_water_l


def lifetime_total(ee_btu: float, annual_operating_btu: float, years: float) -> float:
    """Lifetime energy: embodied plus `years` of annual operating energy, Btu."""
    if years < 0:
        raise ValueError("years must be >= 0")
    return ee_btu + years * annual_operating_btu
