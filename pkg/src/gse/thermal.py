"""Single-node lumped-capacitance thermal loads over a weather year.

Each space is one temperature node with an effective heat capacity: the
apparent capacitance of its construction mass and air, derated by the
correction multiplier `alpha` (the fraction of mass that participates
dynamically; roughly 0.32-0.45 insulated, 0.25 uninsulated). Per time step,
the node integrates its heat balance with explicit Euler using the previous
step's temperatures, then an ideal-loads clamp holds the zone inside the
setpoint band and books the clamp energy as heating or cooling.

Heat balance terms per zone:
  * opaque exterior surfaces conduct against sol-air temperature;
  * ground-contact surfaces conduct against a monthly ground proxy;
  * interzone surfaces conduct against the neighbor zone's last temperature;
  * openings conduct against outdoor air and admit SHGC-scaled solar;
  * infiltration exchanges zone air with outdoor air.
Surfaces flagged parapet or overhang are dropped from the balance entirely;
partitions keep their thermal mass but conduct nothing. Internal heat
sources are deliberately not modeled.

The explicit step is stable only while dt <= C_eff / sum(U*A). Steps beyond
the limit are halved until stable, with an InstabilityWarning recorded.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .errors import InstabilityWarning, NonpositiveConductivity, UnresolvedMaterial
from .materials.records import MaterialRecord, canonical_name
from .model import (
    Boundary,
    BuildingModel,
    Construction,
    classify_model,
    space_capacitance_inputs,
)
from .solar import SolarSeries
from .weather import (
    TimeStepProtocol,
    WeatherYear,
    ground_temperatures,
    iterate_indexed,
)

AIR_DENSITY = 1.2  # kg/m3
AIR_SPECIFIC_HEAT = 1005.0  # J/kgK
J_PER_KWH = 3.6e6

MONTH_LABELS = (
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
)


class Terrain(enum.Enum):
    FLAT_OPEN_COUNTRY = "open"
    SUBURBAN = "suburban"
    URBAN = "urban"


TERRAIN_WIND_MULTIPLIER = {
    Terrain.FLAT_OPEN_COUNTRY: 1.0,
    Terrain.SUBURBAN: 0.67,
    Terrain.URBAN: 0.5,
}


@dataclass(frozen=True)
class ThermalSettings:
    alpha: float = 0.35
    heat_setpoint: float = 20.0  # degC
    cool_setpoint: float = 24.0  # degC
    terrain: Terrain = Terrain.FLAT_OPEN_COUNTRY
    shadows_enabled: bool = False  # accepted for interface parity; no-op
    protocol: TimeStepProtocol = TimeStepProtocol.EVERY_HOUR_EVERY_DAY
    interior_film_resistance: float = 0.13  # m2K/W
    exterior_film_base: float = 5.6  # W/m2K
    exterior_film_wind_coeff: float = 4.0  # W*s/m3K
    infiltration_ach: float = 0.5  # air changes per hour
    solar_absorptance_opaque: float = 0.6
    default_shgc: float = 0.7
    window_solar_enabled: bool = True
    opaque_solar_enabled: bool = True
    initial_temperature: float | None = None  # None -> setpoint midpoint
    max_step_seconds: float | None = None  # force sub-stepping below this

    def validate(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if not self.heat_setpoint < self.cool_setpoint:
            raise ValueError("heat_setpoint must be below cool_setpoint")
        for name in (
            "interior_film_resistance",
            "exterior_film_base",
            "exterior_film_wind_coeff",
            "infiltration_ach",
            "solar_absorptance_opaque",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if not 0.0 <= self.solar_absorptance_opaque <= 1.0:
            raise ValueError("solar_absorptance_opaque must be in [0, 1]")


@dataclass(frozen=True)
class ZoneState:
    temperature: float  # degC
    effective_capacitance: float  # J/K

    def __post_init__(self):
        if self.effective_capacitance <= 0:
            raise ValueError("effective capacitance must be positive")


@dataclass(frozen=True)
class MonthlyLoads:
    heating_kwh: tuple[float, ...]
    cooling_kwh: tuple[float, ...]

    def __post_init__(self):
        if len(self.heating_kwh) != 12 or len(self.cooling_kwh) != 12:
            raise ValueError("monthly loads need 12 entries")
        object.__setattr__(self, "heating_kwh", tuple(self.heating_kwh))
        object.__setattr__(self, "cooling_kwh", tuple(self.cooling_kwh))

    @property
    def annual_heating_kwh(self) -> float:
        return sum(self.heating_kwh)

    @property
    def annual_cooling_kwh(self) -> float:
        return sum(self.cooling_kwh)

    @property
    def annual_total_kwh(self) -> float:
        return self.annual_heating_kwh + self.annual_cooling_kwh

    @staticmethod
    def zero() -> "MonthlyLoads":
        return MonthlyLoads((0.0,) * 12, (0.0,) * 12)

    def plus(self, other: "MonthlyLoads") -> "MonthlyLoads":
        return MonthlyLoads(
            tuple(a + b for a, b in zip(self.heating_kwh, other.heating_kwh)),
            tuple(a + b for a, b in zip(self.cooling_kwh, other.cooling_kwh)),
        )


@dataclass
class SimulationResult:
    building: MonthlyLoads
    per_space: dict[str, MonthlyLoads]
    warnings: list[str] = field(default_factory=list)
    step_count: int = 0
    temperatures: np.ndarray | None = None  # (steps, spaces) when traced


# ---------------------------------------------------------------------------
# Component properties
# ---------------------------------------------------------------------------


def _lookup(materials: Mapping[str, MaterialRecord], ref: str) -> MaterialRecord:
    rec = materials.get(canonical_name(ref))
    if rec is None:
        raise UnresolvedMaterial([ref])
    return rec


def u_value(
    construction: Construction,
    materials: Mapping[str, MaterialRecord],
    settings: ThermalSettings,
) -> float:
    """Overall transmittance from series layer and film resistances, W/m2K.

    The exterior film here is the still-air base value; wind enters through
    the sol-air temperature instead, so U stays constant over the year.
    """
    resistance = settings.interior_film_resistance
    if settings.exterior_film_base > 0:
        resistance += 1.0 / settings.exterior_film_base
    for layer in construction.layers:
        rec = _lookup(materials, layer.material_ref)
        if rec.conductivity <= 0:
            raise NonpositiveConductivity(
                f"material {layer.material_ref!r} has conductivity "
                f"{rec.conductivity}"
            )
        resistance += layer.thickness / rec.conductivity
    return 1.0 / resistance


def apparent_capacitance(
    space_id: str,
    model: BuildingModel,
    materials: Mapping[str, MaterialRecord],
) -> float:
    """Raw thermal mass around the zone node: envelope layers plus air, J/K."""
    total = 0.0
    for area, layers in space_capacitance_inputs(space_id, model):
        for layer in layers:
            rec = _lookup(materials, layer.material_ref)
            total += rec.density * rec.specific_heat * layer.thickness * area
    space = model.spaces[space_id]
    total += AIR_DENSITY * AIR_SPECIFIC_HEAT * space.volume
    return total


def effective_capacitance(apparent: float, alpha: float) -> float:
    """Dynamically participating fraction of the apparent capacitance."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    return alpha * apparent


def exterior_film_coefficient(wind_speed: float, settings: ThermalSettings) -> float:
    terrain_wind = wind_speed * TERRAIN_WIND_MULTIPLIER[settings.terrain]
    return settings.exterior_film_base + settings.exterior_film_wind_coeff * terrain_wind


def sol_air_temperature(record, incident: float, settings: ThermalSettings) -> float:
    """Outdoor air plus absorbed solar over the film coefficient, degC.

    Long-wave sky exchange is taken as zero, so at night this equals the
    dry-bulb temperature.
    """
    h_ext = exterior_film_coefficient(record.wind_speed, settings)
    if incident <= 0.0 or h_ext <= 0.0:
        return record.dry_bulb
    return record.dry_bulb + settings.solar_absorptance_opaque * incident / h_ext


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------


def step_euler(
    zone: ZoneState, gains: float, dt: float, settings: ThermalSettings
) -> tuple[ZoneState, float, float]:
    """One explicit Euler step with ideal-loads clamping.

    Returns the new state and the heating/cooling energy in joules booked to
    pin the free-running temperature back inside the setpoint band.
    """
    t_free = zone.temperature + dt * gains / zone.effective_capacitance
    heating = cooling = 0.0
    if t_free < settings.heat_setpoint:
        heating = zone.effective_capacitance * (settings.heat_setpoint - t_free)
        t_new = settings.heat_setpoint
    elif t_free > settings.cool_setpoint:
        cooling = zone.effective_capacitance * (t_free - settings.cool_setpoint)
        t_new = settings.cool_setpoint
    else:
        t_new = t_free
    return replace(zone, temperature=t_new), heating, cooling


def stable_substeps(dt: float, limit: float, max_step: float | None = None) -> int:
    """Halve the step until it sits inside the stability limit."""
    ceiling = limit if max_step is None else min(limit, max_step)
    n = 1
    while dt / n > ceiling and n < 2**20:
        n *= 2
    return n


@dataclass
class _ZonePlan:
    space_id: str
    c_eff: float
    ua_static: float  # W/K against precomputed driving series
    ua_interzone: list  # (neighbor index, W/K)
    driving: list  # per-record W (already includes static UA * T terms)
    substeps: int


def _prepare_zones(
    model: BuildingModel,
    year: WeatherYear,
    settings: ThermalSettings,
    materials: Mapping[str, MaterialRecord],
) -> tuple[list[_ZonePlan], list[str]]:
    sun = SolarSeries(year)
    n_records = len(year.records)
    t_out = np.array([r.dry_bulb for r in year.records])
    wind = np.array([r.wind_speed for r in year.records])
    h_ext = settings.exterior_film_base + settings.exterior_film_wind_coeff * (
        wind * TERRAIN_WIND_MULTIPLIER[settings.terrain]
    )
    ground_by_month = ground_temperatures(year)
    t_ground = np.array([ground_by_month[r.month - 1] for r in year.records])

    u_cache: dict[str, float] = {}

    def u_of(ref: str) -> float:
        if ref not in u_cache:
            u_cache[ref] = u_value(model.construction_for(ref), materials, settings)
        return u_cache[ref]

    space_index = {sid: i for i, sid in enumerate(model.spaces)}
    warnings_out: list[str] = []
    zones: list[_ZonePlan] = []

    for sid in model.spaces:
        space = model.spaces[sid]
        c_eff = effective_capacitance(
            apparent_capacitance(sid, model, materials), settings.alpha
        )
        driving = np.zeros(n_records)
        ua_static = 0.0
        ua_interzone: list[tuple[int, float]] = []

        for surface in model.surfaces_of_space(sid):
            if surface.boundary is Boundary.ADIABATIC:
                continue  # parapets, overhangs, partitions, shades
            if surface.boundary is Boundary.INTERZONE:
                other = [s for s in surface.adjacent_space_ids if s != sid]
                ua = u_of(surface.construction_ref) * surface.opaque_area()
                for opening in surface.openings:
                    ua += _opening_u(opening, u_of, settings) * opening.area()
                ua_interzone.append((space_index[other[0]], ua))
                continue

            ua_opaque = u_of(surface.construction_ref) * surface.opaque_area()
            if surface.boundary is Boundary.GROUND:
                ua_static += ua_opaque
                driving += ua_opaque * t_ground
                continue

            # Outdoor boundary: sol-air conduction on the opaque part.
            if settings.opaque_solar_enabled and settings.solar_absorptance_opaque > 0:
                incident = sun.incident(surface.tilt, surface.azimuth)
                t_sa = t_out + np.where(
                    h_ext > 1e-12,
                    settings.solar_absorptance_opaque * incident / h_ext,
                    0.0,
                )
            else:
                t_sa = t_out
            ua_static += ua_opaque
            driving += ua_opaque * t_sa

            for opening in surface.openings:
                area = opening.area()
                ua_w = _opening_u(opening, u_of, settings) * area
                ua_static += ua_w
                driving += ua_w * t_out
                if settings.window_solar_enabled:
                    shgc = opening.shgc if opening.shgc is not None else settings.default_shgc
                    if shgc > 0:
                        driving += shgc * area * sun.incident(surface.tilt, surface.azimuth)

        h_inf = (
            AIR_DENSITY * AIR_SPECIFIC_HEAT * space.volume
            * settings.infiltration_ach / 3600.0
        )
        ua_static += h_inf
        driving += h_inf * t_out

        ua_total = ua_static + sum(ua for _, ua in ua_interzone)
        dt_nominal = (
            3600.0
            if settings.protocol is TimeStepProtocol.EVERY_HOUR_EVERY_DAY
            else 7200.0
        )
        limit = c_eff / ua_total if ua_total > 0 else math.inf
        substeps = stable_substeps(dt_nominal, limit, settings.max_step_seconds)
        if dt_nominal > limit:
            message = (
                f"zone {sid}: step {dt_nominal:.0f}s exceeds stability limit "
                f"{limit:.0f}s; sub-stepping x{substeps}"
            )
            warnings.warn(message, InstabilityWarning, stacklevel=2)
            warnings_out.append(message)

        zones.append(
            _ZonePlan(
                space_id=sid,
                c_eff=c_eff,
                ua_static=ua_static,
                ua_interzone=ua_interzone,
                driving=driving.tolist(),
                substeps=substeps,
            )
        )
    return zones, warnings_out


def _opening_u(opening, u_of, settings: ThermalSettings) -> float:
    if opening.u_value_override is not None:
        return opening.u_value_override
    return u_of(opening.construction_ref)


def simulate(
    model: BuildingModel,
    year: WeatherYear,
    settings: ThermalSettings,
    materials: Mapping[str, MaterialRecord],
    trace: bool = False,
) -> SimulationResult:
    """Integrate every zone across the weather year under the chosen protocol.

    Deterministic: identical inputs produce bit-identical loads. Zones step
    sequentially within a time step; interzone coupling reads the neighbor
    temperature from the previous step, consistent with the explicit scheme.
    """
    settings.validate()
    if not model.classified:
        model = classify_model(model)

    zones, warn_list = _prepare_zones(model, year, settings, materials)
    n_zones = len(zones)
    if settings.initial_temperature is not None:
        t0 = settings.initial_temperature
    else:
        t0 = 0.5 * (settings.heat_setpoint + settings.cool_setpoint)
    temps = [t0] * n_zones
    heat_bins = [[0.0] * 12 for _ in range(n_zones)]
    cool_bins = [[0.0] * 12 for _ in range(n_zones)]

    step_list = [
        (i, rec.month - 1, dt)
        for i, rec, dt in iterate_indexed(year, settings.protocol)
    ]

    heat_sp = settings.heat_setpoint
    cool_sp = settings.cool_setpoint
    trace_rows = [] if trace else None

    for ri, mi, dt in step_list:
        prev = temps[:]
        for zi, zone in enumerate(zones):
            c = zone.c_eff
            base = zone.driving[ri]
            ua = zone.ua_static
            for oi, ua_iz in zone.ua_interzone:
                base += ua_iz * prev[oi]
                ua += ua_iz
            t = temps[zi]
            n_sub = zone.substeps
            dt_sub = dt / n_sub
            heating = cooling = 0.0
            # Unrolled step_euler: must stay equivalent to it (gains are
            # re-evaluated at the current zone temperature each sub-step).
            for _ in range(n_sub):
                t_free = t + dt_sub * (base - ua * t) / c
                if t_free < heat_sp:
                    heating += c * (heat_sp - t_free)
                    t = heat_sp
                elif t_free > cool_sp:
                    cooling += c * (t_free - cool_sp)
                    t = cool_sp
                else:
                    t = t_free
            temps[zi] = t
            heat_bins[zi][mi] += heating
            cool_bins[zi][mi] += cooling
        if trace_rows is not None:
            trace_rows.append(temps[:])

    per_space: dict[str, MonthlyLoads] = {}
    building = MonthlyLoads.zero()
    for zi, zone in enumerate(zones):
        loads = MonthlyLoads(
            tuple(j / J_PER_KWH for j in heat_bins[zi]),
            tuple(j / J_PER_KWH for j in cool_bins[zi]),
        )
        per_space[zone.space_id] = loads
        building = building.plus(loads)

    return SimulationResult(
        building=building,
        per_space=per_space,
        warnings=warn_list,
        step_count=len(step_list),
        temperatures=np.array(trace_rows) if trace_rows is not None else None,
    )
