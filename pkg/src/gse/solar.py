"""Solar position and irradiance incident on tilted building surfaces.

Position uses the standard declination (Cooper) and hour-angle relations
with the Spencer equation-of-time correction. Incident irradiance combines
beam radiation projected by the incidence angle with an isotropic-sky
diffuse term; ground reflection and long-wave exchange are not modeled.
Everything is exposed both as scalar functions (unit-testable against hand
geometry) and as vectorized series over a whole weather year.
"""
from __future__ import annotations

import math

import numpy as np

from .weather import WeatherRecord, WeatherYear


def declination_deg(day_of_year: int) -> float:
    return 23.45 * math.sin(math.radians(360.0 * (284 + day_of_year) / 365.0))


def equation_of_time_minutes(day_of_year: int) -> float:
    b = 2.0 * math.pi * (day_of_year - 1) / 365.0
    return 229.18 * (
        0.000075
        + 0.001868 * math.cos(b)
        - 0.032077 * math.sin(b)
        - 0.014615 * math.cos(2 * b)
        - 0.04089 * math.sin(2 * b)
    )


def solar_time_hours(
    clock_hours: float, day_of_year: int, longitude: float, tz_offset_hours: float
) -> float:
    correction_min = 4.0 * (longitude - 15.0 * tz_offset_hours)
    return clock_hours + (correction_min + equation_of_time_minutes(day_of_year)) / 60.0


def solar_position(
    day_of_year: int,
    clock_hours: float,
    latitude: float,
    longitude: float,
    tz_offset_hours: float,
) -> tuple[float, float]:
    """(cos of zenith angle, solar azimuth degrees clockwise from north)."""
    decl = math.radians(declination_deg(day_of_year))
    t_solar = solar_time_hours(clock_hours, day_of_year, longitude, tz_offset_hours)
    omega = math.radians(15.0 * (t_solar - 12.0))
    phi = math.radians(latitude)
    cos_zen = math.sin(phi) * math.sin(decl) + math.cos(phi) * math.cos(decl) * math.cos(
        omega
    )
    azimuth = math.degrees(
        math.atan2(
            -math.cos(decl) * math.sin(omega),
            math.sin(decl) * math.cos(phi) - math.cos(decl) * math.sin(phi) * math.cos(omega),
        )
    ) % 360.0
    return cos_zen, azimuth


def incidence_cosine(
    cos_zenith: float, solar_azimuth_deg: float, tilt_deg: float, azimuth_deg: float
) -> float:
    """Cosine of the angle between the sun and a surface normal."""
    cos_zen = max(-1.0, min(1.0, cos_zenith))
    sin_zen = math.sqrt(1.0 - cos_zen * cos_zen)
    tilt = math.radians(tilt_deg)
    return cos_zen * math.cos(tilt) + sin_zen * math.sin(tilt) * math.cos(
        math.radians(solar_azimuth_deg - azimuth_deg)
    )


def incident_irradiance(
    record: WeatherRecord,
    tilt_deg: float,
    azimuth_deg: float,
    latitude: float,
    longitude: float,
    tz_offset_hours: float,
) -> float:
    """Total shortwave on the surface for one hourly record, W/m2.

    The record's radiation integrates the hour ending at `record.hour`, so
    the sun position is evaluated at the half hour. Zero whenever the sun
    is below the horizon.
    """
    clock = record.hour - 0.5
    cos_zen, sun_az = solar_position(
        record.day_of_year(), clock, latitude, longitude, tz_offset_hours
    )
    if cos_zen <= 0.0:
        return 0.0
    cos_inc = incidence_cosine(cos_zen, sun_az, tilt_deg, azimuth_deg)
    sky_view = (1.0 + math.cos(math.radians(tilt_deg))) / 2.0
    return record.direct_normal * max(0.0, cos_inc) + record.diffuse_horizontal * sky_view


class SolarSeries:
    """Vectorized per-surface irradiance over a whole weather year.

    Precomputes the sun path once; per-orientation series are cached since
    buildings repeat a handful of facade orientations across many surfaces.
    """

    def __init__(self, year: WeatherYear):
        n = np.array([rec.day_of_year() for rec in year.records], dtype=float)
        clock = np.array([rec.hour - 0.5 for rec in year.records], dtype=float)
        self.dni = np.array([rec.direct_normal for rec in year.records], dtype=float)
        self.dhi = np.array(
            [rec.diffuse_horizontal for rec in year.records], dtype=float
        )

        decl = np.radians(23.45 * np.sin(np.radians(360.0 * (284 + n) / 365.0)))
        b = 2.0 * np.pi * (n - 1) / 365.0
        eot = 229.18 * (
            0.000075
            + 0.001868 * np.cos(b)
            - 0.032077 * np.sin(b)
            - 0.014615 * np.cos(2 * b)
            - 0.04089 * np.sin(2 * b)
        )
        t_solar = clock + (
            4.0 * (year.longitude - 15.0 * year.tz_offset_hours) + eot
        ) / 60.0
        omega = np.radians(15.0 * (t_solar - 12.0))
        phi = math.radians(year.latitude)

        self.cos_zen = np.sin(phi) * np.sin(decl) + np.cos(phi) * np.cos(decl) * np.cos(
            omega
        )
        self.sun_az = np.arctan2(
            -np.cos(decl) * np.sin(omega),
            np.sin(decl) * np.cos(phi) - np.cos(decl) * np.sin(phi) * np.cos(omega),
        )  # radians from north
        self.sin_zen = np.sqrt(np.clip(1.0 - self.cos_zen**2, 0.0, 1.0))
        self._up = self.cos_zen > 0.0
        self._cache: dict[tuple[float, float], np.ndarray] = {}

    def incident(self, tilt_deg: float, azimuth_deg: float) -> np.ndarray:
        key = (round(tilt_deg, 6), round(azimuth_deg, 6))
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        tilt = math.radians(tilt_deg)
        cos_inc = self.cos_zen * math.cos(tilt) + self.sin_zen * math.sin(tilt) * np.cos(
            self.sun_az - math.radians(azimuth_deg)
        )
        sky_view = (1.0 + math.cos(tilt)) / 2.0
        series = self._up * (
            self.dni * np.maximum(0.0, cos_inc) + self.dhi * sky_view
        )
        self._cache[key] = series
        return series
