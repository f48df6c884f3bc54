"""EPW/TMY weather year parsing and time-step protocol iteration.

An EPW file carries 8 header lines (the LOCATION line holds site latitude,
longitude, time zone, and elevation) followed by 8760 comma-separated hourly
rows. Only four fields are consumed: dry-bulb temperature, direct normal
radiation, diffuse horizontal radiation, and wind speed. Missing-value
sentinels are repaired by linear interpolation so the integrator never sees
a jump to 9999.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .errors import MalformedEpw, WrongRecordCount

HOURS_PER_YEAR = 8760
SECONDS_PER_YEAR = HOURS_PER_YEAR * 3600

_MONTH_DAYS = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)
_MONTH_OFFSET = tuple(sum(_MONTH_DAYS[:i]) for i in range(12))

# 0-based column indices in an EPW data row.
_COL_DRY_BULB = 6
_COL_DNI = 14
_COL_DHI = 15
_COL_WIND = 21

# (sentinel value, comparison is >=) per consumed field.
_SENTINELS = {
    _COL_DRY_BULB: 99.9,
    _COL_DNI: 9999.0,
    _COL_DHI: 9999.0,
    _COL_WIND: 999.0,
}


@dataclass(frozen=True)
class WeatherRecord:
    month: int
    day: int
    hour: int  # 1..24, row covers the hour ending at this value
    dry_bulb: float  # degC
    direct_normal: float  # Wh/m2
    diffuse_horizontal: float  # Wh/m2
    wind_speed: float  # m/s

    def day_of_year(self) -> int:
        return _MONTH_OFFSET[self.month - 1] + self.day


@dataclass(frozen=True)
class WeatherYear:
    latitude: float
    longitude: float
    tz_offset_hours: float
    elevation: float
    records: tuple[WeatherRecord, ...]
    location_name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))


class TimeStepProtocol(enum.Enum):
    EVERY_HOUR_EVERY_DAY = "hourly"
    EVERY_HOUR_EVERY_OTHER_DAY = "alt-days"


def parse_epw(document) -> WeatherYear:
    """Parse EPW bytes/text/stream into a validated WeatherYear."""
    if isinstance(document, (bytes, bytearray)):
        text = bytes(document).decode("utf-8", errors="replace")
    elif isinstance(document, str):
        text = document
    elif hasattr(document, "read"):
        raw = document.read()
        text = raw.decode("utf-8", errors="replace") if isinstance(raw, bytes) else raw
    else:
        raise TypeError("document must be bytes, str, or a readable stream")

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 9:
        raise MalformedEpw("file has no data section")
    header = lines[0].split(",")
    if header[0].strip().upper() != "LOCATION" or len(header) < 10:
        raise MalformedEpw("first line is not a LOCATION header")
    try:
        latitude = float(header[6])
        longitude = float(header[7])
        tz_offset = float(header[8])
        elevation = float(header[9])
    except ValueError as exc:
        raise MalformedEpw(f"bad LOCATION numeric field: {exc}") from exc
    location_name = ",".join(p.strip() for p in header[1:4] if p.strip())

    rows = lines[8:]
    if len(rows) != HOURS_PER_YEAR:
        raise WrongRecordCount(
            f"expected {HOURS_PER_YEAR} data rows, found {len(rows)}"
        )

    calendar: list[tuple[int, int, int]] = []
    columns: dict[int, list[float]] = {c: [] for c in _SENTINELS}
    for i, row in enumerate(rows):
        parts = row.split(",")
        if len(parts) <= _COL_WIND:
            raise MalformedEpw(f"data row {i + 1} has only {len(parts)} fields")
        try:
            month, day, hour = int(parts[1]), int(parts[2]), int(parts[3])
            for col in columns:
                columns[col].append(float(parts[col]))
        except ValueError as exc:
            raise MalformedEpw(f"data row {i + 1}: {exc}") from exc
        calendar.append((month, day, hour))

    _check_calendar(calendar)
    for col, sentinel in _SENTINELS.items():
        columns[col] = _repair(columns[col], sentinel, col)

    records = []
    for i, (month, day, hour) in enumerate(calendar):
        rec = WeatherRecord(
            month=month,
            day=day,
            hour=hour,
            dry_bulb=columns[_COL_DRY_BULB][i],
            direct_normal=max(0.0, columns[_COL_DNI][i]),
            diffuse_horizontal=max(0.0, columns[_COL_DHI][i]),
            wind_speed=max(0.0, columns[_COL_WIND][i]),
        )
        if not -90.0 <= rec.dry_bulb <= 60.0:
            raise MalformedEpw(
                f"row {i + 1}: dry bulb {rec.dry_bulb} degC outside [-90, 60]"
            )
        records.append(rec)

    return WeatherYear(
        latitude=latitude,
        longitude=longitude,
        tz_offset_hours=tz_offset,
        elevation=elevation,
        records=tuple(records),
        location_name=location_name,
    )


def parse_epw_file(path) -> WeatherYear:
    with open(path, "rb") as fh:
        return parse_epw(fh)


def _check_calendar(calendar) -> None:
    i = 0
    for month, days in enumerate(_MONTH_DAYS, start=1):
        for day in range(1, days + 1):
            for hour in range(1, 25):
                got = calendar[i]
                if got != (month, day, hour):
                    raise MalformedEpw(
                        f"row {i + 1}: expected {month:02d}-{day:02d} h{hour}, "
                        f"found {got[0]:02d}-{got[1]:02d} h{got[2]}"
                    )
                i += 1


def _repair(values: list[float], sentinel: float, col: int) -> list[float]:
    """Replace sentinel entries by linear interpolation between valid ones."""
    valid = [i for i, v in enumerate(values) if v < sentinel]
    if not valid:
        raise MalformedEpw(f"column {col} has no valid values")
    if len(valid) == len(values):
        return values
    out = list(values)
    first, last = valid[0], valid[-1]
    for i in range(first):
        out[i] = out[first]
    for i in range(last + 1, len(out)):
        out[i] = out[last]
    for a, b in zip(valid, valid[1:]):
        gap = b - a
        if gap > 1:
            for i in range(a + 1, b):
                frac = (i - a) / gap
                out[i] = out[a] * (1.0 - frac) + out[b] * frac
    return out


def iterate_indexed(
    year: WeatherYear, protocol: TimeStepProtocol
) -> Iterator[tuple[int, WeatherRecord, float]]:
    """Yield (record index, record, step seconds) tiling exactly one year.

    The every-other-day protocol keeps odd calendar days at a doubled
    2-hour weight. Odd days of a 365-day year would give 4392 samples, so
    the final odd day (365) contributes only its first 12 hours: exactly
    4380 steps, half the hourly count, summing to 31,536,000 s.
    """
    if protocol is TimeStepProtocol.EVERY_HOUR_EVERY_DAY:
        for i, rec in enumerate(year.records):
            yield i, rec, 3600.0
        return
    emitted = 0
    for i, rec in enumerate(year.records):
        if rec.day_of_year() % 2 == 1:
            yield i, rec, 7200.0
            emitted += 1
            if emitted == HOURS_PER_YEAR // 2:
                return


def iterate(
    year: WeatherYear, protocol: TimeStepProtocol
) -> Iterator[tuple[WeatherRecord, float]]:
    """Yield (record, step seconds); see iterate_indexed for the weighting."""
    for _, rec, dt in iterate_indexed(year, protocol):
        yield rec, dt


def step_count(protocol: TimeStepProtocol) -> int:
    if protocol is TimeStepProtocol.EVERY_HOUR_EVERY_DAY:
        return HOURS_PER_YEAR
    return HOURS_PER_YEAR // 2


def monthly_mean_dry_bulb(year: WeatherYear) -> list[float]:
    sums = [0.0] * 12
    counts = [0] * 12
    for rec in year.records:
        sums[rec.month - 1] += rec.dry_bulb
        counts[rec.month - 1] += 1
    return [s / c for s, c in zip(sums, counts)]


def ground_temperatures(year: WeatherYear) -> list[float]:
    """Monthly ground temperature proxy: dry-bulb mean lagged one month."""
    means = monthly_mean_dry_bulb(year)
    return [means[(m - 1) % 12] for m in range(12)]


def consumed_rows(year: WeatherYear) -> list[tuple[float, float, float, float]]:
    """Diagnostic projection of the four consumed fields, row by row."""
    return [
        (r.dry_bulb, r.direct_normal, r.diffuse_horizontal, r.wind_speed)
        for r in year.records
    ]
