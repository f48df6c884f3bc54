import pytest

from gse import fixtures as fx
from gse.errors import MalformedEpw, WrongRecordCount
from gse.weather import (
    HOURS_PER_YEAR,
    SECONDS_PER_YEAR,
    TimeStepProtocol,
    consumed_rows,
    ground_temperatures,
    iterate,
    monthly_mean_dry_bulb,
    parse_epw,
    step_count,
)

from .helpers import constant_weather


def synthetic_epw_text(mutate=None):
    text = fx.synthetic_epw("washington_dc")
    return mutate(text) if mutate else text


def constant_epw_text(dry_bulb=20.0):
    lines = [
        "LOCATION,Nowhere,XX,USA,SYN,000000,40.0,-75.0,-5.0,10.0",
        *["HEADER,0"] * 7,
    ]
    from gse.weather import _MONTH_DAYS

    for month, days in enumerate(_MONTH_DAYS, start=1):
        for day in range(1, days + 1):
            for hour in range(1, 25):
                row = ["2017", str(month), str(day), str(hour), "0", "x",
                       f"{dry_bulb}", "18", "80", "101325", "9999", "9999",
                       "9999", "0", "0", "0", "0", "0", "0", "0", "180", "0.0"]
                lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def test_constant_file_identical_records():
    year = parse_epw(constant_epw_text())
    assert len(year.records) == HOURS_PER_YEAR
    assert {r.dry_bulb for r in year.records} == {20.0}
    assert {r.direct_normal for r in year.records} == {0.0}


def test_location_header_parsed():
    year = parse_epw(constant_epw_text())
    assert year.latitude == pytest.approx(40.0)
    assert year.longitude == pytest.approx(-75.0)
    assert year.tz_offset_hours == pytest.approx(-5.0)
    assert year.elevation == pytest.approx(10.0)


def test_wrong_record_count():
    text = constant_epw_text()
    lines = text.splitlines()
    with pytest.raises(WrongRecordCount):
        parse_epw("\n".join(lines[:-1]))


def test_leap_year_length_rejected():
    text = constant_epw_text()
    extra = text.splitlines()[-1]
    with pytest.raises(WrongRecordCount):
        parse_epw(text + (extra + "\n") * 24)


def test_sentinel_interpolated():
    text = constant_epw_text()
    lines = text.splitlines()
    # hour 2 of Jan 1: neighbors 10 and 12, sentinel in between -> 11
    def set_drybulb(line, value):
        parts = line.split(",")
        parts[6] = value
        return ",".join(parts)

    lines[8] = set_drybulb(lines[8], "10.0")
    lines[9] = set_drybulb(lines[9], "99.9")
    lines[10] = set_drybulb(lines[10], "12.0")
    year = parse_epw("\n".join(lines))
    assert year.records[1].dry_bulb == pytest.approx(11.0)


def test_leading_sentinel_copies_nearest():
    text = constant_epw_text()
    lines = text.splitlines()
    parts = lines[8].split(",")
    parts[6] = "99.9"
    lines[8] = ",".join(parts)
    year = parse_epw("\n".join(lines))
    assert year.records[0].dry_bulb == pytest.approx(20.0)


def test_bad_location_header():
    with pytest.raises(MalformedEpw):
        parse_epw("NOT A HEADER\n" + constant_epw_text().split("\n", 1)[1])


def test_out_of_range_dry_bulb():
    def mutate(text):
        lines = text.splitlines()
        parts = lines[8].split(",")
        parts[6] = "75.0"  # valid number, absurd temperature
        lines[8] = ",".join(parts)
        return "\n".join(lines)

    with pytest.raises(MalformedEpw):
        parse_epw(mutate(constant_epw_text()))


def test_calendar_order_enforced():
    def mutate(text):
        lines = text.splitlines()
        lines[8], lines[9] = lines[9], lines[8]
        return "\n".join(lines)

    with pytest.raises(MalformedEpw):
        parse_epw(mutate(constant_epw_text()))


def test_hourly_protocol_counts():
    year = constant_weather()
    steps = list(iterate(year, TimeStepProtocol.EVERY_HOUR_EVERY_DAY))
    assert len(steps) == 8760
    assert all(dt == 3600.0 for _, dt in steps)
    assert sum(dt for _, dt in steps) == SECONDS_PER_YEAR


def test_alt_days_protocol_counts():
    # oracle: 8760 * 3600 s = 31,536,000 s; half the steps at double weight
    year = constant_weather()
    steps = list(iterate(year, TimeStepProtocol.EVERY_HOUR_EVERY_OTHER_DAY))
    assert len(steps) == 4380
    assert all(dt == 7200.0 for _, dt in steps)
    assert sum(dt for _, dt in steps) == 31_536_000
    assert all(rec.day_of_year() % 2 == 1 for rec, _ in steps)


def test_step_count_halved():
    assert step_count(TimeStepProtocol.EVERY_HOUR_EVERY_DAY) == 8760
    assert step_count(TimeStepProtocol.EVERY_HOUR_EVERY_OTHER_DAY) == 4380


def test_consumed_rows_roundtrip():
    year = parse_epw(fx.synthetic_epw("houston_tx"))
    rows = consumed_rows(year)
    # rebuild a file carrying exactly those four fields and re-parse
    lines = [
        "LOCATION,Houston TX,TX,USA,SYN,000000,29.98,-95.36,-6.0,30.0",
        *["HEADER,0"] * 7,
    ]
    for rec, (tdb, dni, dhi, wind) in zip(year.records, rows):
        row = ["2017", str(rec.month), str(rec.day), str(rec.hour), "0", "x",
               repr(tdb), "0", "80", "101325", "9999", "9999", "9999", "0",
               repr(dni), repr(dhi), "0", "0", "0", "0", "180", repr(wind)]
        lines.append(",".join(row))
    again = parse_epw("\n".join(lines))
    assert consumed_rows(again) == rows


def test_monthly_means_and_ground_lag():
    year = parse_epw(fx.synthetic_epw("emmonak_ak"))
    means = monthly_mean_dry_bulb(year)
    ground = ground_temperatures(year)
    assert ground[0] == pytest.approx(means[11])  # January uses December
    for m in range(1, 12):
        assert ground[m] == pytest.approx(means[m - 1])


def test_fixture_sites_metadata():
    for key, site in fx.SITES.items():
        year = parse_epw(fx.synthetic_epw(key))
        assert year.latitude == pytest.approx(site.latitude)
        assert year.tz_offset_hours == pytest.approx(site.tz_offset)
        assert len(year.records) == HOURS_PER_YEAR
