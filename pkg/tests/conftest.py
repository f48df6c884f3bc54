import pytest

from gse import fixtures as fx
from gse.gbxml import parse_gbxml
from gse.materials import load_dataset
from gse.model import classify_model
from gse.weather import parse_epw


@pytest.fixture(scope="session")
def materials():
    return load_dataset()


@pytest.fixture(scope="session")
def single_room():
    return parse_gbxml(fx.single_room_gbxml())


@pytest.fixture(scope="session")
def two_room():
    return parse_gbxml(fx.two_room_gbxml())


@pytest.fixture(scope="session")
def four_room():
    return parse_gbxml(fx.four_room_gbxml())


@pytest.fixture(scope="session")
def large_model():
    return parse_gbxml(fx.large_model_gbxml())


@pytest.fixture(scope="session")
def single_room_classified(single_room):
    return classify_model(single_room)


@pytest.fixture(scope="session")
def two_room_classified(two_room):
    return classify_model(two_room)


@pytest.fixture(scope="session")
def four_room_classified(four_room):
    return classify_model(four_room)


@pytest.fixture(scope="session")
def large_model_classified(large_model):
    return classify_model(large_model)


@pytest.fixture(scope="session")
def weather_years():
    return {key: parse_epw(fx.synthetic_epw(key)) for key in fx.SITES}


@pytest.fixture(scope="session")
def dc_weather(weather_years):
    return weather_years["washington_dc"]


@pytest.fixture(scope="session")
def emmonak_weather(weather_years):
    return weather_years["emmonak_ak"]


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    outdir = tmp_path_factory.mktemp("fixtures")
    fx.write_fixtures(outdir)
    return outdir
