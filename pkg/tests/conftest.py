import pytest

from achromatic_planes.constructions import FanoFixture, load_fano_fixture
from achromatic_planes.gf import field_create
from achromatic_planes.plane import ProjectivePlane, plane_construct


@pytest.fixture
def fano() -> ProjectivePlane:
    return plane_construct(field_create(2))


@pytest.fixture
def fano_fixture() -> FanoFixture:
    return load_fano_fixture()
