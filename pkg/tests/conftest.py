import pytest

from sblinks.field_tower import CubicExtension, TowerField
from sblinks.severi_brauer import (
    coordinate_3point,
    make_surface,
    sixpoint_from_sqrt,
    unit_3point,
)


@pytest.fixture(scope="session")
def K2():
    return TowerField.rational(2)


@pytest.fixture(scope="session")
def t_vars(K2):
    return K2.t_var(0), K2.t_var(1)


@pytest.fixture(scope="session")
def L(K2, t_vars):
    t1, _ = t_vars
    return K2.extend("u", 3, t1)


@pytest.fixture(scope="session")
def ext(L):
    return CubicExtension(L, "u")


@pytest.fixture(scope="session")
def surface(ext, t_vars, L):
    _, t2 = t_vars
    return make_surface(ext, t2.lift_to(L))


@pytest.fixture(scope="session")
def coord_point(surface):
    return coordinate_3point(surface)


@pytest.fixture(scope="session")
def unit_point(surface):
    return unit_3point(surface)


@pytest.fixture(scope="session")
def six_point(surface, t_vars):
    _, t2 = t_vars
    return sixpoint_from_sqrt(surface, t2)


@pytest.fixture(scope="session")
def link_at_coords(surface, coord_point):
    from sblinks.birational import link_from_3point

    return link_from_3point(surface, coord_point)


@pytest.fixture(scope="session")
def link_at_unit(surface, unit_point):
    from sblinks.birational import link_from_3point

    return link_from_3point(surface, unit_point)


@pytest.fixture(scope="session")
def six_link(surface, six_point):
    from sblinks.birational import link_from_6point

    return link_from_6point(surface, six_point)
