import pytest

from melsplit import (
    build_equilateral,
    build_polygon,
    build_rhomboid,
    build_rp3bp,
    solve_collinear_equal,
    solve_collinear_equidistant,
)


@pytest.fixture(scope="session")
def rp3bp_03():
    return build_rp3bp(0.3)


@pytest.fixture(scope="session")
def rp3bp_half():
    return build_rp3bp(0.5)


@pytest.fixture(scope="session")
def equilateral_thirds():
    return build_equilateral(1.0 / 3.0, 1.0 / 3.0)


@pytest.fixture(scope="session")
def square_rhomboid():
    return build_rhomboid(1.0, 1.0)


@pytest.fixture(scope="session")
def collinear8():
    return solve_collinear_equal(7)


@pytest.fixture(scope="session")
def collinear11():
    return solve_collinear_equidistant(10)


@pytest.fixture(scope="session")
def hexagon():
    return build_polygon(7)
