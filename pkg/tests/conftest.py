import pytest

from steklov_lab import wp_volumes
from steklov_lab.surface_builder import build_mesh, surface_from_slots

PANTS_222 = (1, [], [[0, 0, 2.0], [0, 1, 2.0], [0, 2, 2.0]])
S11 = (1, [[[0, 0], [0, 1], 2.0, 0.0]], [[0, 2, 2.0]])
S04 = (2, [[[0, 0], [1, 0], 2.0, 0.3]], [[0, 1, 2.0], [0, 2, 2.0], [1, 1, 2.0], [1, 2, 2.0]])


@pytest.fixture(scope="session")
def table():
    return wp_volumes.default_table(12)


@pytest.fixture(scope="session")
def pants_surface():
    return surface_from_slots(*PANTS_222)


@pytest.fixture(scope="session")
def pants_mesh(pants_surface):
    return build_mesh(*pants_surface, 0.1)


@pytest.fixture(scope="session")
def s11_surface():
    return surface_from_slots(*S11)


@pytest.fixture(scope="session")
def s11_mesh(s11_surface):
    return build_mesh(*s11_surface, 0.1)
