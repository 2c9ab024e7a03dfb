import numpy as np
import pytest

from aperture_dsm import ImagingGrid, fresnel_2diel, synthesize


@pytest.fixture(scope="session")
def preset():
    return fresnel_2diel()


@pytest.fixture(scope="session")
def point_data(preset):
    config, objects = preset
    return synthesize(config, objects)


@pytest.fixture(scope="session")
def coarse_grid():
    return ImagingGrid(nx=41, ny=41)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
