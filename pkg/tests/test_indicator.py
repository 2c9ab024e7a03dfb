import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aperture_dsm import (
    ImagingGrid,
    IndicatorMap,
    MaskedMeasurementMatrix,
    f_dsm,
    f_msm,
    fresnel_2diel,
    image,
    inner_l2,
    local_maxima,
    synthesize,
)
from aperture_dsm import indicator as ind
from aperture_dsm.errors import AntennaIndexError, DegenerateDataError, DomainError


def _random_matrix(rng, config, C=None):
    shape = (config.rx_count, config.tx_count)
    e = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    mask = rng.random(shape) < 0.7
    if C is None:
        C = complex(*rng.normal(size=2))
    return MaskedMeasurementMatrix(e, mask, C, config, None, "external")


def test_grid_cells():
    g = ImagingGrid()
    assert g.x[0] == pytest.approx(-0.1 + g.dx / 2)
    assert g.x[50] == pytest.approx(0.0, abs=1e-15)
    assert g.points().shape == (101, 101, 2)
    with pytest.raises(DomainError):
        ImagingGrid(0.1, -0.1)


def test_test_vector_norm(preset):
    config, _ = preset
    q = ind.test_vector_rx(config, np.zeros(2))
    assert q.shape == (72,)
    # far-field magnitude 1 / (4 sqrt(kQ pi / 2)) per receiver
    k, Q = config.wavenumber, config.rx_radius
    mag = 1 / (2 * math.sqrt(2 * math.pi * k * Q))
    assert mag == pytest.approx(0.0250, abs=5e-4)
    assert np.linalg.norm(q) == pytest.approx(math.sqrt(72) * mag, rel=0.03)
    assert ind.test_vector_tx(config, np.zeros((3, 2))).shape == (3, 36)


def test_inner_l2():
    a = np.array([1, 1j])
    assert inner_l2(a, a) == 2
    assert inner_l2(np.array([1j]), np.array([1.0])) == 1j
    with pytest.raises(DomainError):
        inner_l2(np.ones(3), np.ones(4))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_cauchy_schwarz(seed):
    rng = np.random.default_rng(seed)
    config, _ = fresnel_2diel()
    mm = _random_matrix(rng, config)
    r = rng.uniform(-0.1, 0.1, size=(20, 2))
    assert np.all(f_dsm(mm, int(rng.integers(1, 37)), r) <= 1 + 1e-12)
    assert np.all(f_msm(mm, r) <= 1 + 1e-12)


@settings(max_examples=25, deadline=None)
@given(scale=st.floats(1e-3, 1e3), phase=st.floats(0, 2 * math.pi))
def test_phase_and_scale_invariance(scale, phase):
    config, objects = fresnel_2diel()
    base = synthesize(config, objects, 0.01 + 0.02j)
    z = scale * np.exp(1j * phase)
    moved = MaskedMeasurementMatrix(base.entries * z, base.mask, base.constant * z, config)
    r = np.array([[0.01, 0.02], [-0.05, 0.0], [0.07, -0.03]])
    np.testing.assert_allclose(f_dsm(moved, 3, r), f_dsm(base, 3, r), rtol=1e-10)
    np.testing.assert_allclose(f_msm(moved, r), f_msm(base, r), rtol=1e-10)


def test_classical_limit(preset, rng):
    # with every entry measured the masked indicator is the classical one
    config, objects = preset
    raw = synthesize(config, objects)
    full = MaskedMeasurementMatrix(raw.entries, np.ones(raw.shape, bool), 0j, config)
    r = rng.uniform(-0.1, 0.1, size=(10, 2))
    np.testing.assert_allclose(
        f_dsm(full, 1, r), ind.classical_indicator(full.column(1), config, r), rtol=1e-13
    )


def test_dsm_peak_at_single_scatterer(preset):
    config, objects = preset
    mm = synthesize(config, objects.scatterers[:1])
    imap = image(mm, ImagingGrid(nx=81, ny=81))
    x, y = imap.argmax_point()
    assert math.hypot(x + 0.045, y) < 0.02


def test_degenerate_columns(preset):
    config, _ = preset
    zero = MaskedMeasurementMatrix(np.zeros((72, 36)), np.ones((72, 36), bool), 0j, config)
    with pytest.raises(DegenerateDataError):
        f_dsm(zero, 1, [0.0, 0.0])
    with pytest.raises(DegenerateDataError):
        f_msm(zero, [0.0, 0.0])
    with pytest.raises(DegenerateDataError):
        image(zero)


def test_alpha_pi_requires_degenerate_study():
    config, objects = fresnel_2diel(180.0)
    mm = synthesize(config, objects)
    assert 0 <= f_dsm(mm, 1, [0.01, 0.0]) <= 1
    strict = config.replace(degenerate_study=False, bistatic_angle=math.radians(179.0))
    mm2 = synthesize(strict, objects)
    f_dsm(mm2, 1, [0.01, 0.0])


def test_source_index_checked(point_data):
    with pytest.raises(AntennaIndexError):
        f_dsm(point_data, 0, [0.0, 0.0])
    with pytest.raises(AntennaIndexError):
        image(point_data, ImagingGrid(nx=5, ny=5), source=37)
    with pytest.raises(DomainError):
        image(point_data, ImagingGrid(nx=5, ny=5), mode="both")


def test_image_normalization(point_data, coarse_grid):
    imap = image(point_data, coarse_grid)
    assert imap.values.shape == (41, 41)
    assert imap.values.max() == 1.0
    raw = image(point_data, coarse_grid, normalize=False)
    np.testing.assert_allclose(imap.values, raw.values / raw.values.max())
    assert not raw.normalized and imap.normalized


def test_thread_count_invariant(point_data, coarse_grid, monkeypatch):
    a = image(point_data, coarse_grid, mode="multi", threads=1).values
    b = image(point_data, coarse_grid, mode="multi", threads=4).values
    np.testing.assert_array_equal(a, b)
    monkeypatch.setenv(ind.THREADS_ENV, "3")
    assert ind.thread_count() == 3
    assert ind.thread_count(0) == 1


def test_local_maxima_ordering():
    g = ImagingGrid(nx=21, ny=21)
    v = np.zeros((21, 21))
    v[5, 5], v[15, 12], v[6, 5] = 1.0, 0.8, 0.9
    imap = IndicatorMap(g, v, "single")
    peaks = local_maxima(imap)
    assert [p[2] for p in peaks] == sorted((p[2] for p in peaks), reverse=True)
    assert peaks[0][:2] == (g.x[5], g.y[5])
    sep = local_maxima(imap, count=2, min_separation=0.02)
    assert [p[2] for p in sep] == [1.0, 0.8]
