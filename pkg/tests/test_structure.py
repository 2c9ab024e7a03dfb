import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aperture_dsm import (
    ImagingGrid,
    ObjectSet,
    SeriesTruncation,
    disturb_e1,
    disturb_e2,
    f1_f2_profile,
    fresnel_2diel,
    jacobi_anger_discrete,
    lambda_gamma,
    phi_psi,
    structure_vs_direct,
    synthesize,
)
from aperture_dsm.errors import DomainError, StructureHypothesisError, TruncationError
from aperture_dsm.forward import contrast
from aperture_dsm.specfun import bessel_j, green2d
from aperture_dsm.structure import required_order

from oracles import direct_arc_sum

K = 2 * math.pi * 4e9 * math.sqrt(8.854e-12 * 4e-7 * math.pi)


def _direct(angles, x, phi):
    return np.sum(np.exp(1j * x * np.cos(angles - phi)))


# ---------------------------------------------------------------- truncation


def test_truncation_invariant():
    assert required_order(12.3) == 33
    t = SeriesTruncation.for_argument(12.3)
    assert t.max_order == 33 and 0 <= t.tail_bound < 1e-10
    with pytest.raises(TruncationError):
        SeriesTruncation(10).check(12.3)
    with pytest.raises(DomainError):
        SeriesTruncation(0)
    g = ImagingGrid()
    assert SeriesTruncation.for_grid(K, g).max_order == math.ceil(K * g.diagonal) + 40


# ---------------------------------------------------------------- Jacobi-Anger


def test_ja_zero_argument():
    ang = np.radians(np.arange(60, 301, 5))
    assert jacobi_anger_discrete(ang, 0.0, 0.3) == pytest.approx(ang.size)


def test_ja_full_ring():
    ang = 2 * np.pi * np.arange(72) / 72
    v = jacobi_anger_discrete(ang, 5.0, 0.0)
    assert abs(v - 72 * bessel_j(0, 5.0)) <= 1e-6 * abs(72 * bessel_j(0, 5.0))
    d = complex(direct_arc_sum(ang, 5.0, 0.0))
    assert abs(v - d) < 1e-10


def test_ja_arc_example():
    ang = np.radians(np.arange(60, 301, 5))
    v = jacobi_anger_discrete(ang, 8.0, 0.0, SeriesTruncation(60))
    d = complex(direct_arc_sum(ang, 8.0, 0.0))
    assert abs(v - d) / abs(d) <= 0.02


@settings(max_examples=30, deadline=None)
@given(x=st.floats(0.0, 12.0), phi=st.floats(-math.pi, math.pi))
def test_ja_full_ring_any_phi(x, phi):
    ang = 2 * np.pi * np.arange(72) / 72
    assert abs(jacobi_anger_discrete(ang, x, phi) - _direct(ang, x, phi)) < 1e-9


def test_ja_arc_second_order():
    errs = []
    for n in (36, 72, 144, 288):
        step = 2 * np.pi / n
        # arc of 240 degrees centered at pi, sampled at cell midpoints
        ang = np.pi - 2 * np.pi / 3 + step * (np.arange(2 * n // 3) + 0.5)
        errs.append(abs(jacobi_anger_discrete(ang, 8.0, 0.4) - _direct(ang, 8.0, 0.4)) / ang.size)
    ratios = [errs[i] / errs[i + 1] for i in range(3)]
    assert all(3.5 < r < 4.5 for r in ratios)


def test_ja_errors():
    with pytest.raises(DomainError):
        jacobi_anger_discrete([], 1.0, 0.0)
    with pytest.raises(DomainError):
        jacobi_anger_discrete([0.0, 0.1, 0.3], 1.0, 0.0)


# ---------------------------------------------------------------- E1, E2


@settings(max_examples=30, deadline=None)
@given(x=st.floats(-0.1, 0.1), y=st.floats(-0.1, 0.1), m=st.integers(1, 36), a=st.floats(5, 175))
def test_e1_vanishes_at_coincidence(x, y, m, a):
    config, _ = fresnel_2diel(a)
    assert disturb_e1([x, y], [x, y], m, config) == 0


def test_e1_near_pi_is_jacobi_anger_tail():
    config, _ = fresnel_2diel(math.degrees(math.pi - 1e-12))
    k = config.wavenumber
    r, rp = np.array([0.02, -0.01]), np.array([-0.045, 0.0])
    for m in (1, 5, 20):
        d = rp - r
        phi = math.atan2(d[1], d[0])
        x = k * np.hypot(*d)
        want = np.exp(1j * x * math.cos(config.tx_angles[m - 1] - phi)) - bessel_j(0, x)
        assert abs(disturb_e1(r, rp, m, config) - want) < 1e-8


def test_e1_small_alpha_is_small():
    config, _ = fresnel_2diel(1e-4)
    r, rp = np.array([0.02, -0.01]), np.array([-0.045, 0.0])
    assert abs(disturb_e1(r, rp, 1, config)) < 1e-3


def test_e2_examples():
    config, _ = fresnel_2diel()
    assert disturb_e2([0.0, 0.0], 1, config) == 0
    half, _ = fresnel_2diel(90.0)
    r = np.array([5 / half.wavenumber, 0.0])
    v = disturb_e2(r, 1, half)
    assert np.isfinite(v)
    # psi = 0 and theta_1 = 0: only odd orders survive, each i^q J_q sinc(q pi/2)
    q = np.arange(1, 41)
    odd = 2 * np.sum(np.where(q % 2 == 1, (1j**q) * bessel_j(q, 5.0) * np.sin(q * np.pi / 2) / (q * np.pi / 2), 0))
    assert v == pytest.approx(odd, abs=1e-14)


def test_e2_truncation_stability():
    config, _ = fresnel_2diel()
    r = np.array([0.07, -0.06])
    x = config.wavenumber * np.hypot(*r)
    t = SeriesTruncation.for_argument(x)
    a = disturb_e2(r, 3, config, t)
    b = disturb_e2(r, 3, config, SeriesTruncation(t.max_order + 20))
    assert abs(a - b) <= max(t.tail_bound, 1e-10 * abs(b))


def test_series_truncation_stability_grid(preset):
    config, objects = preset
    pts = ImagingGrid(nx=9, ny=9).points()
    base = SeriesTruncation.for_grid(config.wavenumber, ImagingGrid())
    more = SeriesTruncation(base.max_order + 20)
    for a, b in zip(phi_psi(pts, 1, 0.5, config, objects, base), phi_psi(pts, 1, 0.5, config, objects, more)):
        assert np.max(np.abs(a - b)) <= 1e-10 * np.max(np.abs(b))
    for a, b in zip(lambda_gamma(pts, 0.5, config, objects, base), lambda_gamma(pts, 0.5, config, objects, more)):
        assert np.max(np.abs(a - b)) <= 1e-10 * np.max(np.abs(b))


# ---------------------------------------------------------------- Phi, Psi, Lambda, Gamma


def test_phi_psi_examples(preset):
    config, objects = preset
    r = np.array([0.01, 0.02])
    _, psi = phi_psi(r, 1, 0.0, config, objects)
    assert psi == 0
    _, psi = phi_psi([0.0, 0.0], 1, 1.0, config, ObjectSet())
    assert abs(psi) == pytest.approx(math.sqrt(2) * 23)


def test_phi_at_scatterer_small_alpha():
    config, objects = fresnel_2diel(1e-3)
    s = objects.scatterers[0]
    phi, _ = phi_psi(np.asarray(s.center), 1, 0.0, config, ObjectSet((s,)))
    k, Q = config.wavenumber, config.rx_radius
    n_meas = int(synthesize(config, [s]).mask[:, 0].sum())
    expect = (1j * np.exp(1j * k * Q) * config.field_gain * k**2 * n_meas / (2 * math.sqrt(k * Q * math.pi))
              * contrast(s, config) * s.area * green2d(k, config.tx_positions[0], s.center))
    assert phi == pytest.approx(expect, rel=1e-12)


def test_lambda_gamma_examples(preset):
    config, objects = preset
    s = objects.scatterers[0]
    lam, gam = lambda_gamma(np.asarray(s.center), 0.0, config, ObjectSet((s,)))
    pref = config.field_gain * 49 / (8 * math.pi * math.sqrt(config.tx_radius * config.rx_radius))
    assert lam == pytest.approx(pref * contrast(s, config) * s.area, rel=1e-12)
    assert gam == 0


def test_gamma_even_orders_drop_at_right_angle():
    config, _ = fresnel_2diel(90.0)
    r = np.array([0.03, 0.02])
    x = config.wavenumber * np.hypot(*r)
    _, gam = lambda_gamma(r, 1.0, config, ObjectSet())
    q = np.arange(1, 60, 2)
    ker = bessel_j(0, x) ** 2 + 2 * np.sum((-1.0) ** q * bessel_j(q, x) ** 2 * np.sin(q * np.pi / 2) / (q * np.pi / 2))
    n_conv = 72 - int(synthesize(config, []).mask[:, 0].sum())
    expect = -1j * np.exp(-1j * config.wavenumber * 1.48) * n_conv / config.wavenumber * ker
    assert gam == pytest.approx(expect, rel=1e-12)


def test_lambda_real(preset):
    config, objects = preset
    lam, _ = lambda_gamma(ImagingGrid(nx=11, ny=11).points(), 0.0, config, objects)
    assert np.isrealobj(lam) or np.max(np.abs(np.imag(lam))) <= 1e-12 * np.max(np.abs(lam))


# ---------------------------------------------------------------- direct vs series


def test_structure_single_example(point_data):
    ev = structure_vs_direct(point_data, ImagingGrid(nx=51, ny=51))
    assert ev.correlation >= 0.99
    assert ev.direct.shape == ev.series.shape == (51, 51)
    assert "correlation" in ev.report()


def test_structure_empty_objects_constant_only():
    config, _ = fresnel_2diel()
    mm = synthesize(config, ObjectSet(), 1.0)
    ev = structure_vs_direct(mm, ImagingGrid(nx=41, ny=41))
    assert ev.correlation >= 0.99


@pytest.mark.parametrize("mode", ["single", "multi"])
def test_degenerate_flatness(mode):
    config, objects = fresnel_2diel(180.0)
    one = ObjectSet(objects.scatterers[:1])
    pts = ImagingGrid(nx=41, ny=41).points()
    if mode == "single":
        v = np.abs(phi_psi(pts, 1, 0.0, config, one)[0])
    else:
        v = np.abs(lambda_gamma(pts, 0.0, config, one)[0])
    assert (v.max() - v.min()) / v.max() <= 1e-6


def test_structure_requires_synthetic_point_data(preset):
    config, objects = preset
    disk = synthesize(config, objects, model="disk")
    with pytest.raises(StructureHypothesisError):
        structure_vs_direct(disk, ImagingGrid(nx=5, ny=5))
    with pytest.raises(TruncationError):
        structure_vs_direct(synthesize(config, objects), ImagingGrid(nx=5, ny=5), trunc=10)


def test_structure_multi_refuses_aliasing(preset):
    config, objects = preset
    few = config.replace(tx_count=8)
    with pytest.raises(StructureHypothesisError):
        structure_vs_direct(synthesize(few, objects), ImagingGrid(nx=5, ny=5), mode="multi")


# ---------------------------------------------------------------- f1, f2


def test_f1_f2_at_origin():
    f1, f2 = f1_f2_profile([0.0], K)
    assert abs(f1[0] - 1) <= 1e-12 and abs(f2[0] - 1) <= 1e-12


def test_f1_f2_band():
    x = np.linspace(0.03, 0.1, 200)
    f1, f2 = f1_f2_profile(np.concatenate([-x, x]), K)
    assert f2.max() < f1.max()


def test_f1_f2_symmetric():
    x = np.linspace(0.0, 0.1, 50)
    a = f1_f2_profile(x, K)
    b = f1_f2_profile(-x, K)
    np.testing.assert_array_equal(a[0], b[0])
    np.testing.assert_array_equal(a[1], b[1])
