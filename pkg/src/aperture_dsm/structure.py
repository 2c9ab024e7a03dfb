"""Bessel-series representation of the indicators.

Under the far-field approximation of the test vectors, each inner product
reduces to Jacobi-Anger sums over an arc of receivers, which become
truncated series in J_p weighted by unnormalized sincs of the arc widths.
This module evaluates those series and compares them, cell by cell,
against the direct inner products computed from the data.

Angle conventions used by the disturbance series:

* ``disturb_e1`` measures phi as the polar angle of ``r_prime - r``.
  With the measured arc centered opposite the transmitter this is the
  convention under which the series carries no extra (-1)^p factor.
* ``disturb_e2`` measures psi as the polar angle of ``r``.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError, StructureHypothesisError, TruncationError
from .forward import contrast
from .geometry import _check_index, index_sets
from .indicator import ImagingGrid, _source_products, test_vector_rx, test_vector_tx
from .specfun import bessel_j, green2d, sinc_u

__all__ = [
    "SeriesTruncation",
    "StructureEvaluation",
    "jacobi_anger_discrete",
    "disturb_e1",
    "disturb_e2",
    "phi_psi",
    "lambda_gamma",
    "structure_vs_direct",
    "f1_f2_profile",
    "required_order",
]

ORDER_MARGIN = 20


def required_order(x_max):
    return math.ceil(x_max) + ORDER_MARGIN


@dataclass(frozen=True)
class SeriesTruncation:
    """Highest Bessel order kept; ``tail_bound`` estimates the dropped tail."""

    max_order: int
    tail_bound: float = 0.0

    def __post_init__(self):
        if int(self.max_order) != self.max_order or self.max_order < 1:
            raise DomainError("max_order must be an integer >= 1")
        object.__setattr__(self, "max_order", int(self.max_order))

    @classmethod
    def for_argument(cls, x_max, extra=0):
        order = required_order(x_max) + extra
        return cls(order, _tail(order, x_max))

    @classmethod
    def for_grid(cls, k, grid):
        """Default order ceil(k * diag) + 40."""
        x_max = k * grid.diagonal
        order = math.ceil(x_max) + 40
        return cls(order, _tail(order, x_max))

    def check(self, x_max):
        need = required_order(x_max)
        if self.max_order < need:
            raise TruncationError(
                f"max_order {self.max_order} below {need} needed for argument {x_max:.4g}"
            )
        return self

    def orders(self):
        return np.arange(1, self.max_order + 1)


def _tail(order, x_max):
    return 2.0 * abs(float(bessel_j(order + 1, min(x_max, 9999.0))))


def _as_trunc(trunc, x_max):
    if trunc is None:
        return SeriesTruncation.for_argument(x_max)
    if not isinstance(trunc, SeriesTruncation):
        trunc = SeriesTruncation(int(trunc))
    return trunc.check(x_max)


def _polar(v):
    v = np.asarray(v, dtype=float)
    return np.hypot(v[..., 0], v[..., 1]), np.arctan2(v[..., 1], v[..., 0])


def _ip(orders):
    # i^p without floating round-off
    return np.array([1, 1j, -1, -1j])[orders % 4]


def _cos_series(x, angle, weights, trunc):
    """2 sum_p i^p J_p(x) cos(p angle) w_p, broadcast over x/angle."""
    p = trunc.orders()
    x = np.asarray(x, dtype=float)
    angle = np.asarray(angle, dtype=float)
    jp = bessel_j(p, x[..., None])
    terms = _ip(p) * jp * np.cos(p * angle[..., None]) * weights
    return 2 * np.sum(terms, axis=-1)


def _square_series(x, signs, weights, trunc):
    """J_0(x)^2 + 2 sum_p s_p J_p(x)^2 w_p."""
    p = trunc.orders()
    x = np.asarray(x, dtype=float)
    jp = bessel_j(p, x[..., None])
    return bessel_j(0, x) ** 2 + 2 * np.sum(signs * jp**2 * weights, axis=-1)


def jacobi_anger_discrete(angles, x, phi, trunc=None):
    """Series value of sum_n exp(i x cos(theta_n - phi)) for a uniform arc.

    Each sample stands for a cell of width d = spacing, so the arc covered
    is ``N d`` centered on the middle sample:
    N (J_0(x) + 2 sum_p i^p J_p(x) cos(p (c - phi)) sinc(p N d / 2)).
    For a full ring this is exact up to J_N(x) aliasing terms.
    """
    angles = np.asarray(angles, dtype=float).ravel()
    n = angles.size
    if n == 0:
        raise DomainError("empty angle set")
    if n > 1:
        steps = np.diff(angles)
        spacing = steps.mean()
        if not np.allclose(steps, spacing, rtol=1e-9, atol=1e-12):
            raise DomainError("angles must be uniformly spaced")
    else:
        spacing = 0.0
    trunc = _as_trunc(trunc, abs(x))
    centre = 0.5 * (angles[0] + angles[-1])
    width = n * spacing
    p = trunc.orders()
    tail = _cos_series(x, centre - phi, sinc_u(p * width / 2), trunc)
    return n * (bessel_j(0, x) + tail)


def disturb_e1(r, r_prime, m, config, trunc=None):
    """2 sum_p i^p J_p(k|r-r'|) cos(p(theta_m - phi)) sinc(p(pi - alpha)).

    phi is the polar angle of ``r_prime - r``; vanishes at r = r'.
    """
    m = _check_index(m, config.tx_count, "transmitter")
    k = config.wavenumber
    d = np.asarray(r_prime, dtype=float) - np.asarray(r, dtype=float)
    dist, phi = _polar(d)
    x = k * dist
    trunc = _as_trunc(trunc, float(np.max(x)))
    p = trunc.orders()
    w = sinc_u(p * (math.pi - config.bistatic_angle))
    out = _cos_series(x, config.tx_angles[m - 1] - phi, w, trunc)
    return out.item() if np.ndim(out) == 0 else out


def disturb_e2(r, m, config, trunc=None):
    """2 sum_q i^q J_q(k|r|) cos(q(theta_m - psi)) sinc(q alpha)."""
    m = _check_index(m, config.tx_count, "transmitter")
    k = config.wavenumber
    dist, psi = _polar(r)
    x = k * dist
    trunc = _as_trunc(trunc, float(np.max(x)))
    q = trunc.orders()
    w = sinc_u(q * config.bistatic_angle)
    out = _cos_series(x, config.tx_angles[m - 1] - psi, w, trunc)
    return out.item() if np.ndim(out) == 0 else out


def _counts(config):
    s = index_sets(config, 1)
    return len(s.measured), len(s.converted)


def phi_psi(r, m, C, config, objects, trunc=None):
    """Object term and constant term of the single-source series.

    Phi = i e^{ikQ} g k^2 #I / (2 sqrt(kQ pi)) sum_s O_s area_s G(p_m, r_s)
    (J_0(k|r - r_s|) + E1), where g is ``config.field_gain``;
    Psi = -C (1+i) #J (J_0(k|r|) + E2). Their sum is proportional to the
    far-field inner product <S(C,m), Q(r)>.
    """
    m = _check_index(m, config.tx_count, "transmitter")
    k = config.wavenumber
    Q = config.rx_radius
    n_meas, n_conv = _counts(config)
    r = np.asarray(r, dtype=float)
    pm = config.tx_positions[m - 1]
    obj_sum = np.zeros(r.shape[:-1], dtype=complex)
    for s in objects:
        c = np.asarray(s.center)
        x = k * _polar(r - c)[0]
        e1 = disturb_e1(r, c, m, config, trunc)
        weight = contrast(s, config) * s.area * green2d(k, pm, c)
        obj_sum = obj_sum + weight * (bessel_j(0, x) + e1)
    pref = 1j * np.exp(1j * k * Q) * config.field_gain * k**2 * n_meas
    phi = pref / (2 * math.sqrt(k * Q * math.pi)) * obj_sum
    x0 = k * _polar(r)[0]
    psi = -complex(C) * (1 + 1j) * n_conv * (bessel_j(0, x0) + disturb_e2(r, m, config, trunc))
    return _squeeze(phi), _squeeze(psi)


def _squeeze(a):
    a = np.asarray(a)
    return a.item() if a.ndim == 0 else a


def lambda_gamma(r, C, config, objects, trunc=None):
    """Object term and constant term of the multi-source series.

    Lambda = g #I / (8 pi sqrt(PQ)) sum_s O_s area_s
             (J_0(x_s)^2 + 2 sum_p J_p(x_s)^2 sinc(p(pi - alpha))),
    Gamma = -i e^{-ik(P+Q)} C #J / k
            (J_0(k|r|)^2 + 2 sum_q (-1)^q J_q(k|r|)^2 sinc(q alpha)).

    Summing the single-source series over a full transmitter ring turns the
    cos(p(theta_m - phi)) factors into i^p J_p, and with phi taken toward
    the scatterer the object kernel picks up i^p (-1)^p i^p = +1; Lambda is
    therefore real for real contrasts.
    """
    k = config.wavenumber
    P, Q = config.tx_radius, config.rx_radius
    alpha = config.bistatic_angle
    n_meas, n_conv = _counts(config)
    r = np.asarray(r, dtype=float)
    lam = np.zeros(r.shape[:-1], dtype=float)
    for s in objects:
        x = k * _polar(r - np.asarray(s.center))[0]
        t = _as_trunc(trunc, float(np.max(x)))
        p = t.orders()
        ker = _square_series(x, 1.0, sinc_u(p * (math.pi - alpha)), t)
        lam = lam + contrast(s, config) * s.area * ker
    lam = config.field_gain * n_meas / (8 * math.pi * math.sqrt(P * Q)) * lam
    x0 = k * _polar(r)[0]
    t = _as_trunc(trunc, float(np.max(x0)))
    q = t.orders()
    ker0 = _square_series(x0, (-1.0) ** q, sinc_u(q * alpha), t)
    gamma = -1j * np.exp(-1j * k * (P + Q)) * complex(C) * n_conv / k * ker0
    return _squeeze(lam), _squeeze(gamma)


@dataclass(eq=False)
class StructureEvaluation:
    grid: ImagingGrid
    mode: str
    source: int
    direct: np.ndarray
    series: np.ndarray
    truncation: SeriesTruncation
    correlation: float
    max_deviation: float
    cells_used: int

    def report(self):
        lines = [
            "structure evaluation",
            f"mode = {self.mode}",
            f"source = {self.source if self.source is not None else '-'}",
            f"grid = {self.grid.nx} x {self.grid.ny} over "
            f"[{self.grid.x_min:g}, {self.grid.x_max:g}] x [{self.grid.y_min:g}, {self.grid.y_max:g}]",
            f"max_order = {self.truncation.max_order}",
            f"tail_bound = {self.truncation.tail_bound:.3e}",
            f"cells_used = {self.cells_used}",
            f"correlation = {self.correlation:.6f}",
            f"max_deviation = {self.max_deviation:.6f}",
        ]
        return "\n".join(lines) + "\n"


def _compare(direct, series):
    ad = np.abs(direct)
    keep = ad > 1e-14 * ad.max()
    a = ad / ad.max()
    aser = np.abs(series)
    if aser.max() == 0:
        raise StructureHypothesisError("series map is identically zero")
    b = aser / aser.max()
    a, b = a[keep], b[keep]
    if a.std() == 0 or b.std() == 0:
        # flat maps: correlation undefined, agreement judged by deviation only
        corr = 1.0 if np.allclose(a, b) else 0.0
    else:
        corr = float(np.corrcoef(a, b)[0, 1])
    return corr, float(np.max(np.abs(a - b))), int(keep.sum())


def structure_vs_direct(matrix, grid=None, mode="single", source=1, trunc=None):
    """Compare direct inner-product maps with their series representation.

    Both maps are reduced to moduli normalized by their own maximum; the
    statistics are the Pearson correlation of those normalized moduli and
    their largest absolute difference, over cells where the direct value
    exceeds 1e-14 of its maximum.
    """
    grid = grid or ImagingGrid()
    config = matrix.config
    objects = matrix.objects
    if objects is None:
        raise StructureHypothesisError(
            "matrix carries no scatterer description; series needs synthesized data"
        )
    if matrix.model != "point":
        raise StructureHypothesisError("series representation assumes point-model data")
    k = config.wavenumber
    x_max = k * max([grid.max_distance(s.center) for s in objects] + [grid.max_distance((0.0, 0.0))])
    if trunc is None:
        trunc = SeriesTruncation.for_grid(k, grid)
    elif not isinstance(trunc, SeriesTruncation):
        trunc = SeriesTruncation(int(trunc), _tail(int(trunc), x_max))
    trunc.check(x_max)
    pts = grid.points()
    C = matrix.constant
    if mode == "single":
        source = _check_index(source, config.tx_count, "transmitter")
        direct = np.conj(test_vector_rx(config, pts)) @ matrix.column(source)
        phi, psi = phi_psi(pts, source, C, config, objects, trunc)
        series = phi + psi
    elif mode == "multi":
        if config.tx_count <= x_max:
            raise StructureHypothesisError(
                f"transmitter ring with M={config.tx_count} cannot resolve Bessel "
                f"orders up to k|r - r'| = {x_max:.1f}; the full-ring sums alias"
            )
        source = None
        mc = _source_products(matrix, pts)
        direct = np.sum(mc * np.conj(test_vector_tx(config, pts)), axis=-1)
        lam, gam = lambda_gamma(pts, C, config, objects, trunc)
        series = lam + gam
    else:
        raise DomainError(f"unknown mode {mode!r}")
    corr, dev, used = _compare(direct, series)
    return StructureEvaluation(grid, mode, source, direct, series, trunc, corr, dev, used)


def f1_f2_profile(x_samples, k, trunc=None):
    """|f1|, |f2| at positions x (metres) for bistatic angle pi/2.

    f1 = J_0 + 2 sum i^p J_p sinc(p pi/2),
    f2 = J_0^2 + 2 sum (-1)^p J_p^2 sinc(p pi/2), both at argument k|x|.
    """
    x = k * np.abs(np.asarray(x_samples, dtype=float))
    x_max = float(np.max(x)) if x.size else 0.0
    trunc = _as_trunc(trunc, x_max)
    p = trunc.orders()
    w = sinc_u(p * math.pi / 2)
    jp = bessel_j(p, x[..., None])
    f1 = bessel_j(0, x) + 2 * np.sum(_ip(p) * jp * w, axis=-1)
    f2 = bessel_j(0, x) ** 2 + 2 * np.sum((-1.0) ** p * jp**2 * w, axis=-1)
    return np.abs(f1), np.abs(f2)
