"""Direct sampling indicators for limited-aperture data.

``f_dsm`` scores a search point by the normalized l2 inner product between
one source's data column and the receiver test vector. ``f_msm`` first
collects those inner products for every source, then correlates that
length-M vector with the transmitter test vector.

Both accept search points as arrays of shape (..., 2) and return arrays of
shape (...,).
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
import os

import numpy as np
from scipy import ndimage

from .errors import DegenerateDataError, DomainError
from .geometry import _check_index
from .specfun import green2d

__all__ = [
    "ImagingGrid",
    "IndicatorMap",
    "test_vector_rx",
    "test_vector_tx",
    "inner_l2",
    "classical_indicator",
    "f_dsm",
    "f_msm",
    "image",
    "local_maxima",
    "thread_count",
]

THREADS_ENV = "APERTURE_DSM_THREADS"
ROW_BLOCK = 8


@dataclass(frozen=True)
class ImagingGrid:
    """Rectangular grid over the search region; samples are cell centers."""

    x_min: float = -0.1
    x_max: float = 0.1
    y_min: float = -0.1
    y_max: float = 0.1
    nx: int = 101
    ny: int = 101

    def __post_init__(self):
        if int(self.nx) != self.nx or int(self.ny) != self.ny or self.nx < 2 or self.ny < 2:
            raise DomainError("grid needs integer nx, ny >= 2")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise DomainError("grid bounds must be strictly ordered")
        object.__setattr__(self, "nx", int(self.nx))
        object.__setattr__(self, "ny", int(self.ny))

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.nx

    @property
    def dy(self):
        return (self.y_max - self.y_min) / self.ny

    @property
    def x(self):
        return self.x_min + (np.arange(self.nx) + 0.5) * self.dx

    @property
    def y(self):
        return self.y_min + (np.arange(self.ny) + 0.5) * self.dy

    def points(self):
        """Cell centers, shape (nx, ny, 2)."""
        X, Y = np.meshgrid(self.x, self.y, indexing="ij")
        return np.stack([X, Y], axis=-1)

    @property
    def diagonal(self):
        return math.hypot(self.x_max - self.x_min, self.y_max - self.y_min)

    def max_distance(self, point):
        """Largest distance from ``point`` to any corner of the region."""
        px, py = point
        return max(
            math.hypot(cx - px, cy - py)
            for cx in (self.x_min, self.x_max)
            for cy in (self.y_min, self.y_max)
        )


@dataclass(eq=False)
class IndicatorMap:
    grid: ImagingGrid
    values: np.ndarray  # (nx, ny)
    mode: str
    source: int = None
    constant: complex = 0j
    bistatic_angle: float = None
    normalized: bool = False
    meta: dict = field(default_factory=dict)

    def argmax_point(self):
        i, j = np.unravel_index(np.argmax(self.values), self.values.shape)
        return float(self.grid.x[i]), float(self.grid.y[j])


def test_vector_rx(config, r):
    """G(q_n, r) for every receiver, shape (..., N)."""
    r = np.asarray(r, dtype=float)
    return green2d(config.wavenumber, config.rx_positions, r[..., None, :])


def test_vector_tx(config, r):
    """G(p_m, r) for every transmitter, shape (..., M)."""
    r = np.asarray(r, dtype=float)
    return green2d(config.wavenumber, config.tx_positions, r[..., None, :])


def inner_l2(a, b):
    """sum_j a_j conj(b_j) over the last axis."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[-1]:
        raise DomainError(f"length mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    return np.sum(a * np.conj(b), axis=-1)


def _norm(v):
    return np.sqrt(np.sum(np.abs(v) ** 2, axis=-1))


def _check_imaging(config):
    if config.bistatic_angle >= math.pi:
        # Degenerate configs are only meaningful for the series study; the
        # indicators still evaluate but carry no localization information.
        if not config.degenerate_study:
            raise DomainError("imaging requires a bistatic angle below pi")


def classical_indicator(column, config, r):
    """Full-aperture indicator for a complete data column S(m)."""
    column = np.asarray(column)
    s_norm = _norm(column)
    if s_norm == 0:
        raise DegenerateDataError("data column has zero norm")
    q = test_vector_rx(config, r)
    return np.abs(inner_l2(column, q)) / (s_norm * _norm(q))


def f_dsm(matrix, m, r):
    """Single-source indicator |<S(C,m), Q(r)>| / (||S(C,m)|| ||Q(r)||).

    The norm of S(C,m) runs over all N entries, converted ones included.
    """
    config = matrix.config
    _check_imaging(config)
    col = matrix.column(m)
    s_norm = _norm(col)
    if s_norm == 0:
        raise DegenerateDataError(f"column {m} of the measurement matrix is zero")
    q = test_vector_rx(config, r)
    return np.abs(inner_l2(col, q)) / (s_norm * _norm(q))


def _source_products(matrix, r):
    """<S(C,m), Q(r)> for every source m, shape (..., M)."""
    q = test_vector_rx(matrix.config, r)
    return np.conj(q) @ matrix.entries


def f_msm(matrix, r):
    """Multi-source indicator built on the per-source inner products."""
    config = matrix.config
    _check_imaging(config)
    mc = _source_products(matrix, r)
    mc_norm = _norm(mc)
    if np.any(mc_norm == 0):
        raise DegenerateDataError("vector of per-source inner products has zero norm")
    p = test_vector_tx(config, r)
    return np.abs(inner_l2(mc, p)) / (mc_norm * _norm(p))


def thread_count(threads=None):
    if threads is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        threads = int(env) if env else 1
    return max(1, int(threads))


def _sweep(fn, pts, threads):
    # Fixed row blocks keep the floating-point work identical for any thread
    # count, so maps are bit-reproducible.
    rows = pts.shape[0]
    blocks = [pts[i : i + ROW_BLOCK] for i in range(0, rows, ROW_BLOCK)]
    if threads <= 1 or len(blocks) < 2:
        parts = [fn(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(fn, blocks))
    return np.concatenate(parts, axis=0)


def image(matrix, grid=None, mode="single", source=1, normalize=True, threads=None):
    """Evaluate an indicator on every cell center of ``grid``.

    ``mode`` is ``"single"`` (uses ``source``) or ``"multi"``. With
    ``normalize`` the map is divided by its maximum.
    """
    grid = grid or ImagingGrid()
    pts = grid.points()
    if mode == "single":
        source = _check_index(source, matrix.config.tx_count, "transmitter")
        values = _sweep(lambda p: f_dsm(matrix, source, p), pts, thread_count(threads))
    elif mode == "multi":
        source = None
        values = _sweep(lambda p: f_msm(matrix, p), pts, thread_count(threads))
    else:
        raise DomainError(f"unknown mode {mode!r}")
    values = np.asarray(values, dtype=float)
    if normalize:
        vmax = values.max()
        if vmax <= 0:
            raise DegenerateDataError("indicator map is identically zero")
        values = values / vmax
    return IndicatorMap(
        grid=grid,
        values=values,
        mode=mode,
        source=source,
        constant=matrix.constant,
        bistatic_angle=matrix.config.bistatic_angle,
        normalized=normalize,
    )


def local_maxima(imap, count=None, min_separation=0.0, neighborhood=3):
    """Local maxima of a map as (x, y, value), strongest first.

    A cell is a local maximum when it equals the maximum of its
    ``neighborhood`` x ``neighborhood`` window. Peaks closer than
    ``min_separation`` to an already accepted stronger peak are dropped.
    """
    v = imap.values
    is_max = v == ndimage.maximum_filter(v, size=neighborhood, mode="nearest")
    idx = np.argwhere(is_max)
    order = np.argsort(-v[is_max], kind="stable")
    xs, ys = imap.grid.x, imap.grid.y
    peaks = []
    for i, j in idx[order]:
        x, y = float(xs[i]), float(ys[j])
        if any(math.hypot(x - px, y - py) < min_separation for px, py, _ in peaks):
            continue
        peaks.append((x, y, float(v[i, j])))
        if count is not None and len(peaks) == count:
            break
    return peaks
