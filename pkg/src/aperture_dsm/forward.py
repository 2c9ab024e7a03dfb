"""Born-approximation scattered fields for small dielectric disks and the
masked measurement matrix.

Two models are available: the point (mean-value) model, which collapses
each disk to ``area * integrand(center)``, and a polar midpoint quadrature
over the disk.
"""
from dataclasses import dataclass
import math
import warnings

import numpy as np

from .errors import ContractViolation, DomainError, SingularityError
from .geometry import _check_index, measured_mask
from .specfun import green2d

__all__ = [
    "Scatterer",
    "ObjectSet",
    "MaskedMeasurementMatrix",
    "contrast",
    "point_scattered_field",
    "disk_scattered_field",
    "point_field_matrix",
    "disk_field_matrix",
    "synthesize",
    "matrix_modulus",
]

MODELS = ("point", "disk")


class SmallObjectWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Scatterer:
    center: tuple
    radius: float
    permittivity: float

    def __post_init__(self):
        c = tuple(float(v) for v in self.center)
        if len(c) != 2 or not all(math.isfinite(v) for v in c):
            raise DomainError("scatterer center must be a finite 2D point")
        object.__setattr__(self, "center", c)
        if not self.radius > 0:
            raise DomainError("scatterer radius must be positive")

    @property
    def area(self):
        return math.pi * self.radius**2


@dataclass(frozen=True)
class ObjectSet:
    scatterers: tuple = ()

    def __post_init__(self):
        s = tuple(self.scatterers)
        object.__setattr__(self, "scatterers", s)
        for i, a in enumerate(s):
            for b in s[i + 1 :]:
                sep = math.dist(a.center, b.center)
                if sep <= a.radius + b.radius:
                    raise ContractViolation(
                        f"scatterers at {a.center} and {b.center} overlap"
                    )

    def __len__(self):
        return len(self.scatterers)

    def __iter__(self):
        return iter(self.scatterers)


def contrast(obj, config):
    """(eps_s - eps_b) / (eps_b mu_b) for one scatterer."""
    if not obj.permittivity > config.eps_b:
        raise ContractViolation(
            f"permittivity {obj.permittivity!r} must exceed background {config.eps_b!r}"
        )
    return (obj.permittivity - config.eps_b) / (config.eps_b * config.mu_b)


def _check_small(objects, config):
    k = config.wavenumber
    for s in objects:
        if k * s.radius > 1.5:
            warnings.warn(
                f"k*radius = {k * s.radius:.3g}; Born point model is inaccurate",
                SmallObjectWarning,
                stacklevel=3,
            )


def point_field_matrix(config, objects):
    """N x M array of point-model fields for every receiver/transmitter pair."""
    k = config.wavenumber
    out = np.zeros((config.rx_count, config.tx_count), dtype=complex)
    p = config.tx_positions
    q = config.rx_positions
    for s in objects:
        c = np.asarray(s.center)
        weight = k**2 * contrast(s, config) * s.area
        gp = green2d(k, p, c)
        gq = green2d(k, q, c)
        out += weight * gq[:, None] * gp[None, :]
    return out


def point_scattered_field(config, objects, n, m):
    """k^2 sum_s O_s area_s G(p_m, r_s) G(q_n, r_s)."""
    n = _check_index(n, config.rx_count, "receiver")
    m = _check_index(m, config.tx_count, "transmitter")
    k = config.wavenumber
    p = config.tx_positions[m - 1]
    q = config.rx_positions[n - 1]
    total = 0j
    for s in objects:
        c = np.asarray(s.center)
        total += (
            k**2 * contrast(s, config) * s.area * green2d(k, p, c) * green2d(k, q, c)
        )
    return complex(total)


def _disk_nodes(scatterer, quad_points):
    """Polar midpoint rule: ``quad_points`` rings, angular count ~ circumference.

    Weights sum to the disk area exactly.
    """
    dr = scatterer.radius / quad_points
    xs, ws = [], []
    for j in range(quad_points):
        rho = (j + 0.5) * dr
        nth = max(4, math.ceil(2 * math.pi * (j + 0.5)))
        t = 2 * np.pi * (np.arange(nth) + 0.5) / nth
        xs.append(np.stack([rho * np.cos(t), rho * np.sin(t)], axis=-1))
        ws.append(np.full(nth, rho * dr * 2 * np.pi / nth))
    nodes = np.concatenate(xs) + np.asarray(scatterer.center)
    return nodes, np.concatenate(ws)


def _check_quad(quad_points):
    if int(quad_points) != quad_points or quad_points < 16:
        raise DomainError("quad_points must be an integer >= 16")
    return int(quad_points)


def disk_field_matrix(config, objects, quad_points=32):
    quad_points = _check_quad(quad_points)
    k = config.wavenumber
    out = np.zeros((config.rx_count, config.tx_count), dtype=complex)
    p = config.tx_positions
    q = config.rx_positions
    for s in objects:
        nodes, w = _disk_nodes(s, quad_points)
        gp = green2d(k, p[:, None, :], nodes[None, :, :])  # M x K
        gq = green2d(k, q[:, None, :], nodes[None, :, :])  # N x K
        out += k**2 * contrast(s, config) * ((gq * w) @ gp.T)
    return out


def disk_scattered_field(config, objects, n, m, quad_points=32):
    """Born integral over each disk by polar midpoint quadrature."""
    quad_points = _check_quad(quad_points)
    n = _check_index(n, config.rx_count, "receiver")
    m = _check_index(m, config.tx_count, "transmitter")
    k = config.wavenumber
    p = config.tx_positions[m - 1]
    q = config.rx_positions[n - 1]
    total = 0j
    for s in objects:
        nodes, w = _disk_nodes(s, quad_points)
        g = green2d(k, q, nodes) * green2d(k, nodes, p)
        total += k**2 * contrast(s, config) * np.sum(w * g)
    return complex(total)


@dataclass(eq=False)
class MaskedMeasurementMatrix:
    """N x M scattered-field data with converted (unmeasurable) entries.

    ``mask`` is True where an entry was measured; every other entry holds
    ``constant`` exactly. ``objects`` records the scatterers when the data
    were synthesized, which the series-structure comparison needs.
    """

    entries: np.ndarray
    mask: np.ndarray
    constant: complex
    config: object
    objects: ObjectSet = None
    model: str = "point"

    def __post_init__(self):
        self.entries = np.array(self.entries, dtype=complex)
        self.mask = np.array(self.mask, dtype=bool)
        self.constant = complex(self.constant)
        shape = (self.config.rx_count, self.config.tx_count)
        if self.entries.shape != shape or self.mask.shape != shape:
            raise DomainError(f"matrix shape must be {shape}")
        if self.model not in MODELS + ("external",):
            raise DomainError(f"unknown model tag {self.model!r}")
        self.entries[~self.mask] = self.constant
        self.entries.setflags(write=False)
        self.mask.setflags(write=False)

    @property
    def shape(self):
        return self.entries.shape

    def column(self, m):
        m = _check_index(m, self.config.tx_count, "transmitter")
        return self.entries[:, m - 1]

    def with_constant(self, constant):
        """Same measured data, converted entries replaced by ``constant``."""
        return MaskedMeasurementMatrix(
            self.entries.copy(), self.mask, constant, self.config, self.objects, self.model
        )

    def __eq__(self, other):
        if not isinstance(other, MaskedMeasurementMatrix):
            return NotImplemented
        return (
            self.config == other.config
            and self.constant == other.constant
            and self.model == other.model
            and self.objects == other.objects
            and np.array_equal(self.mask, other.mask)
            and np.array_equal(self.entries, other.entries)
        )

    __hash__ = None


def synthesize(config, objects, C=0j, model="point", quad_points=32):
    """Masked measurement matrix from Born-model fields.

    Measured entries are ``config.field_gain`` times the model field; entries
    of receivers inside the bistatic zone are set to ``C``.
    """
    if model not in MODELS:
        raise DomainError(f"model must be one of {MODELS}")
    objects = objects if isinstance(objects, ObjectSet) else ObjectSet(tuple(objects))
    _check_small(objects, config)
    if model == "point":
        field_ = point_field_matrix(config, objects)
    else:
        field_ = disk_field_matrix(config, objects, quad_points)
    if not np.all(np.isfinite(field_)):
        raise SingularityError("non-finite field; a scatterer sits on an antenna")
    return MaskedMeasurementMatrix(
        config.field_gain * field_, measured_mask(config), C, config, objects, model
    )


def matrix_modulus(matrix):
    """Elementwise modulus of the measurement matrix (the K image)."""
    entries = matrix.entries if isinstance(matrix, MaskedMeasurementMatrix) else matrix
    return np.abs(np.asarray(entries))
