"""Antenna rings, bistatic masking and the measured/converted index sets.

Antenna indices are 1-based throughout the public API, matching the way the
measurement system labels its transmitters and receivers.
"""
from dataclasses import dataclass, replace
import math

import numpy as np

from .errors import AntennaIndexError, DomainError

__all__ = [
    "EPS_0",
    "MU_0",
    "ANGLE_TOL",
    "MeasurementConfig",
    "IndexSets",
    "angular_distance",
    "transmitter_position",
    "receiver_position",
    "index_sets",
    "measured_mask",
]

EPS_0 = 8.854e-12
MU_0 = 4 * math.pi * 1e-7
ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class MeasurementConfig:
    """Bistatic ring geometry and background medium.

    ``bistatic_angle`` is in radians. ``field_gain`` is a real calibration
    factor applied to synthesized scattered fields (1 = Green's-function
    natural units). ``degenerate_study`` admits ``bistatic_angle == pi``,
    where only the receiver opposite each transmitter is measured.
    """

    frequency_hz: float
    tx_radius: float
    rx_radius: float
    tx_count: int
    rx_count: int
    bistatic_angle: float
    eps_b: float = EPS_0
    mu_b: float = MU_0
    field_gain: float = 1.0
    degenerate_study: bool = False

    def __post_init__(self):
        if not self.frequency_hz > 0:
            raise DomainError("frequency must be positive")
        if not (self.eps_b > 0 and self.mu_b > 0):
            raise DomainError("background constants must be positive")
        if not (self.tx_radius > 0 and self.rx_radius > 0):
            raise DomainError("ring radii must be positive")
        if int(self.tx_count) != self.tx_count or self.tx_count < 1:
            raise DomainError("tx_count must be an integer >= 1")
        if int(self.rx_count) != self.rx_count or self.rx_count < 2:
            raise DomainError("rx_count must be an integer >= 2")
        if not (math.isfinite(self.field_gain) and self.field_gain > 0):
            raise DomainError("field_gain must be positive")
        a = self.bistatic_angle
        if self.degenerate_study:
            ok = 0 < a <= math.pi
        else:
            ok = 0 < a < math.pi
        if not ok:
            raise DomainError(
                f"bistatic angle {a!r} rad outside (0, pi)"
                + ("" if self.degenerate_study else "; set degenerate_study to allow pi")
            )
        object.__setattr__(self, "tx_count", int(self.tx_count))
        object.__setattr__(self, "rx_count", int(self.rx_count))

    @classmethod
    def from_degrees(cls, bistatic_angle_deg, **kwargs):
        return cls(bistatic_angle=math.radians(bistatic_angle_deg), **kwargs)

    def replace(self, **changes):
        return replace(self, **changes)

    @property
    def wavenumber(self):
        return 2 * math.pi * self.frequency_hz * math.sqrt(self.eps_b * self.mu_b)

    @property
    def wavelength(self):
        return 2 * math.pi / self.wavenumber

    @property
    def tx_angles(self):
        return 2 * np.pi * np.arange(self.tx_count) / self.tx_count

    @property
    def rx_angles(self):
        return 2 * np.pi * np.arange(self.rx_count) / self.rx_count

    @property
    def tx_positions(self):
        t = self.tx_angles
        return self.tx_radius * np.stack([np.cos(t), np.sin(t)], axis=-1)

    @property
    def rx_positions(self):
        t = self.rx_angles
        return self.rx_radius * np.stack([np.cos(t), np.sin(t)], axis=-1)


@dataclass(frozen=True)
class IndexSets:
    source_index: int
    measured: tuple
    converted: tuple


def angular_distance(a, b):
    """Distance between angles on the circle, in [0, pi]."""
    d = np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), 2 * np.pi)
    return np.minimum(d, 2 * np.pi - d)


def _check_index(i, count, what):
    if int(i) != i or not 1 <= i <= count:
        raise AntennaIndexError(f"{what} index {i!r} outside 1..{count}")
    return int(i)


def transmitter_position(config, m):
    m = _check_index(m, config.tx_count, "transmitter")
    return config.tx_positions[m - 1]


def receiver_position(config, n):
    n = _check_index(n, config.rx_count, "receiver")
    return config.rx_positions[n - 1]


def measured_mask(config):
    """Boolean N x M array, True where receiver n is measured for source m.

    A receiver is measured when its angular distance to the transmitter is
    at least the bistatic angle; the boundary is inclusive up to ANGLE_TOL.
    """
    d = angular_distance(config.rx_angles[:, None], config.tx_angles[None, :])
    return d >= config.bistatic_angle - ANGLE_TOL


def index_sets(config, m):
    m = _check_index(m, config.tx_count, "transmitter")
    col = measured_mask(config)[:, m - 1]
    idx = np.arange(1, config.rx_count + 1)
    return IndexSets(
        source_index=m,
        measured=tuple(int(i) for i in idx[col]),
        converted=tuple(int(i) for i in idx[~col]),
    )
