"""Scalar kernels: Bessel J_n, Hankel H_0^(1), the 2D Green's function and
its far-field form, and the unnormalized sinc.

Every function accepts numpy arrays and broadcasts. Points are arrays whose
last axis has length 2.  Time convention is exp(-i omega t).
"""
import warnings

import numpy as np
from scipy import special

from .errors import DomainError, SingularityError

__all__ = [
    "FarFieldWarning",
    "bessel_j",
    "hankel1_0",
    "green2d",
    "green2d_farfield",
    "sinc_u",
]

MAX_ARGUMENT = 1e4
FARFIELD_MIN = 20.0


class FarFieldWarning(UserWarning):
    """Far-field form used outside its accuracy regime (4 k R < 20)."""


def _scalar_or_array(value):
    return value.item() if np.ndim(value) == 0 else value


def bessel_j(order, x):
    """Bessel function of the first kind of nonnegative integer order.

    >>> float(bessel_j(0, 0.0))
    1.0
    """
    order = np.asarray(order)
    x = np.asarray(x, dtype=float)
    if not np.issubdtype(order.dtype, np.integer):
        if not np.all(np.equal(np.mod(order, 1), 0)):
            raise DomainError("bessel_j: order must be an integer")
        order = order.astype(int)
    if np.any(order < 0):
        raise DomainError("bessel_j: order must be nonnegative")
    if not np.all(np.isfinite(x)):
        raise DomainError("bessel_j: argument must be finite")
    if np.any(np.abs(x) >= MAX_ARGUMENT):
        raise DomainError(f"bessel_j: |x| must be below {MAX_ARGUMENT:g}")
    return _scalar_or_array(special.jv(order, x))


def hankel1_0(x):
    """Zero-order Hankel function of the first kind, J_0 + i Y_0, for x > 0."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("hankel1_0: argument must be finite")
    if np.any(x <= 0):
        raise DomainError("hankel1_0: argument must be positive")
    return _scalar_or_array(special.hankel1(0, x))


def green2d(k, r, r_src):
    """Free-space Green's function -(i/4) H_0^(1)(k |r - r_src|)."""
    if not k > 0:
        raise DomainError("green2d: wavenumber must be positive")
    diff = np.asarray(r, dtype=float) - np.asarray(r_src, dtype=float)
    dist = np.hypot(diff[..., 0], diff[..., 1])
    if np.any(dist == 0):
        raise SingularityError("green2d: evaluation point coincides with the source")
    return _scalar_or_array(-0.25j * special.hankel1(0, k * dist))


def green2d_farfield(k, ring_radius, angle, r):
    """Far-field form of G between a ring antenna at ``angle`` and point ``r``.

    Valid when ``4 k ring_radius`` is large; emits :class:`FarFieldWarning`
    below 20.
    """
    if not ring_radius > 0:
        raise DomainError("green2d_farfield: ring radius must be positive")
    if not k > 0:
        raise DomainError("green2d_farfield: wavenumber must be positive")
    kr = k * ring_radius
    if 4 * kr < FARFIELD_MIN:
        warnings.warn(
            f"far-field form used with 4kR = {4 * kr:.3g} < {FARFIELD_MIN:g}",
            FarFieldWarning,
            stacklevel=2,
        )
    angle = np.asarray(angle, dtype=float)
    r = np.asarray(r, dtype=float)
    proj = np.cos(angle) * r[..., 0] + np.sin(angle) * r[..., 1]
    amp = -(1 + 1j) * np.exp(1j * kr) / (4 * np.sqrt(kr * np.pi))
    return _scalar_or_array(amp * np.exp(-1j * k * proj))


def sinc_u(x):
    """Unnormalized sinc, sin(x)/x, continuous at 0."""
    x = np.asarray(x, dtype=float)
    return _scalar_or_array(np.sinc(x / np.pi))
