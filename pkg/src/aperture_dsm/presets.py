"""Built-in scenarios."""
import math

from .forward import ObjectSet, Scatterer
from .geometry import EPS_0, MeasurementConfig

__all__ = ["PRESETS", "fresnel_2diel", "get_preset"]

# Synthetic fields in Green's-function units peak near 1e4 for this scene;
# this gain brings the peak measured amplitude to about 0.04, the scale at
# which converted constants of order 0.1-2 act as they do on measured data.
FRESNEL_FIELD_GAIN = 4e-6


def fresnel_2diel(bistatic_angle_deg=60.0, degenerate_study=None):
    """Two dielectric disks in the 4 GHz ring setup (36 sources, 72 receiver slots)."""
    if degenerate_study is None:
        degenerate_study = bistatic_angle_deg >= 180.0
    config = MeasurementConfig(
        frequency_hz=4e9,
        tx_radius=0.72,
        rx_radius=0.76,
        tx_count=36,
        rx_count=72,
        bistatic_angle=math.radians(bistatic_angle_deg),
        field_gain=FRESNEL_FIELD_GAIN,
        degenerate_study=degenerate_study,
    )
    objects = ObjectSet(
        (
            Scatterer((-0.045, 0.0), 0.015, 3 * EPS_0),
            Scatterer((0.045, 0.010), 0.015, 3 * EPS_0),
        )
    )
    return config, objects


PRESETS = {"fresnel-2diel": fresnel_2diel}


def get_preset(name, **kwargs):
    try:
        return PRESETS[name](**kwargs)
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
