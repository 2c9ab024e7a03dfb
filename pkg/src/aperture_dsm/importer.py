"""Import of external bistatic measurement tables.

The input is a delimited text table (whitespace or commas, ``#`` comments)
with one row per transmitter/receiver pair. An :class:`ImportMapping` says
which 0-based columns hold the antenna identifiers and the field values,
either the scattered field directly or total and incident fields, in which
case scattered = total - incident. Pairs missing from the file become
converted entries.
"""
from dataclasses import dataclass
import math
from pathlib import Path

import numpy as np

from .errors import AngleSnapError, DuplicateRowError, ImportMappingError, MaskConsistencyError
from .forward import MaskedMeasurementMatrix
from .geometry import angular_distance

__all__ = ["ImportMapping", "import_external", "SNAP_TOL_DEG"]

SNAP_TOL_DEG = 0.5
ANGLE_CONVENTIONS = ("index1", "index0", "degrees")


@dataclass(frozen=True)
class ImportMapping:
    """Column layout of an external table.

    ``angles`` says how the tx/rx columns identify antennas: 1-based ring
    indices, 0-based ring indices, or angles in degrees snapped to the ring.
    ``freq_col``/``freq_value`` keep only rows at one frequency.
    ``mask_col`` names a column of measured/converted flags; rows flagged
    converted are skipped.
    """

    tx_col: int
    rx_col: int
    scattered: tuple = None
    total: tuple = None
    incident: tuple = None
    angles: str = "index1"
    freq_col: int = None
    freq_value: float = None
    mask_col: int = None

    def __post_init__(self):
        has_scat = self.scattered is not None
        has_pair = self.total is not None or self.incident is not None
        if has_scat == has_pair:
            raise ImportMappingError("give either scattered or total+incident columns")
        if has_pair and (self.total is None or self.incident is None):
            raise ImportMappingError("total and incident columns must both be given")
        if self.angles not in ANGLE_CONVENTIONS:
            raise ImportMappingError(f"angles must be one of {ANGLE_CONVENTIONS}")
        if (self.freq_col is None) != (self.freq_value is None):
            raise ImportMappingError("freq_col and freq_value go together")
        cols = self.columns()
        if len(set(cols)) != len(cols):
            raise ImportMappingError("mapped columns must be distinct")
        if any(c < 0 for c in cols):
            raise ImportMappingError("column indices are 0-based and nonnegative")

    def columns(self):
        cols = [self.tx_col, self.rx_col]
        for pair in (self.scattered, self.total, self.incident):
            if pair is not None:
                if len(pair) != 2:
                    raise ImportMappingError("field columns come as (re, im) pairs")
                cols += list(pair)
        cols += [c for c in (self.freq_col, self.mask_col) if c is not None]
        return cols

    @classmethod
    def canonical(cls):
        """Layout of the data rows of the canonical dataset format."""
        return cls(tx_col=0, rx_col=1, scattered=(5, 6), angles="index1", mask_col=4)


def _snap(value, count, convention, what, where):
    if convention == "index1":
        idx = value - 1
    elif convention == "index0":
        idx = value
    else:
        step = 360.0 / count
        idx = round((value % 360.0) / step) % count
        off = abs(((value - idx * step) + 180.0) % 360.0 - 180.0)
        if off > SNAP_TOL_DEG:
            raise AngleSnapError(f"{where}: {what} angle {value:g} deg is {off:.3g} deg off the ring")
        return int(idx)
    if idx != int(idx) or not 0 <= idx < count:
        raise AngleSnapError(f"{where}: {what} index {value:g} outside the ring")
    return int(idx)


def import_external(path, mapping, config, C=0j):
    """Build a MaskedMeasurementMatrix from an external table."""
    path = Path(path)
    M, N = config.tx_count, config.rx_count
    entries = np.zeros((N, M), dtype=complex)
    mask = np.zeros((N, M), dtype=bool)
    need = max(mapping.columns()) + 1
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or "=" in line or line == "data":
            continue
        parts = line.replace(",", " ").split()
        where = f"{path}:{lineno}"
        if len(parts) < need:
            raise ImportMappingError(f"{where}: row has {len(parts)} columns, mapping needs {need}")
        if mapping.mask_col is not None and parts[mapping.mask_col] == "converted":
            continue
        try:
            if mapping.freq_col is not None:
                if not math.isclose(float(parts[mapping.freq_col]), mapping.freq_value, rel_tol=1e-9):
                    continue
            vals = {c: float(parts[c]) for c in mapping.columns() if c != mapping.mask_col}
        except ValueError as exc:
            raise ImportMappingError(f"{where}: {exc}") from None
        m = _snap(vals[mapping.tx_col], M, mapping.angles, "transmitter", where)
        n = _snap(vals[mapping.rx_col], N, mapping.angles, "receiver", where)
        if mask[n, m]:
            raise DuplicateRowError(f"{where}: duplicate pair (m, n) = ({m + 1}, {n + 1})")
        if mapping.scattered is not None:
            re, im = mapping.scattered
            value = complex(vals[re], vals[im])
        else:
            value = complex(vals[mapping.total[0]], vals[mapping.total[1]]) - complex(
                vals[mapping.incident[0]], vals[mapping.incident[1]]
            )
        d = math.degrees(angular_distance(config.rx_angles[n], config.tx_angles[m]))
        if d < math.degrees(config.bistatic_angle) - SNAP_TOL_DEG:
            raise MaskConsistencyError(
                f"{where}: receiver {n + 1} lies {d:.2f} deg from source {m + 1}, "
                f"inside the bistatic zone"
            )
        entries[n, m] = value
        mask[n, m] = True
    return MaskedMeasurementMatrix(entries, mask, C, config, None, "external")
