"""Text file formats: config files, canonical datasets, maps, profiles.

All angles in files are degrees. Floats are written with 17 significant
digits, which round-trips IEEE doubles exactly. See FORMATS.md.
"""
import math
from pathlib import Path

import numpy as np

from .errors import (
    DatasetFormatError,
    DomainError,
    DuplicateRowError,
    MalformedHeaderError,
    MaskConsistencyError,
    RowCountError,
)
from .forward import MaskedMeasurementMatrix, ObjectSet, Scatterer
from .geometry import ANGLE_TOL, MeasurementConfig, angular_distance
from .indicator import ImagingGrid

__all__ = [
    "fmt",
    "read_config",
    "write_config",
    "config_to_text",
    "save_dataset",
    "load_dataset",
    "export_map",
    "read_map_csv",
    "write_profile_csv",
    "write_text",
]

DATASET_MAGIC = "# aperture-dsm dataset v1"
MASK_FLAGS = {"measured": True, "converted": False}


def fmt(value):
    return "%.17g" % value


def _short(value):
    # shortest string that round-trips exactly
    return repr(float(value))


def _bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# ---------------------------------------------------------------- config files

CONFIG_KEYS = {
    "frequency_hz": float,
    "tx_radius": float,
    "rx_radius": float,
    "tx_count": int,
    "rx_count": int,
    "bistatic_angle_deg": float,
    "eps_b": float,
    "mu_b": float,
    "field_gain": float,
    "degenerate_study": _bool,
}
REQUIRED_CONFIG = ("frequency_hz", "tx_radius", "rx_radius", "tx_count", "rx_count", "bistatic_angle_deg")


def _key_values(lines, source):
    pairs = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MalformedHeaderError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (t.strip() for t in line.split("=", 1))
        pairs.append((lineno, key, value))
    return pairs


def _parse_scatterer(value, eps_b, relative, where):
    parts = value.replace(",", " ").split()
    if len(parts) != 4:
        raise MalformedHeaderError(f"{where}: scatterer needs 'x y radius permittivity'")
    try:
        x, y, rad, eps = (float(p) for p in parts)
    except ValueError as exc:
        raise MalformedHeaderError(f"{where}: {exc}") from None
    return Scatterer((x, y), rad, eps * eps_b if relative else eps)


def _build_config(values, where):
    missing = [k for k in REQUIRED_CONFIG if k not in values]
    if missing:
        raise MalformedHeaderError(f"{where}: missing keys {', '.join(missing)}")
    kwargs = {}
    for key, conv in CONFIG_KEYS.items():
        if key in values:
            try:
                kwargs[key] = conv(values[key])
            except ValueError as exc:
                raise MalformedHeaderError(f"{where}: bad value for {key}: {exc}") from None
    alpha = kwargs.pop("bistatic_angle_deg")
    if "bistatic_angle_rad" in values:
        a = float(values["bistatic_angle_rad"])
        if abs(math.degrees(a) - alpha) > 1e-9:
            raise MalformedHeaderError(f"{where}: bistatic_angle_rad disagrees with degrees")
    else:
        a = math.radians(alpha)
    try:
        return MeasurementConfig(bistatic_angle=a, **kwargs)
    except DomainError as exc:
        raise MalformedHeaderError(f"{where}: {exc}") from None


def read_config(path):
    """Parse a key = value config file into (MeasurementConfig, ObjectSet).

    ``scatterer = x y radius eps_r`` lines give permittivity relative to
    the background.
    """
    path = Path(path)
    values, scat = {}, []
    for lineno, key, value in _key_values(path.read_text().splitlines(), path):
        if key == "scatterer":
            scat.append((lineno, value))
        elif key in CONFIG_KEYS or key == "bistatic_angle_rad":
            values[key] = value
        else:
            raise MalformedHeaderError(f"{path}:{lineno}: unknown key {key!r}")
    config = _build_config(values, path)
    objects = ObjectSet(
        tuple(_parse_scatterer(v, config.eps_b, True, f"{path}:{n}") for n, v in scat)
    )
    return config, objects


def _config_lines(config, short=False):
    fmt = _short if short else globals()["fmt"]
    return [
        f"frequency_hz = {fmt(config.frequency_hz)}",
        f"tx_radius = {fmt(config.tx_radius)}",
        f"rx_radius = {fmt(config.rx_radius)}",
        f"tx_count = {config.tx_count}",
        f"rx_count = {config.rx_count}",
        f"bistatic_angle_deg = {fmt(math.degrees(config.bistatic_angle))}",
        f"bistatic_angle_rad = {fmt(config.bistatic_angle)}",
        f"eps_b = {fmt(config.eps_b)}",
        f"mu_b = {fmt(config.mu_b)}",
        f"field_gain = {fmt(config.field_gain)}",
        f"degenerate_study = {str(config.degenerate_study).lower()}",
    ]


def config_to_text(config, objects=()):
    """Config file text; floats use the shortest exact repr for readability."""
    lines = _config_lines(config, short=True)
    for s in objects:
        vals = (*s.center, s.radius, s.permittivity / config.eps_b)
        lines.append("scatterer = " + " ".join(_short(v) for v in vals))
    return "\n".join(lines) + "\n"


def write_config(path, config, objects=()):
    Path(path).write_text(config_to_text(config, objects))


# ---------------------------------------------------------------- datasets


def save_dataset(matrix, path):
    cfg = matrix.config
    lines = [DATASET_MAGIC]
    lines += _config_lines(cfg)
    lines.append(f"C_re = {fmt(matrix.constant.real)}")
    lines.append(f"C_im = {fmt(matrix.constant.imag)}")
    lines.append(f"model = {matrix.model}")
    if matrix.objects is not None:
        lines.append(f"objects = {len(matrix.objects)}")
        for s in matrix.objects:
            lines.append(
                f"scatterer = {fmt(s.center[0])} {fmt(s.center[1])} "
                f"{fmt(s.radius)} {fmt(s.permittivity)}"
            )
    lines.append("data")
    lines.append("# m n theta_m_deg theta_n_deg mask re im")
    tx_deg = np.degrees(cfg.tx_angles)
    rx_deg = np.degrees(cfg.rx_angles)
    e = matrix.entries
    for m in range(cfg.tx_count):
        for n in range(cfg.rx_count):
            flag = "measured" if matrix.mask[n, m] else "converted"
            z = e[n, m]
            lines.append(
                f"{m + 1} {n + 1} {fmt(tx_deg[m])} {fmt(rx_deg[n])} {flag} "
                f"{fmt(z.real)} {fmt(z.imag)}"
            )
    Path(path).write_text("\n".join(lines) + "\n")


def load_dataset(path):
    """Read a canonical dataset file.

    Raises MalformedHeaderError, RowCountError, MaskConsistencyError or
    DuplicateRowError for the corresponding defects.
    """
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines or lines[0].strip() != DATASET_MAGIC:
        raise MalformedHeaderError(f"{path}: missing dataset magic line")
    try:
        split = next(i for i, ln in enumerate(lines) if ln.strip() == "data")
    except StopIteration:
        raise MalformedHeaderError(f"{path}: no 'data' line") from None
    values, scat = {}, []
    for lineno, key, value in _key_values(lines[1:split], path):
        if key == "scatterer":
            scat.append((lineno, value))
        else:
            values[key] = value
    config = _build_config(values, path)
    try:
        C = complex(float(values["C_re"]), float(values["C_im"]))
        model = values["model"]
    except (KeyError, ValueError) as exc:
        raise MalformedHeaderError(f"{path}: bad or missing constant/model ({exc})") from None
    objects = None
    if "objects" in values:
        objects = ObjectSet(
            tuple(_parse_scatterer(v, config.eps_b, False, f"{path}:{n}") for n, v in scat)
        )
        if str(len(objects)) != values["objects"]:
            raise MalformedHeaderError(f"{path}: scatterer count mismatch")

    rows = [ln for ln in lines[split + 1 :] if ln.strip() and not ln.lstrip().startswith("#")]
    M, N = config.tx_count, config.rx_count
    if len(rows) != M * N:
        raise RowCountError(f"{path}: expected {M * N} data rows, found {len(rows)}")
    entries = np.zeros((N, M), dtype=complex)
    mask = np.zeros((N, M), dtype=bool)
    seen = np.zeros((N, M), dtype=bool)
    tx, rx = config.tx_angles, config.rx_angles
    for i, row in enumerate(rows):
        parts = row.split()
        where = f"{path}: data row {i + 1}"
        if len(parts) != 7:
            raise DatasetFormatError(f"{where}: expected 7 columns")
        try:
            m, n = int(parts[0]), int(parts[1])
            tdeg, ndeg = float(parts[2]), float(parts[3])
            re, im = float(parts[5]), float(parts[6])
        except ValueError as exc:
            raise DatasetFormatError(f"{where}: {exc}") from None
        if not (1 <= m <= M and 1 <= n <= N):
            raise DatasetFormatError(f"{where}: index ({m}, {n}) out of range")
        if parts[4] not in MASK_FLAGS:
            raise DatasetFormatError(f"{where}: mask flag must be measured|converted")
        if seen[n - 1, m - 1]:
            raise DuplicateRowError(f"{where}: duplicate (m, n) = ({m}, {n})")
        seen[n - 1, m - 1] = True
        if (
            angular_distance(math.radians(tdeg), tx[m - 1]) > 1e-8
            or angular_distance(math.radians(ndeg), rx[n - 1]) > 1e-8
        ):
            raise DatasetFormatError(f"{where}: angles disagree with the ring layout")
        measured = MASK_FLAGS[parts[4]]
        if measured and angular_distance(rx[n - 1], tx[m - 1]) < config.bistatic_angle - ANGLE_TOL:
            raise MaskConsistencyError(
                f"{where}: receiver {n} flagged measured inside the bistatic zone of source {m}"
            )
        if not measured and complex(re, im) != C:
            raise MaskConsistencyError(f"{where}: converted entry differs from C")
        mask[n - 1, m - 1] = measured
        entries[n - 1, m - 1] = complex(re, im)
    return MaskedMeasurementMatrix(entries, mask, C, config, objects, model)


# ---------------------------------------------------------------- maps


def export_map(imap, path, format=None):
    """Write an IndicatorMap as CSV (x,y,value) or 16-bit PGM."""
    path = Path(path)
    if format is None:
        format = "pgm" if path.suffix.lower() == ".pgm" else "csv"
    v = np.asarray(imap.values, dtype=float)
    if not np.all(np.isfinite(v)):
        raise DatasetFormatError("map values must be finite")
    if format == "csv":
        xs, ys = imap.grid.x, imap.grid.y
        out = ["x,y,value"]
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                out.append(f"{fmt(x)},{fmt(y)},{fmt(v[i, j])}")
        path.write_text("\n".join(out) + "\n")
    elif format == "pgm":
        # rows from top (largest y) to bottom, columns by increasing x
        img = np.clip(np.rint(v.T[::-1, :] * 65535.0), 0, 65535).astype(">u2")
        header = f"P5\n{imap.grid.nx} {imap.grid.ny}\n65535\n".encode("ascii")
        path.write_bytes(header + img.tobytes())
    else:
        raise DomainError(f"unknown map format {format!r}")


def read_map_csv(path):
    """Inverse of the CSV map export: (ImagingGrid, values[nx, ny])."""
    rows = Path(path).read_text().splitlines()
    if not rows or rows[0].strip() != "x,y,value":
        raise MalformedHeaderError(f"{path}: expected header x,y,value")
    try:
        data = np.array([[float(t) for t in r.split(",")] for r in rows[1:] if r.strip()])
    except ValueError as exc:
        raise DatasetFormatError(f"{path}: {exc}") from None
    if data.ndim != 2 or data.shape[1] != 3:
        raise DatasetFormatError(f"{path}: map rows need three columns")
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    if len(xs) * len(ys) != len(data):
        raise RowCountError(f"{path}: rows do not form a rectangular grid")
    if len(xs) < 2 or len(ys) < 2:
        raise RowCountError(f"{path}: map needs at least two cells per axis")
    dx = (xs[-1] - xs[0]) / (len(xs) - 1)
    dy = (ys[-1] - ys[0]) / (len(ys) - 1)
    grid = ImagingGrid(xs[0] - dx / 2, xs[-1] + dx / 2, ys[0] - dy / 2, ys[-1] + dy / 2, len(xs), len(ys))
    return grid, data[:, 2].reshape(len(xs), len(ys))


def write_profile_csv(path, x, values, name="value"):
    out = [f"x,{name}"] + [f"{fmt(a)},{fmt(b)}" for a, b in zip(x, values)]
    Path(path).write_text("\n".join(out) + "\n")


def write_text(path, text):
    Path(path).write_text(text)
