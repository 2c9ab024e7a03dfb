"""Command-line entry point.

Exit codes: 0 success, 1 usage, 2 data/validation, 3 numeric
(degenerate data or insufficient truncation).
"""
import argparse
import logging
import sys

import numpy as np

from . import formats
from .errors import ApertureDSMError, DegenerateDataError, TruncationError
from .forward import synthesize
from .geometry import EPS_0, MU_0
from .importer import ImportMapping, import_external
from .indicator import ImagingGrid, image, local_maxima
from .presets import PRESETS, get_preset
from .structure import SeriesTruncation, f1_f2_profile, structure_vs_direct

log = logging.getLogger("aperture_dsm")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_complex(text):
    """'RE' or 'RE,IM' -> complex."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _pair(text):
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two column indices RE,IM, got {text!r}") from None
    return a, b


def _grid(args):
    nx, ny = args.grid
    h = args.half_width
    return ImagingGrid(-h, h, -h, h, nx, ny)


def cmd_preset(args):
    config, objects = get_preset(args.name, bistatic_angle_deg=args.alpha_deg)
    text = formats.config_to_text(config, objects)
    if args.output:
        formats.write_text(args.output, text)
    else:
        sys.stdout.write(text)


def cmd_simulate(args):
    config, objects = formats.read_config(args.config)
    matrix = synthesize(config, objects, args.constant, model=args.model, quad_points=args.quad_points)
    formats.save_dataset(matrix, args.output)
    log.info("wrote %s (%d measured entries)", args.output, int(matrix.mask.sum()))


def cmd_image(args):
    matrix = formats.load_dataset(args.dataset)
    if args.constant is not None:
        matrix = matrix.with_constant(args.constant)
    imap = image(matrix, _grid(args), mode=args.mode, source=args.source, normalize=not args.raw)
    formats.export_map(imap, args.output, args.format)
    for x, y, v in local_maxima(imap, count=args.peaks, min_separation=matrix.config.wavelength / 2):
        print(f"peak {x:+.4f} {y:+.4f} {v:.6f}")


def cmd_structure(args):
    matrix = formats.load_dataset(args.dataset)
    ev = structure_vs_direct(matrix, _grid(args), mode=args.mode, source=args.source, trunc=args.trunc)
    report = ev.report()
    if args.output:
        formats.write_text(args.output, report)
    sys.stdout.write(report)


def cmd_profile(args):
    k = 2 * np.pi * args.frequency * np.sqrt(EPS_0 * MU_0)
    x = np.linspace(-args.half_width, args.half_width, args.samples)
    f1, f2 = f1_f2_profile(x, k, SeriesTruncation(args.trunc) if args.trunc else None)
    formats.write_profile_csv(f"{args.output}_f1.csv", x, f1, "f1")
    formats.write_profile_csv(f"{args.output}_f2.csv", x, f2, "f2")


def cmd_import(args):
    config, _ = formats.read_config(args.config)
    if (args.scattered is None) == (args.total is None and args.incident is None):
        raise UsageError("import: give --scattered or both --total and --incident")
    mapping = ImportMapping(
        tx_col=args.tx_col,
        rx_col=args.rx_col,
        scattered=args.scattered,
        total=args.total,
        incident=args.incident,
        angles=args.angles,
        freq_col=args.freq_col,
        freq_value=args.freq_value,
        mask_col=args.mask_col,
    )
    matrix = import_external(args.input, mapping, config, args.constant)
    formats.save_dataset(matrix, args.output)


def build_parser():
    p = _Parser(prog="aperture-dsm", description="Limited-aperture direct sampling imaging.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("preset", help="emit a built-in scenario as a config file")
    s.add_argument("name", choices=sorted(PRESETS))
    s.add_argument("--alpha-deg", type=float, default=60.0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_preset)

    s = sub.add_parser("simulate", help="synthesize a dataset from a config file")
    s.add_argument("config")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--constant", type=parse_complex, default=0j)
    s.add_argument("--model", choices=("point", "disk"), default="point")
    s.add_argument("--quad-points", type=int, default=32)
    s.set_defaults(func=cmd_simulate)

    def grid_opts(s):
        s.add_argument("--grid", nargs=2, type=int, metavar=("NX", "NY"), default=(101, 101))
        s.add_argument("--half-width", type=float, default=0.1)
        s.add_argument("--mode", choices=("single", "multi"), default="single")
        s.add_argument("--source", type=int, default=1)

    s = sub.add_parser("image", help="indicator map of a dataset")
    s.add_argument("dataset")
    s.add_argument("-o", "--output", required=True)
    grid_opts(s)
    s.add_argument("--constant", type=parse_complex)
    s.add_argument("--format", choices=("csv", "pgm"))
    s.add_argument("--raw", action="store_true", help="skip max-normalization")
    s.add_argument("--peaks", type=int, default=2)
    s.set_defaults(func=cmd_image)

    s = sub.add_parser("structure", help="compare direct maps with the Bessel series")
    s.add_argument("dataset")
    s.add_argument("-o", "--output")
    grid_opts(s)
    s.add_argument("--trunc", type=int)
    s.set_defaults(func=cmd_structure)

    s = sub.add_parser("profile", help="f1/f2 sidelobe profiles as CSV")
    s.add_argument("-o", "--output", required=True, help="output prefix")
    s.add_argument("--frequency", type=float, default=4e9)
    s.add_argument("--half-width", type=float, default=0.1)
    s.add_argument("--samples", type=int, default=401)
    s.add_argument("--trunc", type=int)
    s.set_defaults(func=cmd_profile)

    s = sub.add_parser("import", help="convert an external table to a dataset")
    s.add_argument("input")
    s.add_argument("--config", required=True)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--tx-col", type=int, required=True)
    s.add_argument("--rx-col", type=int, required=True)
    s.add_argument("--scattered", type=_pair)
    s.add_argument("--total", type=_pair)
    s.add_argument("--incident", type=_pair)
    s.add_argument("--angles", choices=("index1", "index0", "degrees"), default="index1")
    s.add_argument("--freq-col", type=int)
    s.add_argument("--freq-value", type=float)
    s.add_argument("--mask-col", type=int)
    s.add_argument("--constant", type=parse_complex, default=0j)
    s.set_defaults(func=cmd_import)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("aperture-dsm: a subcommand is required")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateDataError, TruncationError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ApertureDSMError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
