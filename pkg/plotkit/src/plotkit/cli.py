"""Command line interface: dtx-plot <kind> inputs... [--out FIG.png]."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .jobs import PlotJob
from .render import plot
from .schema import SchemaError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SCHEMA = 2

# CLI spelling (hyphenated) -> PlotJob.kind
_COMMANDS = {
    "sino": "sino",
    "diskmode": "diskmode",
    "sigma-decay": "sigma_decay",
    "index-lattice": "index_lattice",
    "error-map": "error_map",
}

_STYLE_FLAGS = ("dpi", "cmap", "title", "component", "gamma", "mode", "res", "k", "nmax")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output image path (.png or .svg); default <input stem>.<kind>.png")
    p.add_argument("--dpi", type=float, help="figure resolution (default 120)")
    p.add_argument("--cmap", help="matplotlib colormap name")
    p.add_argument("--title", help="override the figure title")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="dtx-plot",
        description="render figures from dtx-v1 output files (CSV sinograms, JSON reports)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sino", help="sinogram heatmap over (beta, alpha)")
    p.add_argument("inputs", nargs="+", metavar="FILE",
                   help="sinogram CSV (optionally followed by the coefficient JSON for the gamma annotation)")
    p.add_argument("--component", choices=("abs", "re", "im"), help="value component (default abs)")
    p.add_argument("--gamma", type=float, help="weight exponent for the measure annotation")
    _add_common(p)

    p = sub.add_parser("diskmode", help="disk heatmap |f_k(z)| of one fiber mode of a tensor file")
    p.add_argument("inputs", nargs=1, metavar="TENSOR_JSON")
    p.add_argument("--mode", type=int, help="fiber mode k (default: extreme mode)")
    p.add_argument("--res", type=int, help="radial resolution (default 120)")
    _add_common(p)

    p = sub.add_parser("sigma-decay", help="log-log singular value decay from sigma-table files")
    p.add_argument("inputs", nargs="+", metavar="SIGMA_JSON")
    p.add_argument("-k", type=int, dest="k", help="diagonal class k (default 0)")
    _add_common(p)

    p = sub.add_parser("index-lattice", help="range block diagram on the (n, k) lattice from a range report")
    p.add_argument("inputs", nargs=1, metavar="REPORT_JSON")
    p.add_argument("--nmax", type=int, help="lattice extent (default 8)")
    _add_common(p)

    p = sub.add_parser("error-map", help="absolute difference of two sinogram CSVs or two tensor JSONs")
    p.add_argument("inputs", nargs=2, metavar="FILE")
    p.add_argument("--res", type=int, help="radial resolution for the disk variant (default 120)")
    _add_common(p)

    args = ap.parse_args(argv)
    kind = _COMMANDS[args.command]
    style = {
        name: getattr(args, name)
        for name in _STYLE_FLAGS
        if getattr(args, name, None) is not None
    }
    out = args.out or f"{Path(args.inputs[0]).stem}.{kind}.png"
    job = PlotJob(kind=kind, inputs=tuple(args.inputs), out=out, style=style)
    try:
        summary = plot(job)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    detail = ", ".join(
        f"{k}={v}" for k, v in summary.items() if k not in ("kind", "out", "checksums")
    )
    print(f"wrote {summary['out']} ({detail})")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
