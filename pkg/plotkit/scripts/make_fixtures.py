"""Regenerate plotkit test fixtures by driving the dtx CLI.

plotkit consumes dtx output files; this script produces a small frozen
set of them (plus the golden sinogram image) so the plotkit tests run
without dtx installed.  Requires dtx on the python path.
"""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

FIXDIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

CONST_TENSOR = {
    "format": "dtx-v1",
    "kind": "tensor",
    "m": 0,
    "modes": [{"k": 0, "terms": [[0, 0, 1, 0]]}],
}

ORDER4_TENSOR = {
    "format": "dtx-v1",
    "kind": "tensor",
    "m": 4,
    "modes": [
        {"k": -4, "terms": [[0, 0, 0, 1], [0, 1, 0.25, 0]]},
        {"k": -2, "terms": [[0, 1, 0.5, -0.5]]},
        {"k": 0, "terms": [[0, 0, 0.25, 0], [2, 0, 0, 0.5]]},
        {"k": 2, "terms": [[0, 0, 0.5, 0.25], [1, 1, -0.75, 0]]},
        {"k": 4, "terms": [[0, 0, 1, 0], [1, 0, 0, -0.5]]},
    ],
}

EMPTY_COEFFS = {"format": "dtx-v1", "kind": "sino_coeffs", "gamma": 0.0, "coeffs": []}


def dtx(*args: str) -> None:
    cmd = [sys.executable, "-m", "dtx.cli", *args]
    print("+", " ".join(cmd[2:]))
    subprocess.run(cmd, cwd=FIXDIR, check=True)


def main() -> None:
    FIXDIR.mkdir(parents=True, exist_ok=True)
    (FIXDIR / "const.tensor.json").write_text(json.dumps(CONST_TENSOR, indent=1) + "\n")
    (FIXDIR / "order4.tensor.json").write_text(json.dumps(ORDER4_TENSOR, indent=1) + "\n")
    (FIXDIR / "empty.coeffs.json").write_text(json.dumps(EMPTY_COEFFS, indent=1) + "\n")

    dtx("sinogram", "const.tensor.json", "--gamma", "0.3", "--out", "const.sino")
    dtx("sinogram", "order4.tensor.json", "--gamma", "0.3", "--out", "order4.sino")
    dtx("rangecheck", "order4.sino.json", "--order", "4", "--out", "order4.range.json")
    dtx("rangecheck", "empty.coeffs.json", "--order", "4", "--out", "empty.range.json")
    dtx("svd-table", "--gamma", "0", "--nmax", "8", "--out", "sigma8_gamma0.json")
    dtx("svd-table", "--gamma", "0.5", "--nmax", "8", "--out", "sigma8_gamma05.json")

    # golden image, drawn by plotkit itself with default style
    from plotkit import PlotJob, plot

    summary = plot(PlotJob(
        kind="sino",
        inputs=(str(FIXDIR / "const.sino.csv"), str(FIXDIR / "const.sino.json")),
        out=str(FIXDIR / "golden_sino.png"),
    ))
    print(f"golden sinogram: shape {summary['shape']}, gamma {summary['gamma']}")


if __name__ == "__main__":
    main()
