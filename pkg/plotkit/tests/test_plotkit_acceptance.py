"""Acceptance gate for the plotting package (criterion 11).

The index-lattice figure for an order-4 range report must mark exactly
the diagonal blocks the report says carry energy, and the figure must be
bound to the report file by an embedded checksum.
"""

import hashlib
import json
from pathlib import Path

import pytest

plotkit = pytest.importorskip("plotkit")
PILImage = pytest.importorskip("PIL.Image")

from plotkit import PlotJob, plot  # noqa: E402

FIX = Path(__file__).parent / "fixtures"


def test_criterion_11_index_lattice_binding(tmp_path, capsys):
    report = FIX / "order4.range.json"
    doc = json.loads(report.read_text())
    expected = sorted(int(row["j"]) for row in doc["conditions"]["b"] if row["norm"] > 0)

    out = tmp_path / "lattice.png"
    summary = plot(PlotJob(kind="index_lattice", inputs=(str(report),), out=str(out)))
    drawn = summary["occupied"]

    with PILImage.open(out) as im:
        meta = dict(im.text)
    bound = meta.get("dtx-sha256") == hashlib.sha256(report.read_bytes()).hexdigest()

    ok = drawn == expected == [1, 2] and bound
    line = (
        f"[criterion 11] {'PASS' if ok else 'FAIL'} index-lattice figure: "
        f"drawn diagonals {drawn} == report blocks {expected}; "
        f"checksum binding {'ok' if bound else 'BROKEN'}"
    )
    with capsys.disabled():
        print(line, flush=True)
    assert ok, line
