"""Renderer behavior: summaries, golden image, determinism, metadata."""

import hashlib
import json
from pathlib import Path

import numpy as np
import pytest

plotkit = pytest.importorskip("plotkit")
PILImage = pytest.importorskip("PIL.Image")

from plotkit import PlotJob, SchemaError, file_sha256, load_sino_csv, plot  # noqa: E402

FIX = Path(__file__).parent / "fixtures"


def _sha(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _png_text(path) -> dict:
    with PILImage.open(path) as im:
        return dict(im.text)


# -- sinogram --------------------------------------------------------------


def test_sino_golden_image(tmp_path):
    """Default render of the constant-function fixture reproduces the
    committed golden image byte for byte."""
    out = tmp_path / "sino.png"
    summary = plot(PlotJob(
        kind="sino",
        inputs=(str(FIX / "const.sino.csv"), str(FIX / "const.sino.json")),
        out=str(out),
    ))
    assert summary["shape"] == [32, 12]
    assert summary["gamma"] == pytest.approx(0.3)
    assert _sha(out) == _sha(FIX / "golden_sino.png")


def test_sino_render_is_deterministic(tmp_path):
    job = lambda p: PlotJob(kind="sino", inputs=(str(FIX / "const.sino.csv"),), out=str(p))
    plot(job(tmp_path / "a.png"))
    plot(job(tmp_path / "b.png"))
    assert _sha(tmp_path / "a.png") == _sha(tmp_path / "b.png")


def test_const_fixture_has_alpha_symmetric_bands():
    """The constant-function sinogram depends on alpha alone and is even
    in alpha, so the heatmap shows alpha-symmetric horizontal bands."""
    vals, betas, alphas = load_sino_csv(FIX / "const.sino.csv")
    assert np.allclose(vals.imag, 0.0, atol=1e-13)
    spread = np.abs(vals - vals[:1, :]).max()   # beta-independent
    assert spread < 1e-12
    assert np.allclose(alphas, -alphas[::-1], atol=1e-13)
    assert np.allclose(vals.real, vals.real[:, ::-1], atol=1e-12)


def test_sino_gamma_from_style(tmp_path):
    out = tmp_path / "s.png"
    summary = plot(PlotJob(kind="sino", inputs=(str(FIX / "const.sino.csv"),),
                           out=str(out), style={"gamma": -0.5, "component": "re"}))
    assert summary["gamma"] == -0.5


def test_sino_empty_grid_is_ok(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("beta,alpha,re,im\n")
    out = tmp_path / "s.png"
    summary = plot(PlotJob(kind="sino", inputs=(str(p),), out=str(out)))
    assert summary["shape"] == [0, 0]
    assert out.is_file()


def test_sino_bad_component(tmp_path):
    with pytest.raises(SchemaError, match="component"):
        plot(PlotJob(kind="sino", inputs=(str(FIX / "const.sino.csv"),),
                     out=str(tmp_path / "s.png"), style={"component": "phase"}))


# -- disk plots ------------------------------------------------------------


def test_diskmode_extreme_mode_default(tmp_path):
    summary = plot(PlotJob(kind="diskmode", inputs=(str(FIX / "order4.tensor.json"),),
                           out=str(tmp_path / "d.png")))
    assert summary["mode"] == 4 and summary["order"] == 4
    # f_4 = 1 - 0.5i z has |f_4| -> 1.5 at z = i; cell centers stop just
    # inside the rim
    assert 1.4 < summary["max_abs"] < 1.5


def test_diskmode_mode_selection(tmp_path):
    summary = plot(PlotJob(kind="diskmode", inputs=(str(FIX / "order4.tensor.json"),),
                           out=str(tmp_path / "d.png"), style={"mode": -2, "res": 40}))
    assert summary["mode"] == -2
    # f_-2 = (0.5 - 0.5i) zbar
    assert summary["max_abs"] == pytest.approx(np.hypot(0.5, 0.5) * (1 - 1 / 80), rel=1e-12)


def test_diskmode_missing_mode(tmp_path):
    with pytest.raises(SchemaError, match="mode 3 not present"):
        plot(PlotJob(kind="diskmode", inputs=(str(FIX / "order4.tensor.json"),),
                     out=str(tmp_path / "d.png"), style={"mode": 3}))


def test_error_map_identical_tensors_is_zero(tmp_path):
    t = str(FIX / "order4.tensor.json")
    summary = plot(PlotJob(kind="error_map", inputs=(t, t),
                           out=str(tmp_path / "e.png"), style={"res": 24}))
    assert summary["space"] == "disk"
    assert summary["max_abs"] == 0.0


def test_error_map_tensor_difference(tmp_path):
    summary = plot(PlotJob(
        kind="error_map",
        inputs=(str(FIX / "order4.tensor.json"), str(FIX / "const.tensor.json")),
        out=str(tmp_path / "e.png"), style={"res": 24},
    ))
    assert summary["max_abs"] > 0.5


def test_error_map_csv_pair(tmp_path):
    c = str(FIX / "const.sino.csv")
    summary = plot(PlotJob(kind="error_map", inputs=(c, c), out=str(tmp_path / "e.png")))
    assert summary["space"] == "sinogram"
    assert summary["max_abs"] == 0.0


def test_error_map_csv_perturbation(tmp_path):
    text = (FIX / "const.sino.csv").read_text()
    lines = text.splitlines()
    b, a, re, im = lines[1].split(",")
    lines[1] = ",".join([b, a, str(float(re) + 0.25), im])
    p = tmp_path / "bumped.csv"
    p.write_text("\n".join(lines) + "\n")
    summary = plot(PlotJob(kind="error_map", inputs=(str(FIX / "const.sino.csv"), str(p)),
                           out=str(tmp_path / "e.png")))
    assert summary["max_abs"] == pytest.approx(0.25, abs=1e-12)


def test_error_map_grid_mismatch(tmp_path):
    text = (FIX / "const.sino.csv").read_text()
    lines = text.splitlines()
    p = tmp_path / "short.csv"
    p.write_text("\n".join(lines[:50]) + "\n")
    with pytest.raises(SchemaError, match="grids do not match"):
        plot(PlotJob(kind="error_map", inputs=(str(FIX / "const.sino.csv"), str(p)),
                     out=str(tmp_path / "e.png")))


def test_error_map_mixed_inputs(tmp_path):
    with pytest.raises(SchemaError, match="two .csv grids or two .json tensors"):
        plot(PlotJob(
            kind="error_map",
            inputs=(str(FIX / "const.sino.csv"), str(FIX / "order4.tensor.json")),
            out=str(tmp_path / "e.png"),
        ))


# -- singular value decay --------------------------------------------------


def test_sigma_decay_two_tables(tmp_path):
    summary = plot(PlotJob(
        kind="sigma_decay",
        inputs=(str(FIX / "sigma8_gamma0.json"), str(FIX / "sigma8_gamma05.json")),
        out=str(tmp_path / "g.png"),
    ))
    assert summary["series"] == 2
    assert summary["points"] == 18  # n = 0..8 per table
    assert summary["k"] == 0


def test_sigma_decay_k_class(tmp_path):
    summary = plot(PlotJob(kind="sigma_decay", inputs=(str(FIX / "sigma8_gamma0.json"),),
                           out=str(tmp_path / "g.png"), style={"k": 5}))
    assert summary["points"] == 4  # n = 5..8


def test_sigma_decay_k_out_of_table(tmp_path):
    with pytest.raises(SchemaError, match="no entries with k=12"):
        plot(PlotJob(kind="sigma_decay", inputs=(str(FIX / "sigma8_gamma0.json"),),
                     out=str(tmp_path / "g.png"), style={"k": 12}))


# -- index lattice ---------------------------------------------------------


def test_index_lattice_order4(tmp_path):
    summary = plot(PlotJob(kind="index_lattice", inputs=(str(FIX / "order4.range.json"),),
                           out=str(tmp_path / "l.png")))
    assert summary["occupied"] == [1, 2]
    assert summary["central"] is True
    assert summary["order"] == 4
    assert summary["points"] == sum(n + 7 for n in range(9))


def test_index_lattice_empty_report(tmp_path):
    out = tmp_path / "l.png"
    summary = plot(PlotJob(kind="index_lattice", inputs=(str(FIX / "empty.range.json"),),
                           out=str(out)))
    assert summary["occupied"] == []
    assert summary["central"] is False
    assert out.is_file()


def test_index_lattice_malformed_report(tmp_path):
    p = tmp_path / "r.json"
    p.write_text('{"format": "dtx-v1", "kind": "range_report", "order": 4}')
    with pytest.raises(SchemaError, match="malformed range report"):
        plot(PlotJob(kind="index_lattice", inputs=(str(p),), out=str(tmp_path / "l.png")))


# -- metadata binding ------------------------------------------------------


def test_png_metadata_binds_every_kind(tmp_path):
    jobs = [
        PlotJob(kind="sino", inputs=(str(FIX / "const.sino.csv"), str(FIX / "const.sino.json")),
                out=str(tmp_path / "a.png")),
        PlotJob(kind="diskmode", inputs=(str(FIX / "order4.tensor.json"),),
                out=str(tmp_path / "b.png"), style={"res": 24}),
        PlotJob(kind="sigma_decay", inputs=(str(FIX / "sigma8_gamma0.json"),),
                out=str(tmp_path / "c.png")),
        PlotJob(kind="index_lattice", inputs=(str(FIX / "order4.range.json"),),
                out=str(tmp_path / "d.png")),
        PlotJob(kind="error_map",
                inputs=(str(FIX / "order4.tensor.json"), str(FIX / "const.tensor.json")),
                out=str(tmp_path / "e.png"), style={"res": 24}),
    ]
    for job in jobs:
        summary = plot(job)
        meta = _png_text(job.out)
        assert meta["dtx-kind"] == job.kind
        assert meta["dtx-input"] == ";".join(Path(p).name for p in job.inputs)
        assert meta["dtx-sha256"].split(";") == [file_sha256(p) for p in job.inputs]
        assert summary["checksums"] == meta["dtx-sha256"].split(";")


def test_svg_output_carries_checksum(tmp_path):
    out = tmp_path / "l.svg"
    plot(PlotJob(kind="index_lattice", inputs=(str(FIX / "order4.range.json"),),
                 out=str(out)))
    text = out.read_text()
    assert text.lstrip().startswith("<?xml")
    assert f"dtx-sha256={file_sha256(FIX / 'order4.range.json')}" in text
    assert "<dc:date>" not in text  # no timestamp: byte-stable output


def test_svg_render_is_deterministic(tmp_path):
    for name in ("a.svg", "b.svg"):
        plot(PlotJob(kind="index_lattice", inputs=(str(FIX / "order4.range.json"),),
                     out=str(tmp_path / name)))
    assert _sha(tmp_path / "a.svg") == _sha(tmp_path / "b.svg")


def test_summary_reports_output_path(tmp_path):
    out = tmp_path / "x.png"
    summary = plot(PlotJob(kind="index_lattice", inputs=(str(FIX / "empty.range.json"),),
                           out=str(out)))
    assert summary["out"] == str(out)
    assert summary["kind"] == "index_lattice"
