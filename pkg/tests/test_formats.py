import hashlib
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtx.basis import sigma, zhat_poly
from dtx.dataspace import SinoCoeffs, range_check
from dtx.formats import (
    canonical_json,
    file_sha256,
    fmt_float,
    itt_from_json,
    itt_to_json,
    range_report_to_json,
    sigma_table_to_json,
    sino_coeffs_from_json,
    sino_coeffs_to_json,
    sino_grid_from_csv,
    sino_grid_to_csv,
    tensor_from_json,
    tensor_to_json,
)
from dtx.invert import itt_forward_coeffs, to_itt
from dtx.tensorfield import ModeField, PolyZZbar
from dtx.xray import TtSpectrum, forward_spectral, forward_spectral_scalar


# -- float and JSON rendering ----------------------------------------------


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_float_round_trips_doubles(x):
    assert float(fmt_float(x)) == x


def test_fmt_float_examples():
    assert fmt_float(1.0) == "1"
    assert fmt_float(0.1) == "0.10000000000000001"
    assert fmt_float(math.pi) == "3.1415926535897931"
    assert fmt_float(-0.0) == "0"  # negative zero canonicalizes


def test_fmt_float_rejects_non_finite():
    for bad in (math.nan, math.inf, -math.inf):
        with pytest.raises(ValueError):
            fmt_float(bad)


def test_canonical_json_sorts_keys_and_is_stable():
    doc = {"b": 1, "a": [1.5, 2], "c": {"y": True, "x": None}}
    text = canonical_json(doc)
    assert text == canonical_json(doc)
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert parsed == doc


def test_canonical_json_bools_are_not_ints():
    text = canonical_json({"flag": True, "n": 1})
    assert "true" in text
    assert '"flag": 1' not in text


def test_canonical_json_flat_numeric_lists_inline():
    text = canonical_json({"row": [1, 2.5, -3]})
    assert "[1, 2.5, -3]" in text


def test_canonical_json_rejects_bad_input():
    with pytest.raises(TypeError):
        canonical_json({1: "non-string key"})
    with pytest.raises(TypeError):
        canonical_json({"z": 1 + 2j})
    with pytest.raises(ValueError):
        canonical_json({"x": math.nan})


# -- tensor fields ---------------------------------------------------------


def test_tensor_round_trip():
    f = ModeField(
        2,
        {
            2: PolyZZbar({(1, 0): 1.0 - 0.5j, (0, 0): 0.25}),
            0: PolyZZbar({(1, 1): -2.0}),
            -2: PolyZZbar({(0, 3): 1.0j}),
        },
    )
    text = tensor_to_json(f)
    g = tensor_from_json(text)
    assert g.order == 2
    assert sorted(g.modes) == sorted(f.modes)
    for k in f.modes:
        assert (g.mode(k) - f.mode(k)).max_abs_coeff() == 0.0
    assert tensor_to_json(g) == text  # byte-stable re-serialization


def test_tensor_json_rejects_wrong_kind():
    text = tensor_to_json(ModeField(1, {1: PolyZZbar.one()}))
    doc = json.loads(text)
    doc["kind"] = "sino_coeffs"
    with pytest.raises(ValueError, match="wrong document kind"):
        tensor_from_json(json.dumps(doc))
    doc["kind"] = "tensor"
    doc["format"] = "dtx-v0"
    with pytest.raises(ValueError, match="unsupported format"):
        tensor_from_json(json.dumps(doc))


def test_tensor_json_lenient_without_tags():
    # documents without format/kind fields are accepted as-is
    f = ModeField(1, {-1: PolyZZbar({(0, 1): 2.0})})
    doc = json.loads(tensor_to_json(f))
    del doc["format"], doc["kind"]
    g = tensor_from_json(json.dumps(doc))
    assert (g.mode(-1) - f.mode(-1)).max_abs_coeff() == 0.0


# -- sinogram coefficients -------------------------------------------------


def test_sino_coeffs_round_trip():
    u = SinoCoeffs(
        0.3,
        {
            (2, 1, "+"): 1.0 - 2.0j,
            (0, 0, "+"): 0.5,
            (3, 4, "-"): -1.0j,
            (3, 0, "-"): 2.0,
        },
    )
    text = sino_coeffs_to_json(u)
    v = sino_coeffs_from_json(text)
    assert v.gamma == u.gamma
    assert v.data == u.data
    assert sino_coeffs_to_json(v) == text


def test_sino_coeffs_json_row_order():
    u = SinoCoeffs(0.0, {(1, 0, "-"): 1.0, (0, 0, "+"): 1.0, (2, 1, "+"): 1.0})
    rows = json.loads(sino_coeffs_to_json(u))["coeffs"]
    keys = [(r["parity"], r["n"], r["k"]) for r in rows]
    assert keys == sorted(keys)  # "+" sorts before "-" in ASCII


# -- sinogram grids --------------------------------------------------------


def test_sino_grid_csv_round_trip():
    betas = np.linspace(0.0, 2 * math.pi, 5, endpoint=False)
    alphas = np.array([-0.7, 0.0, 0.7])
    rng = np.random.default_rng(5)
    vals = rng.normal(size=(5, 3)) + 1j * rng.normal(size=(5, 3))
    text = sino_grid_to_csv(vals, betas, alphas)
    assert text.splitlines()[0] == "beta,alpha,re,im"
    v2, b2, a2 = sino_grid_from_csv(text)
    assert np.array_equal(b2, betas)
    assert np.array_equal(a2, alphas)
    assert np.array_equal(v2, vals)
    assert sino_grid_to_csv(v2, b2, a2) == text


def test_sino_grid_csv_header_guard():
    with pytest.raises(ValueError, match="bad header"):
        sino_grid_from_csv("b,a,re,im\n0,0,1,0\n")


def test_sino_grid_csv_empty():
    vals, betas, alphas = sino_grid_from_csv("beta,alpha,re,im\n")
    assert vals.shape == (0, 0)
    assert betas.size == 0 and alphas.size == 0


# -- iterated-tt forms -----------------------------------------------------


def test_itt_json_even_round_trip():
    gamma = 0.4
    u = forward_spectral_scalar({(2, 1): 1.0 - 1.0j}, gamma) + forward_spectral(
        TtSpectrum(m=2, c_plus={1: 0.5}, c_minus={2: -0.25j}), gamma
    )
    itt = to_itt(u, 2)
    text = itt_to_json(itt, gamma)
    itt2, gamma2 = itt_from_json(text)
    assert gamma2 == gamma
    assert itt2.order == 2
    again = itt_forward_coeffs(itt2, gamma2)
    assert (again - u).norm() < 1e-9 * u.norm()
    assert itt_to_json(itt2, gamma2) == text


def test_itt_json_odd_round_trip_with_potential():
    gamma = 0.3
    w1_data = {
        (n, k, "-"): sigma(n, k, gamma) * c
        for (n, k), c in {(2, 1): 1.0, (3, 2): 0.5j}.items()
    }
    u = forward_spectral(
        TtSpectrum(m=1, c_plus={1: 1.0}, c_minus={2: -1.0j}), gamma
    ) + SinoCoeffs(gamma, w1_data)
    itt = to_itt(u, 3)
    assert itt.curl_potential is not None
    text = itt_to_json(itt, gamma)
    itt2, _ = itt_from_json(text)
    # the rebuilt potential has the same source polynomial
    diff = itt2.curl_potential.source - itt.curl_potential.source
    assert diff.max_abs_coeff() < 1e-12
    again = itt_forward_coeffs(itt2, gamma)
    assert (again - u).norm() < 1e-9 * u.norm()
    assert itt_to_json(itt2, gamma) == text


def test_itt_json_h_mode_exponent_guard():
    gamma = 0.0
    u = SinoCoeffs(gamma, {(2, 1, "-"): sigma(2, 1, gamma)})
    itt = to_itt(u, 1)
    doc = json.loads(itt_to_json(itt, gamma))
    q = doc["h_modes"][0]["q"]
    doc["h_modes"][0]["terms"][0][0] = 2 * q  # breaks the (q, e) parity pairing
    with pytest.raises(ValueError, match="inconsistent h mode term"):
        itt_from_json(json.dumps(doc))


# -- reports and tables ----------------------------------------------------


def test_range_report_round_trip():
    gamma = 0.0
    u = forward_spectral(TtSpectrum(m=2, c_plus={2: 1.0}), gamma)
    report = range_check(u, 2)
    text = range_report_to_json(report)
    doc = json.loads(text)
    assert doc["format"] == "dtx-v1"
    assert doc["kind"] == "range_report"
    assert doc["pass"] is True
    assert doc["conditions"]["a"]["pass"] is True


def test_sigma_table_contents():
    gamma = 0.5
    doc = json.loads(sigma_table_to_json(gamma, 3))
    assert doc["kind"] == "sigma_table"
    assert len(doc["entries"]) == 10
    for row in doc["entries"]:
        assert row["sigma"] == pytest.approx(sigma(row["n"], row["k"], gamma), rel=1e-15)


def test_sigma_table_with_basis_terms():
    gamma = 0.0
    doc = json.loads(sigma_table_to_json(gamma, 2, with_basis=True))
    row = next(r for r in doc["entries"] if (r["n"], r["k"]) == (2, 1))
    zp = zhat_poly(2, 1, gamma)
    terms = {(a, b): complex(re, im) for a, b, re, im in row["zernike_terms"]}
    assert set(terms) == set(zp.terms)
    for key, c in zp.terms.items():
        assert terms[key] == pytest.approx(c, rel=1e-15)


def test_file_sha256(tmp_path):
    path = tmp_path / "blob.bin"
    payload = b"weighted ray transform test payload" * 1000
    path.write_bytes(payload)
    assert file_sha256(path) == hashlib.sha256(payload).hexdigest()
