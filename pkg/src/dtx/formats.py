"""dtx-v1 file formats: canonical JSON/CSV serialization.

All floats print with 17 significant digits ("%.17g"), which round-trips
IEEE doubles exactly, so fixed inputs produce byte-identical files.  JSON
objects are rendered with sorted keys; list orders are fixed by the
schemas (modes by k, coefficients by (parity, n, k), terms by exponent).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from typing import Any

import numpy as np

from .dataspace import SinoCoeffs
from .tensorfield import IttForm, ModeField, PolyZZbar

FORMAT = "dtx-v1"

__all__ = [
    "FORMAT",
    "fmt_float",
    "canonical_json",
    "tensor_to_json",
    "tensor_from_json",
    "sino_coeffs_to_json",
    "sino_coeffs_from_json",
    "sino_grid_to_csv",
    "sino_grid_from_csv",
    "itt_to_json",
    "itt_from_json",
    "range_report_to_json",
    "sigma_table_to_json",
    "file_sha256",
]


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"fmt_float: non-finite value {x!r}")
    if x == 0.0:
        x = 0.0  # canonicalize -0.0 so serialize/parse/serialize is byte-stable
    return "%.17g" % x


def _render(obj: Any, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj)
        for i, key in enumerate(keys):
            if not isinstance(key, str):
                raise TypeError(f"canonical_json: non-string key {key!r}")
            out.append(f'{pad}  {json.dumps(key)}: ')
            _render(obj[key], indent + 1, out)
            out.append(",\n" if i < len(keys) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            out.append("[]")
            return
        flat = all(isinstance(v, (int, float, bool)) and not isinstance(v, bool) for v in obj)
        if flat:
            body = ", ".join(
                str(v) if isinstance(v, (int, np.integer)) and not isinstance(v, bool) else fmt_float(v)
                for v in obj
            )
            out.append(f"[{body}]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad + "  ")
            _render(v, indent + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(fmt_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif obj is None:
        out.append("null")
    else:
        raise TypeError(f"canonical_json: unsupported type {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    out: list[str] = []
    _render(obj, 0, out)
    out.append("\n")
    return "".join(out)


def _check_format(doc: dict, kind: str | None = None) -> None:
    if "format" in doc and doc["format"] != FORMAT:
        raise ValueError(f"unsupported format {doc['format']!r} (expected {FORMAT!r})")
    if kind is not None and "kind" in doc and doc["kind"] != kind:
        raise ValueError(f"wrong document kind {doc['kind']!r} (expected {kind!r})")


# -- polynomial tensors ----------------------------------------------------


def _poly_terms(p: PolyZZbar) -> list[list]:
    return [
        [a, b, float(c.real), float(c.imag)]
        for (a, b), c in sorted(p.terms.items())
    ]


def _poly_from_terms(rows) -> PolyZZbar:
    return PolyZZbar({(int(a), int(b)): complex(re, im) for a, b, re, im in rows})


def tensor_to_json(f: ModeField) -> str:
    doc = {
        "format": FORMAT,
        "kind": "tensor",
        "m": f.order,
        "modes": [
            {"k": k, "terms": _poly_terms(f.mode(k))}
            for k in sorted(f.modes)
        ],
    }
    return canonical_json(doc)


def tensor_from_json(text: str) -> ModeField:
    doc = json.loads(text)
    _check_format(doc, "tensor")
    modes = {int(entry["k"]): _poly_from_terms(entry["terms"]) for entry in doc["modes"]}
    return ModeField(int(doc["m"]), modes)


# -- sinogram coefficients -------------------------------------------------


def sino_coeffs_to_json(u: SinoCoeffs) -> str:
    rows = []
    for (n, k, parity) in sorted(u.data, key=lambda t: (t[2], t[0], t[1])):
        c = u.data[(n, k, parity)]
        rows.append(
            {"n": n, "k": k, "parity": parity, "re": float(c.real), "im": float(c.imag)}
        )
    doc = {"format": FORMAT, "kind": "sino_coeffs", "gamma": u.gamma, "coeffs": rows}
    return canonical_json(doc)


def sino_coeffs_from_json(text: str) -> SinoCoeffs:
    doc = json.loads(text)
    _check_format(doc, "sino_coeffs")
    data = {}
    for row in doc["coeffs"]:
        key = (int(row["n"]), int(row["k"]), str(row["parity"]))
        data[key] = complex(row["re"], row["im"])
    return SinoCoeffs(float(doc["gamma"]), data)


# -- sinogram grids --------------------------------------------------------


def sino_grid_to_csv(values: np.ndarray, betas: np.ndarray, alphas: np.ndarray) -> str:
    values = np.asarray(values)
    buf = io.StringIO()
    buf.write("beta,alpha,re,im\n")
    for i, b in enumerate(betas):
        for j, a in enumerate(alphas):
            v = complex(values[i, j])
            buf.write(
                f"{fmt_float(b)},{fmt_float(a)},{fmt_float(v.real)},{fmt_float(v.imag)}\n"
            )
    return buf.getvalue()


def sino_grid_from_csv(text: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (values[mbeta, nalpha], betas, alphas) from canonical row order."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if [h.strip() for h in header] != ["beta", "alpha", "re", "im"]:
        raise ValueError(f"sino_grid_from_csv: bad header {header!r}")
    rows = [(float(b), float(a), float(re), float(im)) for b, a, re, im in reader]
    if not rows:
        return np.zeros((0, 0), dtype=complex), np.array([]), np.array([])
    betas = sorted({r[0] for r in rows})
    alphas = sorted({r[1] for r in rows})
    bi = {b: i for i, b in enumerate(betas)}
    ai = {a: i for i, a in enumerate(alphas)}
    vals = np.zeros((len(betas), len(alphas)), dtype=complex)
    for b, a, re, im in rows:
        vals[bi[b], ai[a]] = complex(re, im)
    return vals, np.array(betas), np.array(alphas)


# -- iterated-tt forms -----------------------------------------------------


def itt_to_json(itt: IttForm, gamma: float) -> str:
    from .xray import tt_spectrum_from_field

    tt_rows = []
    for j in sorted(itt.tt_parts):
        t = tt_spectrum_from_field(itt.tt_parts[j], gamma)
        tt_rows.append(
            {
                "j": j,
                "dz_coeffs": [
                    [n, float(c.real), float(c.imag)] for n, c in sorted(t.c_plus.items())
                ],
                "dzbar_coeffs": [
                    [n, float(c.real), float(c.imag)] for n, c in sorted(t.c_minus.items())
                ],
            }
        )
    h_rows = []
    if itt.curl_potential is not None:
        for q in sorted(itt.curl_potential.modes):
            fn = itt.curl_potential.modes[q]
            h_rows.append(
                {
                    "q": q,
                    "terms": [
                        [e, float(c.real), float(c.imag)] for e, c in sorted(fn.terms, key=lambda t: t[0])
                    ],
                }
            )
    doc = {
        "format": FORMAT,
        "kind": "itt",
        "m": itt.order,
        "gamma": gamma,
        "scalar": _poly_terms(itt.scalar_part) if itt.scalar_part is not None else [],
        "h_modes": h_rows,
        "tt": tt_rows,
    }
    return canonical_json(doc)


def itt_from_json(text: str) -> tuple[IttForm, float]:
    from .invert import solve_potential
    from .xray import TtSpectrum, tt_field_from_spectrum

    doc = json.loads(text)
    _check_format(doc, "itt")
    m = int(doc["m"])
    gamma = float(doc["gamma"])
    r = m % 2
    tt_parts = {}
    for row in doc["tt"]:
        j = int(row["j"])
        t = TtSpectrum(
            m=2 * j + r,
            c_plus={int(n): complex(re, im) for n, re, im in row["dz_coeffs"]},
            c_minus={int(n): complex(re, im) for n, re, im in row["dzbar_coeffs"]},
        )
        tt_parts[j] = tt_field_from_spectrum(t, gamma)
    scalar = _poly_from_terms(doc["scalar"]) if doc["scalar"] else None
    pot = None
    if doc["h_modes"]:
        # each stored term (q, e, c) encodes the source monomial with
        # a - b = q - 1, a + b = e - q, so w1 rebuilds exactly
        terms = {}
        for row in doc["h_modes"]:
            q = int(row["q"])
            for e, re, im in row["terms"]:
                e = int(e)
                a2, b2 = e - 1, e - 2 * q + 1
                if a2 % 2 or b2 % 2 or a2 < 0 or b2 < 0:
                    raise ValueError(f"itt_from_json: inconsistent h mode term (q={q}, e={e})")
                key = (a2 // 2, b2 // 2)
                terms[key] = terms.get(key, 0.0) + complex(re, im)
        pot = solve_potential(PolyZZbar(terms), gamma)
    itt = IttForm(order=m, tt_parts=tt_parts, scalar_part=scalar, curl_potential=pot)
    return itt, gamma


# -- reports and tables ----------------------------------------------------


def range_report_to_json(report: dict) -> str:
    doc = dict(report)
    doc["format"] = FORMAT
    doc["kind"] = "range_report"
    return canonical_json(doc)


def sigma_table_to_json(gamma: float, n_max: int, with_basis: bool = False) -> str:
    from .basis import sigma, zernike_build

    entries = []
    for n in range(n_max + 1):
        for k in range(n + 1):
            row: dict[str, Any] = {"n": n, "k": k, "sigma": sigma(n, k, gamma)}
            if with_basis:
                zp = zernike_build(n, k, gamma)
                row["zernike_terms"] = _poly_terms(zp.coeffs.scale(1.0 / zp.norm))
            entries.append(row)
    doc = {"format": FORMAT, "kind": "sigma_table", "gamma": gamma, "entries": entries}
    return canonical_json(doc)


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()
