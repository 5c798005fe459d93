"""Readers for the dtx-v1 file formats consumed by the renderers.

plotkit is a pure presentation layer: it parses the serialized documents
itself (no dtx import) and never recomputes transforms or inversions.
The only arithmetic performed on file contents is what rendering needs
(monomial evaluation, magnitudes, differences).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path

import numpy as np

FORMAT = "dtx-v1"

__all__ = [
    "FORMAT",
    "SchemaError",
    "load_doc",
    "load_sino_csv",
    "tensor_modes",
    "eval_terms",
    "file_sha256",
]


class SchemaError(ValueError):
    """Input file does not conform to the expected dtx-v1 schema."""


def load_doc(path: str | Path, kind: str) -> dict:
    """Parse a dtx-v1 JSON document and check its format/kind tags."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    if doc.get("format", FORMAT) != FORMAT:
        raise SchemaError(f"{path}: unsupported format {doc.get('format')!r}")
    if doc.get("kind", kind) != kind:
        raise SchemaError(f"{path}: wrong document kind {doc.get('kind')!r} (expected {kind!r})")
    return doc


def load_sino_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read a sinogram grid CSV (beta,alpha,re,im) into (values, betas, alphas)."""
    reader = csv.reader(io.StringIO(Path(path).read_text()))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{path}: empty file") from None
    if [h.strip() for h in header] != ["beta", "alpha", "re", "im"]:
        raise SchemaError(f"{path}: bad sinogram header {header!r}")
    try:
        rows = [(float(b), float(a), float(re), float(im)) for b, a, re, im in reader]
    except ValueError as exc:
        raise SchemaError(f"{path}: malformed row ({exc})") from exc
    betas = sorted({r[0] for r in rows})
    alphas = sorted({r[1] for r in rows})
    vals = np.zeros((len(betas), len(alphas)), dtype=complex)
    bi = {b: i for i, b in enumerate(betas)}
    ai = {a: i for i, a in enumerate(alphas)}
    for b, a, re, im in rows:
        vals[bi[b], ai[a]] = complex(re, im)
    return vals, np.asarray(betas), np.asarray(alphas)


def tensor_modes(doc: dict) -> dict[int, list]:
    """{k: [[a, b, re, im], ...]} from a tensor document."""
    try:
        return {int(entry["k"]): entry["terms"] for entry in doc["modes"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed tensor document ({exc})") from exc


def eval_terms(terms: list, z: np.ndarray) -> np.ndarray:
    """Evaluate sum c_ab z^a zbar^b for terms rows [a, b, re, im]."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    zb = np.conj(z)
    for row in terms:
        try:
            a, b, re, im = row
        except ValueError as exc:
            raise SchemaError(f"malformed term row {row!r}") from exc
        out += complex(re, im) * z ** int(a) * zb ** int(b)
    return out


def file_sha256(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()
