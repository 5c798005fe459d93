"""Plot job description and validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .schema import SchemaError, file_sha256

KINDS = ("sino", "diskmode", "sigma_decay", "index_lattice", "error_map")

# how many input files each kind accepts (min, max)
_ARITY = {
    "sino": (1, 2),
    "diskmode": (1, 1),
    "sigma_decay": (1, 8),
    "index_lattice": (1, 1),
    "error_map": (2, 2),
}

__all__ = ["KINDS", "PlotJob", "validate_job", "binding_metadata"]


@dataclass(frozen=True)
class PlotJob:
    """One figure: input dtx-v1 file(s), plot kind, output image, style.

    Style keys (all optional): dpi, cmap, title, component (sino:
    abs|re|im), gamma (sino annotation), mode (diskmode: fiber mode k),
    res (disk radial resolution), k (sigma_decay: diagonal class),
    nmax (index_lattice: lattice extent).
    """

    kind: str
    inputs: tuple[str, ...]
    out: str
    style: dict = field(default_factory=dict)


def validate_job(job: PlotJob) -> None:
    if job.kind not in KINDS:
        raise SchemaError(f"unknown plot kind {job.kind!r} (expected one of {', '.join(KINDS)})")
    lo, hi = _ARITY[job.kind]
    if not lo <= len(job.inputs) <= hi:
        raise SchemaError(
            f"plot kind {job.kind!r} takes {lo}..{hi} input file(s), got {len(job.inputs)}"
        )
    for p in job.inputs:
        if not Path(p).is_file():
            raise FileNotFoundError(f"input file not found: {p}")
    suffix = Path(job.out).suffix.lower()
    if suffix not in (".png", ".svg"):
        raise SchemaError(f"output must be .png or .svg, got {job.out!r}")


def binding_metadata(job: PlotJob) -> dict[str, str]:
    """Checksums of the input files, embedded in the image to bind the
    figure to the exact data it was drawn from."""
    names = [Path(p).name for p in job.inputs]
    sums = [file_sha256(p) for p in job.inputs]
    return {
        "dtx-kind": job.kind,
        "dtx-input": ";".join(names),
        "dtx-sha256": ";".join(sums),
    }
