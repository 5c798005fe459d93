"""plotkit: figure generation for dtx-v1 output files.

Renders sinogram heatmaps, disk-mode magnitude and error maps, singular
value decay curves, and range index-lattice diagrams from the CSV/JSON
documents the dtx CLI writes.  Pure presentation: files in, images out,
with input checksums embedded in the image metadata.
"""

from .jobs import KINDS, PlotJob, binding_metadata, validate_job
from .lattice import block_legs, central_occupied, lattice_layout, occupied_blocks
from .render import plot
from .schema import SchemaError, eval_terms, file_sha256, load_doc, load_sino_csv

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "PlotJob",
    "SchemaError",
    "binding_metadata",
    "block_legs",
    "central_occupied",
    "eval_terms",
    "file_sha256",
    "lattice_layout",
    "load_doc",
    "load_sino_csv",
    "occupied_blocks",
    "plot",
    "validate_job",
    "__version__",
]
