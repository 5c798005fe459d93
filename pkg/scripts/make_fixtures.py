"""Regenerate the golden CLI fixtures under tests/fixtures/.

The fixture tensor is the normalized degree-1 disk polynomial placed in the
dz^2 slot at gamma = 0; the expected sinogram outputs are whatever the CLI
produces for it today.  Outputs are canonical dtx-v1 files, so a rerun on an
unchanged tree is byte-identical.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

from dtx import cli, formats
from dtx.basis import zhat_poly
from dtx.tensorfield import ModeField

FIXDIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> int:
    FIXDIR.mkdir(parents=True, exist_ok=True)
    f = ModeField(2, {2: zhat_poly(1, 0, 0.0)})
    tensor_path = FIXDIR / "zhat10_dz2.tensor.json"
    tensor_path.write_text(formats.tensor_to_json(f))
    print(f"wrote {tensor_path}")
    os.chdir(FIXDIR)
    rc = cli.main(["sinogram", str(tensor_path), "--gamma", "0"])
    if rc != 0:
        print(f"sinogram failed with exit code {rc}", file=sys.stderr)
        return rc
    for name in ("zhat10_dz2.tensor.sino.csv", "zhat10_dz2.tensor.sino.json"):
        print(f"fixture {FIXDIR / name}: {formats.file_sha256(FIXDIR / name)[:16]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
