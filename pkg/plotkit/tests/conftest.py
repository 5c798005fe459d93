"""Resolve the package-vs-project-directory import clash.

When pytest runs from the parent repo with the repo root on sys.path,
the plotkit/ project directory shadows the installed package as a bare
namespace package.  Detect that and load the real package from the
adjacent src/ tree instead.  If plotkit is genuinely absent the import
guards in the test modules skip as usual.
"""

import importlib.util
import sys
from pathlib import Path

try:
    import plotkit
except ImportError:
    plotkit = None

if plotkit is not None and not hasattr(plotkit, "__version__"):
    init = Path(__file__).resolve().parent.parent / "src" / "plotkit" / "__init__.py"
    spec = importlib.util.spec_from_file_location(
        "plotkit", init, submodule_search_locations=[str(init.parent)]
    )
    module = importlib.util.module_from_spec(spec)
    sys.modules["plotkit"] = module
    spec.loader.exec_module(module)
