"""dtx: the d^gamma-weighted X-ray transform on the unit disk.

Forward transform of symmetric m-tensor fields along chords, its singular
value decomposition over fan-beam / disk polynomial bases, range
characterization, and reconstruction of the iterated
transverse-traceless representative (SVD route and closed-form kernel
route).
"""

from .basis import PsiIndex, normalization_audit, psi_eval, sigma, zhat_poly
from .dataspace import SinoCoeffs, block_of, project, range_check
from .geometry import FanBeamPoint, PhasePoint, chord_point, fanbeam_project, scatter_antipodal
from .invert import (
    invert_pi0,
    kernel_G,
    recon_tt_kernel,
    recon_tt_svd,
    recover_w1,
    solve_potential,
    to_itt,
)
from .quadrature import SinoGridSpec, boundary_inner, chord_integrate, jacobi_rule, make_grid_spec
from .specfun import WeightParam, beta, gegenbauer, lhat
from .tensorfield import (
    IttForm,
    ModeField,
    PolyZZbar,
    apply_X,
    apply_Xperp,
    holo_project,
    lift_ell_m,
    star_d,
)
from .xray import SinoGrid, TtSpectrum, forward_sino, forward_spectral, sino_project

__version__ = "0.1.0"

__all__ = [
    "FanBeamPoint",
    "IttForm",
    "ModeField",
    "PhasePoint",
    "PolyZZbar",
    "PsiIndex",
    "SinoCoeffs",
    "SinoGrid",
    "SinoGridSpec",
    "TtSpectrum",
    "WeightParam",
    "apply_X",
    "apply_Xperp",
    "beta",
    "block_of",
    "boundary_inner",
    "chord_integrate",
    "chord_point",
    "fanbeam_project",
    "forward_sino",
    "forward_spectral",
    "gegenbauer",
    "holo_project",
    "invert_pi0",
    "jacobi_rule",
    "kernel_G",
    "lhat",
    "lift_ell_m",
    "make_grid_spec",
    "normalization_audit",
    "project",
    "psi_eval",
    "range_check",
    "recon_tt_kernel",
    "recon_tt_svd",
    "recover_w1",
    "scatter_antipodal",
    "sigma",
    "sino_project",
    "solve_potential",
    "star_d",
    "to_itt",
    "zhat_poly",
    "__version__",
]
