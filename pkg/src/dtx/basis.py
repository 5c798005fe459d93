"""Fan-beam data-space polynomials, generalized Zernike disk polynomials,
singular values, and the normalization audit tying them together.

The raw families carry the printed normalization constants of the
construction; their common L^2 norm is NOT 1.  The audit measures the
squared norm c_gamma once per weight (asserting it is the same for every
index, which is what makes the construction consistent), and the hatted
families psi_hat = psi/sqrt(c), Z_hat = Z/(sigma sqrt(c)) are the
orthonormal bases used by everything downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .geometry import FanBeamPoint
from .quadrature import SinoGridSpec, boundary_inner, make_grid_spec
from .specfun import WeightParam, lhat, lhat_coeffs

__all__ = [
    "PsiIndex",
    "ZernikePoly",
    "SigmaTable",
    "psi_eval",
    "psi_raw_eval",
    "psi_grid",
    "normalization_audit",
    "audit_scale",
    "zernike_build",
    "zhat_poly",
    "sigma",
    "zernike_table",
]


@dataclass(frozen=True, order=True)
class PsiIndex:
    """Index (n, k, parity) of a fan-beam basis element.

    parity "+" is the plain family (even fiber harmonics side); parity "-"
    carries one extra factor e^{i(beta+alpha+pi)} (odd side).
    """

    n: int
    k: int
    parity: str

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("PsiIndex: n must be >= 0")
        if self.parity not in ("+", "-"):
            raise ValueError(f"PsiIndex: parity must be '+' or '-', got {self.parity!r}")


# -- normalization audit ---------------------------------------------------

_AUDIT_CACHE: dict[float, float] = {}


def _raw_psi_grid(n: int, k: int, parity: str, spec: SinoGridSpec) -> NDArray[np.complex128]:
    g = spec.gamma
    bb, aa = spec.mesh()
    phi = bb + aa + math.pi
    mu = np.cos(aa)
    vals = (
        mu ** (2.0 * g + 1.0)
        * np.exp(1j * (n - 2 * k) * phi)
        * lhat(n, g, np.sin(aa))
        / (2.0 * math.pi)
    )
    if parity == "-":
        vals = vals * np.exp(1j * phi)
    return vals


def normalization_audit(
    gamma: float | WeightParam, n_max: int = 8, spec: SinoGridSpec | None = None
) -> float:
    """Measure the common squared data-space norm c of the raw basis.

    Computes ||psi_{n,k}||^2 for a sample of indices n <= n_max, every
    parity, and asserts the values agree to 1e-10 relative spread; any
    disagreement means the basis construction is broken, and is fatal.
    The measured c is cached per gamma (and stamped on the WeightParam if
    one was passed in).
    """
    wp = gamma if isinstance(gamma, WeightParam) else None
    g = wp.gamma if wp is not None else float(gamma)
    if n_max < 2:
        raise ValueError("normalization_audit: need n_max >= 2")
    if spec is None:
        spec = make_grid_spec(n_max, g, kind="gegenbauer")
    norms = []
    for n in range(n_max + 1):
        ks = sorted({0, n // 2, n})
        for k in ks:
            for parity in ("+", "-"):
                vals = _raw_psi_grid(n, k, parity, spec)
                norms.append(boundary_inner(vals, vals, spec).real)
    norms_arr = np.array(norms)
    mean = float(norms_arr.mean())
    spread = float(norms_arr.max() - norms_arr.min())
    if not mean > 0 or spread > 1e-10 * mean:
        raise AssertionError(
            f"normalization_audit: norm spread {spread:.3e} vs mean {mean:.6e}; "
            "basis norms are not uniform across (n, k)"
        )
    _AUDIT_CACHE[g] = mean
    if wp is not None:
        wp.norm_audit_scale = mean
    return mean


def audit_scale(gamma: float | WeightParam) -> float:
    """Cached c_gamma, auditing on first use."""
    g = gamma.gamma if isinstance(gamma, WeightParam) else float(gamma)
    if g not in _AUDIT_CACHE:
        normalization_audit(gamma if isinstance(gamma, WeightParam) else g)
    elif isinstance(gamma, WeightParam) and gamma.norm_audit_scale is None:
        gamma.norm_audit_scale = _AUDIT_CACHE[g]
    return _AUDIT_CACHE[g]


# -- data-space basis evaluation ------------------------------------------


def psi_raw_eval(idx: PsiIndex, p: FanBeamPoint, gamma: float | WeightParam) -> complex:
    """Un-audited basis value mu^{2g+1} e^{i(n-2k)(beta+alpha+pi)}
    lhat_n(sin alpha)/(2 pi), times e^{i(beta+alpha+pi)} for parity '-'."""
    g = gamma.gamma if isinstance(gamma, WeightParam) else float(gamma)
    phi = p.beta + p.alpha + math.pi
    val = (
        p.mu ** (2.0 * g + 1.0)
        * np.exp(1j * (idx.n - 2 * idx.k) * phi)
        * lhat(idx.n, g, math.sin(p.alpha))
        / (2.0 * math.pi)
    )
    if idx.parity == "-":
        val *= np.exp(1j * phi)
    return complex(val)


def psi_eval(idx: PsiIndex, p: FanBeamPoint, gamma: float | WeightParam) -> complex:
    """Orthonormal basis value psi_hat = psi / sqrt(c_gamma)."""
    return psi_raw_eval(idx, p, gamma) / math.sqrt(audit_scale(gamma))


def psi_grid(idx: PsiIndex, spec: SinoGridSpec) -> NDArray[np.complex128]:
    """psi_hat values on a whole grid (vectorized psi_eval)."""
    return _raw_psi_grid(idx.n, idx.k, idx.parity, spec) / math.sqrt(audit_scale(spec.gamma))


# -- singular values -------------------------------------------------------


def sigma(n: int, k: int, gamma: float | WeightParam) -> float:
    """Singular value sigma_{n,k} of the weighted ray transform on the
    (n, k) pair, from the closed form

        sigma^2 = 2^{2g+2} pi C(n,k) (n-k+g)! (k+g)! / (n+2g+1)!

    evaluated in log-space.  Symmetric in k <-> n-k.
    """
    if not 0 <= k <= n:
        raise ValueError(f"sigma: need 0 <= k <= n, got (n, k) = ({n}, {k})")
    g = gamma.gamma if isinstance(gamma, WeightParam) else float(gamma)
    log_sq = (
        (2.0 * g + 2.0) * math.log(2.0)
        + math.log(math.pi)
        + math.lgamma(n + 1.0)
        - math.lgamma(k + 1.0)
        - math.lgamma(n - k + 1.0)
        + math.lgamma(n - k + g + 1.0)
        + math.lgamma(k + g + 1.0)
        - math.lgamma(n + 2.0 * g + 2.0)
    )
    return math.exp(0.5 * log_sq)


@dataclass(frozen=True)
class SigmaTable:
    """All sigma_{n,k} for n <= n_max at a fixed weight."""

    gamma: float
    n_max: int
    table: dict[tuple[int, int], float] = field(default_factory=dict)

    @classmethod
    def build(cls, n_max: int, gamma: float | WeightParam) -> "SigmaTable":
        g = gamma.gamma if isinstance(gamma, WeightParam) else float(gamma)
        tab = {(n, k): sigma(n, k, g) for n in range(n_max + 1) for k in range(n + 1)}
        return cls(gamma=g, n_max=n_max, table=tab)

    def __getitem__(self, nk: tuple[int, int]) -> float:
        return self.table[nk]


# -- Zernike disk polynomials ---------------------------------------------

from .tensorfield import PolyZZbar  # noqa: E402  (no cycle: tensorfield does not import basis)

_ZERNIKE_CACHE: dict[tuple[int, int, float], "ZernikePoly"] = {}


@dataclass(frozen=True)
class ZernikePoly:
    """Raw-normalized disk polynomial Z_{n,k} with its measured norm."""

    n: int
    k: int
    coeffs: PolyZZbar
    norm: float


def zernike_build(n: int, k: int, gamma: float | WeightParam) -> ZernikePoly:
    """Exact disk polynomial of degree n and azimuthal index n - 2k.

    Obtained by expanding lhat_n((z e^{-i theta} - zbar e^{i theta})/(2i))
    binomially and collecting the e^{-i(n-2k) theta} coefficient:

        Z_{n,k} = sum_i  c_{n-2i} (2i)^{-(n-2i)} C(n-2i, k-i) (-1)^{k-i}
                          * z^{n-k-i} zbar^{k-i},   0 <= i <= min(k, n-k)

    with c_j the monomial coefficients of lhat_n.  The leading (i = 0)
    coefficient is ghat_{n,k} = lhat_leading(n) C(n,k) (-1)^k / (2i)^n.
    """
    if not 0 <= k <= n:
        raise ValueError(f"zernike_build: need 0 <= k <= n, got (n, k) = ({n}, {k})")
    g = gamma.gamma if isinstance(gamma, WeightParam) else float(gamma)
    key = (n, k, g)
    if key in _ZERNIKE_CACHE:
        return _ZERNIKE_CACHE[key]
    lc = lhat_coeffs(n, g)
    terms: dict[tuple[int, int], complex] = {}
    for i in range(min(k, n - k) + 1):
        j = n - 2 * i
        r = k - i
        coef = (
            lc[j]
            * (2.0j) ** (-j)
            * math.comb(j, r)
            * (-1.0) ** r
        )
        terms[(n - k - i, k - i)] = coef
    poly = PolyZZbar(terms)
    from .quadrature import disk_inner_exact

    norm = math.sqrt(disk_inner_exact(poly, poly, g).real)
    zp = ZernikePoly(n=n, k=k, coeffs=poly, norm=norm)
    _ZERNIKE_CACHE[key] = zp
    return zp


def zhat_poly(n: int, k: int, gamma: float | WeightParam) -> PolyZZbar:
    """Unit-norm disk polynomial Z_hat = Z / (sigma sqrt(c_gamma)), the
    singular vector paired with psi_hat by the weighted transform."""
    g = gamma.gamma if isinstance(gamma, WeightParam) else float(gamma)
    zp = zernike_build(n, k, g)
    return zp.coeffs.scale(1.0 / (sigma(n, k, g) * math.sqrt(audit_scale(gamma))))


def zernike_table(n_max: int, gamma: float | WeightParam) -> list[dict]:
    """JSON-ready dump of the raw Zernike coefficients up to degree n_max."""
    g = gamma.gamma if isinstance(gamma, WeightParam) else float(gamma)
    out = []
    for n in range(n_max + 1):
        for k in range(n + 1):
            zp = zernike_build(n, k, g)
            out.append(
                {
                    "n": n,
                    "k": k,
                    "norm": zp.norm,
                    "terms": [
                        [a, b, c.real, c.imag] for (a, b), c in sorted(zp.coeffs.terms.items())
                    ],
                }
            )
    return out
