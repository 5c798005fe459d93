"""Forward transforms of the weighted ray transform.

Three forward routes, used to cross-check each other:

* ``forward_chord`` / ``forward_sino``: numeric chord quadrature of the
  lifted mode field, one Gauss-Jacobi rule per chord.  Exact for
  polynomial modes (the d^gamma weight is inside the rule).
* ``forward_spectral``: the singular value decomposition applied as a
  lookup -- each unit-norm disk polynomial on a tt tensor maps to sigma
  times one data-space basis element.
* ``sino_project``: grid data onto coefficients in the orthonormal
  psi_hat family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .basis import PsiIndex, audit_scale, psi_grid, sigma, zhat_poly
from .dataspace import SinoCoeffs
from .geometry import FanBeamPoint
from .quadrature import QuadRule, SinoGridSpec, boundary_inner, chord_integrate, jacobi_rule
from .tensorfield import ModeField, PolyZZbar

__all__ = [
    "SinoGrid",
    "TtSpectrum",
    "forward_chord",
    "forward_sino",
    "forward_spectral",
    "forward_spectral_scalar",
    "isvd_index",
    "tt_field_from_spectrum",
    "tt_spectrum_from_field",
    "sino_project",
    "sino_from_coeffs",
]


@dataclass
class SinoGrid:
    """Sinogram values on a (beta, alpha) product grid."""

    values: NDArray[np.complex128]
    spec: SinoGridSpec
    parity: str | None = None

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.spec.mbeta, self.spec.nalpha):
            raise ValueError(
                f"SinoGrid: values shape {self.values.shape} does not match grid "
                f"({self.spec.mbeta}, {self.spec.nalpha})"
            )

    @property
    def gamma(self) -> float:
        return self.spec.gamma


def _default_rule(f: ModeField, gamma: float) -> QuadRule:
    deg = max((p.degree() for p in f.modes.values()), default=0)
    return jacobi_rule(max(deg, 0) + 4, gamma)


def forward_chord(
    f: ModeField, p: FanBeamPoint, gamma: float, rule: QuadRule | None = None
) -> complex:
    """Weighted transform of one chord: sum_k e^{ik(beta+alpha+pi)} times
    the scalar weighted chord integral of mode k (the phase shift moves
    every fiber harmonic to a scalar integral)."""
    if rule is None:
        rule = _default_rule(f, gamma)
    phi = p.beta + p.alpha + math.pi
    total = 0.0 + 0.0j
    for k, poly in f.modes.items():
        val = chord_integrate(p, gamma, lambda q: poly.eval(q.z), rule)
        total += np.exp(1j * k * phi) * val
    return complex(total)


def forward_sino(
    f: ModeField,
    spec: SinoGridSpec,
    rule: QuadRule | None = None,
    weighted: bool = True,
) -> SinoGrid:
    """Forward transform on a whole grid (vectorized forward_chord).

    ``weighted=False`` computes the plain (unweighted) transform of the
    mode field -- used for transport/curl identities where the d^gamma
    factor has been absorbed into the integrand already.
    """
    gamma = spec.gamma if weighted else 0.0
    if rule is None:
        rule = _default_rule(f, gamma)
    bb, aa = spec.mesh()  # (mbeta, nalpha)
    mu = np.cos(aa)
    phi = bb + aa + math.pi
    # chord points for all grid nodes x quadrature nodes: (mb, na, nt)
    ts = 2.0 * mu[..., None] * rule.nodes[None, None, :]
    z = np.exp(1j * bb)[..., None] + ts * np.exp(1j * (bb + math.pi + aa))[..., None]
    scale = (2.0 * mu) ** (2.0 * gamma + 1.0)
    out = np.zeros(bb.shape, dtype=complex)
    for k, poly in f.modes.items():
        vals = poly.eval(z)
        integral = scale * np.tensordot(vals, rule.weights, axes=([2], [0]))
        out += np.exp(1j * k * phi) * integral
    parity = None
    ks = {k % 2 for k in f.modes}
    if ks == {0}:
        parity = "+"
    elif ks == {1}:
        parity = "-"
    return SinoGrid(values=out, spec=spec, parity=parity)


@dataclass(frozen=True)
class TtSpectrum:
    """A tt tensor of order m in singular-vector coordinates: coefficient
    c_plus[n] on Zhat_{n,0} dz^m and c_minus[n] on Zhat_{n,n} dzbar^m."""

    m: int
    c_plus: dict[int, complex] = field(default_factory=dict)
    c_minus: dict[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("TtSpectrum: order must be >= 1")


def isvd_index(m: int, n: int, side: str) -> PsiIndex:
    """Data-space index hit by Zhat_{n,0} dz^m (side "dz") or
    Zhat_{n,n} dzbar^m (side "dzbar") under the weighted transform:

        m = 2p:   dz -> (n, -p, +),    dzbar -> (n, n+p, +)
        m = 2p+1: dz -> (n, -p, -),    dzbar -> (n, n+p+1, -)
    """
    p, r = divmod(m, 2)
    parity = "+" if r == 0 else "-"
    if side == "dz":
        return PsiIndex(n, -p, parity)
    if side == "dzbar":
        return PsiIndex(n, n + p + r, parity)
    raise ValueError(f"isvd_index: side must be 'dz' or 'dzbar', got {side!r}")


def forward_spectral(t: TtSpectrum, gamma: float) -> SinoCoeffs:
    """Exact forward transform of a tt tensor via the SVD index maps."""
    data: dict[tuple[int, int, str], complex] = {}
    for n, c in t.c_plus.items():
        idx = isvd_index(t.m, n, "dz")
        data[(idx.n, idx.k, idx.parity)] = data.get((idx.n, idx.k, idx.parity), 0) + sigma(
            n, 0, gamma
        ) * c
    for n, c in t.c_minus.items():
        idx = isvd_index(t.m, n, "dzbar")
        data[(idx.n, idx.k, idx.parity)] = data.get((idx.n, idx.k, idx.parity), 0) + sigma(
            n, n, gamma
        ) * c
    return SinoCoeffs(gamma, data)


def forward_spectral_scalar(coeffs: dict[tuple[int, int], complex], gamma: float) -> SinoCoeffs:
    """Forward of a scalar field given by coefficients on Zhat_{n,k}:
    each maps to sigma_{n,k} psi_hat^+_{n,k}."""
    data = {
        (n, k, "+"): sigma(n, k, gamma) * c for (n, k), c in coeffs.items() if c != 0
    }
    return SinoCoeffs(gamma, data)


def tt_field_from_spectrum(t: TtSpectrum, gamma: float) -> ModeField:
    """Assemble the tt ModeField: mode +m holds sum_n c+_n Zhat_{n,0},
    mode -m holds sum_n c-_n Zhat_{n,n}."""
    plus = PolyZZbar.zero()
    for n, c in t.c_plus.items():
        plus = plus + zhat_poly(n, 0, gamma).scale(c)
    minus = PolyZZbar.zero()
    for n, c in t.c_minus.items():
        minus = minus + zhat_poly(n, n, gamma).scale(c)
    modes: dict[int, PolyZZbar] = {}
    if not plus.is_zero:
        modes[t.m] = plus
    if not minus.is_zero:
        modes[-t.m] = minus
    return ModeField(t.m, modes)


def tt_spectrum_from_field(f: ModeField, gamma: float) -> TtSpectrum:
    """Exact singular-vector coordinates of a polynomial tt field (the
    basis polynomials Zhat_{n,0}, Zhat_{n,n} are single monomials, so
    this is coefficient division, no quadrature)."""
    if not f.is_tt:
        raise ValueError("tt_spectrum_from_field: field is not transverse-traceless")
    c_plus: dict[int, complex] = {}
    for (a, b), c in f.mode(f.order).terms.items():
        lead = zhat_poly(a, 0, gamma).coeff(a, 0)
        c_plus[a] = c / lead
    c_minus: dict[int, complex] = {}
    for (a, b), c in f.mode(-f.order).terms.items():
        lead = zhat_poly(b, b, gamma).coeff(0, b)
        c_minus[b] = c / lead
    return TtSpectrum(m=f.order, c_plus=c_plus, c_minus=c_minus)


def sino_project(s: SinoGrid, indices: list[PsiIndex]) -> SinoCoeffs:
    """Coefficients <S, psi_hat_idx> for each requested index."""
    n_big = max((idx.n for idx in indices), default=0)
    if s.spec.mbeta < 4 * n_big + 8:
        raise ValueError(
            f"sino_project: grid mbeta={s.spec.mbeta} too coarse for degree {n_big} "
            f"(need >= {4 * n_big + 8})"
        )
    data: dict[tuple[int, int, str], complex] = {}
    for idx in indices:
        c = boundary_inner(s.values, psi_grid(idx, s.spec), s.spec)
        data[(idx.n, idx.k, idx.parity)] = c
    return SinoCoeffs(s.gamma, data)


def sino_from_coeffs(u: SinoCoeffs, spec: SinoGridSpec) -> SinoGrid:
    """Synthesize grid values sum u_{n,k,parity} psi_hat_{n,k,parity}."""
    out = np.zeros((spec.mbeta, spec.nalpha), dtype=complex)
    parities = set()
    for (n, k, parity), c in u.data.items():
        out += c * psi_grid(PsiIndex(n, k, parity), spec)
        parities.add(parity)
    parity = parities.pop() if len(parities) == 1 else None
    return SinoGrid(values=out, spec=spec, parity=parity)
