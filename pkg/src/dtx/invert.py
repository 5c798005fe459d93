"""Reconstruction of the iterated transverse-traceless representative.

Two independent routes recover the tt parts: coefficient division through
the singular value decomposition, and pointwise pairing against a closed
form kernel.  The scalar block inverts by division; the one-form block
recovers w1 and then solves a first-order radial ODE family for the curl
potential h (exactly, via incomplete Beta functions).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.special import betainc, roots_legendre

from .basis import PsiIndex, audit_scale, sigma, zhat_poly
from .dataspace import SinoCoeffs, block_of, project, range_check
from .geometry import FanBeamPoint
from .quadrature import SinoGridSpec, boundary_inner, make_grid_spec
from .specfun import beta as beta_fn
from .specfun import gegenbauer_weighted_sum
from .tensorfield import IttForm, ModeField, PolyZZbar
from .xray import (
    SinoGrid,
    TtSpectrum,
    forward_spectral,
    forward_spectral_scalar,
    forward_sino,
    sino_project,
    tt_field_from_spectrum,
)

__all__ = [
    "Pi0Inverse",
    "W1Inverse",
    "RadialModeFn",
    "RadialModeFamily",
    "KernelRecon",
    "invert_pi0",
    "recon_tt_svd",
    "kernel_G",
    "kernel_G_grid",
    "kernel_G_series",
    "recon_tt_kernel",
    "kernel_grid_spec",
    "default_z_grid",
    "recover_w1",
    "solve_potential",
    "zhat_expand",
    "itt_forward_coeffs",
    "to_itt",
    "order_indices",
    "oneform_decompose",
    "OneFormParts",
]

_SIGMA_FLOOR_REL = 1e-10


# -- scalar block ----------------------------------------------------------


@dataclass
class Pi0Inverse:
    """Scalar field recovered from the Pi0 block: polynomial plus its
    coefficients on the unit-norm disk basis."""

    poly: PolyZZbar
    zhat_coeffs: dict[tuple[int, int], complex]
    refused: list[tuple[int, int]]


def invert_pi0(u0: SinoCoeffs) -> Pi0Inverse:
    """Divide each Pi0 coefficient by its singular value.

    Indices whose sigma falls below 1e-10 * sigma_{0,0} are refused (kept
    out of the result, reported in .refused and warned about), never
    regularized.
    """
    gamma = u0.gamma
    floor = _SIGMA_FLOOR_REL * sigma(0, 0, gamma)
    coeffs: dict[tuple[int, int], complex] = {}
    refused: list[tuple[int, int]] = []
    poly = PolyZZbar.zero()
    for (n, k, parity), c in u0.data.items():
        if parity != "+" or not 0 <= k <= n:
            raise ValueError(
                f"invert_pi0: index (n={n}, k={k}, parity={parity}) is outside the scalar block"
            )
        s = sigma(n, k, gamma)
        if s < floor:
            refused.append((n, k))
            continue
        coeffs[(n, k)] = c / s
        poly = poly + zhat_poly(n, k, gamma).scale(c / s)
    if refused:
        warnings.warn(
            f"invert_pi0: refused ill-conditioned indices (sigma < {floor:.3e}): {sorted(refused)}"
        )
    return Pi0Inverse(poly=poly, zhat_coeffs=coeffs, refused=sorted(refused))


# -- tt parts via the SVD --------------------------------------------------


def recon_tt_svd(u: SinoCoeffs, m: int) -> dict[int, TtSpectrum]:
    """tt spectra {j -> TtSpectrum of order 2j (+1 if m odd)} from the
    diagonal blocks of the data, by coefficient division:

        c+_n = <u, psi_hat_{n,-j}> / sigma_{n,0}
        c-_n = <u, psi_hat_{n,n+j(+1)}> / sigma_{n,n}

    (sigma_{n,0} = sigma_{n,n}).  Raises if the data carries diagonal
    energy beyond order m.
    """
    p, r = divmod(m, 2)
    odd = r == 1
    want_parity = "-" if odd else "+"
    gamma = u.gamma
    offending = []
    plus: dict[int, dict[int, complex]] = {}
    minus: dict[int, dict[int, complex]] = {}
    for (n, k, parity), c in u.data.items():
        if parity != want_parity:
            offending.append((n, k, parity))
            continue
        block = block_of(n, k, parity)
        if block[0] in ("Pi0", "PiPerp"):
            continue  # scalar / one-form content, handled elsewhere
        j = block[1]
        if j > p:
            offending.append((n, k, parity))
            continue
        if k < 0 or (k == 0 and odd):
            plus.setdefault(j, {})[n] = c / sigma(n, 0, gamma)
        else:
            minus.setdefault(j, {})[n] = c / sigma(n, n, gamma)
    if offending:
        raise ValueError(f"recon_tt_svd: out-of-range data support at {sorted(offending)}")
    j_range = range(0 if odd else 1, p + 1)
    return {
        j: TtSpectrum(m=2 * j + r, c_plus=plus.get(j, {}), c_minus=minus.get(j, {}))
        for j in j_range
        if plus.get(j) or minus.get(j)
    }


# -- closed-form kernel route ---------------------------------------------


def kernel_G(j: int, gamma: float, p: FanBeamPoint, z: complex, eps: float = 1e-3) -> complex:
    """Closed-form reconstruction kernel (order-2j phase):

        G = mu^{2g+1} e^{2ij(beta+alpha+pi)} / (2^{4g+2} Gamma(g+1)^2)
            * (g+1)(1 + e^{2i(beta+alpha)} z^2)
              / ((1 + z e^{i beta})(1 - z e^{i(beta+2alpha)}))^{g+2}

    equivalently the weighted Gegenbauer sum at w = i z e^{i(beta+alpha)},
    x = sin(alpha).  Requires |z| <= 1 - eps.
    """
    if j < 0:
        raise ValueError("kernel_G: need j >= 0")
    if abs(z) > 1.0 - eps:
        raise ValueError(f"kernel_G: |z| = {abs(z):.6f} exceeds 1 - eps = {1 - eps}")
    phi = p.beta + p.alpha + math.pi
    w = 1j * z * np.exp(1j * (p.beta + p.alpha))
    x = math.sin(p.alpha)
    den1 = 1.0 + z * np.exp(1j * p.beta)
    den2 = 1.0 - z * np.exp(1j * (p.beta + 2.0 * p.alpha))
    if abs(den1) < 1e-8 or abs(den2) < 1e-8:
        raise ValueError("kernel_G: evaluation point too close to kernel singularity")
    pref = p.mu ** (2.0 * gamma + 1.0) * np.exp(2j * j * phi) / (
        2.0 ** (4.0 * gamma + 2.0) * math.gamma(gamma + 1.0) ** 2
    )
    return complex(pref * gegenbauer_weighted_sum(gamma + 1.0, w, x))


def kernel_G_grid(j: int, spec: SinoGridSpec, z: complex, eps: float = 1e-3) -> NDArray[np.complex128]:
    """kernel_G evaluated over a whole (beta, alpha) grid."""
    if abs(z) > 1.0 - eps:
        raise ValueError(f"kernel_G_grid: |z| = {abs(z):.6f} exceeds 1 - eps")
    gamma = spec.gamma
    bb, aa = spec.mesh()
    mu = np.cos(aa)
    phi = bb + aa + math.pi
    x = np.sin(aa)
    w = 1j * z * np.exp(1j * (bb + aa))
    base = 1.0 - 2.0 * w * x + w * w
    num = (gamma + 1.0) * (1.0 - w * w)
    pref = mu ** (2.0 * gamma + 1.0) * np.exp(2j * j * phi) / (
        2.0 ** (4.0 * gamma + 2.0) * math.gamma(gamma + 1.0) ** 2
    )
    return pref * num * base ** (-(gamma + 2.0))


def kernel_G_series(
    j: int, gamma: float, p: FanBeamPoint, z: complex, nterms: int = 200
) -> complex:
    """Truncated defining series sum_n psi_{n,-j} ghat_{n,0} z^n / sigma_{n,0}^2
    (raw, un-audited basis).  The closed form equals 2 pi times this series;
    the measured ratio is asserted by tests, not absorbed here.
    """
    from .specfun import ghat_leading, lhat

    phi = p.beta + p.alpha + math.pi
    x = math.sin(p.alpha)
    mu = p.mu
    total = 0.0 + 0.0j
    for n in range(nterms):
        psi = mu ** (2.0 * gamma + 1.0) * np.exp(1j * (n + 2 * j) * phi) * lhat(n, gamma, x) / (
            2.0 * math.pi
        )
        total += psi * ghat_leading(n, 0, gamma) * z**n / sigma(n, 0, gamma) ** 2
    return complex(total)


def kernel_grid_spec(
    gamma: float, mbeta: int = 144, nalpha: int = 48, kind: str = "gegenbauer"
) -> SinoGridSpec:
    """Data grid dense enough for kernel-route pairings.

    The kernel has unbounded beta bandwidth; trapezoid aliasing decays
    like |z|^mbeta, so evaluation radius and grid density are linked
    (see the resolution check in recon_tt_kernel).
    """
    return make_grid_spec((mbeta - 8) // 4, gamma, kind=kind, mbeta=mbeta, nalpha=nalpha)


def default_z_grid(nr: int = 6, nw: int = 64, rmax: float = 0.9) -> NDArray[np.complex128]:
    """Tensor evaluation grid: Gauss radii on [0, rmax] times uniform angles."""
    xr, _ = roots_legendre(nr)
    rs = 0.5 * rmax * (xr + 1.0)
    ws = 2.0 * math.pi * np.arange(nw) / nw
    return (rs[:, None] * np.exp(1j * ws[None, :])).ravel()


@dataclass
class KernelRecon:
    """Pointwise tt mode values from kernel pairings: for each j the
    holomorphic-side values (dz^m coefficient function) and the
    antiholomorphic-side values at the z points."""

    m: int
    z_points: NDArray[np.complex128]
    parts: dict[int, tuple[NDArray[np.complex128], NDArray[np.complex128]]]


def recon_tt_kernel(
    d: SinoGrid, m: int, z_points: NDArray[np.complex128] | None = None
) -> KernelRecon:
    """tt mode functions by data pairings against the closed-form kernel.

    With c = audited basis norm and phi = beta + alpha + pi, writing
    G_j(z) for the kernel evaluated at -conj(z):

        even m = 2p: f_{2j,+}(z) = <D, G_j(z)>        / (2 pi c)
                     f_{2j,-}(z) = <D, conj(G_j(z))>  / (2 pi c)
        odd  m = 2p+1: f_{2j+1,+}(z) = <D, e^{i phi} G_j(z)>            / (2 pi c)
                       f_{2j+1,-}(z) = <D, e^{i phi} conj(G_{j+1}(z))>  / (2 pi c)

    The conjugate-argument and 2 pi c wiring is what makes the pairing
    agree with the SVD route; see the series/scale audit in the tests.
    """
    spec = d.spec
    gamma = spec.gamma
    if z_points is None:
        z_points = default_z_grid()
    z_points = np.asarray(z_points, dtype=complex).ravel()
    zmax = float(np.max(np.abs(z_points))) if z_points.size else 0.0
    if zmax >= 1.0:
        raise ValueError("recon_tt_kernel: evaluation points must satisfy |z| < 1")
    if zmax > 0:
        needed = int(math.ceil(math.log(1e-6) / math.log(zmax))) if zmax > 0.05 else 8
        if spec.mbeta < needed:
            raise ValueError(
                f"recon_tt_kernel: grid mbeta={spec.mbeta} too coarse for |z| up to "
                f"{zmax:.3f} (aliasing; need >= {needed})"
            )
    p_half, r = divmod(m, 2)
    odd = r == 1
    c_audit = audit_scale(gamma)
    scale = 1.0 / (2.0 * math.pi * c_audit)
    bb, aa = spec.mesh()
    phase = np.exp(1j * (bb + aa + math.pi)) if odd else 1.0
    parts: dict[int, tuple[NDArray[np.complex128], NDArray[np.complex128]]] = {}
    js = range(0 if odd else 1, p_half + 1)
    for j in js:
        fp = np.empty(z_points.shape, dtype=complex)
        fm = np.empty(z_points.shape, dtype=complex)
        for i, z in enumerate(z_points):
            gg = kernel_G_grid(j, spec, -np.conj(z), eps=0.0)
            if odd:
                gg_next = kernel_G_grid(j + 1, spec, -np.conj(z), eps=0.0)
                fp[i] = boundary_inner(d.values, phase * gg, spec) * scale
                fm[i] = boundary_inner(d.values, phase * np.conj(gg_next), spec) * scale
            else:
                fp[i] = boundary_inner(d.values, gg, spec) * scale
                fm[i] = boundary_inner(d.values, np.conj(gg), spec) * scale
        parts[j] = (fp, fm)
    return KernelRecon(m=m, z_points=z_points, parts=parts)


# -- one-form block --------------------------------------------------------


@dataclass
class W1Inverse:
    """One-form component w1 recovered from the PiPerp block."""

    poly: PolyZZbar
    zhat_coeffs: dict[tuple[int, int], complex]


def recover_w1(u_perp: SinoCoeffs) -> W1Inverse:
    """w1 = sum (c_{n,k}/sigma_{n,k}) Zhat_{n,k} over 1 <= k <= n; the
    result has no Zhat_{n,0} component, hence is orthogonal to ker(delbar)."""
    gamma = u_perp.gamma
    coeffs: dict[tuple[int, int], complex] = {}
    poly = PolyZZbar.zero()
    for (n, k, parity), c in u_perp.data.items():
        if parity != "-" or not 1 <= k <= n:
            raise ValueError(
                f"recover_w1: index (n={n}, k={k}, parity={parity}) is outside the one-form block"
            )
        coeffs[(n, k)] = c / sigma(n, k, gamma)
        poly = poly + zhat_poly(n, k, gamma).scale(coeffs[(n, k)])
    return W1Inverse(poly=poly, zhat_coeffs=coeffs)


# -- radial potential solver ----------------------------------------------


def _incbeta_primitive(e: int, gamma: float, r: NDArray[np.float64]) -> NDArray[np.float64]:
    """J(e; r) = int_0^r s^e (1-s^2)^gamma ds, exactly, via the regularized
    incomplete Beta function (substitution u = s^2)."""
    p = (e + 1.0) / 2.0
    return 0.5 * beta_fn(p, gamma + 1.0) * betainc(p, gamma + 1.0, np.clip(r * r, 0.0, 1.0))


@dataclass
class RadialModeFn:
    """One angular mode h_q(r) of the curl potential, with an exact
    evaluator (finite combination of incomplete Beta functions) plus
    samples on the family's radial grid.  h_q(1) = 0."""

    q: int
    terms: list[tuple[int, complex]]  # (power e, coefficient) of the source mode
    gamma: float
    samples: NDArray[np.complex128] | None = None

    def eval(self, r) -> NDArray[np.complex128]:
        r = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.zeros(r.shape, dtype=complex)
        pos = r > 0
        if self.q >= 1:
            for e, c in self.terms:
                out[pos] += c * _incbeta_primitive(e, self.gamma, r[pos])
            out[pos] *= 1j * r[pos] ** (-self.q)
            # r = 0: each term ~ r^{e+1-q} with e+1-q >= 1, so the limit is 0
        else:
            for e, c in self.terms:
                j1 = _incbeta_primitive(e, self.gamma, np.ones(1))[0]
                out += c * (j1 - _incbeta_primitive(e, self.gamma, r))
            out *= -1j * r ** (-self.q)
        return out


@dataclass
class RadialModeFamily:
    """Curl potential h = sum_q h_q(r) e^{i q omega} with h boundary-vanishing."""

    gamma: float
    modes: dict[int, RadialModeFn]
    r_grid: NDArray[np.float64]
    source: PolyZZbar
    residual: float = 0.0

    def eval(self, z) -> NDArray[np.complex128]:
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        w = np.angle(z)
        out = np.zeros(z.shape, dtype=complex)
        for q, fn in self.modes.items():
            out = out + fn.eval(r).reshape(z.shape) * np.exp(1j * q * w)
        return out

    def eval_del_h(self, z) -> NDArray[np.complex128]:
        """del h by the defining relation del h = (i/2) d^gamma w1 (exact)."""
        z = np.asarray(z, dtype=complex)
        d = 1.0 - np.abs(z) ** 2
        return 0.5j * d**self.gamma * self.source.eval(z)

    def eval_delbar_h(self, z) -> NDArray[np.complex128]:
        """delbar h, exactly, from the radial ODE: per mode q,

            delbar(h_q e^{iq omega}) = e^{i(q+1) omega} (h_q' - (q/r) h_q)/2

        with h_q' = i d^gamma (w1)_{q-1} - (q/r) h_q.  Radii are clipped
        away from 0 (the chord quadratures never sample the exact center).
        """
        z = np.asarray(z, dtype=complex)
        r = np.maximum(np.abs(z), 1e-9)
        w = np.angle(z)
        dgam = (1.0 - r * r) ** self.gamma
        w_modes: dict[int, list[tuple[int, complex]]] = {}
        for (a, b), c in self.source.terms.items():
            w_modes.setdefault(a - b, []).append((a + b, c))
        out = np.zeros(z.shape, dtype=complex)
        for q, fn in self.modes.items():
            src = np.zeros(z.shape, dtype=complex)
            for p_deg, c in w_modes.get(q - 1, ()):
                src += c * r**p_deg
            hq = fn.eval(r).reshape(z.shape)
            out = out + (0.5j * dgam * src - q * hq / r) * np.exp(1j * (q + 1) * w)
        return out


def solve_potential(
    w1: PolyZZbar,
    gamma: float,
    r_grid: NDArray[np.float64] | None = None,
    residual_tol: float = 1e-6,
) -> RadialModeFamily:
    """Boundary-vanishing potential h with -2i d^{-gamma} del h = w1.

    Per output angular mode q (fed by the e^{i(q-1) omega} harmonic of w1)
    the radial problem (r^q h_q)' = i r^q (1-r^2)^gamma (w1)_{q-1}(r) is
    solved in closed form by incomplete Beta primitives; q >= 1 integrates
    from 0 (regularity; h_q(1) = 0 then requires w1 orthogonal to
    ker(delbar), which is checked), q <= 0 integrates from 1 (boundary
    condition).  The returned residual is measured with an independent
    finite-difference derivative at interior samples.
    """
    if r_grid is None:
        # Chebyshev-Lobatto points on [0, 1], endpoints included
        i = np.arange(256)
        r_grid = 0.5 * (1.0 - np.cos(math.pi * i / 255.0))
    groups: dict[int, list[tuple[int, complex]]] = {}
    for (a, b), c in w1.terms.items():
        q = (a - b) + 1
        groups.setdefault(q, []).append((q + a + b, c))
    modes: dict[int, RadialModeFn] = {}
    scale = max(w1.max_abs_coeff(), 1.0)
    for q, terms in sorted(groups.items()):
        fn = RadialModeFn(q=q, terms=terms, gamma=gamma)
        if q >= 1:
            bc = 1j * sum(c * _incbeta_primitive(e, gamma, np.ones(1))[0] for e, c in terms)
            if abs(bc) > 1e-9 * scale:
                raise ValueError(
                    f"solve_potential: w1 has a ker(delbar) component (mode {q - 1}); "
                    f"boundary value h_{q}(1) = {bc:.3e} cannot vanish"
                )
        fn.samples = fn.eval(r_grid)
        modes[q] = fn
    fam = RadialModeFamily(gamma=gamma, modes=modes, r_grid=r_grid, source=w1)
    fam.residual = _potential_residual(fam, w1, gamma)
    if fam.residual > residual_tol:
        raise ValueError(
            f"solve_potential: residual {fam.residual:.3e} exceeds {residual_tol:.1e}"
        )
    return fam


def _potential_residual(fam: RadialModeFamily, w1: PolyZZbar, gamma: float) -> float:
    """Relative deviation of -2i d^{-gamma} del h from w1 at interior
    radii, with del h formed from finite differences of the mode
    evaluators (independent of the construction route)."""
    rs = np.array([0.15, 0.35, 0.55, 0.75, 0.9])
    delta = 1e-4
    # w1 harmonics
    w_modes: dict[int, list[tuple[int, complex]]] = {}
    for (a, b), c in w1.terms.items():
        w_modes.setdefault(a - b, []).append((a + b, c))
    num = 0.0
    den = 0.0
    for q, fn in fam.modes.items():
        stencil = np.array([-2, -1, 1, 2], dtype=float) * delta
        vals = np.array([fn.eval(rs + s) for s in stencil])  # (4, len(rs))
        dh = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * delta)
        hq = fn.eval(rs)
        # mode q-1 of -2i d^{-gamma} del h
        lhs = -1j * (dh + q * hq / rs) * (1.0 - rs * rs) ** (-gamma)
        rhs = np.zeros_like(rs, dtype=complex)
        for p_deg, c in w_modes.get(q - 1, ()):
            rhs += c * rs**p_deg
        num += float(np.sum(np.abs(lhs - rhs) ** 2))
        den += float(np.sum(np.abs(rhs) ** 2))
    if den == 0.0:
        return math.sqrt(num)
    return math.sqrt(num / den)


# -- assembly --------------------------------------------------------------


def zhat_expand(poly: PolyZZbar, gamma: float, n_max: int | None = None) -> dict[tuple[int, int], complex]:
    """Exact coefficients of a polynomial on the orthonormal disk basis
    (the basis up to degree n spans all polynomials of degree <= n)."""
    from .quadrature import disk_inner_exact

    if n_max is None:
        n_max = max(poly.degree(), 0)
    out: dict[tuple[int, int], complex] = {}
    for n in range(n_max + 1):
        for k in range(n + 1):
            c = disk_inner_exact(poly, zhat_poly(n, k, gamma), gamma)
            if abs(c) > 1e-13 * max(poly.max_abs_coeff(), 1.0):
                out[(n, k)] = c
    return out


def itt_forward_coeffs(itt: IttForm, gamma: float) -> SinoCoeffs:
    """Exact data coefficients of an assembled iterated-tt form: spectral
    forward of every tt part, plus the scalar or one-form block content."""
    from .xray import tt_spectrum_from_field

    total = SinoCoeffs(gamma, {})
    for j, f in itt.tt_parts.items():
        if f.order == 0:
            continue
        total = total + forward_spectral(tt_spectrum_from_field(f, gamma), gamma)
    if itt.order % 2 == 0:
        f0 = itt.scalar_part
        if f0 is not None and not f0.is_zero:
            total = total + forward_spectral_scalar(zhat_expand(f0, gamma), gamma)
    else:
        if itt.curl_potential is not None:
            w1 = itt.curl_potential.source
            data = {}
            for (n, k), c in zhat_expand(w1, gamma).items():
                data[(n, k, "-")] = sigma(n, k, gamma) * c
            total = total + SinoCoeffs(gamma, data)
    return total


def to_itt(
    d: "SinoCoeffs | SinoGrid",
    m: int,
    n_max: int | None = None,
) -> IttForm:
    """Iterated-tt representative from data of an order-m tensor.

    Grid data is first projected onto every basis index an order-m tensor
    can populate (degree <= n_max).  The diagonal blocks invert through
    the SVD into tt parts; the scalar block (even m) divides into f0; the
    one-form block (odd m) yields w1 and its curl potential.
    """
    if isinstance(d, SinoGrid):
        spec = d.spec
        gamma = spec.gamma
        if n_max is None:
            n_max = (spec.mbeta - 8) // 4
        indices = order_indices(m, n_max)
        u = sino_project(d, indices)
    else:
        u = d
        gamma = u.gamma
    # drop numerically-zero projections so support checks are meaningful
    cutoff = 1e-11 * max(u.norm(), 1e-300)
    u = SinoCoeffs(gamma, {key: c for key, c in u.data.items() if abs(c) > cutoff})
    report = range_check(u, m)
    if not report["conditions"]["a"]["pass"]:
        raise ValueError(
            "to_itt: data fails the range support condition for order "
            f"{m}: residual {report['conditions']['a']['residual']:.3e}"
        )
    p, r = divmod(m, 2)
    odd = r == 1
    spectra = recon_tt_svd(u, m)
    tt_parts = {j: tt_field_from_spectrum(t, gamma) for j, t in spectra.items()}
    if not odd:
        inv0 = invert_pi0(project(("Pi0",), u))
        return IttForm(order=m, tt_parts=tt_parts, scalar_part=inv0.poly)
    w1 = recover_w1(project(("PiPerp",), u))
    pot = solve_potential(w1.poly, gamma) if not w1.poly.is_zero else None
    return IttForm(order=m, tt_parts=tt_parts, scalar_part=None, curl_potential=pot)


def order_indices(m: int, n_max: int) -> list[PsiIndex]:
    """Every basis index an order-m tensor's data can populate, n <= n_max."""
    p, r = divmod(m, 2)
    odd = r == 1
    parity = "-" if odd else "+"
    out: list[PsiIndex] = []
    for n in range(n_max + 1):
        ks: set[int] = set()
        if odd:
            ks.update(range(1, n + 1))  # PiPerp
            for j in range(0, p + 1):
                ks.add(-j)
                ks.add(n + j + 1)
        else:
            ks.update(range(0, n + 1))  # Pi0
            for j in range(1, p + 1):
                ks.add(-j)
                ks.add(n + j)
        out.extend(PsiIndex(n, k, parity) for k in sorted(ks))
    return out


# -- one-form decomposition at the data level ------------------------------


@dataclass
class OneFormParts:
    """Reduced decomposition of a polynomial one-form w = w1 dz + wm1 dzbar:

        w = d^{-gamma} (del f dz + delbar f dzbar) + w1_tilde dz + wm1_tilde dzbar

    with wm1_tilde antiholomorphic, f boundary-vanishing, and the gauge
    term invisible to the weighted transform."""

    f_conj_potential: RadialModeFamily  # family F with conj(F) = f
    w1_tilde: PolyZZbar
    wm1_tilde: PolyZZbar

    def f_eval(self, z) -> NDArray[np.complex128]:
        return np.conj(self.f_conj_potential.eval(np.asarray(z, dtype=complex)))


def oneform_decompose(
    w: ModeField, gamma: float, spec: SinoGridSpec | None = None
) -> OneFormParts:
    """Split a polynomial one-form into a transform-invisible exact part
    and the data-determined pair (w1_tilde, wm1_tilde).

    The data determines the split: coefficients on indices k in [0, n]
    belong to w1_tilde, the k = n+1 diagonal to wm1_tilde (which is then
    exactly the antiholomorphic projection of the dzbar component).  The
    gauge potential f solves del(conj f) = d^gamma conj(wm1 - wm1_tilde),
    i.e. one radial solve on the conjugated residual.
    """
    if w.order != 1:
        raise ValueError("oneform_decompose: input must be a one-form")
    deg = max(w.mode(1).degree(), w.mode(-1).degree(), 0)
    if spec is None:
        spec = make_grid_spec(deg + 2, gamma)
    data = forward_sino(w, spec)
    idx = [PsiIndex(n, k, "-") for n in range(deg + 2) for k in range(0, n + 2)]
    u = sino_project(data, idx)
    w1_tilde = PolyZZbar.zero()
    wm1_tilde = PolyZZbar.zero()
    cutoff = 1e-11 * max(u.norm(), 1e-300)
    for (n, k, _), c in u.data.items():
        if abs(c) <= cutoff:
            continue
        if 0 <= k <= n:
            w1_tilde = w1_tilde + zhat_poly(n, k, gamma).scale(c / sigma(n, k, gamma))
        elif k == n + 1:
            wm1_tilde = wm1_tilde + zhat_poly(n, n, gamma).scale(c / sigma(n, n, gamma))
    resid = w.mode(-1) - wm1_tilde
    ftilde = solve_potential(resid.conj().scale(-2j), gamma)
    return OneFormParts(f_conj_potential=ftilde, w1_tilde=w1_tilde, wm1_tilde=wm1_tilde)
