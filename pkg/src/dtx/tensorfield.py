"""Exact polynomial algebra in (z, zbar) and symmetric tensors as
fiberwise Fourier mode families.

A symmetric m-tensor is stored only through its restriction to the unit
circle fiber: the span element dz^a dzbar^b (a + b = m) contributes
e^{i(a-b) theta}, so a tensor becomes a map {mode k -> polynomial}, with
k running over {-m, -m+2, ..., m}.  Every operator needed downstream
(symmetrized derivative, metric embedding, Hodge curl, the transforms)
is local in this representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Mapping

import numpy as np

from .quadrature import disk_inner_exact
from .specfun import beta as beta_fn

__all__ = [
    "PolyZZbar",
    "ModeField",
    "IttForm",
    "d_poly",
    "wirtinger",
    "lift_ell_m",
    "apply_X",
    "apply_Xperp",
    "star_d",
    "eta_plus",
    "eta_minus",
    "L_embed",
    "holo_project",
    "poincare_ratio",
]


class PolyZZbar:
    """Polynomial in z and zbar with complex coefficients, sparse map
    (a, b) -> coefficient for the monomial z^a zbar^b.  Immutable by
    convention: all operations return new instances."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], complex] | None = None):
        clean: dict[tuple[int, int], complex] = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"PolyZZbar: negative exponent in ({a}, {b})")
            c = complex(c)
            if c != 0:
                clean[(int(a), int(b))] = clean.get((int(a), int(b)), 0) + c
        self._terms = {k: v for k, v in clean.items() if v != 0}

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls) -> "PolyZZbar":
        return cls()

    @classmethod
    def one(cls) -> "PolyZZbar":
        return cls({(0, 0): 1.0})

    @classmethod
    def monomial(cls, a: int, b: int, coeff: complex = 1.0) -> "PolyZZbar":
        return cls({(a, b): coeff})

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple[int, int], complex]:
        return MappingProxyType(self._terms)

    def coeff(self, a: int, b: int) -> complex:
        return self._terms.get((a, b), 0.0 + 0.0j)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self._terms), default=-1)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_holomorphic(self) -> bool:
        return all(b == 0 for _, b in self._terms)

    @property
    def is_antiholomorphic(self) -> bool:
        return all(a == 0 for a, _ in self._terms)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def boundary_trace_deviation(self) -> float:
        """max_l |sum_{a-b=l} c_{ab}|: zero iff the polynomial vanishes on
        the unit circle (after division by 1 - z zbar has zero remainder)."""
        sums: dict[int, complex] = {}
        for (a, b), c in self._terms.items():
            sums[a - b] = sums.get(a - b, 0) + c
        return max((abs(s) for s in sums.values()), default=0.0)

    # -- algebra -----------------------------------------------------------
    def __add__(self, other: "PolyZZbar") -> "PolyZZbar":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return PolyZZbar(out)

    def __sub__(self, other: "PolyZZbar") -> "PolyZZbar":
        return self + (-other)

    def __neg__(self) -> "PolyZZbar":
        return PolyZZbar({k: -c for k, c in self._terms.items()})

    def scale(self, c: complex) -> "PolyZZbar":
        return PolyZZbar({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, PolyZZbar):
            out: dict[tuple[int, int], complex] = {}
            for (a, b), c in self._terms.items():
                for (aa, bb), cc in other._terms.items():
                    k = (a + aa, b + bb)
                    out[k] = out.get(k, 0) + c * cc
            return PolyZZbar(out)
        return self.scale(other)

    __rmul__ = __mul__

    def conj(self) -> "PolyZZbar":
        return PolyZZbar({(b, a): np.conj(c) for (a, b), c in self._terms.items()})

    def del_z(self) -> "PolyZZbar":
        return PolyZZbar({(a - 1, b): a * c for (a, b), c in self._terms.items() if a > 0})

    def del_zbar(self) -> "PolyZZbar":
        return PolyZZbar({(a, b - 1): b * c for (a, b), c in self._terms.items() if b > 0})

    def eval(self, z):
        """Evaluate at complex z (scalar or ndarray)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        zb = np.conj(z)
        for (a, b), c in self._terms.items():
            out = out + c * z**a * zb**b
        return out if out.ndim else complex(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyZZbar) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "PolyZZbar(0)"
        bits = [f"({c:.6g})*z^{a}*zb^{b}" for (a, b), c in sorted(self._terms.items())]
        return "PolyZZbar(" + " + ".join(bits) + ")"


def d_poly() -> PolyZZbar:
    """The boundary-defining polynomial d = 1 - z zbar = 1 - |z|^2."""
    return PolyZZbar({(0, 0): 1.0, (1, 1): -1.0})


def wirtinger(p: PolyZZbar, which: str) -> PolyZZbar:
    """Wirtinger derivative: which = "z" for del, "zbar" for delbar."""
    if which == "z":
        return p.del_z()
    if which == "zbar":
        return p.del_zbar()
    raise ValueError(f"wirtinger: which must be 'z' or 'zbar', got {which!r}")


@dataclass(frozen=True)
class ModeField:
    """Fiberwise mode representation of a symmetric m-tensor: the function
    on the circle bundle sum_k modes[k](z) e^{i k theta}."""

    order: int
    modes: Mapping[int, PolyZZbar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {int(k): p for k, p in self.modes.items() if not p.is_zero}
        for k in clean:
            if abs(k) > self.order or (k - self.order) % 2 != 0:
                raise ValueError(
                    f"ModeField: mode {k} incompatible with order {self.order} "
                    "(need |k| <= m and k = m mod 2)"
                )
        object.__setattr__(self, "modes", MappingProxyType(clean))

    def mode(self, k: int) -> PolyZZbar:
        return self.modes.get(k, PolyZZbar.zero())

    @property
    def is_tt(self) -> bool:
        """Transverse-traceless: only the extreme modes +-m, with mode +m
        holomorphic and mode -m antiholomorphic."""
        for k, p in self.modes.items():
            if k == self.order:
                if not p.is_holomorphic:
                    return False
            elif k == -self.order:
                if not p.is_antiholomorphic:
                    return False
            else:
                return False
        return True

    def __add__(self, other: "ModeField") -> "ModeField":
        if other.order != self.order:
            raise ValueError("ModeField addition requires equal orders")
        keys = set(self.modes) | set(other.modes)
        return ModeField(self.order, {k: self.mode(k) + other.mode(k) for k in keys})

    def scale(self, c: complex) -> "ModeField":
        return ModeField(self.order, {k: p.scale(c) for k, p in self.modes.items()})

    def eval(self, z, theta):
        """Evaluate the fiber function at (z, theta); array-compatible."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(np.broadcast(z, np.asarray(theta)).shape, dtype=complex)
        for k, p in self.modes.items():
            out = out + p.eval(z) * np.exp(1j * k * np.asarray(theta))
        return out if out.ndim else complex(out)

    def max_abs_coeff(self) -> float:
        return max((p.max_abs_coeff() for p in self.modes.values()), default=0.0)

    def max_degree(self) -> int:
        return max((p.degree() for p in self.modes.values()), default=-1)


def lift_ell_m(components: Iterable[tuple[int, int, Any]], m: int | None = None) -> ModeField:
    """Mode family of a symmetric tensor given by components on the
    dz^a dzbar^b spanning set (a + b = m): each component polynomial lands
    in mode a - b.

    ``components`` iterates (a, b, poly) with poly a PolyZZbar or a scalar.
    """
    comps = [(int(a), int(b), p if isinstance(p, PolyZZbar) else PolyZZbar({(0, 0): p}))
             for a, b, p in components]
    if m is None:
        m = comps[0][0] + comps[0][1] if comps else 0
    modes: dict[int, PolyZZbar] = {}
    for a, b, p in comps:
        if a + b != m:
            raise ValueError(f"lift_ell_m: component dz^{a} dzbar^{b} is not of order {m}")
        k = a - b
        modes[k] = modes.get(k, PolyZZbar.zero()) + p
    return ModeField(m, modes)


def apply_X(f: ModeField) -> ModeField:
    """Geodesic vector field X = e^{i theta} del + e^{-i theta} delbar;
    realizes the symmetrized derivative: order m -> m + 1."""
    out: dict[int, PolyZZbar] = {}
    for k in range(-f.order - 1, f.order + 2):
        if (k - (f.order + 1)) % 2 != 0:
            continue
        p = f.mode(k - 1).del_z() + f.mode(k + 1).del_zbar()
        if not p.is_zero:
            out[k] = p
    return ModeField(f.order + 1, out)


def eta_plus(f: ModeField) -> ModeField:
    """Mode-raising half of X: del acting, each mode shifted up by one."""
    return ModeField(f.order + 1, {k + 1: p.del_z() for k, p in f.modes.items()
                                   if not p.del_z().is_zero})


def eta_minus(f: ModeField) -> ModeField:
    """Mode-lowering half of X: delbar acting, each mode shifted down."""
    return ModeField(f.order + 1, {k - 1: p.del_zbar() for k, p in f.modes.items()
                                   if not p.del_zbar().is_zero})


def apply_Xperp(u: PolyZZbar) -> ModeField:
    """Orthogonal companion of X on scalars: modes {+1: i del u, -1: -i delbar u}."""
    out: dict[int, PolyZZbar] = {}
    dz = u.del_z().scale(1j)
    dzb = u.del_zbar().scale(-1j)
    if not dz.is_zero:
        out[1] = dz
    if not dzb.is_zero:
        out[-1] = dzb
    return ModeField(1, out)


def star_d(u: PolyZZbar) -> ModeField:
    """One-form *du (Hodge star with *dx = dy) as a mode field:
    modes {+1: -i del u, -1: +i delbar u}; equals -apply_Xperp(u)."""
    return apply_Xperp(u).scale(-1.0)


def L_embed(f: ModeField) -> ModeField:
    """Multiplication by the metric: order m -> m + 2, modes unchanged
    (the metric restricts to 1 on unit-circle fibers)."""
    return ModeField(f.order + 2, dict(f.modes))


def holo_project(
    p: PolyZZbar, gamma: float, side: str = "holo"
) -> tuple[PolyZZbar, PolyZZbar]:
    """Weighted-disk orthogonal projection onto the span of z^n (side
    "holo") or zbar^n (side "antiholo").

    The monomial Gram matrix is diagonal, so the coefficient on z^n is
    <p, z^n>_gamma / (pi B(n+1, gamma+1)).  Returns (projection, residual)
    with <projection, residual>_gamma = 0 exactly.
    """
    if side not in ("holo", "antiholo"):
        raise ValueError(f"holo_project: side must be 'holo' or 'antiholo', got {side!r}")
    work = p.conj() if side == "antiholo" else p
    proj_terms: dict[tuple[int, int], complex] = {}
    freqs = sorted({a - b for (a, b) in work.terms if a - b >= 0})
    for n in freqs:
        inner = 0.0 + 0.0j
        for (a, b), c in work.terms.items():
            if a - b == n:
                inner += c * math.pi * beta_fn((a + b + n) / 2 + 1.0, gamma + 1.0)
        coeff = inner / (math.pi * beta_fn(n + 1.0, gamma + 1.0))
        if coeff != 0:
            proj_terms[(n, 0)] = coeff
    proj = PolyZZbar(proj_terms)
    if side == "antiholo":
        proj = proj.conj()
    return proj, p - proj


def poincare_ratio(u: PolyZZbar, gamma: float) -> float:
    """||u||^2 / ||grad u||^2 in the gamma-weighted disk norms, for u
    vanishing on the boundary circle; bounded by max(2^-gamma, 1)/(1-gamma)
    for gamma in (-1, 1)."""
    if not -1.0 < gamma < 1.0:
        raise ValueError("poincare_ratio: gamma must lie in (-1, 1)")
    dev = u.boundary_trace_deviation()
    if dev > 1e-10 * max(u.max_abs_coeff(), 1.0):
        raise ValueError(
            f"poincare_ratio: u does not vanish on |z|=1 (deviation {dev:.3e})"
        )
    ux = u.del_z() + u.del_zbar()
    uy = (u.del_z() - u.del_zbar()).scale(1j)
    num = disk_inner_exact(u, u, gamma).real
    den = disk_inner_exact(ux, ux, gamma).real + disk_inner_exact(uy, uy, gamma).real
    if den == 0.0:
        raise ValueError("poincare_ratio: gradient vanishes identically")
    return num / den


@dataclass
class IttForm:
    """Iterated transverse-traceless representative of a tensor of order m.

    Even m = 2p:  f = sum_{j=1..p} L^{p-j} (tt part of order 2j)  +  L^p f0.
    Odd m = 2p+1: f = sum_{j=0..p} L^{p-j} (tt part of order 2j+1)
                      + L^p (weighted curl of a boundary-vanishing potential h),
    the curl part living alongside the genuinely tt order-1 part.

    ``tt_parts`` maps j to the tt ModeField of order 2j (even) or 2j+1 (odd);
    ``scalar_part`` is f0 (even case); ``curl_potential`` holds the radial
    mode family of h (odd case, set by the inversion routines).
    """

    order: int
    tt_parts: dict[int, ModeField]
    scalar_part: PolyZZbar | None = None
    curl_potential: Any = None

    def __post_init__(self) -> None:
        p, r = divmod(self.order, 2)
        for j, f in self.tt_parts.items():
            want = 2 * j + r
            if f.order != want:
                raise ValueError(f"IttForm: part j={j} has order {f.order}, expected {want}")
            if not f.is_tt:
                raise ValueError(f"IttForm: part j={j} is not transverse-traceless")
        if r == 0 and self.scalar_part is None:
            self.scalar_part = PolyZZbar.zero()
