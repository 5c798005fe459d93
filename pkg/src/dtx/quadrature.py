"""Quadrature rules for the weighted transform and its data space.

Three ingredients:

* Gauss-Jacobi rules on [0,1] with weight s^gamma (1-s)^gamma, for chord
  integrals of d^gamma-weighted integrands (the substitution t = 2 s cos(alpha)
  turns the chord weight into exactly this).
* data-space grids on (beta, alpha): uniform trapezoid in beta crossed with
  either Gauss-Gegenbauer nodes in x = sin(alpha) (weight (1-x^2)^{gamma+1/2},
  exact for products of the fan-beam basis) or Gauss-Legendre nodes in alpha
  (spectral for integrands that are trigonometric polynomials).
* exact monomial Gram integrals on the gamma-weighted disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy.special import roots_gegenbauer, roots_jacobi, roots_legendre

from .geometry import FanBeamPoint, PhasePoint, chord_point
from .specfun import beta as beta_fn

__all__ = [
    "QuadRule",
    "SinoGridSpec",
    "jacobi_rule",
    "uniform_angle_rule",
    "make_grid_spec",
    "chord_integrate",
    "boundary_inner",
    "boundary_norm",
    "disk_inner_exact",
]


@dataclass(frozen=True)
class QuadRule:
    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]
    kind: str
    order: int

    def __post_init__(self) -> None:
        if len(self.nodes) != len(self.weights):
            raise ValueError("QuadRule: nodes/weights length mismatch")


def jacobi_rule(n: int, gamma: float) -> QuadRule:
    """Gauss rule on [0,1] for the weight s^gamma (1-s)^gamma.

    Exact on polynomial degree <= 2n-1; the weights sum to B(gamma+1, gamma+1).
    """
    if n < 1:
        raise ValueError("jacobi_rule: need n >= 1")
    if gamma <= -1:
        raise ValueError("jacobi_rule: need gamma > -1")
    x, w = roots_jacobi(n, gamma, gamma)
    nodes = 0.5 * (x + 1.0)
    weights = w / (2.0 * 4.0**gamma)
    return QuadRule(nodes=nodes, weights=weights, kind="jacobi01", order=n)


def uniform_angle_rule(m: int) -> QuadRule:
    """Trapezoid rule on [0, 2pi) with m equispaced nodes (exact for trig
    polynomials of bandwidth < m)."""
    if m < 1:
        raise ValueError("uniform_angle_rule: need m >= 1")
    nodes = 2.0 * math.pi * np.arange(m) / m
    weights = np.full(m, 2.0 * math.pi / m)
    return QuadRule(nodes=nodes, weights=weights, kind="uniform_angle", order=m)


@dataclass(frozen=True)
class SinoGridSpec:
    """Tensor-product quadrature grid on the fan-beam boundary chart.

    ``alpha_weights`` already contain the mu^{-2 gamma} factor of the data
    space measure, so the inner product of grids U, V is

        sum_{i,j} beta_weight * alpha_weights[j] * U[i,j] * conj(V[i,j]).
    """

    gamma: float
    betas: NDArray[np.float64]
    alphas: NDArray[np.float64]
    alpha_weights: NDArray[np.float64]
    kind: str  # "gegenbauer" or "legendre"

    @property
    def mbeta(self) -> int:
        return len(self.betas)

    @property
    def nalpha(self) -> int:
        return len(self.alphas)

    @property
    def beta_weight(self) -> float:
        return 2.0 * math.pi / self.mbeta

    @property
    def x(self) -> NDArray[np.float64]:
        """sin(alpha) at the alpha nodes."""
        return np.sin(self.alphas)

    @property
    def mu(self) -> NDArray[np.float64]:
        return np.cos(self.alphas)

    def mesh(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """(beta, alpha) meshgrid arrays of shape (mbeta, nalpha)."""
        return np.meshgrid(self.betas, self.alphas, indexing="ij")

    def points(self) -> list[list[FanBeamPoint]]:
        return [[FanBeamPoint(b, a) for a in self.alphas] for b in self.betas]


def make_grid_spec(
    n_max: int,
    gamma: float,
    kind: str = "gegenbauer",
    mbeta: int | None = None,
    nalpha: int | None = None,
) -> SinoGridSpec:
    """Grid adequate for basis elements of degree <= n_max.

    Defaults: mbeta = 4 n_max + 8 (beta bandwidth margin) and
    nalpha = n_max + 6 Gauss nodes.
    """
    if mbeta is None:
        mbeta = 4 * n_max + 8
    if nalpha is None:
        nalpha = n_max + 6
    betas = 2.0 * math.pi * np.arange(mbeta) / mbeta
    if kind == "gegenbauer":
        x, w = roots_gegenbauer(nalpha, gamma + 1.0)
        alphas = np.arcsin(x)
        alpha_weights = w * (1.0 - x * x) ** (-(2.0 * gamma + 1.0))
    elif kind == "legendre":
        x, w = roots_legendre(nalpha)
        alphas = 0.5 * math.pi * x
        alpha_weights = 0.5 * math.pi * w * np.cos(alphas) ** (-2.0 * gamma)
    else:
        raise ValueError(f"make_grid_spec: unknown kind {kind!r}")
    return SinoGridSpec(
        gamma=gamma, betas=betas, alphas=alphas, alpha_weights=alpha_weights, kind=kind
    )


def chord_integrate(p: FanBeamPoint, gamma: float, f, rule: QuadRule) -> complex:
    """Weighted chord integral of f against d^gamma along the chord p.

    Computed as (2 mu)^{2 gamma + 1} sum_i w_i f(chord_point(p, 2 mu s_i));
    exact whenever t -> f(chord_point(p, t)) is polynomial of degree
    <= 2 * order - 1.
    """
    if rule.kind != "jacobi01":
        raise ValueError("chord_integrate: rule must be a jacobi01 rule")
    mu = p.mu
    ts = 2.0 * mu * rule.nodes
    q = chord_point(p, ts)
    vals = np.asarray(f(q))
    return (2.0 * mu) ** (2.0 * gamma + 1.0) * complex(np.sum(rule.weights * vals))


def _grid_values(u, spec: SinoGridSpec) -> NDArray[np.complex128]:
    """Coerce a grid operand: ndarray of shape (mbeta, nalpha), an object
    exposing .values/.spec, or a callable f(beta, alpha) evaluated on the
    meshgrid."""
    if hasattr(u, "values") and hasattr(u, "spec"):
        if u.spec is not spec and not (
            np.array_equal(u.spec.betas, spec.betas) and np.array_equal(u.spec.alphas, spec.alphas)
        ):
            raise ValueError("boundary_inner: operand lives on a different grid")
        return np.asarray(u.values, dtype=complex)
    if callable(u):
        bb, aa = spec.mesh()
        return np.asarray(u(bb, aa), dtype=complex)
    arr = np.asarray(u, dtype=complex)
    if arr.shape != (spec.mbeta, spec.nalpha):
        raise ValueError(
            f"boundary_inner: expected shape {(spec.mbeta, spec.nalpha)}, got {arr.shape}"
        )
    return arr


def boundary_inner(u, v, spec: SinoGridSpec | None = None) -> complex:
    """Data-space inner product int u conj(v) mu^{-2 gamma} dbeta dalpha.

    ``u`` and ``v`` may be grid value arrays, sinogram objects carrying
    their own grid spec, or callables of (beta, alpha).
    """
    if spec is None:
        for op in (u, v):
            if hasattr(op, "spec"):
                spec = op.spec
                break
    if spec is None:
        raise ValueError("boundary_inner: no grid spec available")
    uu = _grid_values(u, spec)
    vv = _grid_values(v, spec)
    return complex(spec.beta_weight * np.sum(uu * np.conj(vv) * spec.alpha_weights))


def boundary_norm(u, spec: SinoGridSpec | None = None) -> float:
    """Data-space norm sqrt(<u, u>)."""
    return math.sqrt(max(boundary_inner(u, u, spec).real, 0.0))


def _poly_terms(p) -> dict[tuple[int, int], complex]:
    if hasattr(p, "terms"):
        t = p.terms
        return dict(t() if callable(t) else t)
    return dict(p)


def disk_inner_exact(p, q, gamma: float) -> complex:
    """Exact weighted-disk inner product of polynomials in z and zbar.

    Uses <z^a zbar^b, z^c zbar^d> = 0 unless a - b = c - d, and otherwise
    pi * B((a+b+c+d)/2 + 1, gamma+1).  Operands are PolyZZbar-like objects
    (a ``terms`` mapping (a, b) -> coefficient) or plain dicts.
    """
    tp = _poly_terms(p)
    tq = _poly_terms(q)
    by_freq: dict[int, list[tuple[int, int, complex]]] = {}
    for (a, b), coef in tq.items():
        by_freq.setdefault(a - b, []).append((a, b, coef))
    total = 0.0 + 0.0j
    for (a, b), cp in tp.items():
        for c, d, cq in by_freq.get(a - b, ()):
            half = (a + b + c + d) // 2
            total += cp * np.conj(cq) * math.pi * beta_fn(half + 1.0, gamma + 1.0)
    return complex(total)
