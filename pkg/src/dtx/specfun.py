"""Gamma/Beta functions, Gegenbauer polynomials and the normalized
weight-polynomials ``lhat`` used throughout the fan-beam basis.

Everything here is a pure function of its arguments (plus a small
immutable per-degree cache in :class:`GegenbauerTable`); no global state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "WeightParam",
    "GegenbauerTable",
    "gamma_real",
    "beta",
    "gegenbauer",
    "gegenbauer_coeffs",
    "gegenbauer_weighted_sum",
    "lhat",
    "lhat_coeffs",
    "lhat_leading",
    "ghat_leading",
]


def gamma_real(x: float) -> float:
    """Gamma function on the reals, rejecting poles.

    Relative error is at machine level on the ranges used here (the C
    library ``tgamma`` is Lanczos-class).
    """
    if x <= 0 and x == math.floor(x):
        raise ValueError(f"gamma_real: pole at non-positive integer x={x}")
    return math.gamma(x)


def beta(x: float, y: float) -> float:
    """Euler Beta function B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y), x, y > 0."""
    if x <= 0 or y <= 0:
        raise ValueError(f"beta: arguments must be positive, got ({x}, {y})")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


@dataclass
class WeightParam:
    """Weight exponent gamma with its derived constants.

    ``beta_gg``   -- B(gamma+1, gamma+1), the full chord moment of the weight.
    ``c0``        -- max(2^(-gamma), 1), the constant entering the Poincare bound.
    ``norm_audit_scale`` -- measured squared norm of the fan-beam basis
    elements before normalization; unset until the basis audit has run.
    """

    gamma: float
    beta_gg: float = field(init=False)
    c0: float = field(init=False)
    norm_audit_scale: float | None = field(default=None, init=False)

    def __post_init__(self) -> None:
        if not self.gamma > -1:
            raise ValueError(f"WeightParam: gamma must exceed -1, got {self.gamma}")
        self.beta_gg = beta(self.gamma + 1.0, self.gamma + 1.0)
        self.c0 = max(2.0 ** (-self.gamma), 1.0)

    @property
    def decomposition_ok(self) -> bool:
        """True when gamma lies in (-1, 1), the range all decomposition
        features require; forward-only features need only gamma > -1."""
        return -1.0 < self.gamma < 1.0


def _as_gamma(gamma: "float | WeightParam") -> float:
    return gamma.gamma if isinstance(gamma, WeightParam) else float(gamma)


def gegenbauer(n: int, lam: float, t):
    """Gegenbauer polynomial C_n^lam(t) by the three-term recurrence.

    ``t`` may be a scalar or ndarray.  The generating-function definition
    sum_n w^n C_n^lam(t) = (1 - 2wt + w^2)^(-lam) is used as a test oracle
    only; the recurrence is the stable evaluator.
    """
    if n < 0:
        raise ValueError("gegenbauer: degree must be >= 0")
    if lam <= 0:
        raise ValueError("gegenbauer: lambda must be positive")
    t = np.asarray(t, dtype=float)
    c_prev = np.ones_like(t)
    if n == 0:
        return c_prev if c_prev.ndim else float(c_prev)
    c_cur = 2.0 * lam * t
    for k in range(2, n + 1):
        c_next = (2.0 * t * (k + lam - 1.0) * c_cur - (k + 2.0 * lam - 2.0) * c_prev) / k
        c_prev, c_cur = c_cur, c_next
    return c_cur if c_cur.ndim else float(c_cur)


def gegenbauer_coeffs(n: int, lam: float) -> NDArray[np.float64]:
    """Monomial coefficients of C_n^lam, ascending powers (length n+1)."""
    if n < 0:
        raise ValueError("gegenbauer_coeffs: degree must be >= 0")
    if lam <= 0:
        raise ValueError("gegenbauer_coeffs: lambda must be positive")
    c_prev = np.zeros(n + 1)
    c_prev[0] = 1.0
    if n == 0:
        return c_prev
    c_cur = np.zeros(n + 1)
    c_cur[1] = 2.0 * lam
    for k in range(2, n + 1):
        c_next = np.zeros(n + 1)
        c_next[1:] = 2.0 * (k + lam - 1.0) * c_cur[:-1]
        c_next -= (k + 2.0 * lam - 2.0) * c_prev
        c_next /= k
        c_prev, c_cur = c_cur, c_next
    return c_cur


def gegenbauer_weighted_sum(lam: float, w: complex, t: float) -> complex:
    """Closed form of sum_n w^n C_n^lam(t) (n + lam), valid for |w| < 1.

    Equals lam (1 - w^2) / (1 - 2wt + w^2)^(lam+1) with the principal
    branch; the base is bounded away from the negative real axis for
    |w| < 1 and real t in [-1, 1], and we reject it if not.
    """
    w = complex(w)
    if abs(w) >= 1:
        raise ValueError("gegenbauer_weighted_sum: need |w| < 1")
    base = 1.0 - 2.0 * w * t + w * w
    if base.real <= 0 and abs(base.imag) < 1e-300:
        raise ValueError("gegenbauer_weighted_sum: branch cut hit (base on negative real axis)")
    return lam * (1.0 - w * w) * base ** (-(lam + 1.0))


# -- normalized polynomials ------------------------------------------------
#
# lhat(n, gamma, x) = A_n * C_n^{gamma+1}(x) with
#   A_n = n! (2g+1)! / (n+2g+1)!  *  B_n^{-1/2} * sqrt(2 pi)
#   B_n = 2^{2g+1} n! ((2g+1)!)^2 / ((n+g+1)(n+2g+1)!)
# computed in log-space so degrees up to several hundred stay finite.
# The induced L^2((-1,1),(1-x^2)^{g+1/2}) norm of lhat is NOT 1 and NOT
# sqrt(2 pi); it is measured by the basis audit, never assumed here.


def _log_a_n(n: int, g: float) -> float:
    log_bn = (
        (2.0 * g + 1.0) * math.log(2.0)
        + math.lgamma(n + 1.0)
        + 2.0 * math.lgamma(2.0 * g + 2.0)
        - math.log(n + g + 1.0)
        - math.lgamma(n + 2.0 * g + 2.0)
    )
    return (
        math.lgamma(n + 1.0)
        + math.lgamma(2.0 * g + 2.0)
        - math.lgamma(n + 2.0 * g + 2.0)
        - 0.5 * log_bn
        + 0.5 * math.log(2.0 * math.pi)
    )


def lhat(n: int, gamma: "float | WeightParam", x):
    """Normalized weight-polynomial of degree n at x (scalar or array)."""
    g = _as_gamma(gamma)
    return math.exp(_log_a_n(n, g)) * gegenbauer(n, g + 1.0, x)


def lhat_coeffs(n: int, gamma: "float | WeightParam") -> NDArray[np.float64]:
    """Monomial coefficients of lhat(n, gamma, .), ascending powers."""
    g = _as_gamma(gamma)
    return math.exp(_log_a_n(n, g)) * gegenbauer_coeffs(n, g + 1.0)


def lhat_leading(n: int, gamma: "float | WeightParam") -> float:
    """Coefficient of x^n in lhat(n, gamma, x).

    Closed form 2^n (2g+1)! (n+g)! / ((n+2g+1)! g!) * B_n^{-1/2} sqrt(2 pi),
    evaluated in log-space.
    """
    g = _as_gamma(gamma)
    log_bn = (
        (2.0 * g + 1.0) * math.log(2.0)
        + math.lgamma(n + 1.0)
        + 2.0 * math.lgamma(2.0 * g + 2.0)
        - math.log(n + g + 1.0)
        - math.lgamma(n + 2.0 * g + 2.0)
    )
    log_l = (
        n * math.log(2.0)
        + math.lgamma(2.0 * g + 2.0)
        + math.lgamma(n + g + 1.0)
        - math.lgamma(n + 2.0 * g + 2.0)
        - math.lgamma(g + 1.0)
        - 0.5 * log_bn
        + 0.5 * math.log(2.0 * math.pi)
    )
    return math.exp(log_l)


def ghat_leading(n: int, k: int, gamma: "float | WeightParam") -> complex:
    """Leading coefficient ghat_{n,k} = lhat_leading(n) C(n,k) (-1)^k / (2i)^n
    of the disk polynomial with azimuthal index n - 2k."""
    if not 0 <= k <= n:
        raise ValueError(f"ghat_leading: need 0 <= k <= n, got (n, k) = ({n}, {k})")
    g = _as_gamma(gamma)
    log_binom = math.lgamma(n + 1.0) - math.lgamma(k + 1.0) - math.lgamma(n - k + 1.0)
    mag = math.exp(math.log(lhat_leading(n, g)) + log_binom - n * math.log(2.0))
    phase = (-1.0) ** k * (-1j) ** n
    return mag * phase


@dataclass
class GegenbauerTable:
    """Cache of Gegenbauer coefficient vectors for a fixed lambda."""

    lam: float
    max_degree: int
    _coeffs: list[NDArray[np.float64]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.lam <= 0:
            raise ValueError("GegenbauerTable: lambda must be positive")
        self._coeffs = [gegenbauer_coeffs(n, self.lam) for n in range(self.max_degree + 1)]

    def coeffs(self, n: int) -> NDArray[np.float64]:
        return self._coeffs[n]

    def value(self, n: int, t):
        t = np.asarray(t, dtype=float)
        c = self._coeffs[n]
        out = np.polynomial.polynomial.polyval(t, c)
        return out if np.ndim(out) else float(out)
