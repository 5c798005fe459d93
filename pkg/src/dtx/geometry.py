"""Fan-beam chart of the inward boundary of the unit circle bundle.

A chord is indexed by its entry point e^{i beta} and the angle alpha
between the inward normal and the chord direction; the chord direction is
theta = beta + pi + alpha, the chord length is tau = 2 cos(alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FanBeamPoint",
    "PhasePoint",
    "chord_point",
    "d_along",
    "fanbeam_project",
    "scatter_antipodal",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FanBeamPoint:
    """Inward-pointing boundary direction (beta, alpha)."""

    beta: float
    alpha: float

    def __post_init__(self) -> None:
        if not -math.pi / 2 - 1e-12 <= self.alpha <= math.pi / 2 + 1e-12:
            raise ValueError(f"FanBeamPoint: alpha out of [-pi/2, pi/2]: {self.alpha}")

    @property
    def mu(self) -> float:
        """cos(alpha) in [0, 1]."""
        return math.cos(self.alpha)

    @property
    def tau(self) -> float:
        """Chord length 2 cos(alpha)."""
        return 2.0 * math.cos(self.alpha)

    @property
    def theta(self) -> float:
        """Direction angle of the chord, constant along it."""
        return self.beta + math.pi + self.alpha


@dataclass(frozen=True)
class PhasePoint:
    """Point (z, theta) of the circle bundle over the closed disk.

    ``z`` may be a complex scalar or an ndarray of positions sharing the
    same direction theta (a chord sampled at several parameters).
    """

    z: complex
    theta: float

    def __post_init__(self) -> None:
        r = np.max(np.abs(self.z))
        if r > 1.0 + 1e-12:
            raise ValueError(f"PhasePoint: |z| = {r} exceeds 1")


def chord_point(p: FanBeamPoint, t) -> PhasePoint:
    """Position after flowing a parameter t in [0, tau] along the chord."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < -1e-12) or np.any(t_arr > p.tau + 1e-12):
        raise ValueError(f"chord_point: t outside [0, {p.tau}]")
    z = np.exp(1j * p.beta) + t_arr * np.exp(1j * (p.beta + math.pi + p.alpha))
    if z.ndim == 0:
        z = complex(z)
    return PhasePoint(z=z, theta=p.beta + math.pi + p.alpha)


def d_along(p: FanBeamPoint, t):
    """Value of 1 - |z|^2 along the chord: (2 cos alpha) t - t^2."""
    t_arr = np.asarray(t, dtype=float)
    out = 2.0 * math.cos(p.alpha) * t_arr - t_arr**2
    return out if out.ndim else float(out)


def fanbeam_project(q: PhasePoint) -> FanBeamPoint:
    """Fan-beam coordinates of the unique chord through (z, theta).

    sin(alpha) = (z e^{-i theta} - zbar e^{i theta}) / (2i), which is real;
    beta = theta - pi - alpha.
    """
    z = complex(q.z)
    s = (z * np.exp(-1j * q.theta) - np.conj(z) * np.exp(1j * q.theta)) / 2j
    s = s.real
    if abs(s) > 1.0 + 1e-12:
        raise ValueError(f"fanbeam_project: |sin alpha| = {abs(s)} exceeds 1")
    s = min(1.0, max(-1.0, s))
    alpha = math.asin(s)
    beta = (q.theta - math.pi - alpha) % _TWO_PI
    return FanBeamPoint(beta=beta, alpha=alpha)


def scatter_antipodal(p: FanBeamPoint) -> FanBeamPoint:
    """Antipodal scattering relation (beta, alpha) -> (beta+pi+2alpha, -alpha).

    Maps a chord to itself traversed backwards; it is an involution and
    preserves the measure dbeta dalpha.
    """
    return FanBeamPoint(beta=(p.beta + math.pi + 2.0 * p.alpha) % _TWO_PI, alpha=-p.alpha)
