"""Coefficient-space structure of the transform's range: diagonal block
projections, Hilbert-scale weighted norms, and the range-membership test.

Index lattice (one lattice per parity).  Parity "+" (even tensor orders):
the triangle {0 <= k <= n} is the scalar block Pi0; each pair of diagonals
{k = -j} and {k = n + j} (j >= 1) forms the block Pi2j fed by tt tensors
of order 2j.  Parity "-" (odd orders): {1 <= k <= n, n >= 1} is the
one-form block PiPerp; the diagonals {k = -j} and {k = n + j + 1} (j >= 0)
form Pi2j1 fed by tt tensors of order 2j+1.  The blocks partition each
lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .basis import sigma

__all__ = [
    "SinoCoeffs",
    "HilbertScaleNorm",
    "block_of",
    "block_indices",
    "in_block",
    "project",
    "scale_norm",
    "range_check",
]

Key = tuple[int, int, str]  # (n, k, parity)


@dataclass
class SinoCoeffs:
    """Sparse coefficient map of a sinogram in the orthonormal psi_hat
    basis: (n, k, parity) -> complex."""

    gamma: float
    data: dict[Key, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (n, k, parity), c in self.data.items():
            if parity not in ("+", "-"):
                raise ValueError(f"SinoCoeffs: bad parity {parity!r}")
            if n < 0:
                raise ValueError("SinoCoeffs: negative degree")
            c = complex(c)
            if c != 0:
                clean[(int(n), int(k), parity)] = c
        self.data = clean

    def __getitem__(self, key: Key) -> complex:
        return self.data.get(key, 0.0 + 0.0j)

    def __iter__(self):
        return iter(sorted(self.data.items()))

    def __len__(self) -> int:
        return len(self.data)

    @property
    def parities(self) -> set[str]:
        return {p for (_, _, p) in self.data}

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.data.values()))

    def __add__(self, other: "SinoCoeffs") -> "SinoCoeffs":
        if other.gamma != self.gamma:
            raise ValueError("SinoCoeffs: mixing weights")
        out = dict(self.data)
        for k, c in other.data.items():
            out[k] = out.get(k, 0) + c
        return SinoCoeffs(self.gamma, out)

    def __sub__(self, other: "SinoCoeffs") -> "SinoCoeffs":
        return self + other.scale(-1.0)

    def scale(self, c: complex) -> "SinoCoeffs":
        return SinoCoeffs(self.gamma, {k: c * v for k, v in self.data.items()})

    def restrict(self, keys: Iterable[Key]) -> "SinoCoeffs":
        keyset = set(keys)
        return SinoCoeffs(self.gamma, {k: v for k, v in self.data.items() if k in keyset})


@dataclass(frozen=True)
class HilbertScaleNorm:
    """Sequence norm with weight (n+1)^{2 alpha} on the degree index."""

    alpha: float = 0.0

    def __call__(self, seq: Mapping[int, complex]) -> float:
        return math.sqrt(
            sum((n + 1.0) ** (2.0 * self.alpha) * abs(a) ** 2 for n, a in seq.items())
        )


def block_of(n: int, k: int, parity: str) -> tuple:
    """Canonical block tag of a lattice point: ("Pi0",), ("Pi2j", j),
    ("PiPerp",) or ("Pi2j1", j)."""
    if parity == "+":
        if 0 <= k <= n:
            return ("Pi0",)
        j = -k if k < 0 else k - n
        return ("Pi2j", j)
    if parity == "-":
        if 1 <= k <= n:
            return ("PiPerp",)
        j = -k if k <= 0 else k - n - 1
        return ("Pi2j1", j)
    raise ValueError(f"block_of: bad parity {parity!r}")


def in_block(block: tuple, n: int, k: int, parity: str) -> bool:
    return block_of(n, k, parity) == tuple(block)


def block_indices(block: tuple, n_max: int) -> list[Key]:
    """All lattice points of a block with degree n <= n_max."""
    tag = block[0]
    out: list[Key] = []
    for n in range(n_max + 1):
        if tag == "Pi0":
            out += [(n, k, "+") for k in range(n + 1)]
        elif tag == "Pi2j":
            j = block[1]
            if j >= 1:
                out += [(n, -j, "+"), (n, n + j, "+")]
        elif tag == "PiPerp":
            if n >= 1:
                out += [(n, k, "-") for k in range(1, n + 1)]
        elif tag == "Pi2j1":
            j = block[1]
            if j >= 0:
                out += [(n, -j, "-"), (n, n + j + 1, "-")]
        else:
            raise ValueError(f"block_indices: unknown block {block!r}")
    return out


def project(block: tuple, u: SinoCoeffs) -> SinoCoeffs:
    """Restriction of the coefficient map to one block's index set."""
    tag = block[0]
    want_parity = "+" if tag in ("Pi0", "Pi2j") else "-"
    if u.parities - {want_parity}:
        raise ValueError(
            f"project: block {block!r} expects parity {want_parity!r}, "
            f"data has {sorted(u.parities)}"
        )
    keep = {
        key: c
        for key, c in u.data.items()
        if block_of(*key) == tuple(block)
    }
    return SinoCoeffs(u.gamma, keep)


def scale_norm(u_block: SinoCoeffs | Mapping[int, complex], alpha: float) -> float:
    """Hilbert-scale norm sqrt(sum (n+1)^{2 alpha} |a_n|^2) of a diagonal
    block (coefficients indexed by degree n)."""
    if isinstance(u_block, SinoCoeffs):
        seq: dict[int, float] = {}
        for (n, _k, _p), c in u_block.data.items():
            seq[n] = seq.get(n, 0.0) + abs(c) ** 2
        return math.sqrt(sum((n + 1.0) ** (2.0 * alpha) * s for n, s in seq.items()))
    return HilbertScaleNorm(alpha)(u_block)


def range_check(
    u: SinoCoeffs,
    m: int,
    tol_a: float | None = None,
    tol_c: float = 1e12,
) -> dict:
    """Finite-truncation range test for tensor order m.

    (a) no energy on diagonal blocks beyond order m (hard condition);
    (b) Hilbert-scale norms of each in-range diagonal (reported values);
    (c) the sigma-weighted sum over the scalar/one-form block, compared
    against a "finite" threshold.  Always returns a report; never raises.
    """
    p = m // 2
    odd = m % 2 == 1
    want_parity = "-" if odd else "+"
    norm_u = u.norm()
    if tol_a is None:
        tol_a = 1e-8 * norm_u if norm_u > 0 else 1e-8

    bad_energy = 0.0
    b_norms: dict[int, float] = {}
    c_sum = 0.0
    alpha = (1.0 + u.gamma) / 2.0
    for (n, k, parity), c in u.data.items():
        if parity != want_parity:
            bad_energy += abs(c) ** 2
            continue
        block = block_of(n, k, parity)
        if block[0] in ("Pi0", "PiPerp"):
            c_sum += abs(c) ** 2 / sigma(n, k, u.gamma) ** 2
        else:
            j = block[1]
            if j > p:
                bad_energy += abs(c) ** 2
            else:
                b_norms[j] = math.hypot(b_norms.get(j, 0.0), (n + 1.0) ** alpha * abs(c))
    residual = math.sqrt(bad_energy)
    a_pass = residual <= tol_a
    c_pass = c_sum < tol_c
    report = {
        "order": m,
        "gamma": u.gamma,
        "conditions": {
            "a": {"pass": bool(a_pass), "residual": residual},
            "b": [{"j": j, "norm": b_norms[j]} for j in sorted(b_norms)],
            "c": {"sum": c_sum, "pass": bool(c_pass)},
        },
        "pass": bool(a_pass and c_pass),
    }
    return report
