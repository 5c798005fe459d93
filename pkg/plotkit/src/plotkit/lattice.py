"""Index-lattice geometry for range reports.

The data space splits into diagonally indexed blocks on the (n, k)
lattice.  For even tensor order m = 2p the central block is the triangle
{0 <= k <= n} and diagonal block j pairs the legs k = -j and k = n + j;
for odd order m = 2p + 1 the central triangle is {1 <= k <= n} and block
j pairs k = -j with k = n + j + 1.  A range report lists the blocks that
carry energy; these helpers turn the report into point sets so the
renderer (and the tests) never re-derive them independently.
"""

from __future__ import annotations

from .schema import SchemaError

__all__ = ["occupied_blocks", "central_occupied", "block_legs", "lattice_layout"]


def occupied_blocks(doc: dict) -> list[int]:
    """Diagonal block indices j with nonzero reported norm, sorted."""
    try:
        rows = doc["conditions"]["b"]
        return sorted(int(row["j"]) for row in rows if row["norm"] > 0)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed range report ({exc})") from exc


def central_occupied(doc: dict) -> bool:
    """Whether the central (scalar / one-form) block carries energy."""
    try:
        return doc["conditions"]["c"]["sum"] > 0
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed range report ({exc})") from exc


def block_legs(order: int, j: int, n_max: int) -> tuple[list, list]:
    """Lattice points of diagonal block j: ([(n, -j)], [(n, n+j+shift)])."""
    shift = order % 2
    if j < 0:
        raise ValueError(f"block index must be >= 0, got {j}")
    left = [(n, -j) for n in range(n_max + 1)]
    right = [(n, n + j + shift) for n in range(n_max + 1)]
    return left, right


def lattice_layout(order: int, n_max: int, j_max: int | None = None) -> dict:
    """All drawable lattice structure for one report.

    Returns {"points": background lattice, "central": triangle points,
    "blocks": {j: (left_leg, right_leg)}} with j running to one past the
    last block the order supports, so empty diagonals are visible.
    """
    p, r = divmod(order, 2)
    if j_max is None:
        j_max = p + 1
    j_lo = 1 if r == 0 else 0
    k_lo = 1 if r else 0
    central = [(n, k) for n in range(n_max + 1) for k in range(k_lo, n + 1)]
    points = [
        (n, k)
        for n in range(n_max + 1)
        for k in range(-j_max, n + j_max + r + 1)
    ]
    blocks = {j: block_legs(order, j, n_max) for j in range(j_lo, j_max + 1)}
    return {"points": points, "central": central, "blocks": blocks}
