"""Renderers: one figure per PlotJob, checksum-bound to its inputs.

Each renderer returns a small summary dict (what was drawn, from what)
so tests can assert figure structure without poking at pixels.  All
drawing is deterministic: fixed figure geometry, no timestamps in the
output files.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from .jobs import PlotJob, binding_metadata, validate_job
from .lattice import central_occupied, lattice_layout, occupied_blocks
from .schema import SchemaError, eval_terms, load_doc, load_sino_csv, tensor_modes

__all__ = ["plot"]

_FIGSIZE = {
    "sino": (6.4, 4.2),
    "diskmode": (5.2, 4.6),
    "sigma_decay": (5.6, 4.2),
    "index_lattice": (6.4, 4.8),
    "error_map": (6.4, 4.2),
}


def plot(job: PlotJob) -> dict:
    """Render the job to job.out; returns a summary of what was drawn."""
    validate_job(job)
    fig = Figure(figsize=_FIGSIZE[job.kind], dpi=float(job.style.get("dpi", 120)))
    ax = fig.add_subplot()
    render = {
        "sino": _render_sino,
        "diskmode": _render_diskmode,
        "sigma_decay": _render_sigma_decay,
        "index_lattice": _render_index_lattice,
        "error_map": _render_error_map,
    }[job.kind]
    summary = render(job, fig, ax)
    if "title" in job.style:
        ax.set_title(str(job.style["title"]))
    meta = binding_metadata(job)
    _save(fig, job.out, meta)
    summary.update(kind=job.kind, out=str(job.out), checksums=meta["dtx-sha256"].split(";"))
    return summary


def _save(fig: Figure, out: str, meta: dict[str, str]) -> None:
    if Path(out).suffix.lower() == ".svg":
        # the SVG backend only accepts its standard keys; Date=None and a
        # fixed hashsalt (element ids are uuid-salted otherwise) keep the
        # output byte-stable
        with matplotlib.rc_context({"svg.hashsalt": "plotkit"}):
            fig.savefig(out, metadata={
                "Date": None,
                "Keywords": [f"{k}={v}" for k, v in meta.items()],
            })
    else:
        fig.savefig(out, metadata=meta)


def _component(values: np.ndarray, which: str) -> np.ndarray:
    if which == "abs":
        return np.abs(values)
    if which == "re":
        return values.real
    if which == "im":
        return values.imag
    raise SchemaError(f"component must be abs|re|im, got {which!r}")


# -- sinogram heatmap ------------------------------------------------------


def _render_sino(job: PlotJob, fig: Figure, ax) -> dict:
    values, betas, alphas = load_sino_csv(job.inputs[0])
    gamma = job.style.get("gamma")
    if len(job.inputs) == 2:
        gamma = load_doc(job.inputs[1], "sino_coeffs")["gamma"]
    which = str(job.style.get("component", "abs"))
    if values.size == 0:
        ax.text(0.5, 0.5, "no samples", ha="center", va="center", transform=ax.transAxes)
        ax.set_axis_off()
        return {"shape": [0, 0], "gamma": gamma}
    mesh = ax.pcolormesh(
        betas, alphas, _component(values, which).T,
        cmap=str(job.style.get("cmap", "viridis")), shading="nearest",
    )
    fig.colorbar(mesh, ax=ax)
    ax.set_xlabel(r"$\beta$")
    ax.set_ylabel(r"$\alpha$")
    ax.set_title(f"sinogram ({which})")
    note = r"measure $\mu^{-2\gamma}\,d\beta\,d\alpha$"
    if gamma is not None:
        note += rf", $\gamma={float(gamma):+.2f}$"
    ax.text(0.02, 0.98, note, transform=ax.transAxes, va="top", ha="left",
            fontsize=8, color="white",
            bbox={"facecolor": "black", "alpha": 0.45, "pad": 2, "lw": 0})
    return {"shape": [len(betas), len(alphas)],
            "gamma": None if gamma is None else float(gamma)}


# -- disk heatmaps ---------------------------------------------------------


def _disk_mesh(res: int) -> tuple[np.ndarray, np.ndarray]:
    """Polar cell edges and centers on the unit disk: (edges, centers)
    with centers.shape == (res, 2 * res)."""
    r_e = np.linspace(0.0, 1.0, res + 1)
    t_e = np.linspace(0.0, 2.0 * np.pi, 2 * res + 1)
    edges = r_e[:, None] * np.exp(1j * t_e[None, :])
    r_c = 0.5 * (r_e[:-1] + r_e[1:])
    t_c = 0.5 * (t_e[:-1] + t_e[1:])
    centers = r_c[:, None] * np.exp(1j * t_c[None, :])
    return edges, centers


def _draw_disk(fig: Figure, ax, edges: np.ndarray, vals: np.ndarray, cmap: str) -> None:
    mesh = ax.pcolormesh(edges.real, edges.imag, vals, cmap=cmap)
    fig.colorbar(mesh, ax=ax)
    circle = np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 361))
    ax.plot(circle.real, circle.imag, color="black", lw=0.8)
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")


def _render_diskmode(job: PlotJob, fig: Figure, ax) -> dict:
    doc = load_doc(job.inputs[0], "tensor")
    modes = tensor_modes(doc)
    if not modes:
        raise SchemaError(f"{job.inputs[0]}: tensor document has no modes")
    if "mode" in job.style:
        k = int(job.style["mode"])
        if k not in modes:
            raise SchemaError(f"mode {k} not present (have {sorted(modes)})")
    else:
        k = max(modes, key=lambda q: (abs(q), q))
    edges, centers = _disk_mesh(int(job.style.get("res", 120)))
    vals = np.abs(eval_terms(modes[k], centers))
    _draw_disk(fig, ax, edges, vals, str(job.style.get("cmap", "viridis")))
    ax.set_title(f"$|f_{{{k}}}(z)|$  (order {doc['m']})")
    return {"mode": k, "order": int(doc["m"]), "max_abs": float(vals.max())}


def _render_error_map(job: PlotJob, fig: Figure, ax) -> dict:
    suffixes = {Path(p).suffix.lower() for p in job.inputs}
    if suffixes == {".csv"}:
        a, betas, alphas = load_sino_csv(job.inputs[0])
        b, betas2, alphas2 = load_sino_csv(job.inputs[1])
        if a.shape != b.shape or not (
            np.array_equal(betas, betas2) and np.array_equal(alphas, alphas2)
        ):
            raise SchemaError("error_map: sinogram grids do not match")
        diff = np.abs(a - b)
        mesh = ax.pcolormesh(betas, alphas, diff.T,
                             cmap=str(job.style.get("cmap", "magma")), shading="nearest")
        fig.colorbar(mesh, ax=ax)
        ax.set_xlabel(r"$\beta$")
        ax.set_ylabel(r"$\alpha$")
        ax.set_title("sinogram difference")
        return {"space": "sinogram", "max_abs": float(diff.max(initial=0.0))}
    if suffixes == {".json"}:
        ma = tensor_modes(load_doc(job.inputs[0], "tensor"))
        mb = tensor_modes(load_doc(job.inputs[1], "tensor"))
        edges, centers = _disk_mesh(int(job.style.get("res", 120)))
        total = np.zeros(centers.shape)
        for k in sorted(set(ma) | set(mb)):
            da = eval_terms(ma.get(k, []), centers)
            db = eval_terms(mb.get(k, []), centers)
            total += np.abs(da - db) ** 2
        diff = np.sqrt(total)
        _draw_disk(fig, ax, edges, diff, str(job.style.get("cmap", "magma")))
        ax.set_title("reconstruction error")
        return {"space": "disk", "max_abs": float(diff.max())}
    raise SchemaError("error_map inputs must be two .csv grids or two .json tensors")


# -- singular value decay --------------------------------------------------


def _render_sigma_decay(job: PlotJob, fig: Figure, ax) -> dict:
    k_class = int(job.style.get("k", 0))
    points = 0
    for i, path in enumerate(job.inputs):
        doc = load_doc(path, "sigma_table")
        gamma = float(doc["gamma"])
        series = sorted(
            (int(e["n"]), float(e["sigma"]))
            for e in doc["entries"]
            if int(e["k"]) == k_class
        )
        if not series:
            raise SchemaError(f"{path}: no entries with k={k_class}")
        ns = np.array([n for n, _ in series], dtype=float)
        sig = np.array([s for _, s in series])
        ax.loglog(ns + 1, sig, "o-", ms=3.5, label=rf"$\gamma={gamma:+.2f}$")
        guide = sig[0] * ((ns + 1) / (ns[0] + 1)) ** (-(gamma + 1) / 2)
        ax.loglog(ns + 1, guide, "--", color="0.55", lw=0.9,
                  label=r"slope $-(\gamma+1)/2$" if i == 0 else None)
        points += len(series)
    ax.set_xlabel(r"$n+1$")
    ax.set_ylabel(rf"$\sigma_{{n,{k_class}}}$")
    ax.legend(fontsize=8)
    ax.set_title("singular value decay")
    return {"series": len(job.inputs), "points": points, "k": k_class}


# -- range index lattice ---------------------------------------------------


def _render_index_lattice(job: PlotJob, fig: Figure, ax) -> dict:
    doc = load_doc(job.inputs[0], "range_report")
    if "order" not in doc or "conditions" not in doc:
        raise SchemaError(f"{job.inputs[0]}: malformed range report")
    order = int(doc["order"])
    occupied = occupied_blocks(doc)
    central = central_occupied(doc)
    n_max = int(job.style.get("nmax", 8))
    layout = lattice_layout(order, n_max)

    pts = np.array(layout["points"])
    ax.scatter(pts[:, 0], pts[:, 1], s=6, color="0.82", zorder=1)
    if layout["central"]:
        cpts = np.array(layout["central"])
        if central:
            ax.scatter(cpts[:, 0], cpts[:, 1], s=26, color="tab:orange",
                       zorder=2, label="central block")
        else:
            ax.scatter(cpts[:, 0], cpts[:, 1], s=26, facecolors="none",
                       edgecolors="tab:orange", lw=0.8, zorder=2)
    shift = order % 2
    for j, (left, right) in sorted(layout["blocks"].items()):
        on = j in occupied
        color = "tab:blue" if on else "0.55"
        for leg, label in ((left, f"$k=-{j}$"), (right, f"$k=n+{j + shift}$")):
            xs = [n for n, _ in leg]
            ys = [k for _, k in leg]
            if on:
                ax.plot(xs, ys, "-", color=color, lw=1.1, zorder=3)
                ax.scatter(xs, ys, s=30, color=color, zorder=4)
            else:
                ax.scatter(xs, ys, s=22, facecolors="none", edgecolors=color,
                           lw=0.8, zorder=3)
            ax.annotate(label, (xs[-1], ys[-1]), textcoords="offset points",
                        xytext=(6, 0), fontsize=7, color=color)
    ax.set_xlabel("$n$")
    ax.set_ylabel("$k$")
    gamma = doc.get("gamma")
    gtxt = "" if gamma is None else rf", $\gamma={float(gamma):+.2f}$"
    ax.set_title(
        f"range blocks, order {order}{gtxt} "
        f"(occupied: {', '.join(f'±{j}' for j in occupied) or 'none'})"
    )
    return {"order": order, "occupied": occupied, "central": central,
            "points": len(layout["points"])}
