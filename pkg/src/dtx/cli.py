"""Command-line driver.

Subcommands: sinogram | rangecheck | reconstruct | decompose | svd-table |
selftest.  Exit codes: 0 ok, 1 error, 2 out-of-range data.  All file
output goes through the canonical dtx-v1 formatters, so runs are
bit-stable for a fixed seed and config.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import formats
from .basis import PsiIndex, sigma
from .dataspace import SinoCoeffs, range_check
from .invert import (
    default_z_grid,
    itt_forward_coeffs,
    kernel_G,
    kernel_G_series,
    kernel_grid_spec,
    order_indices,
    recon_tt_kernel,
    solve_potential,
    to_itt,
)
from .geometry import FanBeamPoint
from .quadrature import boundary_inner, chord_integrate, jacobi_rule, make_grid_spec
from .specfun import beta as beta_fn
from .tensorfield import ModeField, PolyZZbar, apply_X, d_poly, poincare_ratio
from .xray import (
    TtSpectrum,
    forward_sino,
    forward_spectral,
    forward_spectral_scalar,
    sino_from_coeffs,
    sino_project,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_OUT_OF_RANGE = 2


@dataclass
class RunConfig:
    """Knobs shared by all subcommands; a JSON config file provides
    defaults, explicit flags override."""

    gamma: float = 0.0
    order: int = 2
    n_max: int = 6
    quad_nodes: int | None = None  # overrides the per-grid defaults when set
    tol: float = 1e-7
    route: str = "svd"
    seed: int = 0
    out: str | None = None
    gamma_safety: float = 0.95

    def validate(self) -> None:
        if not -1.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie in (-1, 1), got {self.gamma}")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.route not in ("svd", "kernel"):
            raise ValueError(f"route must be 'svd' or 'kernel', got {self.route!r}")


def _build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        with open(args.config) as fh:
            loaded = json.load(fh)
        known = {f.name for f in fields(RunConfig)}
        bad = set(loaded) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        cfg = replace(cfg, **loaded)
    for f in fields(RunConfig):
        val = getattr(args, f.name, None)
        if val is not None:
            cfg = replace(cfg, **{f.name: val})
    cfg.validate()
    return cfg


def _grid(cfg: RunConfig, n_max: int | None = None):
    n = cfg.n_max if n_max is None else n_max
    if cfg.quad_nodes is not None:
        return make_grid_spec(n, cfg.gamma, mbeta=4 * cfg.quad_nodes, nalpha=cfg.quad_nodes)
    return make_grid_spec(n, cfg.gamma)


def _write(path: str | Path, text: str) -> None:
    Path(path).write_text(text)
    print(f"wrote {path}")


# -- sinogram --------------------------------------------------------------


def cmd_sinogram(cfg: RunConfig, tensor_path: str) -> int:
    f = formats.tensor_from_json(Path(tensor_path).read_text())
    n_data = max(cfg.n_max, f.max_degree() + f.order + 2)
    spec = _grid(cfg, n_data)
    d = forward_sino(f, spec)
    u = sino_project(d, order_indices(f.order, n_data))
    cutoff = 1e-12 * max(u.norm(), 1e-300)
    u = SinoCoeffs(cfg.gamma, {k: c for k, c in u.data.items() if abs(c) > cutoff})
    prefix = cfg.out or f"{Path(tensor_path).stem}.sino"
    _write(f"{prefix}.csv", formats.sino_grid_to_csv(d.values, spec.betas, spec.alphas))
    _write(f"{prefix}.json", formats.sino_coeffs_to_json(u))
    return EXIT_OK


# -- rangecheck ------------------------------------------------------------


def cmd_rangecheck(cfg: RunConfig, coeffs_path: str) -> int:
    u = formats.sino_coeffs_from_json(Path(coeffs_path).read_text())
    if not -1.0 < u.gamma < 1.0:
        raise ValueError(f"gamma must lie in (-1, 1), got {u.gamma}")
    report = range_check(u, cfg.order)
    text = formats.range_report_to_json(report)
    if cfg.out:
        _write(cfg.out, text)
    else:
        print(text, end="")
    return EXIT_OK if report["pass"] else EXIT_OUT_OF_RANGE


# -- reconstruct / decompose ----------------------------------------------


def _reconstruct(cfg: RunConfig, u: SinoCoeffs, out_path: str) -> int:
    try:
        itt = to_itt(u, cfg.order)
    except ValueError as exc:
        if "range support condition" in str(exc):
            print(f"out of range: {exc}", file=sys.stderr)
            return EXIT_OUT_OF_RANGE
        raise
    if cfg.route == "kernel":
        diff = _kernel_route_diff(cfg, u, itt)
        print(f"kernel-vs-svd max pointwise diff: {diff:.3e}")
        if diff > 1e-5:
            print("error: kernel route disagrees with SVD route", file=sys.stderr)
            return EXIT_ERROR
    _write(out_path, formats.itt_to_json(itt, u.gamma))
    back = itt_forward_coeffs(itt, u.gamma)
    resid = (back - u).norm() / max(u.norm(), 1e-300)
    print(f"data reproduction residual: {resid:.3e}")
    return EXIT_OK


def _kernel_route_diff(cfg: RunConfig, u: SinoCoeffs, itt) -> float:
    """Evaluate both reconstruction routes on a sample grid inside |z| <= 0.8."""
    spec = kernel_grid_spec(u.gamma)
    d = sino_from_coeffs(u, spec)
    zpts = default_z_grid(nr=4, nw=12, rmax=0.8)
    kr = recon_tt_kernel(d, cfg.order, zpts)
    diff = 0.0
    for j, (fp, fm) in kr.parts.items():
        f = itt.tt_parts.get(j)
        mj = 2 * j + cfg.order % 2
        tp = f.mode(mj).eval(zpts) if f is not None else np.zeros_like(zpts)
        tm = f.mode(-mj).eval(zpts) if f is not None else np.zeros_like(zpts)
        diff = max(diff, float(np.abs(fp - tp).max()), float(np.abs(fm - tm).max()))
    return diff


def cmd_reconstruct(cfg: RunConfig, coeffs_path: str) -> int:
    u = formats.sino_coeffs_from_json(Path(coeffs_path).read_text())
    if not -1.0 < u.gamma < 1.0:
        raise ValueError(f"gamma must lie in (-1, 1), got {u.gamma}")
    out = cfg.out or f"{Path(coeffs_path).stem}.itt.json"
    return _reconstruct(cfg, u, out)


def cmd_decompose(cfg: RunConfig, tensor_path: str) -> int:
    f = formats.tensor_from_json(Path(tensor_path).read_text())
    n_data = max(cfg.n_max, f.max_degree() + f.order + 2)
    spec = _grid(cfg, n_data)
    d = forward_sino(f, spec)
    u = sino_project(d, order_indices(f.order, n_data))
    cutoff = 1e-11 * max(u.norm(), 1e-300)
    u = SinoCoeffs(cfg.gamma, {k: c for k, c in u.data.items() if abs(c) > cutoff})
    cfg = replace(cfg, order=f.order)
    out = cfg.out or f"{Path(tensor_path).stem}.itt.json"
    return _reconstruct(cfg, u, out)


# -- svd-table -------------------------------------------------------------


def cmd_svd_table(cfg: RunConfig, with_basis: bool) -> int:
    text = formats.sigma_table_to_json(cfg.gamma, cfg.n_max, with_basis=with_basis)
    if cfg.out:
        _write(cfg.out, text)
    else:
        print(text, end="")
    return EXIT_OK


# -- selftest --------------------------------------------------------------


class _Suite:
    def __init__(self) -> None:
        self.failures = 0

    def check(self, name: str, err: float, tol: float) -> None:
        if err <= tol:
            print(f"PASS {name} (margin {err:.2e} <= {tol:.0e})")
        else:
            self.failures += 1
            print(f"FAIL {name} ({err:.2e} > {tol:.0e})")


def _selftest_gamma(suite: _Suite, gamma: float, n_max: int, rng: np.random.Generator,
                    decomposition: bool) -> None:
    tag = f"[gamma={gamma:+.3f}]"
    # closed-form total weight along random chords
    rule = jacobi_rule(8, gamma)
    err = 0.0
    for _ in range(10):
        p = FanBeamPoint(rng.uniform(0, 2 * math.pi), rng.uniform(-1.4, 1.4))
        val = chord_integrate(p, gamma, lambda z: np.ones_like(z, dtype=complex), rule)
        ref = (2 * p.mu) ** (2 * gamma + 1) * beta_fn(gamma + 1, gamma + 1)
        err = max(err, abs(val - ref) / abs(ref))
    suite.check(f"{tag} chord weight closed form", err, 1e-12)

    # sigma decay exponent
    vals = [sigma(n, 0, gamma) ** 2 * (n + 1) ** (gamma + 1) for n in (50, 100, 200)]
    spread = (max(vals) - min(vals)) / max(vals)
    suite.check(f"{tag} sigma_n0 ~ n^-(gamma+1)", spread, 0.2)

    if not decomposition:
        print(f"SKIP {tag} decomposition suites: out of (-1, 1) safety margin")
        return

    # basis orthonormality after the norm audit
    spec = make_grid_spec(n_max, gamma)
    idx = [PsiIndex(n, k, "+") for n in range(4) for k in range(-2, n + 3)]
    from .basis import psi_grid

    vecs = [psi_grid(i, spec) for i in idx]
    err = 0.0
    for a, va in enumerate(vecs):
        for b, vb in enumerate(vecs):
            g = boundary_inner(va, vb, spec)
            err = max(err, abs(g - (1.0 if a == b else 0.0)))
    suite.check(f"{tag} basis Gram = identity", err, 1e-9)

    # SVD diagonal reproduction
    from .basis import zhat_poly

    err = 0.0
    for (n, k) in ((0, 0), (2, 1), (3, 0)):
        f = ModeField(0, {0: zhat_poly(n, k, gamma)})
        u = sino_project(forward_sino(f, spec), [PsiIndex(n, k, "+")])
        err = max(err, abs(u[(n, k, "+")] - sigma(n, k, gamma)) / sigma(n, k, gamma))
    suite.check(f"{tag} SVD reproduction", err, 1e-6)

    # kernel annihilation: I_m d^gamma (d^{-gamma} d^s (d p)) = 0
    err = 0.0
    for m in (1, 2, 3):
        modes = {}
        for k in range(-(m - 1), m, 2):
            terms = {
                (a, b): complex(*rng.standard_normal(2))
                for a in range(2) for b in range(2)
            }
            modes[k] = PolyZZbar(terms) * d_poly()
        q = ModeField(m - 1, modes)
        g_data = forward_sino(apply_X(q), spec, weighted=False)
        err = max(err, float(np.abs(g_data.values).max()))
    suite.check(f"{tag} gauge annihilation", err, 1e-9)

    # round trip through to_itt (orders 2 and 3)
    err = 0.0
    for m in (2, 3):
        u = _random_itt_data(m, min(n_max, 4), rng, gamma)
        itt = to_itt(u, m)
        back = itt_forward_coeffs(itt, gamma)
        err = max(err, (back - u).norm() / u.norm())
    suite.check(f"{tag} to_itt round trip", err, 1e-7)

    # kernel closed form vs truncated series (fixed scale 2 pi)
    err = 0.0
    for _ in range(4):
        p = FanBeamPoint(rng.uniform(0, 2 * math.pi), rng.uniform(-1.2, 1.2))
        z = 0.4 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
        cf = kernel_G(0, gamma, p, complex(z))
        se = 2 * math.pi * kernel_G_series(0, gamma, p, complex(z), nterms=200)
        err = max(err, abs(cf - se) / abs(cf))
    suite.check(f"{tag} kernel closed form = series", err, 1e-8)

    # manufactured curl potential
    w1 = PolyZZbar({(0, 0): -1j, (1, 1): 1j * (2 + gamma), (0, 2): 1j * (gamma + 1)})
    fam = solve_potential(w1, gamma)
    zs = 0.95 * np.exp(1j * np.linspace(0.1, 6.0, 7)) * np.linspace(0.2, 1.0, 7)
    href = (1 - np.abs(zs) ** 2) ** (gamma + 1) * np.real(zs)
    err = float(np.abs(fam.eval(zs) - href).max())
    suite.check(f"{tag} potential manufactured solution", err, 1e-6)

    # Poincare inequality on boundary-vanishing fields
    c0 = max(2.0 ** (-gamma), 1.0) / (1.0 - gamma)
    worst = 0.0
    for _ in range(10):
        p = PolyZZbar({(a, b): complex(*rng.standard_normal(2)) for a in range(3) for b in range(3)})
        worst = max(worst, poincare_ratio(p * d_poly(), gamma))
    suite.check(f"{tag} Poincare ratio <= C0/(1-gamma)", worst, c0)


def _random_itt_data(m: int, n_max: int, rng: np.random.Generator, gamma: float) -> SinoCoeffs:
    """Exact data coefficients of a random iterated-tt tensor of order m."""
    def rc() -> complex:
        return complex(*rng.standard_normal(2))

    p, r = divmod(m, 2)
    u = SinoCoeffs(gamma, {})
    for j in range(0 if r else 1, p + 1):
        t = TtSpectrum(2 * j + r,
                       {n: rc() for n in range(n_max + 1)},
                       {n: rc() for n in range(n_max + 1)})
        u = u + forward_spectral(t, gamma)
    if r == 0:
        coeffs = {(n, int(rng.integers(0, n + 1))): rc() for n in range(n_max + 1)}
        u = u + forward_spectral_scalar(coeffs, gamma)
    else:
        data = {}
        for n in range(1, n_max + 1):
            k = int(rng.integers(1, n + 1))
            data[(n, k, "-")] = sigma(n, k, gamma) * rc()
        u = u + SinoCoeffs(gamma, data)
    return u


def cmd_selftest(cfg: RunConfig, gammas: list[float]) -> int:
    suite = _Suite()
    rng = np.random.default_rng(cfg.seed)
    for gamma in gammas:
        if not -1.0 < gamma < 1.0:
            print(f"error: gamma must lie in (-1, 1), got {gamma}", file=sys.stderr)
            return EXIT_ERROR
        decomposition = abs(gamma) <= cfg.gamma_safety
        _selftest_gamma(suite, gamma, cfg.n_max, rng, decomposition)
    if suite.failures:
        print(f"{suite.failures} failure(s)")
        return EXIT_ERROR
    print("all checks passed")
    return EXIT_OK


# -- entry point -----------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with RunConfig defaults")
    p.add_argument("--gamma", type=float, help="weight exponent in (-1, 1)")
    p.add_argument("--order", type=int, help="tensor order m")
    p.add_argument("--nmax", dest="n_max", type=int, help="max polynomial degree")
    p.add_argument("--quad-nodes", dest="quad_nodes", type=int, help="alpha-quadrature nodes")
    p.add_argument("--tol", type=float, help="tolerance for checks")
    p.add_argument("--route", choices=("svd", "kernel"), help="reconstruction route")
    p.add_argument("--seed", type=int, help="RNG seed")
    p.add_argument("--out", help="output path (or prefix)")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="dtx",
        description="weighted X-ray transform on the disk: synthesize, range-check, reconstruct",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sinogram", help="forward transform of a tensor file -> CSV grid + coefficient JSON")
    _add_common(p)
    p.add_argument("tensor", help="tensor JSON file")

    p = sub.add_parser("rangecheck", help="range characterization report for coefficient data")
    _add_common(p)
    p.add_argument("coeffs", help="sino-coefficient JSON file")

    p = sub.add_parser("reconstruct", help="iterated-tt representative from coefficient data")
    _add_common(p)
    p.add_argument("coeffs", help="sino-coefficient JSON file")

    p = sub.add_parser("decompose", help="forward + reconstruct: itt decomposition of a tensor file")
    _add_common(p)
    p.add_argument("tensor", help="tensor JSON file")

    p = sub.add_parser("svd-table", help="dump singular values (optionally basis polynomials)")
    _add_common(p)
    p.add_argument("--basis", action="store_true", help="include disk polynomial coefficients")

    p = sub.add_parser("selftest", help="run the invariant suite")
    _add_common(p)
    p.add_argument("--gammas", default="-0.5,0,0.5", help="comma-separated gamma list")

    args = ap.parse_args(argv)
    try:
        cfg = _build_config(args)
        if args.command == "sinogram":
            return cmd_sinogram(cfg, args.tensor)
        if args.command == "rangecheck":
            return cmd_rangecheck(cfg, args.coeffs)
        if args.command == "reconstruct":
            return cmd_reconstruct(cfg, args.coeffs)
        if args.command == "decompose":
            return cmd_decompose(cfg, args.tensor)
        if args.command == "svd-table":
            return cmd_svd_table(cfg, args.basis)
        if args.command == "selftest":
            gammas = [float(s) for s in args.gammas.split(",") if s.strip()]
            return cmd_selftest(cfg, gammas)
        raise AssertionError(f"unhandled command {args.command!r}")
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
