import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtx.quadrature import disk_inner_exact
from dtx.tensorfield import (
    IttForm,
    ModeField,
    PolyZZbar,
    apply_X,
    apply_Xperp,
    d_poly,
    eta_minus,
    eta_plus,
    holo_project,
    lift_ell_m,
    L_embed,
    poincare_ratio,
    star_d,
    wirtinger,
)

coeffs = st.complex_numbers(
    min_magnitude=0.0, max_magnitude=3.0, allow_nan=False, allow_infinity=False
)


def small_polys(max_deg=3):
    pairs = st.tuples(
        st.integers(min_value=0, max_value=max_deg),
        st.integers(min_value=0, max_value=max_deg),
    )
    return st.dictionaries(pairs, coeffs, max_size=5).map(PolyZZbar)


# -- PolyZZbar algebra -----------------------------------------------------


def test_poly_basic_algebra():
    p = PolyZZbar({(1, 0): 2.0, (0, 0): 1.0})
    q = PolyZZbar({(1, 0): -2.0})
    assert (p + q).terms == {(0, 0): 1.0}
    assert (p - p).is_zero
    assert (-p).coeff(1, 0) == -2.0
    assert p.scale(0.5).coeff(1, 0) == 1.0


def test_poly_drops_zero_terms():
    p = PolyZZbar({(2, 1): 0.0, (1, 0): 1.0})
    assert (2, 1) not in p.terms
    assert p.degree() == 1


def test_poly_degree_and_flags():
    assert PolyZZbar.zero().degree() == -1
    assert PolyZZbar.one().degree() == 0
    p = PolyZZbar({(2, 1): 1.0})
    assert p.degree() == 3
    assert not p.is_holomorphic
    assert PolyZZbar({(3, 0): 1j, (0, 0): 1.0}).is_holomorphic
    assert PolyZZbar({(0, 2): 1j}).is_antiholomorphic


def test_poly_mul():
    p = PolyZZbar({(1, 0): 1.0, (0, 0): 1.0})  # z + 1
    q = PolyZZbar({(0, 1): 1.0})  # zbar
    assert (p * q).terms == {(1, 1): 1.0, (0, 1): 1.0}
    assert (p * 2.0).coeff(0, 0) == 2.0
    assert (2.0 * p).coeff(1, 0) == 2.0


@given(p=small_polys(), q=small_polys())
@settings(max_examples=50, deadline=None)
def test_poly_product_evaluates_pointwise(p, q):
    z = 0.37 - 0.21j
    assert (p * q).eval(z) == pytest.approx(p.eval(z) * q.eval(z), rel=1e-9, abs=1e-9)


@given(p=small_polys())
@settings(max_examples=50, deadline=None)
def test_poly_conj_eval(p):
    z = -0.4 + 0.55j
    assert p.conj().eval(z) == pytest.approx(np.conj(p.eval(z)), rel=1e-12, abs=1e-12)


def test_wirtinger_derivatives():
    p = PolyZZbar({(2, 1): 3.0})  # 3 z^2 zbar
    assert wirtinger(p, "z").terms == {(1, 1): 6.0}
    assert wirtinger(p, "zbar").terms == {(2, 0): 3.0}
    with pytest.raises(ValueError):
        wirtinger(p, "x")


@given(p=small_polys())
@settings(max_examples=40, deadline=None)
def test_wirtinger_central_difference(p):
    z = 0.3 + 0.2j
    h = 1e-6
    dx = (p.eval(z + h) - p.eval(z - h)) / (2 * h)
    dy = (p.eval(z + 1j * h) - p.eval(z - 1j * h)) / (2 * h)
    scale = max(p.max_abs_coeff(), 1.0)
    assert abs(p.del_z().eval(z) - (dx - 1j * dy) / 2) < 2e-4 * scale
    assert abs(p.del_zbar().eval(z) - (dx + 1j * dy) / 2) < 2e-4 * scale


def test_d_poly_values():
    d = d_poly()
    assert d.eval(0.0) == pytest.approx(1.0)
    assert d.eval(1.0) == pytest.approx(0.0)
    assert d.eval(0.6j) == pytest.approx(1 - 0.36)


def test_boundary_trace_deviation():
    d = d_poly()
    assert d.boundary_trace_deviation() < 1e-15
    assert (d * d).boundary_trace_deviation() < 1e-15
    assert PolyZZbar({(1, 0): 1.0}).boundary_trace_deviation() > 0.5


def test_poly_eval_vectorized():
    p = PolyZZbar({(1, 0): 1.0, (0, 1): 2.0})
    z = np.array([0.1, 0.2j, -0.3 + 0.4j])
    vals = p.eval(z)
    assert vals.shape == (3,)
    assert vals[1] == pytest.approx(0.2j + 2 * (-0.2j))


# -- ModeField ------------------------------------------------------------


def test_mode_field_parity_validation():
    ModeField(2, {0: PolyZZbar.one(), 2: PolyZZbar.one(), -2: PolyZZbar.one()})
    with pytest.raises(ValueError):
        ModeField(2, {1: PolyZZbar.one()})
    with pytest.raises(ValueError):
        ModeField(1, {3: PolyZZbar.one()})


def test_mode_field_drops_zero_modes():
    f = ModeField(1, {1: PolyZZbar.zero(), -1: PolyZZbar.one()})
    assert set(f.modes) == {-1}
    assert f.mode(1).is_zero


def test_mode_field_eval():
    f = ModeField(1, {1: PolyZZbar({(1, 0): 1.0}), -1: PolyZZbar.one()})
    z, th = 0.3 + 0.1j, 0.8
    want = z * np.exp(1j * th) + np.exp(-1j * th)
    assert f.eval(z, th) == pytest.approx(want)


def test_is_tt():
    holo = PolyZZbar({(2, 0): 1.0})
    anti = PolyZZbar({(0, 1): 1.0})
    assert ModeField(2, {2: holo, -2: anti}).is_tt
    assert not ModeField(2, {0: PolyZZbar.one()}).is_tt
    assert not ModeField(2, {2: PolyZZbar({(1, 1): 1.0})}).is_tt
    assert ModeField(0, {0: PolyZZbar.one()}).is_tt  # scalars are trivially tt


def test_lift_ell_m_collects_components():
    # dz dzbar and dzbar dz land in the same mode 0
    f = lift_ell_m([(1, 1, PolyZZbar.one()), (2, 0, PolyZZbar({(1, 0): 1.0}))])
    assert f.order == 2
    assert f.mode(0).coeff(0, 0) == 1.0
    assert f.mode(2).coeff(1, 0) == 1.0
    with pytest.raises(ValueError):
        lift_ell_m([(1, 0, PolyZZbar.one())], m=2)


def test_lift_ell_m_accepts_scalars():
    f = lift_ell_m([(0, 1, 2.5)])
    assert f.mode(-1).coeff(0, 0) == 2.5


# -- the geodesic derivative and its split ---------------------------------


def test_apply_X_on_scalar():
    u = PolyZZbar({(1, 1): 1.0})  # |z|^2
    f = apply_X(ModeField(0, {0: u}))
    assert f.order == 1
    assert f.mode(1).terms == {(0, 1): 1.0}
    assert f.mode(-1).terms == {(1, 0): 1.0}


@given(p=small_polys())
@settings(max_examples=40, deadline=None)
def test_X_splits_into_eta_halves(p):
    f = ModeField(1, {1: p})
    full = apply_X(f)
    split = eta_plus(f) + eta_minus(f)
    assert full.order == split.order
    for k in set(full.modes) | set(split.modes):
        assert (full.mode(k) - split.mode(k)).is_zero


def test_apply_X_chain_on_potential():
    # X(d * p) telescopes: the order-m lift of d*p differentiates to a
    # field that still vanishes on the boundary sphere bundle
    u = d_poly() * PolyZZbar({(1, 0): 1.0})
    f = apply_X(ModeField(0, {0: u}))
    th = 1.1
    for ang in (0.0, 2.2):
        v = f.eval(np.exp(1j * ang), th)
        # X(u) on the boundary equals the tangential derivative; nonzero in
        # general, but u itself vanished there
        assert np.isfinite(v)


def test_star_d_example():
    # u = x = (z + zbar)/2: *du = dy, modes {+1: -i/2, -1: +i/2}
    u = PolyZZbar({(1, 0): 0.5, (0, 1): 0.5})
    f = star_d(u)
    assert f.order == 1
    assert f.mode(1).coeff(0, 0) == pytest.approx(-0.5j)
    assert f.mode(-1).coeff(0, 0) == pytest.approx(0.5j)


def test_star_d_is_minus_xperp():
    u = PolyZZbar({(2, 1): 1.0 + 0.3j, (1, 0): -2.0})
    a = star_d(u)
    b = apply_Xperp(u).scale(-1.0)
    for k in (-1, 1):
        assert (a.mode(k) - b.mode(k)).is_zero


def test_L_embed_shifts_order_only():
    f = ModeField(1, {1: PolyZZbar.one()})
    g = L_embed(f)
    assert g.order == 3
    assert g.mode(1).coeff(0, 0) == 1.0


def test_L_embed_is_metric_multiplication():
    # on unit fibers the metric acts as the identity on mode functions
    f = ModeField(2, {2: PolyZZbar({(1, 0): 1.0}), 0: PolyZZbar.one()})
    g = L_embed(f)
    z, th = 0.4 - 0.2j, 0.7
    assert g.eval(z, th) == pytest.approx(f.eval(z, th))


# -- projections and the gradient inequality -------------------------------


def test_holo_project_exact_on_holomorphic():
    p = PolyZZbar({(3, 0): 2.0, (0, 0): 1j})
    proj, resid = holo_project(p, 0.3)
    assert resid.is_zero
    assert proj.terms == p.terms


def test_holo_project_orthogonality():
    gamma = 0.4
    p = PolyZZbar({(2, 1): 1.0, (1, 0): 0.5, (0, 2): -1j})
    proj, resid = holo_project(p, gamma)
    assert proj.is_holomorphic
    assert abs(disk_inner_exact(proj, resid, gamma)) < 1e-14
    # projection + residual reassemble the input
    assert ((proj + resid) - p).is_zero


def test_holo_project_antiholo_side():
    gamma = -0.2
    p = PolyZZbar({(1, 2): 1.0, (2, 0): 1.0})
    proj, resid = holo_project(p, gamma, side="antiholo")
    assert proj.is_antiholomorphic
    assert abs(disk_inner_exact(proj, resid, gamma)) < 1e-14
    with pytest.raises(ValueError):
        holo_project(p, gamma, side="up")


def test_holo_project_knows_the_weight():
    # <z zbar, z^0>_gamma / ||1||^2 = B(2, g+1)/B(1, g+1) = 1/(g+2)
    p = PolyZZbar({(1, 1): 1.0})
    for gamma in (0.0, 0.5, -0.5):
        proj, _ = holo_project(p, gamma)
        assert proj.coeff(0, 0) == pytest.approx(1.0 / (gamma + 2.0), rel=1e-13)


def test_poincare_ratio_requires_boundary_vanishing():
    with pytest.raises(ValueError):
        poincare_ratio(PolyZZbar({(1, 0): 1.0}), 0.0)


def test_poincare_ratio_on_d():
    # u = d: ratio = ||d||^2/||grad d||^2; grad d = -2(x, y),
    # ratio = B(1,g+1)-2B(2,g+1)+B(3,g+1) over 4 B(2,g+1)
    from dtx.specfun import beta as beta_fn

    for gamma in (-0.5, 0.0, 0.5):
        got = poincare_ratio(d_poly(), gamma)
        num = beta_fn(1, gamma + 1) - 2 * beta_fn(2, gamma + 1) + beta_fn(3, gamma + 1)
        den = 4 * beta_fn(2, gamma + 1)
        assert got == pytest.approx(num / den, rel=1e-12)


@given(
    gamma=st.floats(min_value=-0.9, max_value=0.9),
    a=st.integers(min_value=0, max_value=2),
    b=st.integers(min_value=0, max_value=2),
)
@settings(max_examples=60, deadline=None)
def test_poincare_bound(gamma, a, b):
    u = d_poly() * PolyZZbar({(a, b): 1.0})
    ratio = poincare_ratio(u, gamma)
    assert ratio <= max(2.0 ** (-gamma), 1.0) / (1.0 - gamma) + 1e-12


def test_poincare_gamma_range_guard():
    with pytest.raises(ValueError):
        poincare_ratio(d_poly(), 1.0)


# -- IttForm bookkeeping ---------------------------------------------------


def test_itt_form_validates_orders():
    tt2 = ModeField(2, {2: PolyZZbar({(1, 0): 1.0})})
    form = IttForm(order=4, tt_parts={1: tt2, 2: ModeField(4, {4: PolyZZbar.one()})})
    assert form.scalar_part is not None and form.scalar_part.is_zero
    with pytest.raises(ValueError):
        IttForm(order=4, tt_parts={1: ModeField(4, {4: PolyZZbar.one()})})


def test_itt_form_rejects_non_tt_parts():
    bad = ModeField(2, {0: PolyZZbar.one()})
    with pytest.raises(ValueError):
        IttForm(order=4, tt_parts={1: bad})


def test_itt_form_odd_has_no_auto_scalar():
    tt1 = ModeField(1, {1: PolyZZbar({(1, 0): 1.0})})
    form = IttForm(order=3, tt_parts={0: tt1})
    assert form.scalar_part is None
