import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtx.geometry import (
    FanBeamPoint,
    PhasePoint,
    chord_point,
    d_along,
    fanbeam_project,
    scatter_antipodal,
)

betas = st.floats(min_value=0.0, max_value=2 * math.pi - 1e-9)
alphas = st.floats(min_value=-math.pi / 2 + 1e-6, max_value=math.pi / 2 - 1e-6)


def test_fanbeam_point_basics():
    p = FanBeamPoint(beta=0.3, alpha=0.4)
    assert p.mu == pytest.approx(math.cos(0.4))
    assert p.tau == pytest.approx(2 * math.cos(0.4))
    assert p.theta == pytest.approx(0.3 + math.pi + 0.4)


def test_fanbeam_point_alpha_range():
    FanBeamPoint(beta=0.0, alpha=math.pi / 2)  # boundary allowed
    with pytest.raises(ValueError):
        FanBeamPoint(beta=0.0, alpha=1.8)


def test_phase_point_radius_guard():
    PhasePoint(z=1.0 + 0j, theta=0.0)
    with pytest.raises(ValueError):
        PhasePoint(z=1.2 + 0j, theta=0.0)


@given(beta=betas, alpha=alphas)
@settings(max_examples=80, deadline=None)
def test_chord_endpoints_on_circle(beta, alpha):
    p = FanBeamPoint(beta=beta, alpha=alpha)
    start = chord_point(p, 0.0)
    end = chord_point(p, p.tau)
    assert abs(abs(complex(start.z)) - 1.0) < 1e-12
    assert abs(abs(complex(end.z)) - 1.0) < 1e-12
    assert complex(start.z) == pytest.approx(cmath.exp(1j * beta))


@given(beta=betas, alpha=alphas, s=st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=80, deadline=None)
def test_d_along_matches_position(beta, alpha, s):
    # 1 - |z(t)|^2 computed from the position equals the closed form t(tau - t)
    p = FanBeamPoint(beta=beta, alpha=alpha)
    t = s * p.tau
    q = chord_point(p, t)
    assert d_along(p, t) == pytest.approx(1.0 - abs(complex(q.z)) ** 2, abs=1e-12)
    assert d_along(p, t) == pytest.approx(t * (p.tau - t), abs=1e-12)


def test_chord_point_rejects_outside_parameter():
    p = FanBeamPoint(beta=1.0, alpha=0.2)
    with pytest.raises(ValueError):
        chord_point(p, -0.5)
    with pytest.raises(ValueError):
        chord_point(p, p.tau + 0.5)


def test_chord_point_vectorized():
    p = FanBeamPoint(beta=0.7, alpha=-0.3)
    ts = np.linspace(0.0, p.tau, 9)
    q = chord_point(p, ts)
    assert np.asarray(q.z).shape == (9,)
    assert q.theta == pytest.approx(p.theta)


@given(beta=betas, alpha=alphas, s=st.floats(min_value=0.05, max_value=0.95))
@settings(max_examples=80, deadline=None)
def test_fanbeam_round_trip(beta, alpha, s):
    # project an interior chord point back to (beta, alpha)
    p = FanBeamPoint(beta=beta, alpha=alpha)
    q = chord_point(p, s * p.tau)
    back = fanbeam_project(PhasePoint(z=complex(q.z), theta=q.theta))
    assert back.alpha == pytest.approx(alpha, abs=1e-9)
    dbeta = (back.beta - beta + math.pi) % (2 * math.pi) - math.pi
    assert abs(dbeta) < 1e-9


@given(beta=betas, alpha=alphas)
@settings(max_examples=80, deadline=None)
def test_scatter_is_involution(beta, alpha):
    p = FanBeamPoint(beta=beta, alpha=alpha)
    pp = scatter_antipodal(scatter_antipodal(p))
    dbeta = (pp.beta - p.beta + math.pi) % (2 * math.pi) - math.pi
    assert abs(dbeta) < 1e-9
    assert pp.alpha == pytest.approx(p.alpha, abs=1e-12)


@given(beta=betas, alpha=alphas)
@settings(max_examples=80, deadline=None)
def test_scatter_swaps_chord_endpoints(beta, alpha):
    # the scattered chord is the same segment traversed backwards
    p = FanBeamPoint(beta=beta, alpha=alpha)
    sp = scatter_antipodal(p)
    assert complex(chord_point(sp, 0.0).z) == pytest.approx(
        complex(chord_point(p, p.tau).z), abs=1e-10
    )
    assert complex(chord_point(sp, sp.tau).z) == pytest.approx(
        complex(chord_point(p, 0.0).z), abs=1e-10
    )


def test_projection_of_tangent_chord():
    # alpha = +-pi/2 chords are tangent points; projection still resolves them
    p = FanBeamPoint(beta=0.25, alpha=math.pi / 2)
    assert p.tau == pytest.approx(0.0, abs=1e-15)
    q = chord_point(p, 0.0)
    back = fanbeam_project(PhasePoint(z=complex(q.z), theta=q.theta))
    assert abs(back.alpha) == pytest.approx(math.pi / 2, abs=1e-6)
