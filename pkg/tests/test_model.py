import numpy as np
import pytest

from phasekit.model import (
    AFM_N,
    AFM_S,
    PM_N,
    PM_S,
    InconsistentOrdersError,
    InvalidParamsError,
    ModelParams,
    OrderParams,
    ToleranceSet,
    classical_ground,
    classify_orders,
    validate_params,
)


def test_validate_accepts_good_params():
    p = ModelParams(omega=1.0, eps=1.0, g=0.3, j=-0.3)
    assert validate_params(p) is p


@pytest.mark.parametrize(
    "kw, msg",
    [
        (dict(omega=0.0, eps=1.0, g=0.3, j=0.0), "omega must be positive"),
        (dict(omega=1.0, eps=1.0, g=-0.1, j=0.0), "g must be nonnegative"),
        (dict(omega=1.0, eps=-0.2, g=0.1, j=0.0), "eps must be nonnegative"),
    ],
)
def test_validate_rejects_bad_params(kw, msg):
    with pytest.raises(InvalidParamsError, match=msg):
        validate_params(ModelParams(**kw))


def test_classical_ground_examples():
    r = classical_ground(ModelParams(g=0.0, j=0.0))
    assert r.energy == -0.5 and r.label == PM_N and not r.degenerate
    r = classical_ground(ModelParams(g=0.0, j=-0.5))
    assert r.energy == -0.5 and r.label == AFM_N
    r = classical_ground(ModelParams(g=0.0, j=-0.25))
    assert r.degenerate and r.label == PM_N and r.energy == -0.25


def test_classical_ground_requires_g_zero():
    with pytest.raises(InvalidParamsError):
        classical_ground(ModelParams(g=0.1))


def test_classical_boundary_at_quarter_eps():
    # the label switches exactly at j = -eps/4 for every eps > 0
    for eps in (0.25, 0.5, 1.0, 1.7, 3.0):
        below = classical_ground(ModelParams(eps=eps, g=0.0, j=-0.25 * eps - 1e-12))
        above = classical_ground(ModelParams(eps=eps, g=0.0, j=-0.25 * eps + 1e-12))
        assert below.label == AFM_N
        assert above.label == PM_N


def test_classify_orders_examples(tol):
    assert classify_orders(OrderParams(0.0, 0.0, -0.5, 0.0), tol) == PM_N
    assert classify_orders(OrderParams(0.3, 0.2, -0.3, 0.0), tol) == PM_S
    assert classify_orders(OrderParams(0.05, 0.03, -0.1, 0.2), tol) == AFM_S
    assert classify_orders(OrderParams(0.0, 0.0, -0.1, 0.2), tol) == AFM_N


def test_classify_orders_sign_symmetry(tol, rng):
    for _ in range(50):
        o = OrderParams(
            photon_displacement=rng.uniform(-0.5, 0.5),
            mx=rng.uniform(-0.4, 0.4),
            mz=rng.uniform(-0.5, 0.5),
            m_stag=rng.uniform(-0.5, 0.5),
        )
        flipped = OrderParams(-o.photon_displacement, -o.mx, o.mz, -o.m_stag)
        try:
            lab = classify_orders(o, tol)
        except InconsistentOrdersError:
            with pytest.raises(InconsistentOrdersError):
                classify_orders(flipped, tol)
            continue
        assert classify_orders(flipped, tol) == lab


def test_classify_orders_contradiction_raises(tol):
    with pytest.raises(InconsistentOrdersError):
        classify_orders(OrderParams(photon_displacement=0.3, mx=1e-6, mz=0.0, m_stag=0.0), tol)


def test_order_params_bounds():
    with pytest.raises(InvalidParamsError):
        OrderParams(photon_displacement=0.1, mx=0.7, mz=0.0, m_stag=0.0)


def test_tolerance_set_invariants():
    with pytest.raises(InvalidParamsError):
        ToleranceSet(tol_order_param=1e-2, tol_jump=1e-3)
    with pytest.raises(InvalidParamsError):
        ToleranceSet(tol_energy=0.0)
