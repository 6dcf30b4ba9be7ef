import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ecaffine.angle import (
    ASYMPTOTIC_RADIUS,
    angle_elliptic,
    angle_quadrature,
    angle_series_large_C2,
    angle_series_sum,
    asymptotic_coefficients,
    limit_at_D,
    period,
    progression_angle,
)
from ecaffine.cubic import CurveParams, admissible_lower_bound
from ecaffine.errors import Degenerate, DomainError, NotAdmissible
from ecaffine.golden import canonical_key

GOLDEN_SETS = [(1.0, 0.0, 6.0), (1.0, 5.0, 20.0), (1.0, -2.0, 10.0), (2.0, 1.0, 3.0), (0.5, -3.0, 40.0)]


@pytest.mark.parametrize("R,C1,C2", GOLDEN_SETS)
def test_angle_and_period_against_unsplit_oracle(goldens, R, C1, C2):
    p = CurveParams(R, C1, C2)
    lam = goldens[canonical_key("lambda_theta", R=R, C1=C1, C2=C2)]
    T = goldens[canonical_key("period", R=R, C1=C1, C2=C2)]
    for res in (angle_quadrature(p), angle_elliptic(p)):
        assert res.lambda_theta == pytest.approx(lam.value, rel=lam.tolerance)
        assert res.period_T == pytest.approx(T.value, rel=T.tolerance)
    assert period(p) == pytest.approx(T.value, rel=T.tolerance)


def test_c2_6_in_expected_band():
    lam = angle_quadrature(CurveParams(1.0, 0.0, 6.0)).lambda_theta
    assert math.pi < lam < math.sqrt(2) * math.pi


def test_limits_c1_zero():
    D = admissible_lower_bound(0.0, 1.0)
    near = progression_angle(CurveParams(1.0, 0.0, D * (1 + 1e-6))).lambda_theta
    assert abs(near - math.sqrt(2) * math.pi) < 1e-3
    assert abs(angle_quadrature(CurveParams(1.0, 0.0, 1e6)).lambda_theta - math.pi) < 1e-3


def test_approach_to_pi_is_slow():
    # at C2 = 1e4 the gap to pi is still ~5e-3, as the large-C2 expansion predicts
    p = CurveParams(1.0, 0.0, 1e4)
    lam = angle_quadrature(p).lambda_theta
    assert 4e-3 < lam - math.pi < 6e-3
    # the expansion has no r^-3 term, so it trails by O(r^-3) ~ 2e-5 here
    assert lam == pytest.approx(angle_series_large_C2(p).lambda_theta, rel=5e-5)
    assert limit_at_D(0.0, 1.0) == pytest.approx(math.sqrt(2) * math.pi, rel=1e-14)


def test_limit_extremes():
    assert abs(limit_at_D(-1e3, 1.0) - math.pi) < 5e-2
    assert abs(limit_at_D(1e3, 1.0) - 2 * math.pi) < 5e-2


def test_limit_monotone_in_C1():
    for R in (0.5, 1.0, 2.0):
        vals = [limit_at_D(c, R) for c in np.linspace(-50, 50, 401)]
        assert all(v > u for u, v in zip(vals, vals[1:]))


def test_near_boundary_continuity():
    # the limit route and the elliptic route agree where they hand over
    for C1 in (-3.0, 0.0, 8.0):
        D = admissible_lower_bound(C1, 1.0)
        eps = 1e-6 * max(abs(D), 1.0)
        a = progression_angle(CurveParams(1.0, C1, D + 0.99 * eps)).lambda_theta
        b = angle_elliptic(CurveParams(1.0, C1, D + 1.01 * eps)).lambda_theta
        assert a == pytest.approx(b, abs=1e-6)


def test_period_continuous_near_boundary():
    D = admissible_lower_bound(0.0, 1.0)
    Ts = [period(CurveParams(1.0, 0.0, D + t)) for t in np.linspace(1e-4, 1e-2, 40)]
    assert np.max(np.abs(np.diff(Ts))) < 1e-3
    # small-oscillation frequency of the linearised ODE at the double root
    B0 = 2.0 ** (1.0 / 3.0)
    omega = math.sqrt(4.0 / B0**3 + 1.0)
    assert Ts[0] == pytest.approx(2 * math.pi / omega, rel=1e-3)


def test_constant_profile_rejected():
    with pytest.raises(Degenerate):
        period(CurveParams(1.0, 0.0, 3.0 * 4.0 ** (1.0 / 3.0)))
    with pytest.raises(NotAdmissible):
        angle_quadrature(CurveParams(1.0, 0.0, 4.0))


admissible = st.tuples(
    st.sampled_from([0.5, 1.0, 2.0]),
    st.floats(-5.0, 30.0),
    st.floats(1e-4, 1e3),
).map(lambda t: CurveParams(t[0], t[1], admissible_lower_bound(t[1], t[0]) + t[2] * max(1.0, abs(admissible_lower_bound(t[1], t[0])))))


@settings(max_examples=200, deadline=None)
@given(admissible)
def test_cross_method_range_and_sandwich(p):
    q = angle_quadrature(p).lambda_theta
    e = angle_elliptic(p).lambda_theta
    assert abs(e - q) <= 1e-8 * q
    assert math.pi < q < 2 * math.pi
    assert q < limit_at_D(p.C1, p.R)


@pytest.mark.parametrize("form", ["two_term", "three_term"])
def test_both_elliptic_forms_agree(form):
    for p in (CurveParams(1.0, 0.0, 6.0), CurveParams(1.0, 5.0, 20.0), CurveParams(2.0, -1.0, 9.0)):
        assert angle_elliptic(p, form=form).lambda_theta == pytest.approx(angle_quadrature(p).lambda_theta, rel=1e-12)


def test_monotone_decrease_in_C2():
    for R, C1 in [(1.0, 0.0), (1.0, -4.0), (1.0, 25.0), (0.5, 3.0), (2.0, 10.0)]:
        D = admissible_lower_bound(C1, R)
        vals = [angle_elliptic(CurveParams(R, C1, D + t)).lambda_theta
                for t in np.geomspace(1e-3, 1e4, 100) * max(1.0, abs(D))]
        assert all(v < u for u, v in zip(vals, vals[1:]))


def test_asymptotic_coefficients():
    c1, c2, c3 = asymptotic_coefficients()
    assert c1 == pytest.approx((280 - 49 * math.sqrt(2)) / 128, rel=1e-15)
    assert c1 == pytest.approx(1.646121370654, rel=1e-12)
    assert c2 == pytest.approx(-(350 - 35 * math.sqrt(2)) / 64, rel=1e-15)
    assert c3 == pytest.approx((4193 - 735 * math.sqrt(2)) / 128, rel=1e-15)


def test_asymptotic_tends_to_pi():
    assert angle_series_large_C2(CurveParams(1.0, 0.0, 1e12)).lambda_theta == pytest.approx(math.pi, rel=1e-8)


def test_asymptotic_preconditions():
    with pytest.raises(DomainError):
        angle_series_large_C2(CurveParams(1.0, 1.0, 20.0))
    with pytest.raises(DomainError):
        angle_series_large_C2(CurveParams(2.0, 0.0, 20.0))
    with pytest.raises(DomainError):
        angle_series_large_C2(CurveParams(1.0, 0.0, ASYMPTOTIC_RADIUS**2 * 0.99))


def test_series_sum_reports_route():
    res = angle_series_sum(CurveParams(1.0, 0.0, 12.0))
    assert res.method == "series"
    assert all(n.endswith(("series", "quadrature")) for n in res.notes)
    assert res.period_T == pytest.approx(period(CurveParams(1.0, 0.0, 12.0)), rel=1e-14)


def test_unknown_method():
    with pytest.raises(ValueError):
        progression_angle(CurveParams(1.0, 0.0, 6.0), "bogus")


def test_as_dict_keys():
    d = angle_elliptic(CurveParams(1.0, 0.0, 6.0)).as_dict()
    assert set(d) == {"lambda_theta", "period", "method", "error_estimate"}
