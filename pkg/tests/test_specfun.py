import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ecaffine.errors import DomainError
from ecaffine.golden import canonical_key
from ecaffine.specfun import (
    complete_elliptic_k,
    complete_elliptic_pi,
    elliptic_pi_quadrature,
    elliptic_pi_series,
    series_coefficients,
    series_in_region,
)


@pytest.mark.parametrize("n,m", [(0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.3, 0.2), (-0.7, 0.6),
                                 (0.9, 0.5), (0.99, 0.1), (-5.0, 0.95), (0.5, 0.999)])
def test_pi_goldens(goldens, n, m):
    e = goldens[canonical_key("complete_elliptic_pi", n=n, m=m)]
    assert complete_elliptic_pi(n, m) == pytest.approx(e.value, rel=e.tolerance, abs=0)


def test_pi_trivial_and_published():
    assert complete_elliptic_pi(0.0, 0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert complete_elliptic_pi(0.5, 0.0) == pytest.approx(math.pi / math.sqrt(2), rel=1e-13)
    assert complete_elliptic_k(0.5) == pytest.approx(1.854074677301372, rel=1e-13)


@pytest.mark.parametrize("n,m", [(0.2, 1.0), (0.2, 1.5), (1.0, 0.3), (1.5, 0.3), (0.2, -0.1), (math.nan, 0.1)])
def test_pi_domain_errors(n, m):
    with pytest.raises(DomainError):
        complete_elliptic_pi(n, m)


def test_one_minus_n_keeps_accuracy_near_one():
    eps = 1e-13
    with mp.workdps(40):
        ref = float(mp.ellippi(1 - mp.mpf(eps), mp.mpf(0.3)))
    assert complete_elliptic_pi(None, 0.3, one_minus_n=eps) == pytest.approx(ref, rel=1e-10)


def test_vectorised():
    n = np.array([0.1, -2.0, 0.7])
    m = np.array([0.2, 0.4, 0.9])
    got = complete_elliptic_pi(n, m)
    assert got.shape == (3,)
    for i in range(3):
        assert got[i] == pytest.approx(complete_elliptic_pi(float(n[i]), float(m[i])), rel=1e-15)


valid_n = st.one_of(st.floats(-50.0, -1e-3), st.floats(1e-3, 0.995))
valid_m = st.floats(0.0, 0.995)


@settings(max_examples=1000, deadline=None)
@given(valid_n, valid_m)
def test_carlson_matches_direct_quadrature(n, m):
    a = complete_elliptic_pi(n, m)
    b = elliptic_pi_quadrature(n, m)
    assert abs(a - b) <= 1e-10 * abs(b)


@settings(max_examples=200, deadline=None)
@given(st.floats(-20.0, 0.98), st.floats(0.0, 0.97), st.floats(1e-3, 0.01))
def test_monotone_in_n_and_m(n, m, d):
    base = complete_elliptic_pi(n, m)
    assert complete_elliptic_pi(min(n + d, 0.99), m) > base
    assert complete_elliptic_pi(n, min(m + d, 0.99)) > base


def test_series_c0_and_c1():
    c = series_coefficients(0.5, 2)
    assert c[0] == pytest.approx(math.pi * math.sqrt(2) / 2, rel=1e-15)
    # the corrected first coefficient is the true derivative d Pi / dk at k = 0
    deriv = float(mp.diff(lambda k: mp.ellippi(0.5, k), 0))
    assert c[1] == pytest.approx(deriv, rel=1e-12)
    printed = series_coefficients(0.5, 2, c1_form="printed")[1]
    assert printed == pytest.approx(0.5 * math.pi * (math.sqrt(2) - 2), rel=1e-14)


def test_series_first_term_only():
    assert elliptic_pi_series(0.5, 0.0, 1) == pytest.approx(math.pi * math.sqrt(2) / 2, rel=1e-15)


def test_series_coefficients_are_taylor_coefficients():
    # compare c_j with Taylor coefficients of mpmath's Pi(alpha, k) in k
    for alpha in (0.4, -2.0):
        c = series_coefficients(alpha, 8)
        ref = mp.taylor(lambda k: mp.ellippi(alpha, k), 0, 7)
        for j in range(8):
            assert c[j] == pytest.approx(float(ref[j]), rel=1e-9)


def test_series_spec_example(goldens):
    key = canonical_key("elliptic_pi_series", alpha=0.5, k=0.3, terms=4)
    e = goldens[key]
    got = elliptic_pi_series(0.5, 0.3, 4)
    assert got == pytest.approx(e.value, abs=e.tolerance)
    err = abs(got - complete_elliptic_pi(0.5, 0.3))
    measured = goldens[canonical_key("elliptic_pi_series_error", alpha=0.5, k=0.3, terms=4)].value
    assert err == pytest.approx(measured, rel=1e-8)


def test_series8_per_point_fixture(goldens):
    entries = goldens.matching("series8_error(")
    assert len(entries) >= 15
    for key, e in entries.items():
        kw = dict(part.split("=") for part in key[len("series8_error("):-1].split(","))
        alpha, k = float(kw["alpha"]), float(kw["k"])
        err = abs(elliptic_pi_series(alpha, k, 8) - complete_elliptic_pi(alpha, k))
        assert err <= e.tolerance, key


def test_series_small_alpha_fallback():
    for a in (0.0, 1e-14, -1e-13):
        c = series_coefficients(a, 6)
        assert np.all(np.isfinite(c))
    # alpha = 0 reduces to K
    ref = mp.taylor(lambda k: mp.ellipk(k), 0, 5)
    c = series_coefficients(0.0, 6)
    for j in range(6):
        assert c[j] == pytest.approx(float(ref[j]), rel=1e-13)


@pytest.mark.parametrize("alpha,k", [(0.5, 0.6), (0.5, 0.5), (-0.5, 0.1), (-1.5, 1.0), (1.2, 0.1)])
def test_series_region_enforced(alpha, k):
    assert not series_in_region(alpha, k)
    with pytest.raises(DomainError):
        elliptic_pi_series(alpha, k, 4)


def test_series_terms_validated():
    with pytest.raises(DomainError):
        elliptic_pi_series(0.5, 0.1, 0)
