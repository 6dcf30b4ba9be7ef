import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ecaffine.classify import (
    PrincipalSpectrum,
    classify_all,
    clifford_radii,
    elem_sym,
    elem_sym_newton,
    extremal_residual_iso,
    format_table,
    g4_cells,
    is_eligible,
    pinching_sign,
    solve_theta,
)
from ecaffine.errors import DomainError, IneligibleParity, ZeroCurvature

S2, S3 = math.sqrt(2), math.sqrt(3)
G4 = PrincipalSpectrum(((1 + S2, 2), (S2 - 1, 2), (1 - S2, 2), (-(1 + S2), 2)))


@pytest.fixture(scope="module")
def table():
    return classify_all(24)


def test_elem_sym_examples():
    spec = PrincipalSpectrum(((1.0, 2), (-1.0, 2)))
    assert elem_sym(spec, 4) == 1.0
    assert elem_sym(spec, 0) == 1.0
    assert elem_sym(G4, 1) == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(IndexError):
        elem_sym(spec, 5)


def test_extremal_residual_examples():
    k = 1 / S3
    assert extremal_residual_iso(PrincipalSpectrum(((k, 2),))) == pytest.approx(0.0, abs=1e-15)
    assert extremal_residual_iso(G4) == pytest.approx(0.0, abs=1e-12)
    assert extremal_residual_iso(PrincipalSpectrum(((1.0, 2), (-1.0, 2)))) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.floats(-3, 3), st.integers(1, 4)), min_size=1, max_size=5))
def test_newton_identities_agree(entries):
    ks = sorted({round(k, 6) for k, _ in entries}, reverse=True)
    mults = [m for _, m in entries][: len(ks)]
    spec = PrincipalSpectrum(tuple(zip(ks, mults)))
    if spec.n > 12:
        return
    for r in range(spec.n + 1):
        a, b = elem_sym(spec, r), elem_sym_newton(spec, r)
        scale = max(1.0, float(np.sum(np.abs(spec.expanded())) ** r) / math.factorial(r))
        assert abs(a - b) <= 1e-12 * scale


def test_spectrum_validation():
    with pytest.raises(DomainError):
        PrincipalSpectrum(((1.0, 1), (2.0, 1)))
    with pytest.raises(DomainError):
        PrincipalSpectrum(((1.0, 0),))


def test_solve_theta_examples():
    assert solve_theta(1, (2,)) == [pytest.approx(math.pi / 3, abs=1e-12)]
    assert solve_theta(2, (2, 2)) == [pytest.approx(math.pi / 4, abs=1e-12)]
    assert solve_theta(6, (2,) * 6, n=12) == [pytest.approx(math.pi / 12, abs=1e-12)]
    assert solve_theta(6, (1,) * 6) == []
    with pytest.raises(DomainError):
        solve_theta(5, (1,) * 5)


def test_clifford_radii_examples():
    assert clifford_radii(4, 2) == pytest.approx((math.sqrt(0.5), math.sqrt(0.5)))
    r1, r2 = clifford_radii(3, 1)
    assert (r1, r2) == pytest.approx((math.sqrt(2 / 5), math.sqrt(3 / 5)))
    assert r1**2 + r2**2 == pytest.approx(1.0)
    with pytest.raises(IneligibleParity):
        clifford_radii(2, 1)


def test_pinching_sign_examples():
    assert pinching_sign(PrincipalSpectrum(((1 / S3, 2),))) == pytest.approx(0.0, abs=1e-14)
    assert pinching_sign(PrincipalSpectrum(((0.3, 2),))) == pytest.approx(2 * (1 - 0.27) / 0.3)
    assert pinching_sign(PrincipalSpectrum(((0.8, 2),))) == pytest.approx(-2.3)
    with pytest.raises(ZeroCurvature):
        pinching_sign(PrincipalSpectrum(((1.0, 1), (0.0, 1))))


def test_every_row_is_extremal(table):
    for r in table:
        assert abs(r.residual) <= 1e-10, r
        if r.eligible:
            assert r.S_n != 0
            assert r.n % 2 == 1 or r.S_n > 0


def test_g1_radii(table):
    g1 = [r for r in table if r.g == 1]
    assert [r.n for r in g1] == list(range(1, 25))
    for r in g1:
        assert r.curvatures[0] == pytest.approx(1 / math.sqrt(r.n + 1), rel=1e-12)
        assert r.radii[0] == pytest.approx(math.sqrt((r.n + 1) / (r.n + 2)), rel=1e-12)
    assert g1[1].radii[0] == pytest.approx(S3 / 2, rel=1e-12)


def test_g2_rows(table):
    for r in (r for r in table if r.g == 2):
        k1, k2 = r.curvatures
        assert k1 * k2 == pytest.approx(-1.0, abs=1e-12)
        m = r.mults[0]
        assert k1**2 == pytest.approx((r.n + 1 - m) / (m + 1), rel=1e-12)
        if r.n == 2 * m and m % 2 == 1:
            assert not r.eligible and "m odd" in r.notes
        else:
            assert r.radii == pytest.approx(clifford_radii(r.n, m), rel=1e-12)
        if r.n % 2 == 0:
            assert math.copysign(1, r.S_n) == (-1) ** (r.n - m)
            assert r.eligible == (r.S_n > 0)


def test_g3_identities(table):
    g3 = [r for r in table if r.g == 3]
    assert sorted(r.n for r in g3) == [3, 6, 12, 24]
    for r in g3:
        got, want = r.extra["identities"], r.extra["identities_expected"]
        assert np.allclose(got, want, rtol=0, atol=1e-10)
        assert r.extra["sextic_residual"] <= 1e-10
    r3 = next(r for r in g3 if r.n == 3)
    assert r3.extra["identities"] == pytest.approx([1 / 4, 33 / 4, 42 / 4], abs=1e-10)


def test_g4_spectrum(table):
    g4 = [r for r in table if r.g == 4 and r.eligible]
    assert len(g4) == 1
    r = g4[0]
    assert r.n == 8
    assert r.curvatures == pytest.approx((1 + S2, S2 - 1, 1 - S2, -(1 + S2)), abs=1e-12)
    assert r.extra["AB"] == pytest.approx(-4.0, abs=1e-12)
    for bad in (r for r in table if r.g == 4 and not r.eligible):
        assert bad.extra["AB"] == pytest.approx(-4.0, abs=1e-12)


def test_g6_rows(table):
    g6 = {r.n: r for r in table if r.g == 6}
    assert set(g6) == {6, 12}
    assert g6[12].eligible
    assert g6[12].curvatures == pytest.approx((2 + S3, 1, 2 - S3, S3 - 2, -1, -(2 + S3)), abs=1e-12)
    assert not g6[6].eligible
    assert g6[6].S_n == pytest.approx(-1.0, abs=1e-12)


def test_extended_g4_cells_flagged():
    base = classify_all(12)
    ext = classify_all(12, include_extended_g4=True)
    extra = [r for r in ext if r.g == 4 and r.extra["extended"]]
    assert len(ext) == len(base) + len(extra)
    assert all("divisibility" in r.notes for r in extra)
    assert (1, 1, True) in g4_cells(12, extended=True)
    assert g4_cells(12) == [(2, 2, False)]


def test_deterministic():
    a = [r.as_dict() for r in classify_all(12)]
    b = [r.as_dict() for r in classify_all(12)]
    assert a == b


def test_format_table(table):
    text = format_table(table)
    lines = text.splitlines()
    assert lines[0].split()[:3] == ["g", "n", "mults"]
    assert len(lines) == len(table) + 1


def test_eligibility_reasons():
    ok, why = is_eligible(PrincipalSpectrum(((1.0, 1), (-1.0, 1))))
    assert not ok and "n even" in why
    ok, why = is_eligible(PrincipalSpectrum(((1.0, 1), (1e-15, 1), (-1.0, 1))))
    assert not ok and why == "S_n = 0"
