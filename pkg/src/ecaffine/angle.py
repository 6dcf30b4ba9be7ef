"""Progression angle of one curvature period about the Killing axis.

Three evaluation routes are provided: smooth quadrature after the ``sin^2``
substitution, closed forms in complete elliptic integrals of the third kind,
and the power series / large-``C2`` asymptotics of those closed forms.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ._quad import gauss_legendre
from .cubic import CubicRoots, CurveParams, admissible_lower_bound, solve_cubic
from .errors import DomainError, QuadratureFailure
from .specfun import (
    complete_elliptic_pi,
    elliptic_pi_quadrature,
    elliptic_pi_series,
    series_in_region,
)

log = logging.getLogger(__name__)

__all__ = [
    "AngleResult",
    "period",
    "angle_quadrature",
    "angle_elliptic",
    "limit_at_D",
    "angle_series_large_C2",
    "angle_series_sum",
    "progression_angle",
    "asymptotic_coefficients",
    "ASYMPTOTIC_RADIUS",
]

QUAD_TOL = 1e-8
NEAR_D = 1e-6
# r must exceed this for the large-C2 expansion
ASYMPTOTIC_RADIUS = (6.0 * math.sqrt(3.0)) ** (1.0 / 3.0)


@dataclass(frozen=True)
class AngleResult:
    lambda_theta: float
    period_T: float
    method: str
    error_estimate: float
    notes: tuple = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "lambda_theta": self.lambda_theta,
            "period": self.period_T,
            "method": self.method,
            "error_estimate": self.error_estimate,
        }


def _check_quad(value: float, err: float, what: str) -> None:
    if not math.isfinite(value) or err > QUAD_TOL * max(1.0, abs(value)):
        raise QuadratureFailure(f"{what}: error estimate {err:.3e} for value {value!r}")


def period(params: CurveParams, roots: CubicRoots | None = None) -> float:
    """Arc length of one oscillation of ``B`` between its turning points."""
    return _period_with_error(params, roots)[0]


def _period_with_error(params, roots=None):
    rt = roots or solve_cubic(params)
    A2, A3, gap = rt.A2, rt.A3, rt.gap12

    def f(phi):
        B = A2 + gap * np.sin(phi) ** 2
        return np.sqrt(B / (B - A3))

    val, err = gauss_legendre(f, 0.0, 0.5 * math.pi, rtol=1e-14)
    T = 4.0 * params.R * val
    err *= 4.0 * params.R
    _check_quad(T, err, "period")
    return T, err


def angle_quadrature(params: CurveParams) -> AngleResult:
    """Progression angle by smooth quadrature of the partial-fraction form."""
    rt = solve_cubic(params)
    a, b, c, r = rt.a, rt.b, rt.c, rt.r
    amb = rt.a_minus_b
    rma = rt.r_minus_a

    def f(phi):
        s2 = np.sin(phi) ** 2
        Bt = b + amb * s2
        # r - Bt without cancellation
        near = rma + amb * (1.0 - s2)
        return 2.0 / np.sqrt(Bt - c) * (1.0 / near + 1.0 / (r + Bt))

    val, err = gauss_legendre(f, 0.0, 0.5 * math.pi, rtol=1e-14)
    scale = 2.0 / math.sqrt(params.R)
    lam, err = scale * val, scale * err
    _check_quad(lam, err, "progression angle")
    T, _ = _period_with_error(params, rt)
    return AngleResult(lam, T, "quadrature", err)


def _pi_two_term(rt: CubicRoots):
    """Characteristics and weights of the two-term closed form."""
    R = rt.params.R
    amc = rt.a - rt.c
    amb = rt.a_minus_b
    rma = rt.r_minus_a
    pref = 4.0 / math.sqrt(R * amc)
    return [
        # (weight, n, 1 - n)
        (pref / (rt.a + rt.r), amb / (rt.a + rt.r), (rt.r + rt.b) / (rt.a + rt.r)),
        (pref / rma, -amb / rma, (rma + amb) / rma),
    ]


def _pi_three_term(rt: CubicRoots):
    R = rt.params.R
    amc = rt.a - rt.c
    amb = rt.a_minus_b
    bmc = rt.b - rt.c
    rma, rmb = rt.r_minus_a, rt.r_minus_b
    rmc = rma + amc
    pref = 4.0 / math.sqrt(R * amc)
    return [
        (pref / (rt.a + rt.r), amb / (rt.a + rt.r), (rt.r + rt.b) / (rt.a + rt.r)),
        (pref * bmc / (rmc * rmb), amb * rmc / (amc * rmb), rma * bmc / (amc * rmb)),
        (pref / rmc, 0.0, 1.0),
    ]


def angle_elliptic(params: CurveParams, form: str = "auto") -> AngleResult:
    """Progression angle from complete elliptic integrals of the third kind.

    Parameters
    ----------
    form : {"auto", "two_term", "three_term"}
        ``"auto"`` takes the two-term form when ``r > a`` and the three-term
        form otherwise.
    """
    rt = solve_cubic(params)
    if form == "auto":
        form = "two_term" if rt.r_minus_a > 0 else "three_term"
    if form == "two_term":
        terms = _pi_two_term(rt)
    elif form == "three_term":
        terms = _pi_three_term(rt)
    else:
        raise ValueError(f"unknown form {form!r}")
    m = rt.a_minus_b / (rt.a - rt.c)
    notes = [f"form={form}"]
    total = 0.0
    for w, n, p in terms:
        if not (p > 0 and 0 <= m < 1):
            log.warning("characteristic n=%r outside domain, using quadrature", n)
            notes.append("fallback=quadrature")
            res = angle_quadrature(params)
            return AngleResult(res.lambda_theta, res.period_T, "quadrature", res.error_estimate, tuple(notes))
        total += w * complete_elliptic_pi(n, m, one_minus_n=p)
    T = period(params, rt)
    err = 8.0 * len(terms) * np.finfo(float).eps * abs(total)
    return AngleResult(total, T, "elliptic", err, tuple(notes))


def limit_at_D(C1: float, R: float) -> float:
    """Limiting progression angle as ``C2`` decreases to the admissibility bound."""
    if not R > 0:
        raise DomainError(f"R must be positive, got {R}")
    # the bound on lam = R^2 C2, as the formula expects
    D = admissible_lower_bound(C1, R) * R**2
    r0 = math.sqrt(D / R**2 + R**2 * C1**2 / 4.0)
    d0 = math.sqrt(3.0 * D / R**2 + C1**2 * R**2)
    u = R * C1
    e1 = 2.0 * d0 + 6.0 * r0 - u
    e2 = 6.0 * r0 + 4.0 * d0 + u
    e3 = 6.0 * r0 - 2.0 * d0 + u
    return 12.0 * math.pi / math.sqrt(R * d0) * (1.0 / e1 + 1.0 / e2 + 6.0 * d0 / (e2 * e3))


def _near_boundary(params: CurveParams, D: float) -> AngleResult:
    L0 = limit_at_D(params.C1, params.R)
    h = 1e-4 * max(abs(D), 1.0)
    f1 = angle_elliptic(CurveParams(params.R, params.C1, D + h)).lambda_theta
    f2 = angle_elliptic(CurveParams(params.R, params.C1, D + 2 * h)).lambda_theta
    s1 = (f1 - L0) / h
    s2 = (f2 - L0) / (2 * h)
    slope = 2.0 * s1 - s2
    dx = params.C2 - D
    lam = L0 + slope * dx
    err = abs(s1 - s2) * dx + 1e-12
    try:
        T = period(params)
    except Exception:
        T = float("nan")
    return AngleResult(lam, T, "limit", err, ("limit_at_D + extrapolated slope",))


def asymptotic_coefficients() -> tuple[float, float, float]:
    s2 = math.sqrt(2.0)
    return ((280.0 - 49.0 * s2) / 128.0, -(350.0 - 35.0 * s2) / 64.0, (4193.0 - 735.0 * s2) / 128.0)


def angle_series_large_C2(params: CurveParams) -> AngleResult:
    """Large-``C2`` asymptotic form, derived only for ``C1 = 0``, ``R = 1``."""
    if params.C1 != 0 or params.R != 1:
        raise DomainError("large-C2 expansion requires C1 = 0 and R = 1")
    r = math.sqrt(params.C2)
    if not r > ASYMPTOTIC_RADIUS:
        raise DomainError(f"r = {r} must exceed (6 sqrt 3)^(1/3) = {ASYMPTOTIC_RADIUS}")
    c1, c2, c3 = asymptotic_coefficients()
    x = r ** -1.5
    lam = math.pi * (1.0 + c1 * x + c2 * x**3 + c3 * x**5)
    return AngleResult(lam, period(params), "asymptotic", float("nan"), ())


def angle_series_sum(params: CurveParams, terms: int = 4, c1_form: str = "corrected") -> AngleResult:
    """Two-term closed form with each ``Pi`` replaced by its series partial sum.

    Terms whose ``(alpha, k)`` fall outside the series validity region are
    evaluated by direct quadrature instead; ``notes`` records which.
    """
    rt = solve_cubic(params)
    m = rt.a_minus_b / (rt.a - rt.c)
    total = 0.0
    notes = []
    for i, (w, n, _p) in enumerate(_pi_two_term(rt)):
        if series_in_region(n, m):
            total += w * elliptic_pi_series(n, m, terms, c1_form)
            notes.append(f"term{i}=series")
        else:
            total += w * elliptic_pi_quadrature(n, m)
            notes.append(f"term{i}=quadrature")
    return AngleResult(total, period(params, rt), "series", float("nan"), tuple(notes))


def progression_angle(params: CurveParams, method: str = "auto") -> AngleResult:
    """Dispatch to one evaluation route.

    ``"auto"`` uses the elliptic form, switching to the boundary limit plus an
    extrapolated slope when ``0 < C2 - D < 1e-6 max(|D|, 1)``.
    """
    if method in ("quad", "quadrature"):
        return angle_quadrature(params)
    if method == "elliptic":
        return angle_elliptic(params)
    if method == "series":
        return angle_series_sum(params)
    if method == "asymptotic":
        return angle_series_large_C2(params)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    D = admissible_lower_bound(params.C1, params.R)
    dx = params.C2 - D
    if 0 < dx < NEAR_D * max(abs(D), 1.0):
        return _near_boundary(params, D)
    return angle_elliptic(params)
