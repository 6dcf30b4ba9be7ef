"""Curvature profiles, closure search and reconstruction of extremal curves on S^2(R).

The profile ``B(s)`` solves ``B'' = C1/2 + 2/B^2 - B/R^2`` from the turning
point ``(A2, 0)``. The ambient curve follows from the spherical Frenet system

    x' = T,   T' = kappa eps - x / R^2,   eps' = -kappa T,   kappa = B^(-3/2).

The initial frame is chosen so that the Killing axis of the curve is the
z-axis, which makes the accumulated azimuth the progression angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .angle import angle_elliptic, limit_at_D, period
from .cubic import CurveParams, admissible_lower_bound, solve_cubic
from .errors import (
    DomainError,
    FrameDrift,
    IntegrationDrift,
    NotClosed,
    NotCritical,
    OutOfRange,
    StepTooLarge,
)

__all__ = [
    "CurvatureProfile",
    "SphereTrace",
    "integrate_profile",
    "circle_profile",
    "trace_curve",
    "closure_search",
    "rotation_index",
    "eca_length",
    "isoperimetric_check",
    "killing_residuals",
    "first_integral",
    "axis_norm",
]

DEFAULT_STEPS = 1000
MIN_STEPS = 200
MAX_STEPS = 200_000
# one-period first-integral residual aimed for when the step is chosen automatically
AUTO_TARGET = 1e-11
FIRST_INTEGRAL_TOL = 1e-9
PERIOD_TOL = 1e-8
FRAME_TOL = 1e-8


def first_integral(B, Bs, params: CurveParams):
    """Residual ``B_s^2 - (C2 - B^2/R^2 - 4/B + C1 B)``."""
    R, C1, C2 = params.R, params.C1, params.C2
    return Bs * Bs - (C2 - B * B / R**2 - 4.0 / B + C1 * B)


def axis_norm(params: CurveParams) -> float:
    """Length of the Killing axis vector, ``sqrt(C2/R^2 + C1^2/4)``."""
    return math.sqrt(params.C2 / params.R**2 + 0.25 * params.C1**2)


@dataclass(frozen=True, eq=False)
class CurvatureProfile:
    """Sampled solution ``(s, B, B_s)`` on a uniform grid of spacing ``step``."""

    s: np.ndarray
    B: np.ndarray
    Bs: np.ndarray
    period_T: float
    sampled_period: float
    step: float
    steps_per_period: int
    n_periods: int
    params: CurveParams
    first_integral_residual: float

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        return list(zip(self.s.tolist(), self.B.tolist(), self.Bs.tolist()))

    @property
    def kappa_g(self) -> np.ndarray:
        return self.B**-1.5


@dataclass(frozen=True, eq=False)
class SphereTrace:
    """Ambient curve with its moving frame over ``q`` curvature periods."""

    s: np.ndarray
    x: np.ndarray
    T: np.ndarray
    eps: np.ndarray
    B: np.ndarray
    Bs: np.ndarray
    q: int
    winding_theta: float
    closure_gap: float
    frame_defect: float
    sphere_defect: float
    step_defect: float
    profile: CurvatureProfile

    @property
    def points(self) -> list[tuple[float, np.ndarray]]:
        return list(zip(self.s.tolist(), self.x))

    @property
    def frame(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return list(zip(self.T, self.eps))

    @property
    def params(self) -> CurveParams:
        return self.profile.params

    @property
    def rotation_index(self) -> int:
        return rotation_index(self)


def _b_rhs(B, C1h, iR2):
    return C1h + 2.0 / (B * B) - B * iR2


def _rk4_profile(B, Bs, h, nsteps, C1, R):
    C1h, iR2 = 0.5 * C1, 1.0 / (R * R)
    out_B = np.empty(nsteps + 1)
    out_Bs = np.empty(nsteps + 1)
    out_B[0], out_Bs[0] = B, Bs
    hh = 0.5 * h
    h6 = h / 6.0
    for i in range(nsteps):
        k1b, k1v = Bs, _b_rhs(B, C1h, iR2)
        k2b, k2v = Bs + hh * k1v, _b_rhs(B + hh * k1b, C1h, iR2)
        k3b, k3v = Bs + hh * k2v, _b_rhs(B + hh * k2b, C1h, iR2)
        k4b, k4v = Bs + h * k3v, _b_rhs(B + h * k3b, C1h, iR2)
        B = B + h6 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        Bs = Bs + h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        out_B[i + 1], out_Bs[i + 1] = B, Bs
    return out_B, out_Bs


def _hermite_zero(s0, h, y0, y1, d0, d1):
    """Zero of the cubic Hermite interpolant of ``y`` on ``[s0, s0 + h]``."""

    def p(t):
        t2, t3 = t * t, t * t * t
        return (
            (2 * t3 - 3 * t2 + 1) * y0
            + (t3 - 2 * t2 + t) * h * d0
            + (-2 * t3 + 3 * t2) * y1
            + (t3 - t2) * h * d1
        )

    if y0 == 0.0:
        return s0
    return s0 + h * brentq(p, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def _sampled_period(s, B, Bs, h, params, n_periods):
    C1h, iR2 = 0.5 * params.C1, 1.0 / params.R**2
    # minima of B: B_s crosses zero upwards
    idx = np.nonzero((Bs[:-1] < 0) & (Bs[1:] >= 0))[0]
    if idx.size < n_periods:
        return float("nan")
    i = idx[n_periods - 1]
    d0 = _b_rhs(B[i], C1h, iR2)
    d1 = _b_rhs(B[i + 1], C1h, iR2)
    return _hermite_zero(s[i], h, Bs[i], Bs[i + 1], d0, d1) / n_periods


def _auto_steps(B0, T, params) -> int:
    N = DEFAULT_STEPS
    B, Bs = _rk4_profile(B0, 0.0, T / N, N, params.C1, params.R)
    r = float(np.max(np.abs(first_integral(B, Bs, params))))
    if r <= AUTO_TARGET:
        return N
    N = math.ceil(N * (r / AUTO_TARGET) ** 0.25 * 1.1 / 100.0) * 100
    return min(N, MAX_STEPS)


def integrate_profile(
    params: CurveParams,
    n_periods: int = 1,
    step: float | None = None,
    steps_per_period: int | None = None,
) -> CurvatureProfile:
    """Integrate the curvature ODE from the lower turning point.

    The step is ``T / N`` with ``N = steps_per_period``, or the largest such
    step not exceeding ``step``. Steps coarser than ``T / 200`` raise
    :class:`StepTooLarge`. When neither is given, ``N`` is chosen from a trial
    period at ``N = 1000`` using the ``N^-4`` error law of the integrator, so
    that the one-period first-integral residual is about 1e-11.

    Raises
    ------
    IntegrationDrift
        First-integral residual above 1e-9 or sampled period off by more than
        1e-8 relative.
    """
    if n_periods < 1:
        raise DomainError("n_periods must be >= 1")
    roots = solve_cubic(params)
    T = period(params, roots)
    if step is not None:
        if step <= 0:
            raise DomainError("step must be positive")
        if step > T / MIN_STEPS * (1 + 1e-12):
            raise StepTooLarge(f"step {step} exceeds T/{MIN_STEPS} = {T / MIN_STEPS}")
        N = math.ceil(T / step - 1e-9)
    elif steps_per_period is not None:
        N = int(steps_per_period)
    else:
        N = _auto_steps(roots.A2, T, params)
    if N < MIN_STEPS:
        raise StepTooLarge(f"{N} steps per period is below {MIN_STEPS}")
    h = T / N
    total = n_periods * N
    # two extra steps so the last minimum is bracketed
    B, Bs = _rk4_profile(roots.A2, 0.0, h, total + 2, params.C1, params.R)
    s = h * np.arange(total + 3)
    Ts = _sampled_period(s, B, Bs, h, params, n_periods)
    B, Bs, s = B[: total + 1], Bs[: total + 1], s[: total + 1]
    resid = float(np.max(np.abs(first_integral(B, Bs, params))))
    if resid > FIRST_INTEGRAL_TOL:
        raise IntegrationDrift(f"first-integral residual {resid:.3e} exceeds {FIRST_INTEGRAL_TOL}")
    if not abs(Ts - T) <= PERIOD_TOL * T:
        raise IntegrationDrift(f"sampled period {Ts!r} differs from quadrature period {T!r}")
    return CurvatureProfile(s, B, Bs, T, Ts, h, N, n_periods, params, resid)


def circle_profile(
    R: float,
    B: float,
    C1: float | None = None,
    steps_per_period: int = DEFAULT_STEPS,
    strict: bool = True,
) -> CurvatureProfile:
    """Constant profile ``B`` (a circle of geodesic curvature ``B^(-3/2)``).

    A constant ``B`` solves the curvature ODE only for ``C1 = 2B/R^2 - 4/B^2``;
    that value is used when ``C1`` is omitted and any other value is rejected
    unless ``strict=False`` (useful for probing residuals of non-solutions).
    The "period" is the circumference of the circle.
    """
    if not (R > 0 and B > 0):
        raise DomainError("R and B must be positive")
    C1_crit = 2.0 * B / R**2 - 4.0 / B**2
    if C1 is None:
        C1 = C1_crit
    elif strict and abs(C1 - C1_crit) > 1e-12 * max(1.0, abs(C1_crit)):
        raise NotCritical(f"constant B={B} solves the ODE only for C1={C1_crit!r}, got {C1!r}")
    C2 = B * B / R**2 + 4.0 / B - C1 * B
    params = CurveParams(R, C1, C2)
    kappa = B**-1.5
    rho = 1.0 / math.sqrt(1.0 / R**2 + kappa**2)
    T = 2.0 * math.pi * rho
    N = steps_per_period
    h = T / N
    s = h * np.arange(N + 1)
    Bv = np.full(N + 1, float(B))
    Bs = np.zeros(N + 1)
    resid = float(np.max(np.abs(first_integral(Bv, Bs, params))))
    return CurvatureProfile(s, Bv, Bs, T, T, h, N, 1, params, resid)


def _initial_frame(B0, params):
    R = params.R
    al = 0.5 * params.C1 - B0 / R**2
    ga = -2.0 / (math.sqrt(B0) * R)
    w = math.hypot(al, ga)
    n = (0.0, ga / w, -al / w)
    x = (R * n[0], R * n[1], R * n[2])
    t = (1.0, 0.0, 0.0)
    # eps = n x t
    e = (0.0, n[2], -n[1])
    return x, t, e


def _frame_rhs(y, C1h, iR2):
    B, Bs, x0, x1, x2, t0, t1, t2, e0, e1, e2 = y
    k = B**-1.5
    return (
        Bs, C1h + 2.0 / (B * B) - B * iR2,
        t0, t1, t2,
        k * e0 - x0 * iR2, k * e1 - x1 * iR2, k * e2 - x2 * iR2,
        -k * t0, -k * t1, -k * t2,
    )


def _axpy(y, a, k):
    return tuple(u + a * v for u, v in zip(y, k))


def _project(y, R):
    B, Bs, x0, x1, x2, t0, t1, t2, e0, e1, e2 = y
    nx = math.sqrt(x0 * x0 + x1 * x1 + x2 * x2)
    defect = abs(nx - R)
    x0, x1, x2 = R * x0 / nx, R * x1 / nx, R * x2 / nx
    u0, u1, u2 = x0 / R, x1 / R, x2 / R
    d = t0 * u0 + t1 * u1 + t2 * u2
    t0, t1, t2 = t0 - d * u0, t1 - d * u1, t2 - d * u2
    nt = math.sqrt(t0 * t0 + t1 * t1 + t2 * t2)
    defect = max(defect, abs(nt - 1.0), abs(d))
    t0, t1, t2 = t0 / nt, t1 / nt, t2 / nt
    d1 = e0 * u0 + e1 * u1 + e2 * u2
    d2 = e0 * t0 + e1 * t1 + e2 * t2
    e0, e1, e2 = e0 - d1 * u0 - d2 * t0, e1 - d1 * u1 - d2 * t1, e2 - d1 * u2 - d2 * t2
    ne = math.sqrt(e0 * e0 + e1 * e1 + e2 * e2)
    defect = max(defect, abs(ne - 1.0), abs(d1), abs(d2))
    return (B, Bs, x0, x1, x2, t0, t1, t2, e0 / ne, e1 / ne, e2 / ne), defect


def _frame_defect(x, T, e, R):
    dots = np.stack([
        np.einsum("ij,ij->i", x, T) / R,
        np.einsum("ij,ij->i", x, e) / R,
        np.einsum("ij,ij->i", T, e),
        np.linalg.norm(T, axis=1) - 1.0,
        np.linalg.norm(e, axis=1) - 1.0,
    ])
    return float(np.max(np.abs(dots))), float(np.max(np.abs(np.linalg.norm(x, axis=1) - R)))


def trace_curve(profile: CurvatureProfile, q: int = 1, project: bool = True) -> SphereTrace:
    """Reconstruct the curve on the sphere over ``q`` curvature periods.

    ``B`` is re-integrated jointly with the frame using the profile's step, so
    the curvature samples coincide with the profile's. With ``project=True``
    the position is pulled back to the sphere and ``(T, eps)`` re-orthonormalised
    after each step; ``step_defect`` records the largest correction applied.

    Raises
    ------
    FrameDrift
        Per-step correction or final frame defect above 1e-8.
    """
    if q < 1:
        raise DomainError("q must be >= 1")
    params = profile.params
    R = params.R
    C1h, iR2 = 0.5 * params.C1, 1.0 / R**2
    h = profile.step
    nsteps = q * profile.steps_per_period
    x, t, e = _initial_frame(float(profile.B[0]), params)
    y = (float(profile.B[0]), float(profile.Bs[0]), *x, *t, *e)
    out = np.empty((nsteps + 1, 11))
    out[0] = y
    hh, h6 = 0.5 * h, h / 6.0
    step_defect = 0.0
    for i in range(nsteps):
        k1 = _frame_rhs(y, C1h, iR2)
        k2 = _frame_rhs(_axpy(y, hh, k1), C1h, iR2)
        k3 = _frame_rhs(_axpy(y, hh, k2), C1h, iR2)
        k4 = _frame_rhs(_axpy(y, h, k3), C1h, iR2)
        y = tuple(u + h6 * (a + 2.0 * b + 2.0 * c + d) for u, a, b, c, d in zip(y, k1, k2, k3, k4))
        if project:
            y, dfc = _project(y, R)
            if dfc > step_defect:
                step_defect = dfc
        out[i + 1] = y
    s = h * np.arange(nsteps + 1)
    xs, Ts, es = out[:, 2:5], out[:, 5:8], out[:, 8:11]
    fdef, sdef = _frame_defect(xs, Ts, es, R)
    worst = max(step_defect, fdef, sdef / R)
    if worst > FRAME_TOL:
        raise FrameDrift(f"frame defect {worst:.3e} exceeds {FRAME_TOL}")
    az = np.unwrap(np.arctan2(xs[:, 1], xs[:, 0]))
    winding = float(az[-1] - az[0])
    gap = float(np.linalg.norm(xs[-1] - xs[0]))
    return SphereTrace(
        s=s, x=xs, T=Ts, eps=es, B=out[:, 0], Bs=out[:, 1], q=q,
        winding_theta=winding, closure_gap=gap, frame_defect=fdef,
        sphere_defect=sdef, step_defect=step_defect, profile=profile,
    )


def rotation_index(trace: SphereTrace, tol: float = 1e-6) -> int:
    """Winding number of a closed trace about the Killing axis."""
    R = trace.params.R
    if trace.closure_gap > tol * R:
        raise NotClosed(f"closure gap {trace.closure_gap:.3e} exceeds {tol} R")
    w = trace.winding_theta / (2.0 * math.pi)
    p = round(w)
    if abs(w - p) > 1e-4:
        raise NotClosed(f"winding {w!r} turns is not an integer")
    return int(p)


def closure_search(p: int, q: int, C1: float, R: float = 1.0) -> CurveParams:
    """``C2`` whose progression angle is ``2 pi p / q``.

    The angle decreases strictly in ``C2`` from ``limit_at_D(C1, R)`` towards
    ``pi``, so the root is bracketed and refined by Brent's method.

    Raises
    ------
    DomainError
        ``p, q`` not positive coprime integers.
    OutOfRange
        ``p/q`` not inside ``(1/2, limit_at_D / 2 pi)``.
    """
    if int(p) != p or int(q) != q or p < 1 or q < 1:
        raise DomainError("p and q must be positive integers")
    if math.gcd(int(p), int(q)) != 1:
        raise DomainError(f"p={p} and q={q} are not coprime")
    if 2 * p <= q:
        raise OutOfRange("p/q must exceed 1/2")
    top = limit_at_D(C1, R) / (2.0 * math.pi)
    if not p / q < top:
        raise OutOfRange(f"p/q must be below {top!r} for C1={C1!r}, R={R!r}")
    target = 2.0 * math.pi * p / q
    D = admissible_lower_bound(C1, R)

    def g(C2):
        return angle_elliptic(CurveParams(R, C1, C2)).lambda_theta - target

    lo = D + 1e-8 * max(abs(D), 1.0)
    span = max(abs(D), 1.0)
    hi = D + span
    while g(hi) > 0:
        span *= 2.0
        hi = D + span
        if span > 1e300:
            raise OutOfRange("failed to bracket the target angle")
    if g(lo) < 0:
        raise OutOfRange("target angle too close to the boundary limit")
    C2 = brentq(g, lo, hi, xtol=1e-15 * max(1.0, abs(hi)), rtol=4 * np.finfo(float).eps, maxiter=500)
    return CurveParams(R, C1, C2)


def _eca_from_curvature(kappa, length, R):
    return R ** (1.0 / 3.0) * kappa ** (1.0 / 3.0) * length


def eca_length(trace: SphereTrace) -> float:
    """``R^(1/3) * integral kappa_g^(1/3) ds`` by the trapezoid rule."""
    R = trace.params.R
    return float(R ** (1.0 / 3.0) * np.trapezoid(trace.B**-0.5, trace.s))


def isoperimetric_check(psi: float) -> tuple[float, float]:
    """Both sides of the isoperimetric equality for the circle at colatitude ``psi`` on S^2(1).

    The enclosed area comes from Gauss-Bonnet, ``A = 2 pi - kappa_g * length``.
    """
    if not 0.0 < psi < 0.5 * math.pi:
        raise DomainError(f"colatitude must lie in (0, pi/2), got {psi}")
    length = 2.0 * math.pi * math.sin(psi)
    kappa = math.cos(psi) / math.sin(psi)
    A = 2.0 * math.pi - kappa * length
    lhs = _eca_from_curvature(kappa, length, 1.0) ** 3
    rhs = (4.0 * math.pi - A) * (2.0 * math.pi - A) * A
    return lhs, rhs


def _d1(f, h):
    # fourth-order central differences, interior points only
    return (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)


def killing_residuals(trace: SphereTrace) -> dict:
    """Residuals of the Killing equations for ``J = -2 B^(-1/2) T + B_s eps``.

    Derivatives are taken by finite differences of the sampled field, so the
    checks are independent of the ODE used to build the trace.
    """
    R = trace.params.R
    h = trace.profile.step
    J = -2.0 * trace.B[:, None] ** -0.5 * trace.T + trace.Bs[:, None] * trace.eps
    dJ = _d1(J, h)
    x = trace.x[2:-2]
    nJ = dJ - np.einsum("ij,ij->i", dJ, x)[:, None] * x / R**2
    ddJ = _d1(nJ, h)
    sl = slice(4, -4)
    r1 = np.einsum("ij,ij->i", dJ, trace.T[2:-2])
    r2 = np.einsum("ij,ij->i", ddJ, trace.eps[sl]) + np.einsum("ij,ij->i", J[sl], trace.eps[sl]) / R**2
    w = axis_norm(trace.params)
    lhs = (4.0 / trace.B + trace.Bs**2) / w**2
    rhs = trace.x[:, 0] ** 2 + trace.x[:, 1] ** 2
    return {
        "tangential": float(np.max(np.abs(r1))),
        "normal": float(np.max(np.abs(r2))),
        "axis_distance": float(np.max(np.abs(lhs - rhs))),
    }
