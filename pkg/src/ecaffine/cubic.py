"""Roots of the turning-point cubic and the admissible region in the (C1, C2) plane.

For a curve on the sphere of radius ``R`` the variable ``B = kappa_g^(-2/3)``
oscillates between the two positive roots of

    P(B) = B^3 - mu B^2 - lam B + 4 R^2,   mu = R^2 C1,  lam = R^2 C2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Degenerate, DomainError, NotAdmissible

__all__ = [
    "CurveParams",
    "CubicRoots",
    "cubic_poly",
    "solve_cubic",
    "admissible_lower_bound",
    "is_admissible",
    "count_positive_roots",
    "mu_corner",
]

SEPARATION = 1e-10


@dataclass(frozen=True)
class CurveParams:
    """One member ``(R, C1, C2)`` of the extremal-curve family."""

    R: float
    C1: float
    C2: float

    def __post_init__(self):
        for name in ("R", "C1", "C2"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")
        if self.R <= 0:
            raise DomainError(f"R must be positive, got {self.R}")

    @property
    def mu(self) -> float:
        return self.R**2 * self.C1

    @property
    def lam(self) -> float:
        return self.R**2 * self.C2

    @property
    def r(self) -> float:
        return math.sqrt(self.C2 + (0.5 * self.R * self.C1) ** 2)

    @property
    def d(self) -> float:
        return math.sqrt(self.C1**2 * self.R**2 + 3.0 * self.C2)

    def key(self) -> str:
        return f"R={self.R!r},C1={self.C1!r},C2={self.C2!r}"


@dataclass(frozen=True)
class CubicRoots:
    """Real roots ``A1 > A2 > 0 > A3`` with the shifted quantities.

    ``a, b, c = A_i / R - R C1 / 2`` and ``r = sqrt(C2 + (R C1 / 2)^2)``.
    ``gap12`` is ``A1 - A2`` computed without cancellation.
    """

    A1: float
    A2: float
    A3: float
    theta: float
    a: float
    b: float
    c: float
    r: float
    d: float
    gap12: float
    params: CurveParams

    @property
    def r_minus_a(self) -> float:
        # r^2 - a^2 = 4 / A1
        return 4.0 / (self.A1 * (self.r + self.a))

    @property
    def r_minus_b(self) -> float:
        return 4.0 / (self.A2 * (self.r + self.b))

    @property
    def a_minus_b(self) -> float:
        return self.gap12 / self.params.R


def cubic_poly(B, params: CurveParams):
    """``P(B) = B^3 - mu B^2 - lam B + 4 R^2``."""
    return ((B - params.mu) * B - params.lam) * B + 4.0 * params.R**2


def _polish(x: float, params: CurveParams) -> float:
    mu, lam, R2 = params.mu, params.lam, params.R**2
    for _ in range(2):
        f = ((x - mu) * x - lam) * x + 4.0 * R2
        fp = (3.0 * x - 2.0 * mu) * x - lam
        if fp == 0.0:
            break
        step = f / fp
        # only accept a step that does not cross a neighbouring root
        if abs(step) > 1e-6 * max(1.0, abs(x)):
            break
        x -= step
    return x


def _trig_roots(params: CurveParams):
    R, C1, C2 = params.R, params.C1, params.C2
    d2 = C1 * C1 * R * R + 3.0 * C2
    if d2 <= 0:
        raise NotAdmissible(f"C1^2 R^2 + 3 C2 = {d2} <= 0: fewer than three real roots")
    d = math.sqrt(d2)
    arg = (108.0 - 9.0 * C1 * C2 * R**2 - 2.0 * C1**3 * R**4) / (2.0 * R * d**3)
    if arg > 1.0 + 1e-12 or arg < -1.0 - 1e-12:
        raise NotAdmissible(f"arccos argument {arg} outside [-1, 1]: one real root")
    theta = math.acos(min(1.0, max(-1.0, arg)))
    shift = C1 * R**2 / 3.0
    amp = 2.0 * R * d / 3.0
    A1 = shift + amp * math.cos((theta - math.pi) / 3.0)
    A2 = shift + amp * math.cos((theta + math.pi) / 3.0)
    A3 = shift - amp * math.cos(theta / 3.0)
    # A1 - A2 = -2 amp sin(theta/3) sin(-pi/3)
    gap = amp * math.sqrt(3.0) * math.sin(theta / 3.0)
    return A1, A2, A3, theta, d, gap


def solve_cubic(params: CurveParams) -> CubicRoots:
    """Ordered real roots of the turning-point cubic.

    Trigonometric closed form followed by a guarded Newton polish of each root.

    Raises
    ------
    NotAdmissible
        Fewer than two distinct positive roots.
    Degenerate
        ``A1 - A2 < 1e-10 R`` (the constant-curvature boundary).
    """
    A1, A2, A3, theta, d, gap = _trig_roots(params)
    R = params.R
    if gap < SEPARATION * R:
        if A2 > 0:
            raise Degenerate(f"A1 - A2 = {gap:.3e} below separation threshold")
        raise NotAdmissible("double root is not positive")
    A1, A2, A3 = (_polish(x, params) for x in (A1, A2, A3))
    if not (A2 > 0 > A3):
        raise NotAdmissible(f"roots ({A1}, {A2}, {A3}) lack two positive values")
    h = 0.5 * R * params.C1
    return CubicRoots(
        A1=A1, A2=A2, A3=A3, theta=theta,
        a=A1 / R - h, b=A2 / R - h, c=A3 / R - h,
        r=params.r, d=d, gap12=gap, params=params,
    )


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def mu_corner(R: float) -> float:
    """``mu`` where ``mu^3 = -108 R^2``, the switch between the two branches."""
    return -3.0 * (2.0 * R) ** (2.0 / 3.0)


def _bound_a(mu: float, R: float) -> float:
    s = max(0.0, mu**3 + 108.0 * R**2)
    root = 48.0 * math.sqrt(3.0) * R * math.sqrt(s**3)
    base = mu**6 + 2160.0 * R**2 * mu**3 - 93312.0 * R**4
    return (-mu * mu - (_cbrt(base + root) + _cbrt(base - root))) / 12.0


def _bound_b(mu: float, R: float) -> float:
    w = mu * (mu**3 - 864.0 * R**2)
    if w <= 0:
        raise DomainError("branch (b) needs mu <= -3 (2R)^(2/3)")
    sw = math.sqrt(w)
    num = -(mu**6) - 2160.0 * R**2 * mu**3 + 93312.0 * R**4
    den = mu * (864.0 * R**2 - mu**3) * sw
    vt = math.acos(min(1.0, max(-1.0, num / den)))
    return -mu * mu / 12.0 + sw / 6.0 * math.cos((vt - math.pi) / 3.0)


def admissible_lower_bound(C1: float, R: float, branch: str | None = None) -> float:
    """Lower bound ``D`` on ``C2`` for two distinct positive turning points.

    Returns ``lam_min / R^2`` where ``lam_min`` is the discriminant boundary in
    the ``(mu, lam)`` plane. ``branch`` forces ``"a"`` or ``"b"``; by default the
    branch is picked from the sign of ``mu - mu_corner(R)``.
    """
    if not R > 0:
        raise DomainError(f"R must be positive, got {R}")
    mu = R * R * C1
    if branch is None:
        branch = "a" if mu >= mu_corner(R) else "b"
    if branch == "a":
        lam = _bound_a(mu, R)
    elif branch == "b":
        lam = _bound_b(mu, R)
    else:
        raise ValueError(f"unknown branch {branch!r}")
    return lam / (R * R)


def count_positive_roots(params: CurveParams) -> int:
    """Distinct positive real roots, from the companion-matrix eigenvalues."""
    rts = np.roots([1.0, -params.mu, -params.lam, 4.0 * params.R**2])
    real = np.sort(rts[np.abs(rts.imag) <= 1e-9 * np.maximum(1.0, np.abs(rts))].real)
    pos = real[real > 0]
    if pos.size == 2 and pos[1] - pos[0] <= SEPARATION * params.R:
        return 1
    return int(pos.size)


def is_admissible(params: CurveParams) -> tuple[bool, str]:
    """Whether ``params`` yields an oscillating profile, with a diagnostic.

    Near the boundary the explicit root count wins over the closed-form bound.
    """
    D = admissible_lower_bound(params.C1, params.R)
    above = params.C2 > D
    try:
        solve_cubic(params)
    except Degenerate as exc:
        return False, f"degenerate: {exc}"
    except NotAdmissible as exc:
        if above:
            return False, f"root structure fails although C2 > D = {D!r}: {exc}"
        return False, f"C2 = {params.C2!r} <= D = {D!r}"
    if not above:
        return True, f"root count overrides closed-form bound D = {D!r}"
    return True, "ok"
