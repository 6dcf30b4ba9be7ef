"""Extremality and second variation of the equi-centro-affine length of spherical curves.

At a critical curve with curvature variable ``B`` the second variation along a
normal variation ``U`` is

    L'' = R^(1/3) / 3 * integral (P2 U_ss^2 + P1 U_s^2 + P0 U^2) ds,

    P2 = -2/3 B^(5/2),
    P1 = 4/(3 R^2) B^(5/2) + 10/3 B^(-1/2),
    P0 = B^(5/2)/R^4 - 5/(2 R^2) B^(1/2) B_s^2 - 9/R^2 B^(-1/2)
         - 2 B^(-5/2) B_s^2 + 2 B^(-7/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NotCritical
from .trace import CurvatureProfile

__all__ = [
    "FourierPerturbation",
    "p_coefficients",
    "extremal_residual",
    "second_variation_quadrature",
    "circle_second_variation",
    "circle_constant",
    "area_preserving_Q",
    "stability_window",
    "is_stable",
]

CRITICAL_TOL = 1e-8
MAX_MODES = 64


@dataclass(frozen=True)
class FourierPerturbation:
    """``U(x) = a0/2 + sum_m (a_m cos(m x) + b_m sin(m x))``."""

    a0: float = 0.0
    modes: tuple = ()

    def __post_init__(self):
        for m, _, _ in self.modes:
            if int(m) != m or m < 1:
                raise DomainError(f"mode numbers must be positive integers, got {m}")
        if self.a0 == 0 and all(a == 0 and b == 0 for _, a, b in self.modes):
            raise DomainError("perturbation is identically zero")

    @classmethod
    def from_flat(cls, values) -> "FourierPerturbation":
        """Build from ``[a0, a1, b1, a2, b2, ...]``."""
        values = [float(v) for v in values]
        if not values:
            raise DomainError("empty coefficient list")
        rest = values[1:]
        if len(rest) % 2:
            rest.append(0.0)
        modes = tuple((k // 2 + 1, rest[k], rest[k + 1]) for k in range(0, len(rest), 2))
        return cls(values[0], modes)

    def __call__(self, x, deriv: int = 0):
        x = np.asarray(x, dtype=float)
        out = np.full_like(x, 0.5 * self.a0 if deriv == 0 else 0.0)
        for m, a, b in self.modes:
            # d^k/dx^k of cos and sin via a phase shift
            ph = 0.5 * math.pi * deriv
            out += m**deriv * (a * np.cos(m * x + ph) + b * np.sin(m * x + ph))
        return out


def p_coefficients(B, Bs, R: float):
    """``(P0, P1, P2)`` on samples of ``B`` and ``B_s``."""
    B = np.asarray(B, dtype=float)
    Bs = np.asarray(Bs, dtype=float)
    sB = np.sqrt(B)
    B52 = B * B * sB
    P2 = -2.0 / 3.0 * B52
    P1 = 4.0 / (3.0 * R**2) * B52 + 10.0 / 3.0 / sB
    P0 = (
        B52 / R**4
        - 2.5 / R**2 * sB * Bs**2
        - 9.0 / R**2 / sB
        - 2.0 * Bs**2 / (B * B * sB)
        + 2.0 / (B**3 * sB)
    )
    return P0, P1, P2


def _d1(f, h):
    # sixth-order central differences, interior points only
    return (-f[:-6] + 9.0 * f[1:-5] - 45.0 * f[2:-4] + 45.0 * f[4:-2] - 9.0 * f[5:-1] + f[6:]) / (60.0 * h)


def extremal_residual(profile: CurvatureProfile) -> float:
    """Largest ``|B_ss - 2/B^2 + B/R^2 - C1/2|`` over the interior samples.

    ``B_ss`` is obtained by sixth-order central differences of the sampled
    ``B_s``, so the check does not reuse the equation being tested.
    """
    p = profile.params
    B, Bs, h = profile.B, profile.Bs, profile.step
    if B.size < 7:
        raise DomainError("profile needs at least 7 samples")
    Bss = _d1(Bs, h)
    Bi = B[3:-3]
    res = Bss - 2.0 / (Bi * Bi) + Bi / p.R**2 - 0.5 * p.C1
    return float(np.max(np.abs(res)))


def _spectral(u: np.ndarray, length: float, max_modes: int):
    """Least-squares projection onto ``max_modes`` Fourier modes and its derivatives."""
    n = u.size
    c = np.fft.rfft(u)
    k = np.arange(c.size)
    keep = k <= max_modes
    if n % 2 == 0:
        # the Nyquist term has no derivative partner
        keep &= k < n // 2
    c = np.where(keep, c, 0.0)
    w = 2.0 * math.pi / length * k
    u0 = np.fft.irfft(c, n)
    u1 = np.fft.irfft(1j * w * c, n)
    u2 = np.fft.irfft(-(w**2) * c, n)
    return u0, u1, u2


def second_variation_quadrature(profile: CurvatureProfile, U, max_modes: int = MAX_MODES) -> float:
    """Second variation along ``U`` on a critical profile.

    Parameters
    ----------
    profile : CurvatureProfile
        Must satisfy ``extremal_residual <= 1e-8``; the profile's full sampled
        range is taken as the period of ``U``.
    U : array_like or callable
        Samples on ``profile.s`` or a function of arc length. It is projected
        onto at most ``max_modes`` Fourier modes and differentiated spectrally.

    Raises
    ------
    NotCritical
        The profile does not solve the Euler-Lagrange equation.
    """
    res = extremal_residual(profile)
    if res > CRITICAL_TOL:
        raise NotCritical(f"extremal residual {res:.3e} exceeds {CRITICAL_TOL}")
    s = profile.s
    length = float(s[-1] - s[0])
    u = U(s) if callable(U) else np.asarray(U, dtype=float)
    if u.shape != s.shape:
        raise DomainError(f"U has shape {u.shape}, expected {s.shape}")
    # drop the duplicated endpoint of the periodic grid
    u0, u1, u2 = _spectral(u[:-1], length, max_modes)
    P0, P1, P2 = p_coefficients(profile.B[:-1], profile.Bs[:-1], profile.params.R)
    integrand = P2 * u2**2 + P1 * u1**2 + P0 * u0**2
    # trapezoid rule on a periodic grid
    total = float(np.sum(integrand)) * profile.step
    return profile.params.R ** (1.0 / 3.0) / 3.0 * total


def circle_constant(R: float) -> float:
    """``2^(5/6) sqrt(6) / (6 R)``, the prefactor of the circle formula."""
    return 2.0 ** (5.0 / 6.0) * math.sqrt(6.0) / (6.0 * R)


def circle_second_variation(R: float, pert: FourierPerturbation) -> float:
    """Closed-form second variation at the circle ``B^3 = 2 R^2``.

    ``x`` is the angle around the circle.
    """
    if not R > 0:
        raise DomainError("R must be positive")
    acc = pert.a0**2 * math.pi
    for m, a, b in pert.modes:
        acc += math.pi * (m * m - 2) * (m * m - 1) * (a * a + b * b)
    # 0.0 - x keeps an exact zero positive
    return 0.0 - circle_constant(R) * acc


def area_preserving_Q(m: int, z):
    """``Q(m, z)`` with ``z = B^3 / R^2``; exact for ``int`` or ``Fraction`` input."""
    if int(m) != m or m < 1:
        raise DomainError("m must be a positive integer")
    m2 = m * m
    m4 = m2 * m2
    return (2 * m4 - 4 * m2 - 3) * z * z + (4 * m4 - 14 * m2 + 27) * z + (2 * m4 - 10 * m2 - 6)


def _fraction_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def is_stable(z, m_max: int = 50) -> bool:
    """Whether ``Q(m, z) >= 0`` for ``m = 1 .. m_max``."""
    return all(area_preserving_Q(m, z) >= 0 for m in range(1, m_max + 1))


def stability_window(m_max: int = 50, n_grid: int = 2001):
    """Interval of ``z = B^3 / R^2`` where ``Q(m, z) >= 0`` for every ``m >= 1``.

    The endpoints are the roots of ``Q(1, z)``, found exactly; a scan over
    ``m <= m_max`` on a grid in ``(0, 4)`` confirms that no other mode is
    binding and that every grid point outside the interval is unstable.
    """
    # Q(1, z) = a z^2 + b z + c, read off from three exact evaluations
    q0, q1, q2 = (Fraction(area_preserving_Q(1, Fraction(t))) for t in (0, 1, 2))
    c = q0
    a = (q2 - 2 * q1 + q0) / 2
    b = q1 - q0 - a
    disc = b * b - 4 * a * c
    r = _fraction_sqrt(disc)
    if r is None:
        r = Fraction(math.sqrt(disc))
    lo, hi = sorted(((-b + r) / (2 * a), (-b - r) / (2 * a)))
    z = np.linspace(1e-3, 4.0, n_grid)
    qs = np.array([area_preserving_Q(m, z) for m in range(1, m_max + 1)])
    stable = np.all(qs >= 0, axis=0)
    inside = (z >= float(lo)) & (z <= float(hi))
    if not np.array_equal(stable, inside):
        raise AssertionError("mode scan disagrees with the m = 1 window")
    return lo, hi
