"""Complete elliptic integral of the third kind and its power series in the parameter.

Conventions: ``Pi(n, m) = int_0^{pi/2} dt / ((1 - n sin^2 t) sqrt(1 - m sin^2 t))``
with characteristic ``n < 1`` and parameter ``m = k^2`` in ``[0, 1)``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.special import elliprf, elliprj

from ._quad import gauss_legendre
from .errors import DomainError

__all__ = [
    "EllipticArgs",
    "complete_elliptic_pi",
    "complete_elliptic_k",
    "elliptic_pi_quadrature",
    "series_coefficients",
    "series_in_region",
    "elliptic_pi_series",
]


class EllipticArgs(NamedTuple):
    n: float
    m: float


def _check(n, m, one_minus_n=None):
    m = np.asarray(m, dtype=float)
    if np.any(~np.isfinite(m)) or np.any(m < 0) or np.any(m >= 1):
        raise DomainError(f"parameter m must lie in [0, 1), got {m}")
    if one_minus_n is None:
        n = np.asarray(n, dtype=float)
        if np.any(~np.isfinite(n)) or np.any(n >= 1):
            raise DomainError(f"characteristic n must be < 1, got {n}")
        p = 1.0 - n
    else:
        p = np.asarray(one_minus_n, dtype=float)
        if np.any(~np.isfinite(p)) or np.any(p <= 0):
            raise DomainError(f"1 - n must be positive, got {p}")
        n = 1.0 - p
    return n, m, p


def complete_elliptic_pi(n, m, *, one_minus_n=None):
    """Complete elliptic integral of the third kind ``Pi(n, m)``.

    Evaluated through Carlson's symmetric forms,
    ``Pi = R_F(0, 1-m, 1) + n/3 * R_J(0, 1-m, 1, 1-n)``.
    Pass ``one_minus_n`` instead of ``n`` when ``1 - n`` is known more
    accurately than ``n`` itself (characteristic close to 1).

    Accepts scalars or arrays; raises :class:`DomainError` outside
    ``m in [0, 1)``, ``n < 1``.
    """
    n, m, p = _check(n, m, one_minus_n)
    y = 1.0 - m
    val = elliprf(0.0, y, 1.0) + n / 3.0 * elliprj(0.0, y, 1.0, p)
    return float(val) if np.ndim(val) == 0 else val


def complete_elliptic_k(m):
    """``K(m) = Pi(0, m)``."""
    return complete_elliptic_pi(0.0, m)


def elliptic_pi_quadrature(n: float, m: float, rtol: float = 1e-13) -> float:
    """Direct adaptive quadrature of the defining integral (fallback route)."""
    n, m, _ = _check(n, m)
    n, m = float(n), float(m)

    def f(t):
        s2 = np.sin(t) ** 2
        return 1.0 / ((1.0 - n * s2) * np.sqrt(1.0 - m * s2))

    val, _ = gauss_legendre(f, 0.0, 0.5 * math.pi, rtol=rtol)
    return val


def _central_binom_sq(j: int) -> float:
    # binom(-1/2, j)^2 == (binom(2j, j) / 4^j)^2
    return (math.comb(2 * j, j) / 4.0**j) ** 2


def series_coefficients(alpha: float, count: int, c1_form: str = "corrected") -> np.ndarray:
    """Coefficients ``c_0 .. c_{count-1}`` of ``Pi(alpha, k) = sum c_j k^j``.

    ``c_0 .. c_3`` come from their closed forms and higher coefficients from
    the three-term recurrence

        2(j+1) alpha c_{j+1} = pi/(2(2j-1)) binom(-1/2, j)^2
                               + (1-2j) c_{j-1} + (2j+1+2j alpha) c_j.

    ``c1_form="corrected"`` uses ``c_1 = pi/(4 alpha) (1/sqrt(1-alpha) - 1)``,
    the true first Taylor coefficient. ``c1_form="printed"`` reproduces the
    variant with ``- 2`` inside the bracket, kept for comparison only.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    if c1_form not in ("corrected", "printed"):
        raise ValueError(f"unknown c1_form {c1_form!r}")
    a = float(alpha)
    pi = math.pi
    if a >= 1:
        raise DomainError("alpha must be < 1")
    if abs(a) < 1e-12:
        return _small_alpha_coefficients(a, count)
    q = 1.0 / math.sqrt(1.0 - a)
    c = np.empty(count)
    closed = [
        pi / 2.0 * q,
        pi / (4.0 * a) * (q - (1.0 if c1_form == "corrected" else 2.0)),
        3.0 * pi / (32.0 * a**2) * (2.0 * q - 2.0 - a),
        5.0 * pi / (256.0 * a**3) * (-4.0 * a - 3.0 * a**2 - 8.0 + 8.0 * q),
    ]
    for j in range(min(count, 4)):
        c[j] = closed[j]
    for j in range(3, count - 1):
        rhs = (
            pi / (2.0 * (2 * j - 1)) * _central_binom_sq(j)
            + (1 - 2 * j) * c[j - 1]
            + (2 * j + 1 + 2 * j * a) * c[j]
        )
        c[j + 1] = rhs / (2.0 * (j + 1) * a)
    return c


def _small_alpha_coefficients(a: float, count: int) -> np.ndarray:
    # Pi(a, k) = K(k) + a * int sin^2 / sqrt(1 - k sin^2) + O(a^2); both in powers of k
    c = np.empty(count)
    for j in range(count):
        w = math.comb(2 * j, j) / 4.0**j
        k_term = 0.5 * math.pi * w * w
        s_term = w * 0.5 * math.pi * math.comb(2 * j + 2, j + 1) / 4.0 ** (j + 1)
        c[j] = k_term + a * s_term
    return c


def series_in_region(alpha: float, k: float) -> bool:
    """Validity region quoted for the expansion: ``alpha < -1, 0 <= k < 1``
    or ``0 < alpha < 1, 0 <= k < alpha``."""
    if alpha < -1.0:
        return 0.0 <= k < 1.0
    if 0.0 < alpha < 1.0:
        return 0.0 <= k < alpha
    return False


def elliptic_pi_series(alpha: float, k: float, terms: int, c1_form: str = "corrected") -> float:
    """Partial sum ``sum_{j<terms} c_j k^j`` of the expansion of ``Pi(alpha, k)``.

    ``k`` plays the role of the parameter (``m``), so the result approximates
    ``complete_elliptic_pi(alpha, k)``.
    """
    if terms < 1:
        raise DomainError("terms must be >= 1")
    if not series_in_region(alpha, k):
        raise DomainError(f"(alpha={alpha}, k={k}) outside the series validity region")
    c = series_coefficients(alpha, terms, c1_form)
    powers = k ** np.arange(terms)
    return float(np.dot(c, powers))
