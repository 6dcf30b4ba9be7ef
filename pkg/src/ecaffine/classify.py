"""Isoparametric equi-centro-affine extremal hypersurfaces in the unit sphere.

An isoparametric hypersurface with ``g`` distinct principal curvatures has
``k_alpha = cot(theta + (alpha - 1) pi / g)`` for some ``0 < theta < pi / g``.
It is extremal (with constant ``S_n``) iff ``S_{n-1} - (n + 1) S_n S_1 = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, IneligibleParity, ZeroCurvature

__all__ = [
    "PrincipalSpectrum",
    "ClassificationRow",
    "elem_sym",
    "elem_sym_newton",
    "extremal_residual_iso",
    "is_eligible",
    "solve_theta",
    "clifford_radii",
    "g4_cells",
    "classify_all",
    "pinching_sign",
    "format_table",
]

GRID = 10_000
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class PrincipalSpectrum:
    """Distinct principal curvatures ``k`` (strictly decreasing) with multiplicities."""

    entries: tuple

    def __post_init__(self):
        ent = tuple((float(k), int(m)) for k, m in self.entries)
        if not ent:
            raise DomainError("empty spectrum")
        for k, m in ent:
            if m < 1:
                raise DomainError(f"multiplicity must be >= 1, got {m}")
            if not math.isfinite(k):
                raise DomainError(f"curvature must be finite, got {k}")
        ks = [k for k, _ in ent]
        if any(a <= b for a, b in zip(ks, ks[1:])):
            raise DomainError("curvatures must be strictly decreasing")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_theta(cls, g: int, mults, theta: float) -> "PrincipalSpectrum":
        if len(mults) != g:
            raise DomainError(f"need {g} multiplicities, got {len(mults)}")
        ks = [1.0 / math.tan(theta + a * math.pi / g) for a in range(g)]
        return cls(tuple(zip(ks, mults)))

    @property
    def g(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def curvatures(self) -> tuple:
        return tuple(k for k, _ in self.entries)

    @property
    def mults(self) -> tuple:
        return tuple(m for _, m in self.entries)

    def expanded(self) -> np.ndarray:
        return np.repeat(self.curvatures, self.mults)


ZERO_K = 1e-12


def _all_sym(spec: PrincipalSpectrum) -> list:
    # coefficients of prod (1 + k t)^m, lowest order first
    S = [1.0] + [0.0] * spec.n
    deg = 0
    for k, m in spec.entries:
        for _ in range(m):
            deg += 1
            for j in range(deg, 0, -1):
                S[j] += k * S[j - 1]
    return S


def _has_zero(spec: PrincipalSpectrum) -> bool:
    # a vanishing curvature that rounding left at ~1e-17
    return any(abs(k) <= ZERO_K for k in spec.curvatures)


def elem_sym(spec: PrincipalSpectrum, r: int) -> float:
    """``S_r``, the r-th elementary symmetric function of the curvatures with multiplicity."""
    if int(r) != r or not 0 <= r <= spec.n:
        raise IndexError(f"r must lie in 0..{spec.n}, got {r}")
    return float(_all_sym(spec)[r])


def elem_sym_newton(spec: PrincipalSpectrum, r: int) -> float:
    """``S_r`` from power sums through Newton's identities (cross-check route)."""
    if int(r) != r or not 0 <= r <= spec.n:
        raise IndexError(f"r must lie in 0..{spec.n}, got {r}")
    ks = np.array(spec.curvatures)
    ms = np.array(spec.mults, dtype=float)
    p = [float(np.sum(ms * ks**j)) for j in range(r + 1)]
    e = [1.0]
    for j in range(1, r + 1):
        acc = sum((-1) ** (i - 1) * e[j - i] * p[i] for i in range(1, j + 1))
        e.append(acc / j)
    return e[r]


def extremal_residual_iso(spec: PrincipalSpectrum) -> float:
    """``S_{n-1} - (n + 1) S_n S_1``."""
    S = _all_sym(spec)
    n = spec.n
    return float(S[n - 1] - (n + 1) * S[n] * S[1])


def is_eligible(spec: PrincipalSpectrum) -> tuple[bool, str]:
    """``S_n != 0`` and, for even ``n``, ``S_n > 0``."""
    Sn = float(_all_sym(spec)[spec.n])
    if Sn == 0.0 or _has_zero(spec):
        return False, "S_n = 0"
    if spec.n % 2 == 0 and Sn < 0:
        return False, f"S_n = {Sn:.12g} < 0 with n even"
    return True, ""


def _residual_theta(g, mults, theta):
    return extremal_residual_iso(PrincipalSpectrum.from_theta(g, mults, theta))


def _residual_grid(g, mults, theta: np.ndarray) -> np.ndarray:
    """Vectorised residual over an array of angles."""
    n = sum(mults)
    S = np.zeros((n + 1, theta.size))
    S[0] = 1.0
    deg = 0
    for a, m in enumerate(mults):
        k = 1.0 / np.tan(theta + a * math.pi / g)
        for _ in range(m):
            # multiply by (1 + k t); the right side is evaluated before assignment
            S[1 : deg + 2] = S[1 : deg + 2] + k * S[: deg + 1]
            deg += 1
    return S[n - 1] - (n + 1) * S[n] * S[1]


def _bisect(f, lo, hi, flo):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _roots(g, mults, grid=GRID):
    """Residual roots in ``(0, pi/g)`` with ``S_n != 0``, in the ``S_1 >= 0`` orientation."""
    th = (math.pi / g) * (np.arange(1, grid) / grid)
    vals = _residual_grid(g, mults, th)
    f = lambda t: _residual_theta(g, mults, t)  # noqa: E731
    found = [float(t) for t in th[vals == 0.0]]
    for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        found.append(_bisect(f, float(th[i]), float(th[i + 1]), float(vals[i])))
    found.sort()
    symmetric = tuple(mults) == tuple(mults)[::-1]
    out = []
    for t in found:
        spec = PrincipalSpectrum.from_theta(g, mults, t)
        if elem_sym(spec, spec.n) == 0.0 or _has_zero(spec):
            continue
        scale = max(1.0, float(np.abs(spec.expanded()).sum()))
        if symmetric and elem_sym(spec, 1) < -1e-12 * scale:
            continue
        out.append(t)
    return out


def solve_theta(g: int, mults, n: int | None = None, grid: int = GRID) -> list[float]:
    """All ``theta`` in ``(0, pi/g)`` giving an eligible extremal spectrum.

    Sign changes of the residual on a uniform grid are refined by bisection.
    When the multiplicities read the same backwards, reversing the normal
    maps ``theta`` to ``pi/g - theta``; only the orientation with ``S_1 >= 0``
    is kept.
    """
    mults = tuple(int(m) for m in mults)
    if g not in (1, 2, 3, 4, 6):
        raise DomainError(f"g must be one of 1, 2, 3, 4, 6, got {g}")
    if len(mults) != g:
        raise DomainError("len(mults) must equal g")
    if n is not None and n != sum(mults):
        raise DomainError(f"n = {n} does not match sum of multiplicities {sum(mults)}")
    return [t for t in _roots(g, mults, grid) if is_eligible(PrincipalSpectrum.from_theta(g, mults, t))[0]]


def clifford_radii(n: int, m: int) -> tuple[float, float]:
    """Radii of the extremal product ``S^m(r1) x S^(n-m)(r2)``.

    Raises :class:`IneligibleParity` for ``n = 2m`` with ``m`` odd.
    """
    if not 1 <= m <= n - 1:
        raise DomainError(f"need 1 <= m <= n - 1, got m={m}, n={n}")
    if n == 2 * m and m % 2 == 1:
        raise IneligibleParity(f"n = 2m = {n} with m odd gives S_n < 0")
    return math.sqrt((m + 1) / (n + 2)), math.sqrt((n + 1 - m) / (n + 2))


def _phi(l: int) -> int:
    return sum(1 for s in range(1, l + 1) if s % 8 in (0, 1, 2, 4))


def g4_cells(n_max: int, extended: bool = False) -> list[tuple[int, int, bool]]:
    """Multiplicity pairs ``(m1, m2)`` for ``g = 4`` with ``n = 2(m1 + m2) <= n_max``.

    The explicit pairs ``(2, 2)`` and ``(4, 5)`` always appear. With
    ``extended=True`` the pairs allowed by the divisibility condition
    ``2^phi(m1 - 1) | m1 + m2 + 1`` are added, flagged by the third field.
    """
    cells = [(2, 2, False), (4, 5, False)]
    if extended:
        for m1 in range(1, n_max // 2 + 1):
            for m2 in range(1, n_max // 2 + 1):
                if (m1, m2) in ((2, 2), (4, 5)):
                    continue
                if (m1 + m2 + 1) % (2 ** _phi(m1 - 1)) == 0:
                    cells.append((m1, m2, True))
    return [c for c in cells if 2 * (c[0] + c[1]) <= n_max]


@dataclass(frozen=True)
class ClassificationRow:
    g: int
    n: int
    mults: tuple
    curvatures: tuple
    theta: float
    residual: float
    S_n: float
    eligible: bool
    notes: str = ""
    radii: tuple = ()
    symbolic: str = ""
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "multiplicities": list(self.mults),
            "curvatures": list(self.curvatures),
            "theta": self.theta,
            "residual": self.residual,
            "S_n": self.S_n,
            "eligible": self.eligible,
            "notes": self.notes,
            "radii": list(self.radii),
            "symbolic": self.symbolic,
            **({"extra": self.extra} if self.extra else {}),
        }


def _row(g, mults, theta, notes="", radii=(), symbolic="", extra=None):
    spec = PrincipalSpectrum.from_theta(g, mults, theta)
    ok, why = is_eligible(spec)
    Sn = elem_sym(spec, spec.n)
    note = "; ".join(x for x in (notes, why) if x)
    return ClassificationRow(
        g=g, n=spec.n, mults=tuple(mults), curvatures=spec.curvatures, theta=theta,
        residual=extremal_residual_iso(spec), S_n=Sn, eligible=ok, notes=note,
        radii=tuple(radii), symbolic=symbolic, extra=extra or {},
    )


def _g3_identities(ks, n):
    k2 = np.array(ks) ** 2
    got = (float(np.prod(k2)), float(np.sum(k2)), float(k2[0] * k2[1] + k2[1] * k2[2] + k2[0] * k2[2]))
    want = (1.0 / (n + 1), 3.0 * (2 * n + 5) / (n + 1), 3.0 * (3 * n + 5) / (n + 1))
    return got, want


def classify_all(n_max: int, include_extended_g4: bool = False) -> list[ClassificationRow]:
    """Tabulate extremal isoparametric spectra with ``n <= n_max``.

    Rows failing the sign condition on ``S_n`` are kept with
    ``eligible=False`` and an explanatory note. ``include_extended_g4`` adds
    the ``g = 4`` cells allowed only through the divisibility condition.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    rows: list[ClassificationRow] = []
    # g = 1
    for n in range(1, n_max + 1):
        for t in _roots(1, (n,)):
            k = 1.0 / math.tan(t)
            rows.append(_row(1, (n,), t, radii=(1.0 / math.sqrt(1.0 + k * k),), symbolic=f"k = 1/sqrt({n + 1})"))
    # g = 2
    for n in range(2, n_max + 1):
        for m in range(1, n):
            for t in _roots(2, (m, n - m)):
                notes = ""
                if n == 2 * m and m % 2 == 1:
                    notes = "n = 2m with m odd"
                k1 = 1.0 / math.tan(t)
                radii = (1.0 / math.sqrt(1.0 + k1 * k1), 1.0 / math.sqrt(1.0 + 1.0 / (k1 * k1)))
                rows.append(_row(2, (m, n - m), t, notes, radii, f"k1^2 = {n + 1 - m}/{m + 1}"))
    # g = 3
    for m in (1, 2, 4, 8):
        if 3 * m > n_max:
            continue
        n = 3 * m
        for t in _roots(3, (m, m, m)):
            spec = PrincipalSpectrum.from_theta(3, (m, m, m), t)
            got, want = _g3_identities(spec.curvatures, n)
            poly = [(3 * m + 1), 0, -3 * (6 * m + 5), 0, 3 * (9 * m + 5), 0, -1]
            prr = max(abs(np.polyval(poly, k)) for k in spec.curvatures)
            rows.append(_row(3, (m, m, m), t, extra={
                "identities": list(got), "identities_expected": list(want), "sextic_residual": float(prr),
            }, symbolic=f"({3 * m + 1})k^6 - {3 * (6 * m + 5)}k^4 + {3 * (9 * m + 5)}k^2 - 1 = 0"))
    # g = 4
    for m1, m2, ext in g4_cells(n_max, include_extended_g4):
        mults = (m1, m2, m1, m2)
        for t in _roots(4, mults):
            spec = PrincipalSpectrum.from_theta(4, mults, t)
            k = spec.curvatures
            A, B = k[0] + k[2], k[1] + k[3]
            sym = "+-(1+sqrt2), +-(sqrt2-1)" if (m1, m2) == (2, 2) else f"A^2 = {4 * m2}/{m1}"
            rows.append(_row(4, mults, t, "divisibility-condition cell" if ext else "", symbolic=sym,
                             extra={"AB": A * B, "extended": ext}))
    # g = 6
    for m in (1, 2):
        if 6 * m > n_max:
            continue
        for t in _roots(6, (m,) * 6):
            rows.append(_row(6, (m,) * 6, t, symbolic="+-(2+-sqrt3), +-1"))
    return rows


def pinching_sign(spec: PrincipalSpectrum) -> float:
    """``sum_i m_i (1 - (n + 1) k_i^2) / k_i``."""
    n = spec.n
    total = 0.0
    for k, m in spec.entries:
        if k == 0.0:
            raise ZeroCurvature("principal curvature is zero")
        total += m * (1.0 - (n + 1) * k * k) / k
    return total


def format_table(rows) -> str:
    """Aligned text rendering of :func:`classify_all` output."""
    head = ("g", "n", "mults", "curvatures", "residual", "eligible", "notes")
    lines = [head]
    for r in rows:
        lines.append((
            str(r.g), str(r.n), ",".join(map(str, r.mults)),
            " ".join(f"{k:.10g}" for k in r.curvatures),
            f"{r.residual:.2e}", "yes" if r.eligible else "no", r.notes,
        ))
    widths = [max(len(l[i]) for l in lines) for i in range(len(head))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(l, widths)).rstrip() for l in lines) + "\n"
