"""How the progression angle depends on C2 and C1.

The angle falls from its boundary limit towards pi as C2 grows. Three
independent evaluations are compared: smooth quadrature, the elliptic closed
form and the truncated series. The large-C2 expansion is shown for C1 = 0.

    python3 demos/progression_angle.py
"""

import math

import numpy as np

from ecaffine.angle import (
    angle_elliptic,
    angle_quadrature,
    angle_series_large_C2,
    angle_series_sum,
    limit_at_D,
)
from ecaffine.cubic import CurveParams, admissible_lower_bound


def main():
    print("boundary limit of the angle / pi as C1 varies (R = 1)")
    for C1 in (-1000, -10, -1, 0, 1, 10, 1000):
        print(f"  C1 = {C1:>6}: D = {admissible_lower_bound(C1, 1.0):>14.6f}   limit/pi = {limit_at_D(C1, 1.0) / math.pi:.6f}")

    print("\nC1 = 0, R = 1")
    print(f"{'C2':>8} {'quadrature':>18} {'elliptic':>18} {'series4':>12} {'asymptotic':>12}")
    for C2 in (5, 6, 8, 10, 15, 20, 50, 100, 1000):
        p = CurveParams(1.0, 0.0, float(C2))
        q = angle_quadrature(p).lambda_theta
        e = angle_elliptic(p).lambda_theta
        s = angle_series_sum(p).lambda_theta
        a = angle_series_large_C2(p).lambda_theta
        print(f"{C2:>8} {q:>18.15f} {e:>18.15f} {s:>12.8f} {a:>12.8f}")

    print("\nangle / pi along C2 for a few C1 (strictly decreasing)")
    for C1 in (-5.0, 0.0, 20.0):
        D = admissible_lower_bound(C1, 1.0)
        vals = [angle_elliptic(CurveParams(1.0, C1, D + t)).lambda_theta / math.pi
                for t in np.geomspace(1e-3, 1e3, 7) * max(1.0, abs(D))]
        print(f"  C1 = {C1:>5}: " + " ".join(f"{v:.5f}" for v in vals))


if __name__ == "__main__":
    main()
