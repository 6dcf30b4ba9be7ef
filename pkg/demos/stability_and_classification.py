"""Circle stability and the isoparametric classification table.

First the second variation at the extremal circle, mode by mode, then the
window of B^3 / R^2 where area-preserving perturbations cannot increase the
length, then the table of extremal isoparametric hypersurfaces up to n = 24.

    python3 demos/stability_and_classification.py
"""

from fractions import Fraction

from ecaffine.classify import classify_all, format_table
from ecaffine.stability import FourierPerturbation, area_preserving_Q, circle_second_variation, stability_window


def main():
    print("second variation at the circle B^3 = 2 R^2 (R = 1), single cos(m x) modes")
    for m in range(1, 7):
        v = circle_second_variation(1.0, FourierPerturbation(modes=((m, 1.0, 0.0),)))
        print(f"  m = {m}: {v: .6f}")
    lo, hi = stability_window()
    print(f"\narea-preserving stability window: {lo} <= B^3/R^2 <= {hi}")
    for z in (Fraction(139, 100), Fraction(7, 5), Fraction(17, 10), Fraction(2), Fraction(201, 100)):
        print(f"  z = {str(z):>7}: Q(1, z) = {area_preserving_Q(1, z)}")

    rows = [r for r in classify_all(24) if r.g != 2 or r.n <= 6]
    print("\nclassification (g = 2 rows shown up to n = 6)")
    print(format_table(rows))


if __name__ == "__main__":
    main()
