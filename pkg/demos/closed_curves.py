"""Closed extremal curves on the unit sphere.

For each (p, q) the constant C2 is tuned so that one curvature period advances
the curve by 2 pi p / q about its axis; after q periods it closes with
rotation index p. SVG drawings are written next to this script in out/.

    python3 demos/closed_curves.py
"""

import time
from pathlib import Path

from ecaffine.svg import count_lobes, emit_svg
from ecaffine.trace import closure_search, integrate_profile, rotation_index, trace_curve

OUT = Path(__file__).parent / "out"
CASES = [(2, 3, 0.0), (3, 5, 0.0), (4, 7, 0.0), (3, 4, 20.0), (4, 5, 30.0), (5, 6, 30.0)]


def main():
    OUT.mkdir(exist_ok=True)
    print(f"{'p':>2} {'q':>2} {'C1':>5} {'C2':>22} {'gap':>9} {'index':>5} {'lobes':>5}  time")
    for p, q, C1 in CASES:
        t0 = time.perf_counter()
        params = closure_search(p, q, C1)
        tr = trace_curve(integrate_profile(params, q), q)
        name = OUT / f"curve_p{p}_q{q}_C1_{C1:g}.svg"
        name.write_text(emit_svg(tr, elevation=60.0, azimuth=20.0))
        dt = time.perf_counter() - t0
        print(f"{p:>2} {q:>2} {C1:>5g} {params.C2:>22.17g} {tr.closure_gap:>9.1e} "
              f"{rotation_index(tr):>5} {count_lobes(tr):>5}  {dt:.2f} s")
    print(f"SVG files in {OUT}")


if __name__ == "__main__":
    main()
