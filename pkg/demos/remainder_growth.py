"""How fast the flux-interpolation remainder grows with polynomial order.

A degree-p solution raised to the 2nd or 4th power lives in a space of
degree 2p or 4p; forcing it back through p+1 Gauss nodes leaves a
remainder.  This script measures those remainders by brute force for both
flux powers, compares them with the printed factorial bounds, and shows
that the quartic flux always loses more -- increasingly so at higher
order.
"""

import numpy as np

from fluxrec import (LegendreSeries, flux_remainder_study,
                     gauss_legendre_rule, remainder_bound_quartic,
                     remainder_bound_square)

SAMPLES = 100
SEED = 2023

rng = np.random.default_rng(SEED)
print(f"{'p':>2} {'|R f2|':>10} {'|R f4|':>10} {'ratio':>7} "
      f"{'grad/edge':>10} {'bound f2':>10} {'bound f4':>10}")

ratios = []
for p in (2, 3, 4, 5):
    nodes = gauss_legendre_rule(p).points
    n2, n4, rr, ge = [], [], [], []
    for _ in range(SAMPLES):
        series = LegendreSeries(rng.choice([-1.0, 1.0], p + 1))
        r2 = flux_remainder_study(series, "f2", nodes)
        r4 = flux_remainder_study(series, "f4", nodes)
        n2.append(r2.norm_interp)
        n4.append(r4.norm_interp)
        rr.append(r4.norm_interp / r2.norm_interp)
        edge = max(r4.edge_left, r4.edge_right)
        if edge > 0:
            ge.append(r4.norm_grad / edge)
    ratios.append(float(np.median(rr)))
    print(f"{p:>2} {np.median(n2):>10.3f} {np.median(n4):>10.3f} "
          f"{ratios[-1]:>7.2f} "
          f"{np.median(ge):>10.2f} {remainder_bound_square(p, 1.0):>10.3g} "
          f"{remainder_bound_quartic(p, 1.0):>10.3g}")

print()
print("The measured quartic/square remainder ratio grows with order:",
      " -> ".join(f"{r:.2f}" for r in ratios))
print("Note the printed bounds move the opposite way; evaluated exactly, the")
print("claimed prefactor ordering already fails at p=1 (3 vs 0.3125), which")
print("is why the empirical ratio above is the quantity to trust.")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot((2, 3, 4, 5), ratios, "o-")
    ax.set_xlabel("polynomial order p")
    ax.set_ylabel("median |R f4| / |R f2|")
    ax.set_title("Quartic vs square flux interpolation remainder")
    fig.tight_layout()
    fig.savefig("remainder_growth.png", dpi=150)
    print("wrote remainder_growth.png")
except ImportError:
    pass
