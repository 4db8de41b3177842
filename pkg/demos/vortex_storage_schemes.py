"""What the stored variable set does to a convecting vortex.

The isentropic vortex is an exact Euler solution, so the density error is
directly measurable.  Advect it for one period at p=4 with three storage
choices: primitives (A), conserved variables (B), and momenta+pressure
(D).  Primitive storage dissipates hardest and tracks the vortex best;
the conserved variants keep more kinetic energy but let the error grow
faster.
"""

import numpy as np

from fluxrec import IcvConfig, run_icv

series = {}
for scheme in "ABD":
    cfg = IcvConfig(scheme=scheme)  # 8x8x1 elements, p=4, one period = 10
    series[scheme] = run_icv(cfg)
    s = series[scheme]
    print(f"scheme {scheme}: final density error {s.err_rho[-1]:.4e}, "
          f"kinetic energy {s.ek[0]:.9f} -> {s.ek[-1]:.9f}")

err = {s: series[s].err_rho[-1] for s in "ABD"}
ek = {s: series[s].ek[-1] for s in "ABD"}
print()
print("error ordering     A <= D <= B :", err["A"] <= err["D"] <= err["B"])
print("energy retention   B, D >= A   :", ek["B"] >= ek["A"] and ek["D"] >= ek["A"])

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
    for scheme, s in series.items():
        ax1.semilogy(s.t, np.maximum(s.err_rho, 1e-16), label=f"scheme {scheme}")
        ax2.plot(s.t, s.ek, label=f"scheme {scheme}")
    ax1.set_xlabel("t"); ax1.set_ylabel("mean |density error|"); ax1.legend()
    ax2.set_xlabel("t"); ax2.set_ylabel("kinetic energy"); ax2.legend()
    fig.tight_layout()
    fig.savefig("vortex_storage_schemes.png", dpi=150)
    print("wrote vortex_storage_schemes.png")
except ImportError:
    pass
