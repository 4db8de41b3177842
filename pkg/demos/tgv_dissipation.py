"""Taylor-Green vortex dissipation with different storage schemes.

Runs the Re=400, Ma=0.08 case at p=4 on 4^3 elements (20^3 degrees of
freedom -- deliberately marginal implicit LES) and tracks the
enstrophy-based dissipation rate.  The two conserved-storage variants run
through transition and produce near-identical curves; at this resolution
the primitive-storage scheme's larger aliasing destabilizes the run just
after the dissipation peak, which is the failure mode the storage choice
is protecting against.
"""

import numpy as np

from fluxrec import TgvConfig, run_tgv

T_END = 20.0
series = {}
for scheme in "BCA":
    cfg = TgvConfig(scheme=scheme)
    s = run_tgv(cfg, t_end=T_END, cfl=0.2)
    series[scheme] = s
    peak = np.nanmax(s.eps2)
    t_peak = s.t[np.nanargmax(s.eps2)]
    status = f"diverged at t={s.t[-1]:.1f}" if s.diverged else "completed"
    print(f"scheme {scheme}: {status}; peak enstrophy dissipation "
          f"{peak:.4f} at t={t_peak:.1f}")

b, c = series["B"], series["C"]
mask = b.t <= 10.0
gap = np.max(np.abs(b.eps2[mask] - c.eps2[mask])) / np.max(np.abs(b.eps2[mask]))
print(f"\ngradient pathways B vs C agree to {100*gap:.3f}% over t <= 10")
print("(direct differentiation of converted primitives vs product rule)")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 3.6))
    for scheme, s in series.items():
        ax.plot(s.t, s.eps2, label=f"scheme {scheme}"
                + (" (diverged)" if s.diverged else ""))
    ax.set_xlabel("t")
    ax.set_ylabel("enstrophy-based dissipation")
    ax.set_xlim(0, T_END)
    ax.set_ylim(0, 0.03)
    ax.legend()
    fig.tight_layout()
    fig.savefig("tgv_dissipation.png", dpi=150)
    print("wrote tgv_dissipation.png")
except ImportError:
    pass
