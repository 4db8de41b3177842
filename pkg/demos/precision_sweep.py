"""Working precision: what fp32 storage costs, and where.

Repeats the early Taylor-Green evolution with all state held and updated
in fp32 versus fp64, for primitive and conserved storage at two Mach
numbers.  The precision gap in the dissipation diagnostic is largest at
low Mach number, where the pressure and energy fields sit on large
near-constant offsets that eat the fp32 mantissa.
"""

import numpy as np

from fluxrec import TgvConfig, run_tgv

T_END = 5.0
print(f"{'scheme':>6} {'Ma':>5} {'rel Linf eps2 gap fp32 vs fp64':>32}")
gaps = {}
for ma in (0.08, 0.31):
    for scheme in "AB":
        runs = {}
        for prec in ("fp64", "fp32"):
            cfg = TgvConfig(scheme=scheme, ma=ma, precision=prec)
            runs[prec] = run_tgv(cfg, t_end=T_END, cfl=0.2)
            assert not runs[prec].diverged
        gap = np.max(np.abs(runs["fp32"].eps2 - runs["fp64"].eps2)) \
            / np.max(np.abs(runs["fp64"].eps2))
        gaps[(scheme, ma)] = gap
        print(f"{scheme:>6} {ma:>5} {gap:>32.3e}")

print()
for scheme in "AB":
    lo, hi = gaps[(scheme, 0.08)], gaps[(scheme, 0.31)]
    print(f"scheme {scheme}: low-Mach gap is {lo/hi:.1f}x the high-Mach gap")
print("\nfp32 is usable for this flow either way; the sensitivity lives at"
      "\nlow Mach number, and is strongest for primitive storage, whose"
      "\nstage conversions re-round the large energy offsets every step.")
