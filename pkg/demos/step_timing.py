"""Wall-clock cost of one RK44 step per storage scheme.

Times the full residual+update step on the 8^3 / p=4 profiling mesh with
the four storage schemes interleaved.  D pays the most conversions and is
reliably slowest; B and C land within a few percent of each other (their
ordering flips run to run).  On CPU the primitive scheme A comes out
fastest -- its per-stage conversions are cheaper here than B's pathway
conversions, the reverse of what conversion-kernel counting gives on a
GPU (see README).
"""

import time

import numpy as np

from fluxrec import TgvConfig, field_from_primitives, residual_3d, tgv_init
from fluxrec.march import cfl_time_step, rk44_step
from fluxrec.refelem import build_reference_ops

STEPS = 15
cfg = TgvConfig(scheme="A", elements=(8, 8, 8), p=4)
gas = cfg.gas_model()
ops = build_reference_ops(cfg.p)
base = tgv_init(cfg, gas, ops)
prim = base.to_primitive(gas)
dt = cfl_time_step(base, gas, 0.2)

fields = {s: field_from_primitives(prim, s, cfg.p, cfg.mesh(), gas) for s in "ABCD"}
rhs = lambda f: residual_3d(f, gas, ops, viscous=True)
for s in "ABCD":
    for _ in range(2):
        rk44_step(fields[s], dt, rhs, gas)   # warm caches and kernels

times = {s: [] for s in "ABCD"}
for _ in range(STEPS):
    for s in "ABCD":
        tic = time.perf_counter()
        rk44_step(fields[s], dt, rhs, gas)
        times[s].append(time.perf_counter() - tic)

mean_ms = {s: 1e3 * np.mean(times[s]) for s in "ABCD"}
print("scheme  mean_ms  saving_vs_A_pct")
for s in "ABCD":
    saving = (mean_ms["A"] - mean_ms[s]) / mean_ms["A"] * 100
    print(f"{s}       {mean_ms[s]:7.1f}  {saving:+6.1f}")
