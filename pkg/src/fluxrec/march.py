"""Explicit RK44 time integration with fixed step and per-step timing.

The classical four-stage tableau advances the conserved variables; fields
whose storage scheme is not the conserved set are converted pointwise at
each stage boundary, which is exactly where those schemes pay their
conversion cost.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import gas as gaslib
from .gas import GasModel, NonphysicalStateError
from .solver import SolutionField

PRECISION_DTYPES = {"fp32": np.float32, "fp64": np.float64}


@dataclass
class MarchConfig:
    dt: float
    t_end: float
    precision: str = "fp64"
    sample_every: int = 1

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")
        if self.t_end < 0.0:
            raise ValueError("t_end must be >= 0")
        if self.sample_every < 1:
            raise ValueError("sample_every must be >= 1")
        if self.precision not in PRECISION_DTYPES:
            raise ValueError(f"precision must be one of {sorted(PRECISION_DTYPES)}")

    @property
    def dtype(self):
        return PRECISION_DTYPES[self.precision]


@dataclass
class DiagnosticsSeries:
    """Sampled time series of run diagnostics.

    ``step_ms`` holds the mean wall time per RK44 step since the previous
    sample.  ``eps1`` is derived from the kinetic-energy samples by central
    differences.  All reductions are accumulated in binary64 regardless of
    the working precision.
    """

    t: np.ndarray
    ek: np.ndarray
    eps2: np.ndarray
    err_rho: np.ndarray
    step_ms: np.ndarray
    diverged: bool = False

    CSV_HEADER = "t,Ek,eps1,eps2,err_rho,step_ms"

    @property
    def eps1(self) -> np.ndarray:
        t, ek = self.t, self.ek
        out = np.full_like(ek, np.nan)
        if len(t) >= 2 and np.isfinite(ek).all():
            out[1:-1] = -(ek[2:] - ek[:-2]) / (t[2:] - t[:-2])
            out[0] = -(ek[1] - ek[0]) / (t[1] - t[0])
            out[-1] = -(ek[-1] - ek[-2]) / (t[-1] - t[-2])
        return out

    def to_csv(self, path) -> None:
        eps1 = self.eps1
        with open(path, "w") as fh:
            fh.write(self.CSV_HEADER + "\n")
            for i in range(len(self.t)):
                row = (self.t[i], self.ek[i], eps1[i], self.eps2[i],
                       self.err_rho[i], self.step_ms[i])
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")

    @classmethod
    def from_rows(cls, rows: list[dict], diverged: bool = False) -> "DiagnosticsSeries":
        def col(key):
            return np.array([float(r.get(key, np.nan)) for r in rows])
        return cls(t=col("t"), ek=col("Ek"), eps2=col("eps2"),
                   err_rho=col("err_rho"), step_ms=col("step_ms"),
                   diverged=diverged)


def _rk44_arrays(y, dt, rhs):
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * dt * k1)
    k3 = rhs(y + 0.5 * dt * k2)
    k4 = rhs(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk44_step(state, dt: float, rhs, gas: GasModel | None = None):
    """One classical RK4 step.

    For a SolutionField, ``rhs(field)`` must return the conserved-variable
    time derivative; updates happen in conserved space and land back in
    the field's stored set.  Only the stored set persists between stages;
    schemes that do not store the conserved variables rebuild them at each
    stage boundary (state memory holds a single variable set).  Plain
    arrays/scalars take ``rhs(y)`` directly.
    """
    if not isinstance(state, SolutionField):
        return _rk44_arrays(state, dt, rhs)
    if gas is None:
        raise ValueError("rk44_step on a SolutionField needs the gas model")

    def stage(update):
        return state.from_conserved(state.to_conserved(gas) + update, gas)

    k1 = rhs(state)
    k2 = rhs(stage((0.5 * dt) * k1))
    k3 = rhs(stage((0.5 * dt) * k2))
    k4 = rhs(stage(dt * k3))
    return stage((dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))


def cfl_time_step(field: SolutionField, gas: GasModel, cfl: float = 0.4) -> float:
    """Fixed step from the initial field: cfl * h / ((2p+1) max signal speed)."""
    prim = np.asarray(field.to_primitive(gas), dtype=np.float64)
    a = gaslib.sound_speed(prim[0], prim[4], gas)
    smax = max(float(np.max(np.abs(prim[c]) + a)) for c in (1, 2, 3))
    h_min = min(field.mesh.spacing)
    return cfl * h_min / ((2 * field.p + 1) * smax)


def march(field: SolutionField, config: MarchConfig, residual_fn,
          diagnostics_fn, gas: GasModel) -> DiagnosticsSeries:
    """Advance to t_end with fixed dt, sampling diagnostics along the way.

    A nonphysical state or non-finite data aborts the run cleanly; the
    partial series comes back flagged as diverged.
    """
    field = field.astype(config.dtype)
    dt = config.dt
    n_steps = max(0, math.ceil(config.t_end / dt - 1e-9))

    rows = [dict(t=0.0, step_ms=np.nan, **diagnostics_fn(field, 0.0))]
    diverged = False
    wall_acc = 0.0
    steps_acc = 0

    t = 0.0
    for step in range(1, n_steps + 1):
        step_dt = min(dt, config.t_end - t)
        try:
            tic = time.perf_counter()
            field = rk44_step(field, step_dt, residual_fn, gas)
            wall_acc += time.perf_counter() - tic
            steps_acc += 1
            if not np.isfinite(field.data).all():
                raise NonphysicalStateError("non-finite state")
        except NonphysicalStateError:
            diverged = True
            break
        t += step_dt
        if step % config.sample_every == 0 or step == n_steps:
            row = dict(t=t, step_ms=1e3 * wall_acc / steps_acc)
            wall_acc, steps_acc = 0.0, 0
            row.update(diagnostics_fn(field, t))
            rows.append(row)
    return DiagnosticsSeries.from_rows(rows, diverged=diverged)
