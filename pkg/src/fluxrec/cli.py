"""Command-line runner: config parsing, case orchestration, CSV and timing output.

Configuration comes from a TOML file, with command-line flags taking
precedence over file values.  Three cases exist: ``icv`` (convecting
vortex, density-error benchmark), ``tgv`` (Taylor-Green vortex), and
``remainder`` (static flux-interpolation remainder sweep).

Exit status: 0 completed, 1 runtime error, 2 usage error, 3 diverged.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_DIVERGED = 3

CASES = ("icv", "tgv", "remainder")
SCHEMES = ("A", "B", "C", "D")
PRECISIONS = ("fp32", "fp64")


@dataclass
class RunConfig:
    case: str = "tgv"
    scheme: str = "A"
    p: int = 4
    elements: tuple = (4, 4, 4)
    re: float = 400.0
    ma: float = 0.08
    beta: float = 5.0
    precision: str = "fp64"
    t_end: float | None = None
    dt: float | None = None
    cfl: float = 0.2
    sample_every: int = 10
    output: str = "run.csv"
    profile: bool = False
    profile_steps: int = 20
    seed: int = 2023
    orders: tuple = (2, 3, 4, 5)
    samples: int = 100
    workers: int | None = None

    def validate(self) -> None:
        if self.case not in CASES:
            raise ValueError(f"case must be one of {CASES}, got {self.case!r}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if not (0 <= self.p <= 10):
            raise ValueError(f"p must be in [0, 10], got {self.p}")
        if self.precision not in PRECISIONS:
            raise ValueError(f"precision must be one of {PRECISIONS}, got {self.precision!r}")
        if len(self.elements) != 3 or any(int(n) < 1 for n in self.elements):
            raise ValueError(f"elements must be three counts >= 1, got {self.elements}")
        if self.re <= 0 or self.ma <= 0:
            raise ValueError("re and ma must be positive")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.cfl <= 0:
            raise ValueError("cfl must be positive")
        if self.dt is not None and self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.t_end is not None and self.t_end < 0:
            raise ValueError("tend must be >= 0")
        if self.sample_every < 1:
            raise ValueError("sample_every must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if any(not (1 <= int(p) <= 10) for p in self.orders):
            raise ValueError("orders must lie in [1, 10]")


_KEY_ALIASES = {"tend": "t_end"}


def parse_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Build a validated RunConfig from a TOML file plus flag overrides."""
    values: dict = {}
    if path:
        try:
            import tomllib  # python >= 3.11
        except ModuleNotFoundError:
            import tomli as tomllib
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
        valid = {f.name for f in fields(RunConfig)} | set(_KEY_ALIASES)
        unknown = set(raw) - valid
        if unknown:
            raise ValueError(
                f"unknown config keys {sorted(unknown)}; valid keys: {sorted(valid)}")
        values.update({_KEY_ALIASES.get(k, k): v for k, v in raw.items()})
    for key, val in (overrides or {}).items():
        if val is not None:
            values[key] = val
    if "elements" in values:
        values["elements"] = tuple(int(n) for n in values["elements"])
    if "orders" in values:
        values["orders"] = tuple(int(n) for n in values["orders"])
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxrec",
        description="High-order flux reconstruction runs with selectable variable storage.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a configured case")
    run.add_argument("--config", help="TOML config file")
    run.add_argument("--case", choices=CASES)
    run.add_argument("--scheme", choices=SCHEMES)
    run.add_argument("--p", type=int)
    run.add_argument("--elements", type=lambda s: tuple(int(x) for x in s.split(",")),
                     metavar="NX,NY,NZ")
    run.add_argument("--re", type=float)
    run.add_argument("--ma", type=float)
    run.add_argument("--beta", type=float)
    run.add_argument("--precision", choices=PRECISIONS)
    run.add_argument("--tend", dest="t_end", type=float)
    run.add_argument("--dt", type=float)
    run.add_argument("--cfl", type=float)
    run.add_argument("--sample-every", dest="sample_every", type=int)
    run.add_argument("--output")
    run.add_argument("--profile", action="store_true", default=None)
    run.add_argument("--profile-steps", dest="profile_steps", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--samples", type=int)
    run.add_argument("--workers", type=int)

    rem = sub.add_parser("remainder", help="flux interpolation-remainder sweep (CSV)")
    rem.add_argument("--config", help="TOML config file")
    rem.add_argument("--output")
    rem.add_argument("--seed", type=int)
    rem.add_argument("--samples", type=int)
    rem.add_argument("--p", type=int)
    return parser


def run_remainder(cfg: RunConfig) -> int:
    """Median remainder norms over seeded random solution series, as CSV."""
    import numpy as np

    from .aliasing import (LegendreSeries, flux_remainder_study,
                           remainder_bound_quartic, remainder_bound_square)
    from .refelem import gauss_legendre_rule

    rng = np.random.default_rng(cfg.seed)
    rows = []
    for p in cfg.orders:
        nodes = gauss_legendre_rule(p).points
        reports = {"f2": [], "f4": []}
        for _ in range(cfg.samples):
            series = LegendreSeries(rng.uniform(-1.0, 1.0, p + 1))
            for variant in ("f2", "f4"):
                reports[variant].append(flux_remainder_study(series, variant, nodes))
        for variant in ("f2", "f4"):
            rep = reports[variant]
            rows.append((
                p, variant,
                float(np.median([r.norm_interp for r in rep])),
                float(np.median([r.norm_grad for r in rep])),
                float(np.median([r.edge_left for r in rep])),
                float(np.median([r.edge_right for r in rep])),
                remainder_bound_square(p, 1.0),
                remainder_bound_quartic(p, 1.0),
            ))
    with open(cfg.output, "w") as fh:
        fh.write("p,variant,normInterp,normGrad,edgeL,edgeR,bound_r2,bound_r4\n")
        for row in rows:
            fh.write(",".join(str(v) if isinstance(v, (int, str)) else f"{v:.17g}"
                              for v in row) + "\n")
    print(f"wrote {cfg.output} ({len(rows)} rows)")
    return EXIT_OK


def run_profile(cfg: RunConfig) -> int:
    """Per-scheme mean RK44 step wall time on the configured case, as a table."""
    import time

    import numpy as np

    from .cases import TgvConfig, tgv_init
    from .march import cfl_time_step, rk44_step
    from .refelem import build_reference_ops
    from .solver import field_from_primitives, residual_3d

    base_cfg = TgvConfig(re=cfg.re, ma=cfg.ma, elements=cfg.elements, p=cfg.p,
                         scheme="A", precision=cfg.precision)
    gas = base_cfg.gas_model()
    ops = build_reference_ops(cfg.p)
    base = tgv_init(base_cfg, gas, ops)
    prim = base.to_primitive(gas)
    dt = cfg.dt or cfl_time_step(base, gas, cfg.cfl)
    dtype = np.float32 if cfg.precision == "fp32" else np.float64

    fields_by_scheme = {
        s: field_from_primitives(prim, s, cfg.p, base_cfg.mesh(), gas, dtype)
        for s in SCHEMES}
    rhs = lambda f: residual_3d(f, gas, ops, viscous=True)

    for s in SCHEMES:  # warm-up: jit compilation and caches
        for _ in range(2):
            rk44_step(fields_by_scheme[s], dt, rhs, gas)

    times = {s: [] for s in SCHEMES}
    for _ in range(cfg.profile_steps):
        for s in SCHEMES:
            tic = time.perf_counter()
            rk44_step(fields_by_scheme[s], dt, rhs, gas)
            times[s].append(time.perf_counter() - tic)

    mean_ms = {s: 1e3 * float(np.mean(times[s])) for s in SCHEMES}
    lines = ["scheme  mean_ms  saving_pct"]
    for s in SCHEMES:
        saving = (mean_ms["A"] - mean_ms[s]) / mean_ms["A"] * 100.0
        lines.append(f"{s}       {mean_ms[s]:8.3f}  {saving:+.1f}")
    report = "\n".join(lines)
    print(report)
    with open(cfg.output, "w") as fh:
        fh.write(report + "\n")
    return EXIT_OK


def run(cfg: RunConfig) -> int:
    """Execute one configured case; returns the process exit status."""
    if cfg.case == "remainder":
        return run_remainder(cfg)
    if cfg.profile:
        return run_profile(cfg)

    from .cases import IcvConfig, TgvConfig, run_icv, run_tgv

    if cfg.case == "icv":
        case_cfg = IcvConfig(beta=cfg.beta, elements=cfg.elements, p=cfg.p,
                             scheme=cfg.scheme, precision=cfg.precision)
        series = run_icv(case_cfg, t_end=cfg.t_end, cfl=cfg.cfl, dt=cfg.dt,
                         sample_every=cfg.sample_every)
    else:
        case_cfg = TgvConfig(re=cfg.re, ma=cfg.ma, elements=cfg.elements, p=cfg.p,
                             scheme=cfg.scheme, precision=cfg.precision)
        series = run_tgv(case_cfg, t_end=cfg.t_end if cfg.t_end is not None else 20.0,
                         cfl=cfg.cfl, dt=cfg.dt, sample_every=cfg.sample_every)
    series.to_csv(cfg.output)
    status = EXIT_DIVERGED if series.diverged else EXIT_OK
    print(f"wrote {cfg.output} ({len(series.t)} samples)"
          + (" [diverged]" if series.diverged else ""))
    return status


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    overrides = {k: v for k, v in vars(args).items()
                 if k not in ("command", "config")}
    if args.command == "remainder":
        overrides["case"] = "remainder"
        overrides.setdefault("output", None)
        if overrides.get("output") is None:
            overrides["output"] = "remainder.csv"
        if overrides.get("p") is not None:
            overrides["orders"] = (overrides.pop("p"),)
        else:
            overrides.pop("p", None)
    try:
        cfg = parse_config(args.config, overrides)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE

    if cfg.workers is not None:
        # hint for BLAS pools; honored by libraries loaded afterwards
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, str(cfg.workers))

    try:
        return run(cfg)
    except Exception as err:  # pragma: no cover - top-level guard
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
