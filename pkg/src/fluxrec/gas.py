"""Perfect-gas thermodynamics, variable-set conversions, and flux assembly.

State arrays carry the component axis first and broadcast over anything
behind it, so the same routines serve a single state, a face of traces, or
a whole field.  Component orders:

* primitive  (rho, u, v, w, p)
* conserved  (rho, rho*u, rho*v, rho*w, E)
* mixed      (rho, rho*u, rho*v, rho*w, p)   -- momenta with pressure

Each inviscid flux routine implements the algebra of its own variable set
(the division-based forms for conserved/mixed input); pointwise the three
routes agree to rounding, and they only part ways once a polynomial is
fitted through their outputs.

Gradient blocks are arrays of shape (5, 3, ...): rows (rho, u, v, w, T),
columns (x, y, z).  The temperature row is always a genuine temperature
gradient, derived from T = p / (rho R) and E = rho*cv*T + rho*|V|^2/2.

The heavy lifting is done by fused single-pass kernels; scalar constants
are cast to the array dtype first, so float32 runs stay float32
throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels as _k

RHO, MOMX, MOMY, MOMZ, ENER = range(5)  # conserved component names
_, VELX, VELY, VELZ, PRES = range(5)    # primitive component names


class NonphysicalStateError(RuntimeError):
    """Raised when density or pressure is not positive.

    ``where`` holds the index of the first offending entry in whatever
    array shape the caller passed (component axis removed).
    """

    def __init__(self, message: str, where=None):
        super().__init__(message)
        self.where = where


@dataclass(frozen=True)
class GasModel:
    """Calorically perfect gas; ``kappa`` is consistent with Pr by construction."""

    gamma: float
    R: float
    mu: float
    prandtl: float

    def __post_init__(self):
        if self.gamma <= 1.0:
            raise ValueError("gamma must exceed 1")
        if self.mu < 0.0:
            raise ValueError("viscosity must be >= 0")
        if self.prandtl <= 0.0:
            raise ValueError("Prandtl number must be positive")

    @property
    def cv(self) -> float:
        return self.R / (self.gamma - 1.0)

    @property
    def cp(self) -> float:
        return self.gamma * self.R / (self.gamma - 1.0)

    @property
    def kappa(self) -> float:
        return self.mu * self.gamma * self.R / (self.prandtl * (self.gamma - 1.0))


def _as_components(q) -> np.ndarray:
    arr = np.asarray(q)
    if arr.dtype not in (np.float32, np.float64):
        arr = arr.astype(np.float64)
    return arr


def _flat(arr: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(arr).reshape(arr.shape[0], -1)


def _first_bad(mask: np.ndarray):
    idx = np.argwhere(mask)
    return tuple(idx[0]) if idx.size else None


def _require_positive(arr: np.ndarray, name: str):
    if not (np.min(arr) > 0.0):
        where = _first_bad(~(arr > 0.0))
        raise NonphysicalStateError(f"non-positive {name} at index {where}", where)


def _raise_at(flat_index: int, shape, what: str):
    where = np.unravel_index(flat_index, shape[1:]) if len(shape) > 1 else ()
    raise NonphysicalStateError(
        f"non-positive {what} at index {tuple(int(k) for k in where)}",
        tuple(int(k) for k in where))


def sound_speed(rho, p, gas: GasModel):
    return np.sqrt(gas.gamma * p / rho)


def prim_to_cons(q, gas: GasModel):
    q = _as_components(q)
    flat = _flat(q)
    out = np.empty_like(flat)
    dt = flat.dtype.type
    _k.prim_to_cons(flat, dt(1.0 / (gas.gamma - 1.0)), dt(0.5), out)
    return out.reshape(q.shape)


def cons_to_prim(q, gas: GasModel):
    q = _as_components(q)
    flat = _flat(q)
    out = np.empty_like(flat)
    dt = flat.dtype.type
    bad = _k.cons_to_prim(flat, dt(gas.gamma - 1.0), dt(0.5), dt(1.0), out)
    if bad >= 0:
        _raise_at(bad, q.shape, "density or pressure")
    return out.reshape(q.shape)


def mixed_to_cons(q, gas: GasModel):
    q = _as_components(q)
    flat = _flat(q)
    out = np.empty_like(flat)
    dt = flat.dtype.type
    bad = _k.mixed_to_cons(flat, dt(1.0 / (gas.gamma - 1.0)), dt(0.5), dt(1.0), out)
    if bad >= 0:
        _raise_at(bad, q.shape, "density")
    return out.reshape(q.shape)


def cons_to_mixed(q, gas: GasModel):
    q = _as_components(q)
    flat = _flat(q)
    out = np.empty_like(flat)
    dt = flat.dtype.type
    bad = _k.cons_to_mixed(flat, dt(gas.gamma - 1.0), dt(0.5), dt(1.0), out)
    if bad >= 0:
        _raise_at(bad, q.shape, "density or pressure")
    return out.reshape(q.shape)


def prim_to_mixed(q, gas: GasModel):
    q = _as_components(q)
    out = np.empty_like(q)
    out[RHO] = q[RHO]
    out[MOMX] = q[RHO] * q[VELX]
    out[MOMY] = q[RHO] * q[VELY]
    out[MOMZ] = q[RHO] * q[VELZ]
    out[PRES] = q[PRES]
    return out


def mixed_to_prim(q, gas: GasModel):
    q = _as_components(q)
    flat = _flat(q)
    out = np.empty_like(flat)
    bad = _k.mixed_to_prim(flat, flat.dtype.type(1.0), out)
    if bad >= 0:
        _raise_at(bad, q.shape, "density or pressure")
    return out.reshape(q.shape)


def inviscid_flux_prim(q, gas: GasModel):
    """Flux columns (f, g, h) built with primitive-variable algebra."""
    q = _as_components(q)
    flat = _flat(q)
    f, g, h = (np.empty_like(flat) for _ in range(3))
    dt = flat.dtype.type
    _k.flux3_prim(flat, dt(gas.gamma / (gas.gamma - 1.0)), dt(0.5), f, g, h)
    return f.reshape(q.shape), g.reshape(q.shape), h.reshape(q.shape)


def inviscid_flux_cons(q, gas: GasModel):
    """Flux columns (f, g, h) in the division-based conserved-variable form."""
    q = _as_components(q)
    flat = _flat(q)
    f, g, h = (np.empty_like(flat) for _ in range(3))
    dt = flat.dtype.type
    bad = _k.flux3_cons(flat, dt(gas.gamma), dt(gas.gamma - 1.0), dt(0.5), dt(1.0),
                        f, g, h)
    if bad >= 0:
        _raise_at(bad, q.shape, "density")
    return f.reshape(q.shape), g.reshape(q.shape), h.reshape(q.shape)


def inviscid_flux_mixed(q, gas: GasModel):
    """Flux columns (f, g, h) from momenta plus pressure."""
    q = _as_components(q)
    flat = _flat(q)
    f, g, h = (np.empty_like(flat) for _ in range(3))
    dt = flat.dtype.type
    bad = _k.flux3_mixed(flat, dt(gas.gamma / (gas.gamma - 1.0)), dt(0.5), dt(1.0),
                         f, g, h)
    if bad >= 0:
        _raise_at(bad, q.shape, "density")
    return f.reshape(q.shape), g.reshape(q.shape), h.reshape(q.shape)


def viscous_flux(prim, grads, gas: GasModel):
    """Viscous flux columns (f, g, h) with zero bulk viscosity.

    ``grads`` is a (5, 3, ...) gradient block with rows (rho, u, v, w, T);
    only the velocity components of ``prim`` are read.
    """
    prim = _as_components(prim)
    grads = np.asarray(grads, dtype=prim.dtype)
    vel = _flat(prim)[1:4]
    gflat = np.ascontiguousarray(grads).reshape(5, 3, -1)
    f, g, h = (np.empty((5, vel.shape[1]), dtype=prim.dtype) for _ in range(3))
    dt = prim.dtype.type
    _k.viscous_columns(vel, gflat, dt(gas.mu), dt(gas.kappa),
                       dt(4.0 / 3.0), dt(2.0 / 3.0), f, g, h)
    shape = (5,) + prim.shape[1:]
    return f.reshape(shape), g.reshape(shape), h.reshape(shape)


def temperature_gradient_rows(rho, p, grad_rho, grad_p, gas: GasModel):
    """Gradient of T = p / (rho R) from density/pressure values and gradients."""
    return (grad_p / rho - p * grad_rho / rho**2) / gas.R


def grad_from_primitives(prim, differentiate: Callable, gas: GasModel):
    """Gradient block by differentiating primitive nodal data directly.

    ``differentiate`` maps one nodal scalar array to its (3, ...) spatial
    gradient.  Rows rho, u, v, w pass straight through; the pressure
    gradient is converted so the last row is the temperature gradient.
    """
    prim = _as_components(prim)
    _require_positive(prim[RHO], "density")
    grads = np.stack([np.asarray(differentiate(prim[c])) for c in range(5)])
    grads[4] = temperature_gradient_rows(prim[RHO], prim[PRES], grads[0], grads[4], gas)
    return grads


def grad_from_conserved_product_rule(cons, cons_grads, gas: GasModel):
    """Gradient block from conserved values and conserved gradients.

    The product rule converts momentum gradients to velocity gradients,
    and the energy gradient to a temperature gradient, without ever
    differentiating a converted field.
    """
    grads, _ = product_rule_with_velocities(cons, np.array(cons_grads, copy=True),
                                            gas)
    return grads


def product_rule_with_velocities(cons, cons_grads, gas: GasModel):
    """Product-rule gradient block plus the nodal velocities, fused passes.

    The conserved gradients are consumed: the conversion happens in place.
    """
    cons = _as_components(cons)
    cons_grads = np.asarray(cons_grads, dtype=cons.dtype)
    cflat = _flat(cons)
    grads = np.ascontiguousarray(cons_grads).reshape(5, 3, -1)
    vel = np.empty((3, cflat.shape[1]), dtype=cons.dtype)
    dt = cons.dtype.type
    bad = _k.product_rule_block(cflat, grads, dt(1.0 / gas.cv), dt(1.0), vel)
    if bad >= 0:
        _raise_at(bad, cons.shape, "density")
    return grads.reshape(cons_grads.shape), vel.reshape((3,) + cons.shape[1:])