"""Flux reconstruction spatial discretization on periodic Cartesian grids.

1D scalar conservation laws and the 3D compressible Euler/Navier-Stokes
equations, discretized element-wise with tensor-product Gauss-Legendre
nodes.  The conserved equation set is always what is evolved; a storage
scheme decides which variable set is held at the nodes, which algebraic
route builds fluxes from it, and which pathway produces the gradients for
the viscous terms:

* ``A`` stores primitives and differentiates them directly.
* ``B`` stores conserved variables and differentiates converted primitives.
* ``C`` stores conserved variables and applies the product rule to their
  gradients.
* ``D`` stores momenta plus pressure.

Interface data is always produced by extrapolating the *stored* variables
to the faces and converting there; that placement is what makes the
storage choice visible to the discretization at all.

Field data layout: ``(5, nx, ny, nz, n, n, n)`` with ``n = p + 1`` nodes
per direction; node axes follow element axes in x, y, z order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import _kernels as _kern
from . import gas as gaslib
from .gas import GasModel, NonphysicalStateError
from .refelem import ReferenceOps

# node axes are the trailing three dims (i, j, k) behind (comp, ex, ey, ez)
_NODE_AXIS = (4, 5, 6)


@dataclass(frozen=True)
class Mesh:
    """Uniform periodic hexahedral grid."""

    nx: int
    ny: int
    nz: int
    lengths: tuple[float, float, float]
    origin: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if min(self.nx, self.ny, self.nz) < 1:
            raise ValueError("need at least one element per axis")
        if min(self.lengths) <= 0.0:
            raise ValueError("domain lengths must be positive")

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.nx, self.ny, self.nz)

    @property
    def spacing(self) -> tuple[float, float, float]:
        return (self.lengths[0] / self.nx,
                self.lengths[1] / self.ny,
                self.lengths[2] / self.nz)

    @property
    def volume(self) -> float:
        return self.lengths[0] * self.lengths[1] * self.lengths[2]

    def node_coords(self, ops: ReferenceOps) -> np.ndarray:
        """Physical solution-point coordinates, shape (3, nx, ny, nz, n, n, n)."""
        n = ops.p + 1
        h = self.spacing
        out = np.empty((3, self.nx, self.ny, self.nz, n, n, n))
        for a, (count, ha, x0) in enumerate(zip(self.shape, h, self.origin)):
            centers = x0 + ha * (np.arange(count) + 0.5)
            local = 0.5 * ha * ops.rule.points
            coords = centers[:, None] + local[None, :]      # (count, n)
            elem_ax = 1 + a
            node_ax = 4 + a
            shape = [1] * 7
            shape[elem_ax] = count
            shape[node_ax] = n
            out[a] = coords.reshape(shape[1:])
        return out


class StorageScheme(Enum):
    """Which variable set lives at the solution points."""

    A = "A"  # primitives
    B = "B"  # conserved, gradients via converted primitives
    C = "C"  # conserved, gradients via product rule
    D = "D"  # momenta + pressure

    @property
    def stored_kind(self) -> str:
        return {"A": "primitive", "B": "conserved",
                "C": "conserved", "D": "mixed"}[self.value]

    @property
    def uses_product_rule(self) -> bool:
        return self is StorageScheme.C


def _as_scheme(scheme) -> StorageScheme:
    if isinstance(scheme, StorageScheme):
        return scheme
    return StorageScheme(str(scheme).upper())


@dataclass
class SolutionField:
    """Nodal state in the storage scheme's variable set, one dtype throughout."""

    scheme: StorageScheme
    p: int
    mesh: Mesh
    data: np.ndarray  # (5, nx, ny, nz, n, n, n)

    def __post_init__(self):
        self.scheme = _as_scheme(self.scheme)
        n = self.p + 1
        want = (5, *self.mesh.shape, n, n, n)
        if self.data.shape != want:
            raise ValueError(f"field data must have shape {want}, got {self.data.shape}")

    @property
    def dtype(self):
        return self.data.dtype

    def with_data(self, data: np.ndarray) -> "SolutionField":
        return replace(self, data=data)

    def astype(self, dtype) -> "SolutionField":
        return self.with_data(self.data.astype(dtype, copy=False))

    def to_conserved(self, gas: GasModel) -> np.ndarray:
        kind = self.scheme.stored_kind
        if kind == "primitive":
            return gaslib.prim_to_cons(self.data, gas)
        if kind == "mixed":
            return gaslib.mixed_to_cons(self.data, gas)
        return self.data

    def from_conserved(self, qc: np.ndarray, gas: GasModel) -> "SolutionField":
        kind = self.scheme.stored_kind
        if kind == "primitive":
            return self.with_data(gaslib.cons_to_prim(qc, gas))
        if kind == "mixed":
            return self.with_data(gaslib.cons_to_mixed(qc, gas))
        return self.with_data(qc)

    def to_primitive(self, gas: GasModel) -> np.ndarray:
        kind = self.scheme.stored_kind
        if kind == "primitive":
            return self.data
        if kind == "mixed":
            return gaslib.mixed_to_prim(self.data, gas)
        return gaslib.cons_to_prim(self.data, gas)


def field_from_primitives(prim: np.ndarray, scheme, p: int, mesh: Mesh,
                          gas: GasModel, dtype=np.float64) -> SolutionField:
    """Build a field by converting nodal primitive data to the stored set."""
    scheme = _as_scheme(scheme)
    kind = scheme.stored_kind
    if kind == "primitive":
        stored = np.asarray(prim)
    elif kind == "mixed":
        stored = gaslib.prim_to_mixed(prim, gas)
    else:
        stored = gaslib.prim_to_cons(prim, gas)
    return SolutionField(scheme, p, mesh, stored.astype(dtype, copy=False))


def uniform_field(state_prim, scheme, p: int, mesh: Mesh, gas: GasModel,
                  dtype=np.float64) -> SolutionField:
    n = p + 1
    prim = np.empty((5, *mesh.shape, n, n, n))
    for c in range(5):
        prim[c] = state_prim[c]
    return field_from_primitives(prim, scheme, p, mesh, gas, dtype)


# ---------------------------------------------------------------------------
# interface fluxes

def br1_interface(q_left, q_right):
    """Common interface solution value: plain average (first BR1 stage)."""
    return 0.5 * (np.asarray(q_left) + np.asarray(q_right))


def br1_flux(f_left, f_right):
    """Common interface viscous flux: plain average (second BR1 stage)."""
    return 0.5 * (np.asarray(f_left) + np.asarray(f_right))


def _axis_flux(q, kind: str, axis: int, gas: GasModel):
    """Single flux column along ``axis`` in the given variable set's algebra."""
    flat = np.ascontiguousarray(q).reshape(5, -1)
    out = np.empty_like(flat)
    dt = flat.dtype.type
    if kind == "primitive":
        _kern.axis_flux_prim(flat, axis, dt(gas.gamma / (gas.gamma - 1.0)),
                             dt(0.5), out)
    elif kind == "mixed":
        _kern.axis_flux_mixed(flat, axis, dt(gas.gamma / (gas.gamma - 1.0)),
                              dt(0.5), dt(1.0), out)
    else:
        _kern.axis_flux_cons(flat, axis, dt(gas.gamma), dt(gas.gamma - 1.0),
                             dt(0.5), dt(1.0), out)
    return out.reshape(q.shape)


def _signal_speed(q, kind: str, axis: int, gas: GasModel):
    """Davis estimate |u_n| + a from a trace of the given variable set."""
    flat = np.ascontiguousarray(q).reshape(5, -1)
    out = np.empty(flat.shape[1], dtype=flat.dtype)
    dt = flat.dtype.type
    if kind == "primitive":
        _kern.signal_speed_prim(flat, axis, dt(gas.gamma), dt(1.0), out)
    elif kind == "mixed":
        _kern.signal_speed_mixed(flat, axis, dt(gas.gamma), dt(1.0), out)
    else:
        _kern.signal_speed_cons(flat, axis, dt(gas.gamma), dt(gas.gamma - 1.0),
                                dt(0.5), dt(1.0), out)
    return out.reshape(q.shape[1:])


def _rusanov(f_left, f_right, cons_left, cons_right, speed_left, speed_right):
    out = np.empty_like(np.ascontiguousarray(f_left).reshape(5, -1))
    _kern.rusanov_combine(
        np.ascontiguousarray(f_left).reshape(5, -1),
        np.ascontiguousarray(f_right).reshape(5, -1),
        np.ascontiguousarray(cons_left).reshape(5, -1),
        np.ascontiguousarray(cons_right).reshape(5, -1),
        np.ascontiguousarray(speed_left).reshape(-1),
        np.ascontiguousarray(speed_right).reshape(-1),
        out.dtype.type(0.5), out)
    return out.reshape(np.shape(f_left))


def rusanov_flux(q_left, q_right, axis: int, gas: GasModel):
    """Common inviscid flux from two conserved states along ``axis``.

    One-wave flux with the fastest-signal estimate max(|u_n| + a) from the
    two sides.
    """
    q_left = np.asarray(q_left, dtype=float)
    q_right = np.asarray(q_right, dtype=float)
    gaslib.cons_to_prim(q_left, gas)   # physicality check
    gaslib.cons_to_prim(q_right, gas)
    sl = _signal_speed(q_left, "conserved", axis, gas)
    sr = _signal_speed(q_right, "conserved", axis, gas)
    fl = _axis_flux(q_left, "conserved", axis, gas)
    fr = _axis_flux(q_right, "conserved", axis, gas)
    return _rusanov(fl, fr, q_left, q_right, sl, sr)


# ---------------------------------------------------------------------------
# 1D scalar residual

def residual_1d_scalar(u: np.ndarray, flux_fn, wavespeed_fn,
                       ops: ReferenceOps, h: float) -> np.ndarray:
    """Semi-discrete du/dt for a periodic 1D scalar conservation law.

    ``u`` has shape (elements, p+1).  ``flux_fn`` and ``wavespeed_fn`` act
    pointwise; the interface flux is local Lax-Friedrichs.
    """
    ropst = ops.cast(u.dtype)
    f = flux_fn(u)
    df = f @ ropst.diff.T

    u_l = u @ ropst.extrap_left
    u_r = u @ ropst.extrap_right
    f_l = f @ ropst.extrap_left
    f_r = f @ ropst.extrap_right

    # face between e-1 and e: left state is e-1's right trace
    ql = np.roll(u_r, 1)
    qr = u_l
    s = np.maximum(np.abs(wavespeed_fn(ql)), np.abs(wavespeed_fn(qr)))
    common_left = 0.5 * (flux_fn(ql) + flux_fn(qr)) - 0.5 * s * (qr - ql)
    common_right = np.roll(common_left, -1)

    corr = (np.outer(common_left - f_l, np.ones(ops.p + 1)) * ropst.corr_left
            + np.outer(common_right - f_r, np.ones(ops.p + 1)) * ropst.corr_right)
    return -(2.0 / h) * (df + corr)


# ---------------------------------------------------------------------------
# 3D residual

def _apply_matrix(arr, mat, axis):
    """Contract ``mat`` (n_out, n) against one node axis; GEMM-shaped for speed."""
    n = arr.shape[_NODE_AXIS[axis]]
    if axis == 0:
        lead = arr.shape[:4]
        tail = arr.shape[5:]
        flat = np.ascontiguousarray(arr).reshape(-1, n, int(np.prod(tail)))
        out = np.matmul(mat, flat)
        return out.reshape(*lead, mat.shape[0], *tail)
    if axis == 2:
        flat = np.ascontiguousarray(arr).reshape(-1, n)
        out = flat @ mat.T
        return out.reshape(*arr.shape[:6], mat.shape[0])
    swapped = np.ascontiguousarray(arr.swapaxes(5, 6))
    flat = swapped.reshape(-1, n)
    out = (flat @ mat.T).reshape(*swapped.shape[:6], mat.shape[0])
    return out.swapaxes(5, 6)


def _trace(arr, weights, axis):
    return _apply_matrix(arr, weights[None, :], axis).squeeze(_NODE_AXIS[axis])


def _corrected_deriv(nodal, jump_left, jump_right, ropst, axis):
    """d(interpolant)/dxi plus both boundary-correction lifts, fused in one GEMM.

    ``jump_left``/``jump_right`` are (common - own trace) at the two faces.
    """
    mat = np.concatenate(
        [ropst.diff, ropst.corr_left[:, None], ropst.corr_right[:, None]], axis=1)
    node_ax = _NODE_AXIS[axis]
    aug = np.concatenate(
        [nodal, np.expand_dims(jump_left, node_ax), np.expand_dims(jump_right, node_ax)],
        axis=node_ax)
    return _apply_matrix(aug, mat, axis)


def _stored_traces(data, ropst):
    return [(_trace(data, ropst.extrap_left, a), _trace(data, ropst.extrap_right, a))
            for a in range(3)]


def _face_primitives(trace, scheme: StorageScheme, gas: GasModel):
    kind = scheme.stored_kind
    if kind == "primitive":
        return trace
    if kind == "mixed":
        return gaslib.mixed_to_prim(trace, gas)
    return gaslib.cons_to_prim(trace, gas)


def _face_conserved(trace, scheme: StorageScheme, gas: GasModel):
    kind = scheme.stored_kind
    if kind == "primitive":
        return gaslib.prim_to_cons(trace, gas)
    if kind == "mixed":
        return gaslib.mixed_to_cons(trace, gas)
    return trace


def _common_inviscid(field: SolutionField, traces, gas: GasModel):
    """Rusanov common flux at the left face of every element, per axis.

    Fluxes and signal speeds are evaluated in the stored set's own
    algebra; only the jump needs the traces converted to conserved form.
    """
    scheme = field.scheme
    kind = scheme.stored_kind
    commons = []
    for a in range(3):
        tl, tr = traces[a]
        elem_ax = 1 + a

        # face f_e sits between element e-1 (its right trace) and e (left)
        stored_minus = np.roll(tr, 1, axis=elem_ax)
        stored_plus = tl
        speed_minus = _signal_speed(stored_minus, kind, a, gas)
        speed_plus = _signal_speed(stored_plus, kind, a, gas)
        flux_minus = _axis_flux(stored_minus, kind, a, gas)
        flux_plus = _axis_flux(stored_plus, kind, a, gas)
        cons_minus = _face_conserved(stored_minus, scheme, gas)
        cons_plus = _face_conserved(stored_plus, scheme, gas)

        commons.append(_rusanov(flux_minus, flux_plus, cons_minus, cons_plus,
                                speed_minus, speed_plus))
    return commons


def _corrected_gradient(nodal, faces_l, faces_r, ropst, mesh, axis):
    """FR gradient of one variable set along ``axis`` with averaged commons."""
    elem_ax = 1 + axis
    common_left = br1_interface(np.roll(faces_r, 1, axis=elem_ax), faces_l)
    common_right = np.roll(common_left, -1, axis=elem_ax)
    d = _corrected_deriv(nodal, common_left - faces_l, common_right - faces_r,
                         ropst, axis)
    return d * (2.0 / mesh.spacing[axis])


def _gradient_context(field, gas, ropst, traces):
    """Gradient block (5, 3, ...) plus nodal velocities, per the scheme's pathway."""
    scheme = field.scheme
    mesh = field.mesh
    u = field.data

    if scheme.uses_product_rule or scheme.stored_kind == "primitive":
        grad_set = u
        set_faces = traces
    else:
        grad_set = field.to_primitive(gas)
        set_faces = [(_face_primitives(tl, scheme, gas),
                      _face_primitives(tr, scheme, gas)) for tl, tr in traces]

    set_grads = np.stack(
        [_corrected_gradient(grad_set, fl, fr, ropst, mesh, a)
         for a, (fl, fr) in enumerate(set_faces)],
        axis=1,
    )  # (5, 3, nx, ny, nz, n, n, n)

    if scheme.uses_product_rule:
        grads, vel = gaslib.product_rule_with_velocities(u, set_grads, gas)
    else:
        grads = set_grads
        flat = grads.reshape(5, 3, -1)
        dt = grads.dtype.type
        _kern.temperature_row_from_pressure(
            np.ascontiguousarray(grad_set[0]).reshape(-1),
            np.ascontiguousarray(grad_set[4]).reshape(-1),
            flat[0], flat[4], dt(1.0 / gas.R), dt(1.0), flat[4])
        vel = grad_set[1:4]
    return grads, vel


def gradient_blocks(field: SolutionField, gas: GasModel, ops: ReferenceOps) -> np.ndarray:
    """Nodal (rho, u, v, w, T) gradients via the field's storage pathway.

    Shape (5, 3, nx, ny, nz, n, n, n); rows are variables, columns x/y/z.
    """
    ropst = ops.cast(field.dtype)
    traces = _stored_traces(field.data, ropst)
    grads, _ = _gradient_context(field, gas, ropst, traces)
    return grads


def _viscous_columns(vel, grads, gas: GasModel):
    """Viscous flux columns straight from velocity rows and a gradient block."""
    vflat = np.ascontiguousarray(vel).reshape(3, -1)
    gflat = np.ascontiguousarray(grads).reshape(5, 3, -1)
    f, g, h = (np.empty((5, vflat.shape[1]), dtype=vflat.dtype) for _ in range(3))
    dt = vflat.dtype.type
    _kern.viscous_columns(vflat, gflat, dt(gas.mu), dt(gas.kappa),
                          dt(4.0 / 3.0), dt(2.0 / 3.0), f, g, h)
    shape = (5,) + np.shape(vel)[1:]
    return f.reshape(shape), g.reshape(shape), h.reshape(shape)


def _nodal_inviscid(field: SolutionField, gas: GasModel):
    kind = field.scheme.stored_kind
    if kind == "primitive":
        return gaslib.inviscid_flux_prim(field.data, gas)
    if kind == "mixed":
        return gaslib.inviscid_flux_mixed(field.data, gas)
    return gaslib.inviscid_flux_cons(field.data, gas)


def residual_3d(field: SolutionField, gas: GasModel, ops: ReferenceOps,
                viscous: bool = False) -> np.ndarray:
    """dQ/dt of the conserved set for the current stored state.

    Raises NonphysicalStateError (annotated with the scheme) if any trace
    or node leaves the physical region.
    """
    try:
        return _residual_3d(field, gas, ops, viscous)
    except NonphysicalStateError as err:
        raise NonphysicalStateError(
            f"scheme {field.scheme.value}: {err}", where=err.where) from err


def _residual_3d(field: SolutionField, gas: GasModel, ops: ReferenceOps,
                 viscous: bool) -> np.ndarray:
    u = field.data
    mesh = field.mesh
    ropst = ops.cast(u.dtype)

    flux_cols = list(_nodal_inviscid(field, gas))
    traces = _stored_traces(u, ropst)
    commons = _common_inviscid(field, traces, gas)

    if viscous:
        grads, vel = _gradient_context(field, gas, ropst, traces)
        vis_cols = _viscous_columns(vel, grads, gas)
        for a in range(3):
            flux_cols[a] -= vis_cols[a]
            elem_ax = 1 + a
            vis_l = _trace(vis_cols[a], ropst.extrap_left, a)
            vis_r = _trace(vis_cols[a], ropst.extrap_right, a)
            commons[a] = commons[a] - br1_flux(np.roll(vis_r, 1, axis=elem_ax), vis_l)

    res = np.zeros_like(u)
    for a in range(3):
        elem_ax = 1 + a
        tot = flux_cols[a]
        f_l = _trace(tot, ropst.extrap_left, a)
        f_r = _trace(tot, ropst.extrap_right, a)
        common_left = commons[a]
        common_right = np.roll(common_left, -1, axis=elem_ax)
        d = _corrected_deriv(tot, common_left - f_l, common_right - f_r, ropst, a)
        res -= (2.0 / mesh.spacing[a]) * d
    return res
