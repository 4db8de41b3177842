"""Fused pointwise kernels for the hot paths.

Every routine is one pass over flat (ncomp, N) C-contiguous arrays.  All
scalar constants arrive pre-cast to the array dtype so float32 runs never
promote through float64 intermediates; callers own that cast (and any
physicality validation).
"""

import numba
import numpy as np

_jit = numba.njit(cache=True, fastmath=False)


@_jit
def prim_to_cons(q, inv_gm1, half, out):
    for i in range(q.shape[1]):
        rho = q[0, i]
        u, v, w = q[1, i], q[2, i], q[3, i]
        out[0, i] = rho
        out[1, i] = rho * u
        out[2, i] = rho * v
        out[3, i] = rho * w
        out[4, i] = q[4, i] * inv_gm1 + half * rho * (u * u + v * v + w * w)


@_jit
def cons_to_prim(q, gm1, half, one, out):
    bad = np.int64(-1)
    for i in range(q.shape[1]):
        rho = q[0, i]
        inv = one / rho
        mx, my, mz = q[1, i], q[2, i], q[3, i]
        p = gm1 * (q[4, i] - half * (mx * mx + my * my + mz * mz) * inv)
        out[0, i] = rho
        out[1, i] = mx * inv
        out[2, i] = my * inv
        out[3, i] = mz * inv
        out[4, i] = p
        if bad < 0 and not (rho > 0.0 and p > 0.0):
            bad = i
    return bad


@_jit
def mixed_to_cons(q, inv_gm1, half, one, out):
    bad = np.int64(-1)
    for i in range(q.shape[1]):
        rho = q[0, i]
        if bad < 0 and not (rho > 0.0):
            bad = i
        inv = one / rho
        mx, my, mz = q[1, i], q[2, i], q[3, i]
        out[0, i] = rho
        out[1, i] = mx
        out[2, i] = my
        out[3, i] = mz
        out[4, i] = q[4, i] * inv_gm1 + half * (mx * mx + my * my + mz * mz) * inv
    return bad


@_jit
def cons_to_mixed(q, gm1, half, one, out):
    bad = np.int64(-1)
    for i in range(q.shape[1]):
        rho = q[0, i]
        inv = one / rho
        mx, my, mz = q[1, i], q[2, i], q[3, i]
        p = gm1 * (q[4, i] - half * (mx * mx + my * my + mz * mz) * inv)
        out[0, i] = rho
        out[1, i] = mx
        out[2, i] = my
        out[3, i] = mz
        out[4, i] = p
        if bad < 0 and not (rho > 0.0 and p > 0.0):
            bad = i
    return bad


@_jit
def mixed_to_prim(q, one, out):
    bad = np.int64(-1)
    for i in range(q.shape[1]):
        rho = q[0, i]
        inv = one / rho
        out[0, i] = rho
        out[1, i] = q[1, i] * inv
        out[2, i] = q[2, i] * inv
        out[3, i] = q[3, i] * inv
        out[4, i] = q[4, i]
        if bad < 0 and not (rho > 0.0 and q[4, i] > 0.0):
            bad = i
    return bad


@_jit
def flux3_prim(q, g1, half, f, g, h):
    for i in range(q.shape[1]):
        rho, u, v, w, p = q[0, i], q[1, i], q[2, i], q[3, i], q[4, i]
        htot = g1 * p + half * rho * (u * u + v * v + w * w)
        ru, rv, rw = rho * u, rho * v, rho * w
        f[0, i] = ru
        f[1, i] = ru * u + p
        f[2, i] = ru * v
        f[3, i] = ru * w
        f[4, i] = u * htot
        g[0, i] = rv
        g[1, i] = rv * u
        g[2, i] = rv * v + p
        g[3, i] = rv * w
        g[4, i] = v * htot
        h[0, i] = rw
        h[1, i] = rw * u
        h[2, i] = rw * v
        h[3, i] = rw * w + p
        h[4, i] = w * htot


@_jit
def flux3_cons(q, gamma, gm1, half, one, f, g, h):
    bad = np.int64(-1)
    for i in range(q.shape[1]):
        rho, mx, my, mz, E = q[0, i], q[1, i], q[2, i], q[3, i], q[4, i]
        if bad < 0 and not (rho > 0.0):
            bad = i
        inv = one / rho
        mom_sq = (mx * mx + my * my + mz * mz) * inv
        p_term = gm1 * (E - half * mom_sq)
        e_term = (gamma * E - half * gm1 * mom_sq) * inv
        ux, uy, uz = mx * inv, my * inv, mz * inv
        f[0, i] = mx
        f[1, i] = mx * ux + p_term
        f[2, i] = mx * uy
        f[3, i] = mx * uz
        f[4, i] = mx * e_term
        g[0, i] = my
        g[1, i] = my * ux
        g[2, i] = my * uy + p_term
        g[3, i] = my * uz
        g[4, i] = my * e_term
        h[0, i] = mz
        h[1, i] = mz * ux
        h[2, i] = mz * uy
        h[3, i] = mz * uz + p_term
        h[4, i] = mz * e_term
    return bad


@_jit
def flux3_mixed(q, g1, half, one, f, g, h):
    bad = np.int64(-1)
    for i in range(q.shape[1]):
        rho, mx, my, mz, p = q[0, i], q[1, i], q[2, i], q[3, i], q[4, i]
        if bad < 0 and not (rho > 0.0):
            bad = i
        inv = one / rho
        e_term = (g1 * p + half * (mx * mx + my * my + mz * mz) * inv) * inv
        ux, uy, uz = mx * inv, my * inv, mz * inv
        f[0, i] = mx
        f[1, i] = mx * ux + p
        f[2, i] = mx * uy
        f[3, i] = mx * uz
        f[4, i] = mx * e_term
        g[0, i] = my
        g[1, i] = my * ux
        g[2, i] = my * uy + p
        g[3, i] = my * uz
        g[4, i] = my * e_term
        h[0, i] = mz
        h[1, i] = mz * ux
        h[2, i] = mz * uy
        h[3, i] = mz * uz + p
        h[4, i] = mz * e_term
    return bad


@_jit
def axis_flux_prim(q, axis, g1, half, out):
    for i in range(q.shape[1]):
        rho, p = q[0, i], q[4, i]
        u, v, w = q[1, i], q[2, i], q[3, i]
        un = q[1 + axis, i]
        htot = g1 * p + half * rho * (u * u + v * v + w * w)
        run = rho * un
        out[0, i] = run
        out[1, i] = run * u
        out[2, i] = run * v
        out[3, i] = run * w
        out[1 + axis, i] += p
        out[4, i] = un * htot


@_jit
def axis_flux_cons(q, axis, gamma, gm1, half, one, out):
    for i in range(q.shape[1]):
        rho, E = q[0, i], q[4, i]
        mx, my, mz = q[1, i], q[2, i], q[3, i]
        mn = q[1 + axis, i]
        inv = one / rho
        mom_sq = (mx * mx + my * my + mz * mz) * inv
        out[0, i] = mn
        out[1, i] = mn * mx * inv
        out[2, i] = mn * my * inv
        out[3, i] = mn * mz * inv
        out[1 + axis, i] += gm1 * (E - half * mom_sq)
        out[4, i] = mn * inv * (gamma * E - half * gm1 * mom_sq)


@_jit
def axis_flux_mixed(q, axis, g1, half, one, out):
    for i in range(q.shape[1]):
        rho, p = q[0, i], q[4, i]
        mx, my, mz = q[1, i], q[2, i], q[3, i]
        mn = q[1 + axis, i]
        inv = one / rho
        e_term = g1 * p + half * (mx * mx + my * my + mz * mz) * inv
        out[0, i] = mn
        out[1, i] = mn * mx * inv
        out[2, i] = mn * my * inv
        out[3, i] = mn * mz * inv
        out[1 + axis, i] += p
        out[4, i] = mn * inv * e_term


@_jit
def signal_speed_prim(q, axis, gamma, one, out):
    for i in range(q.shape[1]):
        a = np.sqrt(gamma * q[4, i] / q[0, i])
        un = q[1 + axis, i]
        out[i] = abs(un) + a


@_jit
def signal_speed_cons(q, axis, gamma, gm1, half, one, out):
    for i in range(q.shape[1]):
        rho = q[0, i]
        inv = one / rho
        mx, my, mz = q[1, i], q[2, i], q[3, i]
        p = gm1 * (q[4, i] - half * (mx * mx + my * my + mz * mz) * inv)
        out[i] = abs(q[1 + axis, i] * inv) + np.sqrt(gamma * p * inv)


@_jit
def signal_speed_mixed(q, axis, gamma, one, out):
    for i in range(q.shape[1]):
        inv = one / q[0, i]
        out[i] = abs(q[1 + axis, i] * inv) + np.sqrt(gamma * q[4, i] * inv)


@_jit
def rusanov_combine(flux_l, flux_r, cons_l, cons_r, speed_l, speed_r, half, out):
    for i in range(flux_l.shape[1]):
        s = max(speed_l[i], speed_r[i])
        for c in range(5):
            out[c, i] = half * (flux_l[c, i] + flux_r[c, i]) \
                - half * s * (cons_r[c, i] - cons_l[c, i])


@_jit
def velocity_rows(q, one, out):
    for i in range(q.shape[1]):
        inv = one / q[0, i]
        out[0, i] = q[1, i] * inv
        out[1, i] = q[2, i] * inv
        out[2, i] = q[3, i] * inv


@_jit
def temperature_row_from_pressure(rho, p, grad_rho, grad_p, inv_R, one, out):
    for i in range(rho.shape[0]):
        inv = one / rho[i]
        coeff = p[i] * inv * inv
        for a in range(3):
            out[a, i] = (grad_p[a, i] * inv - coeff * grad_rho[a, i]) * inv_R


@_jit
def product_rule_block(cons, grads, inv_cv, one, vel):
    """(rho,u,v,w,T) gradients from conserved values and gradients.

    ``grads`` holds the conserved-variable gradients on entry and is
    rewritten in place (the density row is already correct).  Also fills
    the nodal velocities.
    """
    bad = np.int64(-1)
    for i in range(cons.shape[1]):
        rho = cons[0, i]
        if bad < 0 and not (rho > 0.0):
            bad = i
        inv = one / rho
        vel[0, i] = cons[1, i] * inv
        vel[1, i] = cons[2, i] * inv
        vel[2, i] = cons[3, i] * inv
    for a in range(3):
        g_rho = grads[0, a]
        g_mx, g_my, g_mz = grads[1, a], grads[2, a], grads[3, a]
        g_e = grads[4, a]
        for i in range(cons.shape[1]):
            inv = one / cons[0, i]
            drho = g_rho[i]
            gu = (g_mx[i] - vel[0, i] * drho) * inv
            gv = (g_my[i] - vel[1, i] * drho) * inv
            gw = (g_mz[i] - vel[2, i] * drho) * inv
            kin = cons[1, i] * gu + cons[2, i] * gv + cons[3, i] * gw
            g_mx[i] = gu
            g_my[i] = gv
            g_mz[i] = gw
            g_e[i] = (g_e[i] - cons[4, i] * inv * drho - kin) * inv * inv_cv
    return bad


@_jit
def viscous_columns(vel, grads, mu, kappa, c43, c23, f, g, h):
    """Stress/heat-flux assembly from velocities and (rho,u,v,w,T) gradients."""
    for i in range(vel.shape[1]):
        u, v, w = vel[0, i], vel[1, i], vel[2, i]
        ux, uy, uz = grads[1, 0, i], grads[1, 1, i], grads[1, 2, i]
        vx, vy, vz = grads[2, 0, i], grads[2, 1, i], grads[2, 2, i]
        wx, wy, wz = grads[3, 0, i], grads[3, 1, i], grads[3, 2, i]
        tx, ty, tz = grads[4, 0, i], grads[4, 1, i], grads[4, 2, i]
        txx = mu * (c43 * ux - c23 * (vy + wz))
        tyy = mu * (c43 * vy - c23 * (ux + wz))
        tzz = mu * (c43 * wz - c23 * (ux + vy))
        txy = mu * (uy + vx)
        txz = mu * (wx + uz)
        tyz = mu * (vz + wy)
        f[0, i] = 0.0
        f[1, i] = txx
        f[2, i] = txy
        f[3, i] = txz
        f[4, i] = u * txx + v * txy + w * txz + kappa * tx
        g[0, i] = 0.0
        g[1, i] = txy
        g[2, i] = tyy
        g[3, i] = tyz
        g[4, i] = u * txy + v * tyy + w * tyz + kappa * ty
        h[0, i] = 0.0
        h[1, i] = txz
        h[2, i] = tyz
        h[3, i] = tzz
        h[4, i] = u * txz + v * tyz + w * tzz + kappa * tz
