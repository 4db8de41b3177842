import numpy as np
import pytest

from fluxrec.gas import (GasModel, NonphysicalStateError, cons_to_mixed,
                         cons_to_prim, grad_from_conserved_product_rule,
                         grad_from_primitives, inviscid_flux_cons,
                         inviscid_flux_mixed, inviscid_flux_prim, mixed_to_cons,
                         mixed_to_prim, prim_to_cons, prim_to_mixed, viscous_flux)

GAS = GasModel(gamma=1.4, R=1.0, mu=0.01, prandtl=0.71)


def random_primitives(rng, n):
    prim = np.empty((5, n))
    prim[0] = rng.uniform(0.5, 2.0, n)
    prim[1:4] = rng.uniform(-1.0, 1.0, (3, n))
    prim[4] = rng.uniform(0.5, 2.0, n)
    return prim


class TestGasModel:
    def test_derived_quantities_are_consistent(self):
        assert GAS.R == pytest.approx(GAS.cv * (GAS.gamma - 1.0))
        # Pr = mu * gamma * R / (kappa * (gamma - 1))
        pr = GAS.mu * GAS.gamma * GAS.R / (GAS.kappa * (GAS.gamma - 1.0))
        assert pr == pytest.approx(GAS.prandtl)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            GasModel(gamma=1.0, R=1.0, mu=0.0, prandtl=0.7)
        with pytest.raises(ValueError):
            GasModel(gamma=1.4, R=1.0, mu=-1.0, prandtl=0.7)


class TestConversions:
    def test_energy_assembly(self):
        q = np.array([1.0, 2.0, 0.0, 0.0, 1.0])
        cons = prim_to_cons(q, GAS)
        assert cons == pytest.approx([1.0, 2.0, 0.0, 0.0, 4.5])

    def test_quiescent_energy(self):
        cons = prim_to_cons(np.array([1.0, 0.0, 0.0, 0.0, 1.0]), GAS)
        assert cons[4] == pytest.approx(2.5)

    def test_cons_to_prim_inverts_example(self):
        prim = cons_to_prim(np.array([1.0, 2.0, 0.0, 0.0, 4.5]), GAS)
        assert prim == pytest.approx([1.0, 2.0, 0.0, 0.0, 1.0])

    def test_mixed_energy(self):
        cons = mixed_to_cons(np.array([1.0, 2.0, 0.0, 0.0, 1.0]), GAS)
        assert cons[4] == pytest.approx(4.5)

    def test_round_trips_are_identity(self):
        rng = np.random.default_rng(0)
        prim = random_primitives(rng, 1000)
        back = cons_to_prim(prim_to_cons(prim, GAS), GAS)
        assert np.max(np.abs(back - prim) / np.abs(prim).clip(1e-3)) < 1e-14

        cons = prim_to_cons(prim, GAS)
        back = mixed_to_cons(cons_to_mixed(cons, GAS), GAS)
        assert np.max(np.abs(back - cons) / np.abs(cons).clip(1e-3)) < 1e-14

    def test_composition_identity(self):
        rng = np.random.default_rng(1)
        prim = random_primitives(rng, 64)
        cons = prim_to_cons(prim, GAS)
        assert mixed_to_cons(cons_to_mixed(cons, GAS), GAS) == pytest.approx(cons)
        assert prim_to_mixed(prim, GAS) == pytest.approx(cons_to_mixed(cons, GAS))
        assert mixed_to_prim(prim_to_mixed(prim, GAS), GAS) == pytest.approx(prim)

    def test_negative_density_raises_with_location(self):
        q = np.tile(np.array([1.0, 2.0, 0.0, 0.0, 4.5])[:, None], (1, 5))
        q[0, 3] = -0.1
        with pytest.raises(NonphysicalStateError) as err:
            cons_to_prim(q, GAS)
        assert err.value.where == (3,)

    def test_negative_pressure_raises(self):
        q = np.array([1.0, 2.0, 0.0, 0.0, 1.9])  # kinetic 2.0 exceeds E
        with pytest.raises(NonphysicalStateError):
            cons_to_prim(q, GAS)


class TestInviscidFluxes:
    def test_primitive_route_example(self):
        f, g, h = inviscid_flux_prim(np.array([1.0, 2.0, 0.0, 0.0, 1.0]), GAS)
        assert f == pytest.approx([2.0, 5.0, 0.0, 0.0, 11.0])

    def test_zero_velocity(self):
        f, _, _ = inviscid_flux_prim(np.array([1.0, 0.0, 0.0, 0.0, 3.0]), GAS)
        assert f == pytest.approx([0.0, 3.0, 0.0, 0.0, 0.0])
        fc, _, _ = inviscid_flux_cons(np.array([1.0, 0.0, 0.0, 0.0, 2.5]), GAS)
        assert fc == pytest.approx([0.0, 1.0, 0.0, 0.0, 0.0])

    def test_conserved_route_example(self):
        f, g, h = inviscid_flux_cons(np.array([1.0, 2.0, 0.0, 0.0, 4.5]), GAS)
        assert f == pytest.approx([2.0, 5.0, 0.0, 0.0, 11.0])

    def test_mixed_route_example(self):
        f, g, h = inviscid_flux_mixed(np.array([1.0, 2.0, 0.0, 0.0, 1.0]), GAS)
        assert f == pytest.approx([2.0, 5.0, 0.0, 0.0, 11.0])

    def test_routes_agree_pointwise(self):
        rng = np.random.default_rng(2)
        prim = random_primitives(rng, 1000)
        cons = prim_to_cons(prim, GAS)
        mixed = prim_to_mixed(prim, GAS)
        fp = inviscid_flux_prim(prim, GAS)
        fc = inviscid_flux_cons(cons, GAS)
        fm = inviscid_flux_mixed(mixed, GAS)
        scale = max(np.abs(c).max() for c in fp)
        for a in range(3):
            assert np.max(np.abs(fp[a] - fc[a])) / scale < 1e-12
            assert np.max(np.abs(fp[a] - fm[a])) / scale < 1e-12

    def test_nonphysical_input(self):
        q = np.array([-1.0, 0.0, 0.0, 0.0, 2.5])
        with pytest.raises(NonphysicalStateError):
            inviscid_flux_cons(q, GAS)


class TestViscousFlux:
    def test_zero_gradients(self):
        prim = np.array([1.0, 0.5, -0.2, 0.1, 1.0])
        grads = np.zeros((5, 3))
        f, g, h = viscous_flux(prim, grads, GAS)
        for col in (f, g, h):
            assert np.abs(col).max() == 0.0

    def test_shear_symmetry(self):
        # only du/dy nonzero: tau_xy = mu appears in both f and g columns
        prim = np.array([1.0, 0.0, 0.0, 0.0, 1.0])
        grads = np.zeros((5, 3))
        grads[1, 1] = 1.0  # u_y
        f, g, h = viscous_flux(prim, grads, GAS)
        assert f[2] == pytest.approx(GAS.mu)
        assert g[1] == pytest.approx(GAS.mu)
        assert np.abs(h[1:4]).max() == 0.0

    def test_stress_tensor_against_hand_assembly(self):
        rng = np.random.default_rng(4)
        prim = random_primitives(rng, 1)[:, 0]
        grads = rng.uniform(-1, 1, (5, 3))
        f, g, h = viscous_flux(prim, grads, GAS)
        mu = GAS.mu
        (ux, uy, uz), (vx, vy, vz), (wx, wy, wz) = grads[1], grads[2], grads[3]
        txx = mu * (4/3*ux - 2/3*(vy + wz))
        txy = mu * (uy + vx)
        txz = mu * (uz + wx)
        assert f[1] == pytest.approx(txx, abs=1e-13)
        assert f[2] == pytest.approx(txy, abs=1e-13)
        assert f[3] == pytest.approx(txz, abs=1e-13)
        u, v, w = prim[1:4]
        energy = u*txx + v*txy + w*txz + GAS.kappa * grads[4, 0]
        assert f[4] == pytest.approx(energy, abs=1e-13)

    def test_stress_trace_vanishes(self):
        rng = np.random.default_rng(9)
        prim = random_primitives(rng, 50)
        grads = rng.uniform(-1, 1, (5, 3, 50))
        f, g, h = viscous_flux(prim, grads, GAS)
        assert np.max(np.abs(f[1] + g[2] + h[3])) < 1e-13


def analytic_field_and_gradients(n=40):
    """Smooth primitive field sampled with its exact gradients."""
    rng = np.random.default_rng(12)
    x, y, z = rng.uniform(0, 2*np.pi, (3, n))
    prim = np.stack([
        1.0 + 0.2*np.sin(x)*np.cos(y),
        0.3*np.sin(y)*np.cos(z),
        0.2*np.sin(z)*np.cos(x),
        -0.1*np.sin(x)*np.cos(y),
        1.0 + 0.1*np.cos(x)*np.sin(z),
    ])
    grads = np.zeros((5, 3, n))
    grads[0] = [0.2*np.cos(x)*np.cos(y), -0.2*np.sin(x)*np.sin(y), np.zeros(n)]
    grads[1] = [np.zeros(n), 0.3*np.cos(y)*np.cos(z), -0.3*np.sin(y)*np.sin(z)]
    grads[2] = [-0.2*np.sin(z)*np.sin(x), np.zeros(n), 0.2*np.cos(z)*np.cos(x)]
    grads[3] = [-0.1*np.cos(x)*np.cos(y), 0.1*np.sin(x)*np.sin(y), np.zeros(n)]
    grads[4] = [-0.1*np.sin(x)*np.sin(z), np.zeros(n), 0.1*np.cos(x)*np.cos(z)]
    return prim, grads


class TestGradientPathways:
    def test_uniform_field_gives_zero_block(self):
        prim = np.tile(np.array([1.0, 0.3, 0.2, -0.1, 2.0])[:, None], (1, 8))
        block = grad_from_primitives(prim, lambda c: np.zeros((3, 8)), GAS)
        assert np.abs(block).max() == 0.0

    def test_linear_pressure_gives_temperature_slope(self):
        # rho = 1, p varying at slope s: T_x = s / R
        s = 0.7
        prim = np.tile(np.array([1.0, 0.0, 0.0, 0.0, 1.0])[:, None], (1, 4))
        per_row = iter(np.zeros((3, 4)) if c != 4
                       else np.array([s, 0.0, 0.0])[:, None] * np.ones(4)
                       for c in range(5))
        block = grad_from_primitives(prim, lambda _: next(per_row), GAS)
        assert block[4, 0] == pytest.approx(np.full(4, s / GAS.R))

    def test_pathways_agree_on_analytic_data(self):
        prim, prim_grads = analytic_field_and_gradients()
        cons = prim_to_cons(prim, GAS)

        # conserved gradients by exact product-rule expansion of the field
        rho, u, v, w, p = prim
        cons_grads = np.empty_like(prim_grads)
        cons_grads[0] = prim_grads[0]
        for c, vel in zip((1, 2, 3), (u, v, w)):
            cons_grads[c] = rho * prim_grads[c] + vel * prim_grads[0]
        ke = 0.5 * (u*u + v*v + w*w)
        grad_ke = (u * prim_grads[1] + v * prim_grads[2] + w * prim_grads[3])
        cons_grads[4] = (prim_grads[4] / (GAS.gamma - 1.0)
                         + ke * prim_grads[0] + rho * grad_ke)

        per_row = iter(prim_grads[c] for c in range(5))
        block_direct = grad_from_primitives(prim, lambda _: next(per_row), GAS)
        block_product = grad_from_conserved_product_rule(cons, cons_grads, GAS)
        assert np.max(np.abs(block_direct - block_product)) < 1e-12

    def test_product_rule_linear_velocity(self):
        # rho const, u linear with slope s, p const: u_x = s and the
        # temperature row reduces to the analytic value
        s = 0.4
        n = 3
        prim = np.tile(np.array([2.0, 0.5, 0.0, 0.0, 1.0])[:, None], (1, n))
        prim_grads = np.zeros((5, 3, n))
        prim_grads[1, 0] = s
        cons = prim_to_cons(prim, GAS)
        cons_grads = np.zeros((5, 3, n))
        cons_grads[1, 0] = 2.0 * s                      # (rho u)_x
        cons_grads[4, 0] = 2.0 * 0.5 * s                # E_x = rho u u_x
        block = grad_from_conserved_product_rule(cons, cons_grads, GAS)
        assert block[1, 0] == pytest.approx(np.full(n, s))
        # T = p/(rho R) is constant here, so the temperature row vanishes
        assert np.abs(block[4]).max() < 1e-14

    def test_product_rule_does_not_clobber_input(self):
        prim, prim_grads = analytic_field_and_gradients(8)
        cons = prim_to_cons(prim, GAS)
        cons_grads = np.random.default_rng(3).uniform(-1, 1, (5, 3, 8))
        saved = cons_grads.copy()
        grad_from_conserved_product_rule(cons, cons_grads, GAS)
        assert np.array_equal(cons_grads, saved)
