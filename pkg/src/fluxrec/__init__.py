"""High-order flux reconstruction with pluggable variable storage.

A numpy library for solving conservation laws (1D scalar, 3D compressible
Euler/Navier-Stokes on periodic hexahedral grids) at arbitrary order, with
the variable set held at the nodes -- primitive, conserved, or mixed --
selectable per run, plus an analysis toolkit for the polynomial-aliasing
errors those choices introduce.
"""

from .aliasing import (LegendreSeries, RemainderReport, aliasing_energy,
                       bound_growth_audit, flux_remainder_study,
                       project_legendre, remainder_bound_quartic,
                       remainder_bound_square, remainder_report)
from .cases import (IcvConfig, TgvConfig, density_error, enstrophy_dissipation,
                    icv_exact, icv_init, icv_sampler, ke_dissipation_rate,
                    kinetic_energy, run_icv, run_tgv, tgv_init, vorticity)
from .gas import (GasModel, NonphysicalStateError, cons_to_mixed, cons_to_prim,
                  grad_from_conserved_product_rule, grad_from_primitives,
                  inviscid_flux_cons, inviscid_flux_mixed, inviscid_flux_prim,
                  mixed_to_cons, mixed_to_prim, prim_to_cons, prim_to_mixed,
                  sound_speed, viscous_flux)
from .march import (DiagnosticsSeries, MarchConfig, cfl_time_step, march,
                    rk44_step)
from .refelem import (QuadratureRule, ReferenceOps, build_reference_ops,
                      gauss_legendre_rule, lagrange_interp, legendre_deriv_edge,
                      legendre_eval)
from .solver import (Mesh, SolutionField, StorageScheme, br1_flux,
                     br1_interface, field_from_primitives, gradient_blocks,
                     residual_1d_scalar, residual_3d, rusanov_flux,
                     uniform_field)

__version__ = "0.1.0"
