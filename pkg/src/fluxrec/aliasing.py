"""Polynomial aliasing analysis: projections, remainders, and bounds.

Quantifies what is lost when a nonlinear flux built from a degree-p
solution (degree up to 4p) is forced back into a degree-p nodal space.
Remainder norms are measured by brute force on a dense uniform grid; the
printed factorial bounds are evaluated exactly for reporting but are never
used as ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import legendre as npleg

DENSE_GRID_DEFAULT = 10_000

FLUX_VARIANTS = ("f2", "f4")  # flux = u**2 and u**4


@dataclass(frozen=True)
class LegendreSeries:
    """Finite Legendre expansion; ``coeffs[n]`` multiplies mode n."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.atleast_1d(np.asarray(self.coeffs, dtype=float)))

    @property
    def max_order(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, xi):
        return npleg.legval(xi, self.coeffs)

    def derivative(self) -> "LegendreSeries":
        if len(self.coeffs) == 1:
            return LegendreSeries(np.zeros(1))
        return LegendreSeries(npleg.legder(self.coeffs))


@dataclass(frozen=True)
class RemainderReport:
    """Sup-norms of what interpolation onto p+1 nodes fails to capture.

    ``norm_interp``/``norm_grad`` are dense-grid sup-norms of the value
    and derivative remainders; ``edge_left``/``edge_right`` are the exact
    remainder magnitudes at xi = -1 and xi = +1.
    """

    p: int
    norm_interp: float
    norm_grad: float
    edge_left: float
    edge_right: float


def project_legendre(sampler: Callable, max_order: int, quad_order: int) -> LegendreSeries:
    """Least-squares Legendre coefficients of ``sampler`` up to ``max_order``.

    Gauss quadrature of order ``quad_order`` (quad_order+1 points) is used
    for the inner products; it must resolve products of the sampled
    function with every retained mode.
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    if quad_order < max_order:
        raise ValueError(
            f"quad_order ({quad_order}) must be >= max_order ({max_order}); "
            "a coarser rule would alias the projection itself"
        )
    pts, wts = npleg.leggauss(quad_order + 1)
    fvals = np.asarray(sampler(pts), dtype=float)
    vand = npleg.legvander(pts, max_order)            # (npts, max_order+1)
    modes = np.arange(max_order + 1)
    coeffs = (2 * modes + 1) / 2.0 * (vand.T @ (wts * fvals))
    return LegendreSeries(coeffs)


def aliasing_energy(series: LegendreSeries, p: int) -> float:
    """L2 energy in the modes of ``series`` at or above mode ``p``.

    For a derivative series this is the squared L2 norm of the part of the
    flux gradient a degree-p scheme cannot represent.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    tail = series.coeffs[p:]
    if tail.size == 0:
        return 0.0
    modes = np.arange(p, p + tail.size)
    return float(np.sum(2.0 * tail**2 / (2 * modes + 1)))


def _interpolant(nodes: np.ndarray, values: np.ndarray):
    """Degree-(len(nodes)-1) interpolant as a numpy Legendre series."""
    deg = len(nodes) - 1
    return npleg.Legendre.fit(nodes, values, deg, domain=[-1.0, 1.0])


def _fd_weights(x0: float, x: np.ndarray, m: int) -> np.ndarray:
    """Finite-difference weights for the m-th derivative at x0 (Fornberg)."""
    n = len(x)
    c = np.zeros((n, m + 1))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def _fd_derivative(values: np.ndarray, h: float, width: int = 9) -> np.ndarray:
    """High-order first derivative of uniformly sampled values."""
    n = len(values)
    width = min(width, n)
    half = width // 2
    offsets = np.arange(width) - half
    w_central = _fd_weights(0.0, offsets * h, 1)
    out = np.convolve(values, w_central[::-1], mode="same")
    # Redo the ends with one-sided stencils of the same width.
    for i in range(half):
        pts = np.arange(width)
        out[i] = _fd_weights(i * h, pts * h, 1) @ values[:width]
        j = n - 1 - i
        out[j] = _fd_weights((width - 1 - i) * h, pts * h, 1) @ values[-width:]
    return out


def remainder_report(
    sampler: Callable,
    nodes,
    dense_n: int = DENSE_GRID_DEFAULT,
    deriv: Optional[Callable] = None,
) -> RemainderReport:
    """Brute-force remainder norms of interpolating ``sampler`` on ``nodes``.

    The derivative remainder uses ``deriv`` when given, otherwise a
    high-order finite difference of the sampled values on the dense grid.
    """
    nodes = np.asarray(nodes, dtype=float)
    if np.unique(nodes).size != nodes.size:
        raise ValueError("interpolation nodes must be distinct")
    if dense_n < 1000:
        raise ValueError("dense_n must be >= 1000 for a trustworthy sup-norm")

    interp = _interpolant(nodes, np.asarray(sampler(nodes), dtype=float))
    d_interp = interp.deriv()

    grid = np.linspace(-1.0, 1.0, dense_n)
    f = np.asarray(sampler(grid), dtype=float)
    norm_interp = float(np.max(np.abs(f - interp(grid))))

    if deriv is not None:
        df = np.asarray(deriv(grid), dtype=float)
    else:
        df = _fd_derivative(f, grid[1] - grid[0])
    norm_grad = float(np.max(np.abs(df - d_interp(grid))))

    edge_left = float(abs(sampler(-1.0) - interp(-1.0)))
    edge_right = float(abs(sampler(1.0) - interp(1.0)))
    return RemainderReport(
        p=len(nodes) - 1,
        norm_interp=norm_interp,
        norm_grad=norm_grad,
        edge_left=edge_left,
        edge_right=edge_right,
    )


def flux_remainder_study(
    u_series: LegendreSeries,
    variant: str,
    nodes,
    dense_n: int = DENSE_GRID_DEFAULT,
) -> RemainderReport:
    """Remainder report for the flux u**2 ("f2") or u**4 ("f4").

    The flux is sampled pointwise from the solution series, exactly as a
    nodal scheme would build it, and its analytic derivative is used for
    the gradient remainder.
    """
    if variant not in FLUX_VARIANTS:
        raise ValueError(f"variant must be one of {FLUX_VARIANTS}, got {variant!r}")
    du = u_series.derivative()
    if variant == "f2":
        flux = lambda xi: u_series(xi) ** 2
        dflux = lambda xi: 2.0 * u_series(xi) * du(xi)
    else:
        flux = lambda xi: u_series(xi) ** 4
        dflux = lambda xi: 4.0 * u_series(xi) ** 3 * du(xi)
    return remainder_report(flux, nodes, dense_n=dense_n, deriv=dflux)


def _checked_order(p: int) -> int:
    if p < 1:
        raise ValueError("bounds are defined for p >= 1")
    if p > 10:
        raise ValueError("bound evaluation capped at p = 10")
    return p


def remainder_bound_square(p: int, max_coeff: float) -> float:
    """Printed sup-norm bound for the u**2 flux remainder at order p."""
    p = _checked_order(p)
    if max_coeff < 0:
        raise ValueError("max_coeff must be >= 0")
    frac = Fraction(4 * math.factorial(3 * p + 1),
                    2 ** (2 * p) * math.factorial(p) * math.factorial(2 * p)
                    * math.factorial(p + 1))
    return float(frac) * max_coeff


def remainder_bound_quartic(p: int, max_coeff: float) -> float:
    """Printed sup-norm bound for the u**4 flux remainder at order p."""
    p = _checked_order(p)
    if max_coeff < 0:
        raise ValueError("max_coeff must be >= 0")
    frac = Fraction(4 * math.factorial(5 * p + 1),
                    2 ** (4 * p) * math.factorial(3 * p) * math.factorial(4 * p)
                    * math.factorial(p + 1))
    return float(frac) * max_coeff


def bound_growth_audit(p: int) -> tuple[float, float, bool]:
    """Exact values of the two bound prefactors and whether square <= quartic.

    Returns (square_term, quartic_term, square_le_quartic).  Evaluated in
    exact integer arithmetic; at p = 1 the square term is the larger one,
    so the claimed ordering of the prefactors does not hold there.
    """
    p = _checked_order(p)
    square = Fraction(math.factorial(3 * p + 1),
                      2 ** (2 * p) * math.factorial(p) * math.factorial(2 * p))
    quartic = Fraction(math.factorial(5 * p + 1),
                       2 ** (4 * p) * math.factorial(3 * p) * math.factorial(4 * p))
    return float(square), float(quartic), square <= quartic
