"""Order-dependent 1D reference-element operators on [-1, 1].

Everything the solver and the aliasing analysis need per polynomial order
is bundled here: Gauss-Legendre solution points and weights, the nodal
differentiation matrix, interface extrapolation weights, and the derivative
of the boundary correction functions at the solution points.

Solution points are interior Gauss-Legendre points; the correction
functions are the Radau-based pair that recovers a nodal DG scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre as npleg

# Factorial growth of the correction/interpolation operators makes higher
# orders useless in binary64; keep a hard cap.
MAX_ORDER = 10


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre points and weights on [-1, 1] for order ``p``."""

    p: int
    points: np.ndarray   # (p+1,), strictly increasing, interior
    weights: np.ndarray  # (p+1,), positive, sums to 2


@dataclass(frozen=True)
class ReferenceOps:
    """Operator bundle for one order: all arrays are float64.

    Attributes:
        rule: solution points / quadrature weights.
        diff: (p+1, p+1) matrix; ``diff @ f`` is the derivative of the
            degree-p interpolant of nodal samples ``f`` at the nodes.
        extrap_left, extrap_right: (p+1,) weights evaluating the
            interpolant at xi = -1 and xi = +1.
        corr_left, corr_right: (p+1,) values of the left/right correction
            function derivative at the solution points.
    """

    rule: QuadratureRule
    diff: np.ndarray
    extrap_left: np.ndarray
    extrap_right: np.ndarray
    corr_left: np.ndarray
    corr_right: np.ndarray

    @property
    def p(self) -> int:
        return self.rule.p

    def cast(self, dtype) -> "ReferenceOps":
        """Copy with all operator arrays in ``dtype`` (for fp32 runs)."""
        if np.dtype(dtype) == np.float64:
            return self
        return ReferenceOps(
            rule=self.rule,
            diff=self.diff.astype(dtype),
            extrap_left=self.extrap_left.astype(dtype),
            extrap_right=self.extrap_right.astype(dtype),
            corr_left=self.corr_left.astype(dtype),
            corr_right=self.corr_right.astype(dtype),
        )


def gauss_legendre_rule(p: int) -> QuadratureRule:
    """Gauss-Legendre rule with p+1 interior points on [-1, 1]."""
    if p < 0:
        raise ValueError(f"order must be >= 0, got {p}")
    if p > MAX_ORDER:
        raise ValueError(f"order {p} exceeds supported maximum {MAX_ORDER}")
    points, weights = npleg.leggauss(p + 1)
    return QuadratureRule(p=p, points=points, weights=weights)


def lagrange_interp(nodes, values, xi):
    """Evaluate the degree-(len(nodes)-1) interpolant at ``xi``.

    ``xi`` may be a scalar or an array.  Uses the first-form barycentric
    formula, which is stable for the point counts used here.
    """
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    if nodes.ndim != 1 or nodes.shape != values.shape:
        raise ValueError("nodes and values must be 1D arrays of equal length")
    if np.unique(nodes).size != nodes.size:
        raise ValueError("interpolation nodes must be distinct")

    w = barycentric_weights(nodes)
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    out = np.empty_like(xi_arr)
    diff = xi_arr[:, None] - nodes[None, :]            # (nxi, n)
    exact = np.isclose(diff, 0.0, rtol=0.0, atol=1e-300)
    hit = exact.any(axis=1)
    safe = np.where(exact, 1.0, diff)
    terms = w[None, :] / safe
    out = (terms @ values) / terms.sum(axis=1)
    if hit.any():
        idx = exact[hit].argmax(axis=1)
        out[hit] = values[idx]
    return out if np.ndim(xi) else float(out[0])


def barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    nodes = np.asarray(nodes, dtype=float)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    return 1.0 / diff.prod(axis=1)


def legendre_eval(n: int, xi):
    """Legendre polynomial of degree ``n`` at ``xi`` (scalar or array)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    return npleg.legval(xi, coeffs)


def legendre_deriv_edge(n: int, m: int) -> float:
    """m-th derivative of the degree-n Legendre polynomial at xi = +1.

    The value at xi = -1 is this times (-1)**(n - m).  Returns 0 when
    m > n.  Uses the exact factorial closed form, evaluated in integer
    arithmetic.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be >= 0")
    if m > n:
        return 0.0
    num = math.factorial(n + m)
    den = (2 ** m) * math.factorial(m) * math.factorial(n - m)
    return num / den


def _legendre_deriv_at(n: int, xi: np.ndarray) -> np.ndarray:
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    return npleg.legval(xi, npleg.legder(coeffs))


def correction_derivatives(p: int, xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """d/dxi of the left and right correction functions at points ``xi``.

    The right correction is (psi_p + psi_{p+1}) / 2; the left one is its
    mirror (-1)**p * (psi_p - psi_{p+1}) / 2.  This pair has unit value at
    its own boundary, zero at the opposite one, and recovers nodal DG.
    """
    xi = np.asarray(xi, dtype=float)
    dp = _legendre_deriv_at(p, xi)
    dp1 = _legendre_deriv_at(p + 1, xi)
    d_right = 0.5 * (dp + dp1)
    d_left = 0.5 * ((-1.0) ** p) * (dp - dp1)
    return d_left, d_right


def build_reference_ops(p: int) -> ReferenceOps:
    """Construct the full operator bundle for order ``p``."""
    rule = gauss_legendre_rule(p)
    pts = rule.points
    n = p + 1

    w = barycentric_weights(pts)
    diff = np.empty((n, n))
    for a in range(n):
        for i in range(n):
            if i != a:
                diff[a, i] = (w[i] / w[a]) / (pts[a] - pts[i])
        diff[a, a] = 0.0
        diff[a, a] = -diff[a].sum()

    ident = np.eye(n)
    extrap_left = np.array([lagrange_interp(pts, ident[i], -1.0) for i in range(n)])
    extrap_right = np.array([lagrange_interp(pts, ident[i], 1.0) for i in range(n)])

    corr_left, corr_right = correction_derivatives(p, pts)
    return ReferenceOps(
        rule=rule,
        diff=diff,
        extrap_left=extrap_left,
        extrap_right=extrap_right,
        corr_left=corr_left,
        corr_right=corr_right,
    )
