"""Independent reference solvers used for cross-checking.

* :func:`exact_zero_load_roots` solves the unloaded problem in closed form
  with the trigonometric/hyperbolic fundamental system.
* :func:`ritz_eigenvalues` discretizes the full loaded problem with a
  Rayleigh-Ritz model, using either clamped-free beam functions or
  admissible polynomials.

Neither touches the power-series kernel.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg
from scipy.optimize import brentq

from .beam_model import DimensionlessParams
from .eigen import DEFAULT_SCAN, ScanSettings, SignConvention, scan_roots
from .exceptions import InsufficientRangeError, OracleAssemblyError


def clamped_free_frequency(k: int) -> float:
    """k-th root (k >= 1) of ``1 + cos(b) cosh(b) = 0``."""
    if k < 1:
        raise ValueError("mode index starts at 1")
    guess = (2 * k - 1) * math.pi / 2
    # cos(b) + 1/cosh(b) has the same roots and stays bounded
    return brentq(lambda b: math.cos(b) + 1.0 / math.cosh(b), guess - 1.0, guess + 1.0, xtol=1e-15)


def zero_load_determinant(beta: float, end_mass: float, end_inertia: float, eccentricity: float) -> float:
    """Free-end determinant of the unloaded beam in closed form.

    The clamped-end solutions are ``u = cosh - cos`` and ``w = sinh - sin``
    of ``beta * z``, with ``beta**4 = Lambda``.
    """
    M, J, e = end_mass, end_inertia, eccentricity
    lam = beta**4
    ch, sh, c, s = math.cosh(beta), math.sinh(beta), math.cos(beta), math.sin(beta)
    u = (ch - c, beta * (sh + s), beta**2 * (ch + c), beta**3 * (sh - s))
    w = (sh - s, beta * (ch - c), beta**2 * (sh + s), beta**3 * (ch + c))

    def shear(f):
        return f[3] + lam * M * (f[0] + e * f[1])

    def moment(f):
        return f[2] - lam * (M * e * f[0] + (J + M * e * e) * f[1])

    return shear(u) * moment(w) - shear(w) * moment(u)


def exact_zero_load_roots(end_mass: float = 0.0, end_inertia: float = 0.0, eccentricity: float = 0.0,
                          n_roots: int = 2, scan: ScanSettings = DEFAULT_SCAN) -> np.ndarray:
    """Lowest eigenvalues ``Lambda`` of the unloaded beam with an end body."""
    hits = scan_roots(lambda b: zero_load_determinant(b, end_mass, end_inertia, eccentricity),
                      1e-3, scan.lambda_max, scan.step, scan.refine_tol,
                      n_roots=n_roots, subdivisions=scan.subdivisions)
    if len(hits) < n_roots:
        raise InsufficientRangeError(
            f"found {len(hits)} of {n_roots} roots below lambda_max={scan.lambda_max}", found=len(hits))
    return np.array([h[0] for h in hits]) ** 4


class BasisKind(str, enum.Enum):
    """Trial functions for the Ritz model.

    Beam functions all have zero curvature at the free end, so they converge
    slowly once the end body carries rotary inertia; polynomials are the
    default for that reason.
    """

    BEAM_FUNCTIONS = "clamped_free_beam_functions"
    POLYNOMIALS = "admissible_polynomials"


def beam_function(k: int, z, derivative: int = 0):
    """k-th clamped-free beam eigenfunction (or derivative) at ``z``.

    Written as ``h + t`` with the hyperbolic part expressed through
    exponentials so that large ``beta`` does not cancel catastrophically.
    """
    b = clamped_free_frequency(k)
    z = np.asarray(z, dtype=float)
    denom = math.cosh(b) + math.cos(b)
    one_minus = (math.exp(-b) + math.cos(b) + math.sin(b)) / denom
    sigma = 1.0 - one_minus
    # exp(b z) * (1 - sigma) kept bounded by folding exp(-b) into one_minus
    grow = one_minus * np.exp(b * z)
    decay = (1.0 + sigma) * np.exp(-b * z)
    h_even = 0.5 * (grow + decay)
    h_odd = 0.5 * (grow - decay)
    t_even = -np.cos(b * z) + sigma * np.sin(b * z)
    t_odd = np.sin(b * z) + sigma * np.cos(b * z)
    d = derivative % 4
    if d == 0:
        out = h_even + t_even
    elif d == 1:
        out = h_odd + t_odd
    elif d == 2:
        out = h_even - t_even
    else:
        out = h_odd - t_odd
    return b**derivative * out


def polynomial_function(k: int, z, derivative: int = 0):
    """``z**2 * P_{k-1}(2z - 1)`` with ``P`` the Legendre polynomials, k >= 1.

    Spans the same space as ``z**2 ... z**(k+1)`` but keeps the mass matrix
    well conditioned.
    """
    if derivative > 4:
        raise ValueError("derivatives above the fourth are not needed")
    z = np.asarray(z, dtype=float)
    x = 2.0 * z - 1.0
    coef = np.zeros(k)
    coef[-1] = 1.0
    # derivatives of P(2z - 1) with respect to z, orders 0..derivative
    leg = [2.0**j * np.polynomial.legendre.legval(x, np.polynomial.legendre.legder(coef, j))
           for j in range(derivative + 1)]
    # Leibniz rule against z**2, whose derivatives are z**2, 2z, 2, 0, ...
    z2 = [z * z, 2.0 * z, 2.0 * np.ones_like(z)]
    out = np.zeros_like(z)
    for j in range(min(derivative, 2) + 1):
        out = out + math.comb(derivative, j) * z2[j] * leg[derivative - j]
    return out


@dataclass(frozen=True)
class RitzModel:
    n_basis: int
    basis_kind: BasisKind
    stiffness: np.ndarray
    geometric_stiffness: np.ndarray
    mass: np.ndarray
    boundary_inertia: np.ndarray

    @property
    def total_stiffness(self):
        return self.stiffness + self.geometric_stiffness

    @property
    def total_mass(self):
        return self.mass + self.boundary_inertia


def assemble_ritz(params: DimensionlessParams, n_basis: int = 10,
                  basis_kind: BasisKind = BasisKind.POLYNOMIALS,
                  sign_convention: SignConvention = SignConvention.DERIVED,
                  quadrature_points: Optional[int] = None) -> RitzModel:
    """Assemble stiffness, geometric stiffness and mass matrices.

    Geometric stiffness is ``-int p phi_i' phi_j'`` (compression softens).
    Under the printed sign convention the free-end shear condition leaves an
    extra unsymmetric term ``2 p(1) phi_i(1) phi_j'(1)``.
    """
    basis_kind = BasisKind(basis_kind)
    if n_basis < 1:
        raise OracleAssemblyError("n_basis must be positive")
    func = beam_function if basis_kind is BasisKind.BEAM_FUNCTIONS else polynomial_function
    if quadrature_points is None:
        quadrature_points = 96 if basis_kind is BasisKind.BEAM_FUNCTIONS else n_basis + 4
    x, wts = np.polynomial.legendre.leggauss(quadrature_points)
    z = 0.5 * (x + 1.0)
    wts = 0.5 * wts

    ks = range(1, n_basis + 1)
    phi = np.array([func(k, z) for k in ks])
    dphi = np.array([func(k, z, 1) for k in ks])
    ddphi = np.array([func(k, z, 2) for k in ks])
    tip = np.array([float(func(k, 1.0)) for k in ks])
    tip_slope = np.array([float(func(k, 1.0, 1)) for k in ks])

    stiffness = (ddphi * wts) @ ddphi.T
    load = params.p0 + params.gamma * z
    geometric = -(dphi * (wts * load)) @ dphi.T
    p_tip = params.p0 + params.gamma
    geometric = geometric + (1.0 - SignConvention(sign_convention).factor) * p_tip * np.outer(tip, tip_slope)
    mass = (phi * wts) @ phi.T

    M, J, e = params.end_mass, params.end_inertia, params.eccentricity
    boundary = (M * np.outer(tip, tip)
                + M * e * (np.outer(tip, tip_slope) + np.outer(tip_slope, tip))
                + (J + M * e * e) * np.outer(tip_slope, tip_slope))
    return RitzModel(n_basis, basis_kind, stiffness, geometric, mass, boundary)


def ritz_eigenvalues(params: DimensionlessParams, model: Optional[RitzModel] = None,
                     n_roots: int = 2, n_basis: int = 10,
                     basis_kind: BasisKind = BasisKind.POLYNOMIALS,
                     sign_convention: SignConvention = SignConvention.DERIVED) -> np.ndarray:
    """Lowest ``n_roots`` Ritz eigenvalues ``Lambda`` (may be negative when buckled)."""
    if model is None:
        model = assemble_ritz(params, n_basis, basis_kind, sign_convention)
    if model.n_basis < n_roots + 4:
        raise OracleAssemblyError(f"n_basis={model.n_basis} too small for {n_roots} roots")
    K, Mm = model.total_stiffness, model.total_mass
    try:
        linalg.cholesky(Mm, lower=True)
    except linalg.LinAlgError as exc:
        raise OracleAssemblyError("mass matrix is not positive definite") from exc
    if np.allclose(K, K.T, rtol=1e-12, atol=1e-12 * np.abs(K).max()):
        vals = linalg.eigh(0.5 * (K + K.T), Mm, eigvals_only=True)
    else:
        vals = linalg.eig(K, Mm, right=False)
        vals = np.sort(vals.real)
    return np.asarray(vals[:n_roots])
