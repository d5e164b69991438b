"""Power-series fundamental solutions of the beam eigen-ODE.

The ODE is

    eta'''' + ((p0 + gamma*z) eta')' = Lambda * eta,   0 <= z <= 1.

``z = 0`` is an ordinary point, so all four independent solutions are plain
integer-power series. The solution with index ``r`` is normalized so that
``eta_r(z) = z**r + O(z**4)``; its coefficients beyond the fourth follow from
the three-term-plus-one recurrence in :func:`build_basis`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import SeriesRangeError, TruncationError

RANGE_LIMIT = 1e250
MIN_ORDER = 8


@dataclass(frozen=True)
class TruncationPolicy:
    relative_tolerance: float = 1e-14
    max_terms: int = 600
    consecutive_small_terms_required: int = 4

    def __post_init__(self):
        if not self.relative_tolerance > 0:
            raise ValueError("relative_tolerance must be positive")
        if self.max_terms < 16:
            raise ValueError("max_terms must be at least 16")
        if self.consecutive_small_terms_required < 1:
            raise ValueError("consecutive_small_terms_required must be at least 1")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class SeriesBasis:
    root: int
    coefficients: tuple
    eigenvalue: float
    p0: float
    gamma: float

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z, derivative: int = 0):
        """Evaluate the truncated series (or a derivative) at ``z``."""
        return evaluate(self, z, derivative)


@dataclass(frozen=True)
class BoundaryState:
    """Solution and first three derivatives at the free end z = 1."""

    eta: float
    d1: float
    d2: float
    d3: float
    tail_estimate: float

    def as_tuple(self):
        return (self.eta, self.d1, self.d2, self.d3)


def build_basis(eigenvalue: float, p0: float, gamma: float, root: int,
                policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesBasis:
    """Coefficients of the fundamental solution ``eta_root``.

    For n >= 4::

        a_n = -(p0 (n-3)(n-2) a_{n-2} + gamma (n-3)^2 a_{n-3} - Lambda a_{n-4})
              / (n (n-1) (n-2) (n-3))

    Terms are generated until ``consecutive_small_terms_required`` successive
    terms each change all four boundary sums (value and three derivatives at
    z = 1) by less than ``relative_tolerance`` relative to the running sums.
    """
    if root not in (0, 1, 2, 3):
        raise ValueError(f"indicial root must be 0, 1, 2 or 3, got {root!r}")
    lam, p0, gamma = float(eigenvalue), float(p0), float(gamma)
    if not (math.isfinite(lam) and math.isfinite(p0) and math.isfinite(gamma)):
        raise ValueError("eigenvalue and load must be finite")

    tol = policy.relative_tolerance
    needed = policy.consecutive_small_terms_required
    a = [0.0, 0.0, 0.0, 0.0]
    a[root] = 1.0
    # running boundary sums: value, first, second, third derivative at z = 1
    s0 = 1.0
    s1 = float(root)
    s2 = float(root * (root - 1))
    s3 = float(root * (root - 1) * (root - 2))
    small = 0
    last = 0.0
    n = 4
    while True:
        if n > policy.max_terms:
            raise TruncationError(
                f"series for root {root} at Lambda={lam!r} did not converge in "
                f"{policy.max_terms} terms", tail_estimate=last)
        an = -(p0 * (n - 3) * (n - 2) * a[n - 2]
               + gamma * (n - 3) ** 2 * a[n - 3]
               - lam * a[n - 4]) / (n * (n - 1) * (n - 2) * (n - 3))
        a.append(an)
        t1 = n * an
        t2 = (n - 1) * t1
        t3 = (n - 2) * t2
        s0 += an
        s1 += t1
        s2 += t2
        s3 += t3
        if max(abs(s0), abs(s1), abs(s2), abs(s3)) > RANGE_LIMIT:
            raise SeriesRangeError(f"partial sum exceeded {RANGE_LIMIT:g} at n={n}")
        if (abs(an) <= tol * abs(s0) and abs(t1) <= tol * abs(s1)
                and abs(t2) <= tol * abs(s2) and abs(t3) <= tol * abs(s3)):
            small += 1
        else:
            small = 0
        if an != 0.0:
            last = abs(t3) if t3 != 0.0 else abs(an)
        if small >= needed and n >= MIN_ORDER:
            break
        n += 1
    return SeriesBasis(root=root, coefficients=tuple(a), eigenvalue=lam, p0=p0, gamma=gamma)


def evaluate_boundary(basis: SeriesBasis) -> BoundaryState:
    """Value and derivatives of ``basis`` at z = 1.

    Each sum is accumulated exactly rounded (``math.fsum``); terms grow before
    they decay when Lambda is large, so plain summation loses digits.
    """
    t0 = basis.coefficients
    # k-th derivative term: n (n-1) ... (n-k+1) a_n, zero for n < k
    t1 = [n * x for n, x in enumerate(t0)]
    t2 = [(n - 1) * x for n, x in enumerate(t1)]
    t3 = [(n - 2) * x for n, x in enumerate(t2)]
    tail = max(abs(t0[-1]), abs(t1[-1]), abs(t2[-1]), abs(t3[-1]))
    return BoundaryState(math.fsum(t0), math.fsum(t1), math.fsum(t2), math.fsum(t3), tail)


def evaluate(basis: SeriesBasis, z, derivative: int = 0):
    """Series (or its ``derivative``-th derivative) at points ``z`` via Horner."""
    if derivative < 0:
        raise ValueError("derivative order must be non-negative")
    a = np.asarray(basis.coefficients, dtype=float)
    n = np.arange(len(a))
    if derivative:
        scale = np.ones_like(a)
        for j in range(derivative):
            scale *= n - j
        a = (a * scale)[derivative:]
    return np.polynomial.polynomial.polyval(np.asarray(z, dtype=float), a)


def fundamental_system(eigenvalue: float, p0: float, gamma: float,
                       policy: TruncationPolicy = DEFAULT_POLICY, roots=(0, 1, 2, 3)):
    return [build_basis(eigenvalue, p0, gamma, r, policy) for r in roots]


def ode_residual(basis: SeriesBasis, z):
    """Residual of the eigen-ODE for the truncated series at ``z``."""
    lam, p0, gamma = basis.eigenvalue, basis.p0, basis.gamma
    z = np.asarray(z, dtype=float)
    return (evaluate(basis, z, 4) + (p0 + gamma * z) * evaluate(basis, z, 2)
            + gamma * evaluate(basis, z, 1) - lam * evaluate(basis, z, 0))
