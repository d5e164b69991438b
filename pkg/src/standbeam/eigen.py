"""Characteristic determinant, root search and mode shapes.

The clamped end kills the ``eta_0`` and ``eta_1`` components, so the free-end
conditions reduce to a 2x2 system in the weights of ``eta_2`` and ``eta_3``.
Its determinant ``D(Lambda)`` is scanned for sign changes on a grid uniform in
the frequency parameter ``lambda = Lambda**0.25`` and every bracket is refined
by bisection.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .beam_model import DimensionlessParams
from .exceptions import InsufficientRangeError, NotAnEigenvalueError
from .frobenius import DEFAULT_POLICY, BoundaryState, TruncationPolicy, build_basis, evaluate_boundary


class SignConvention(str, enum.Enum):
    """Sign of the axial-load term in the free-end shear condition.

    ``DERIVED`` uses ``eta''' + p(1) eta'``, which follows from the force
    balance; ``PRINTED`` flips it to ``eta''' - p(1) eta'``.
    """

    DERIVED = "derived"
    PRINTED = "printed"

    @property
    def factor(self) -> float:
        return 1.0 if self is SignConvention.DERIVED else -1.0


@dataclass(frozen=True)
class CharacteristicContext:
    params: DimensionlessParams
    policy: TruncationPolicy = DEFAULT_POLICY
    sign_convention: SignConvention = SignConvention.DERIVED


@dataclass(frozen=True)
class ScanSettings:
    lambda_max: float = 12.0
    step: float = 0.02
    refine_tol: float = 1e-10
    subdivisions: int = 10

    def __post_init__(self):
        if not (self.step > 0 and self.refine_tol > 0 and self.lambda_max > self.step):
            raise ValueError("scan requires step > 0, refine_tol > 0 and lambda_max > step")
        if self.subdivisions < 2:
            raise ValueError("subdivisions must be at least 2")


DEFAULT_SCAN = ScanSettings()


@dataclass
class EigenResult:
    eigenvalues: np.ndarray
    frequency_parameters: np.ndarray
    dimensional_frequencies: np.ndarray
    buckled: bool
    brackets: list
    residuals: np.ndarray
    buckling_eigenvalue: Optional[float] = None
    warnings: list = field(default_factory=list)

    def __len__(self):
        return len(self.eigenvalues)


@dataclass(frozen=True)
class ModeShape:
    coefficients: tuple
    z: np.ndarray
    eta: np.ndarray
    normalization: str = "max_abs_one"

    @property
    def samples(self):
        return list(zip(self.z.tolist(), self.eta.tolist()))


def boundary_rows(eigenvalue: float, ctx: CharacteristicContext):
    """Free-end operators applied to ``eta_2`` and ``eta_3``.

    Returns ``((B1(eta2), B1(eta3)), (B2(eta2), B2(eta3)))`` together with the
    two series bases, where B1 is the shear condition and B2 the moment
    condition at z = 1.
    """
    prm = ctx.params
    lam = float(eigenvalue)
    bases = [build_basis(lam, prm.p0, prm.gamma, r, ctx.policy) for r in (2, 3)]
    states = [evaluate_boundary(b) for b in bases]
    shear = [_shear(s, lam, prm, ctx.sign_convention) for s in states]
    moment = [_moment(s, lam, prm) for s in states]
    return (tuple(shear), tuple(moment)), bases


def _shear(state: BoundaryState, lam: float, prm: DimensionlessParams, sign: SignConvention) -> float:
    M, e = prm.end_mass, prm.eccentricity
    p1 = prm.p0 + prm.gamma
    return state.d3 + sign.factor * p1 * state.d1 + lam * M * (state.eta + e * state.d1)


def _moment(state: BoundaryState, lam: float, prm: DimensionlessParams) -> float:
    M, J, e = prm.end_mass, prm.end_inertia, prm.eccentricity
    return state.d2 - lam * (M * e * state.eta + (J + M * e * e) * state.d1)


def characteristic_value(eigenvalue: float, ctx: CharacteristicContext) -> float:
    """Determinant ``D(Lambda)`` of the free-end boundary matrix."""
    if not math.isfinite(eigenvalue):
        raise ValueError(f"eigenvalue must be finite, got {eigenvalue!r}")
    ((b1_2, b1_3), (b2_2, b2_3)), _ = boundary_rows(eigenvalue, ctx)
    return b1_3 * b2_2 - b1_2 * b2_3


def _sign(x: float) -> int:
    return int(x > 0) - int(x < 0)


def bisect(fun: Callable[[float], float], lo: float, hi: float, f_lo: float, f_hi: float,
           rel_tol: float, max_iter: int = 200):
    """Bisection on a sign-change bracket until ``hi - lo <= rel_tol * |hi|``.

    Returns ``(root, (lo, hi), |fun(root)|)``.
    """
    if _sign(f_lo) * _sign(f_hi) > 0:
        raise ValueError("bracket endpoints do not have opposite signs")
    if f_lo == 0.0:
        return lo, (lo, lo), 0.0
    if f_hi == 0.0:
        return hi, (hi, hi), 0.0
    for _ in range(max_iter):
        if hi - lo <= rel_tol * max(abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = fun(mid)
        if f_mid == 0.0:
            return mid, (mid, mid), 0.0
        if _sign(f_mid) == _sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    root = 0.5 * (lo + hi)
    return root, (lo, hi), abs(fun(root))


def scan_roots(fun: Callable[[float], float], start: float, stop: float, step: float,
               rel_tol: float, n_roots: Optional[int] = None, subdivisions: int = 10,
               warnings: Optional[list] = None):
    """Roots of ``fun`` on ``(start, stop]`` by sign scan plus bisection.

    Every coarse cell with a sign change is re-sampled ``subdivisions`` times
    finer so that an odd number of close roots is resolved into separate
    brackets. Cells where ``|fun|`` has a deep interior dip without a sign
    change are re-sampled as well, since they may hide a root pair; if the
    finer pass still shows no sign change the cell is reported in
    ``warnings``.

    Returns a list of ``(root, bracket, residual)`` in ascending order,
    stopping early once ``n_roots`` roots are located.
    """
    found = []
    x_prev, f_prev = start, fun(start)
    x_pp, f_pp = None, None
    k = 1
    while True:
        x = min(start + k * step, stop)
        f = fun(x)
        if _sign(f_prev) * _sign(f) <= 0:
            found.extend(_refine_cell(fun, x_prev, x, f_prev, f, rel_tol, subdivisions))
        elif (x_pp is not None and _sign(f_pp) == _sign(f_prev)
              and abs(f_prev) < abs(f_pp) and abs(f_prev) < abs(f)):
            found.extend(_probe_dip(fun, x_pp, x, f_pp, f, rel_tol, subdivisions, warnings))
        if n_roots is not None and len(found) >= n_roots:
            break
        if x >= stop:
            break
        x_pp, f_pp = x_prev, f_prev
        x_prev, f_prev = x, f
        k += 1
    found.sort(key=lambda item: item[0])
    return found if n_roots is None else found[:n_roots]


def _refine_cell(fun, lo, hi, f_lo, f_hi, rel_tol, subdivisions):
    xs = np.linspace(lo, hi, subdivisions + 1).tolist()
    fs = [f_lo] + [fun(x) for x in xs[1:-1]] + [f_hi]
    out = []
    for i in range(subdivisions):
        a, b, fa, fb = xs[i], xs[i + 1], fs[i], fs[i + 1]
        # an exact zero on a node belongs to the cell that ends there
        if fb == 0.0:
            out.append((b, (b, b), 0.0))
            continue
        if fa == 0.0:
            continue
        if _sign(fa) * _sign(fb) < 0:
            out.append(bisect(fun, a, b, fa, fb, rel_tol))
    return out


def _probe_dip(fun, lo, hi, f_lo, f_hi, rel_tol, subdivisions, warnings):
    xs = np.linspace(lo, hi, 2 * subdivisions + 1).tolist()
    fs = [f_lo] + [fun(x) for x in xs[1:-1]] + [f_hi]
    out = []
    for i in range(len(xs) - 1):
        if fs[i] != 0.0 and _sign(fs[i]) * _sign(fs[i + 1]) < 0:
            out.append(bisect(fun, xs[i], xs[i + 1], fs[i], fs[i + 1], rel_tol))
    if not out and warnings is not None:
        dip = min(abs(v) for v in fs)
        if dip < 1e-2 * max(abs(f_lo), abs(f_hi)):
            warnings.append(f"possible unresolved root pair in lambda cell [{lo:.6g}, {hi:.6g}]")
    return out


def is_buckled(ctx: CharacteristicContext) -> bool:
    """True when the static determinant ``D(0)`` has changed sign.

    ``D(0)`` does not depend on the end body and equals 12 for an unloaded
    beam; it first changes sign at the critical load, where the lowest
    eigenvalue passes through zero.
    """
    return characteristic_value(0.0, ctx) <= 0.0


def find_eigenvalues(ctx: CharacteristicContext, n_roots: Optional[int] = 2,
                     scan: ScanSettings = DEFAULT_SCAN) -> EigenResult:
    """Lowest positive eigenvalues of the standing beam.

    ``n_roots=None`` returns every root below ``scan.lambda_max``. When the
    beam is buckled the negative eigenvalue is located separately and stored
    as ``buckling_eigenvalue``; it is never reported as a frequency.
    """
    if n_roots is not None and n_roots < 1:
        raise ValueError("n_roots must be at least 1")

    def d_of_lambda(lam_param):
        return characteristic_value(lam_param**4, ctx)

    warnings: list = []
    buckled = is_buckled(ctx)
    buckling_eigenvalue = _negative_root(ctx, scan, warnings) if buckled else None

    roots = scan_roots(d_of_lambda, 0.0, scan.lambda_max, scan.step, scan.refine_tol,
                       n_roots=n_roots, subdivisions=scan.subdivisions, warnings=warnings)
    roots = [item for item in roots if item[0] > 0.0]
    if n_roots is not None and len(roots) < n_roots:
        raise InsufficientRangeError(
            f"found {len(roots)} of {n_roots} requested roots below lambda_max={scan.lambda_max}",
            found=len(roots))

    lam = np.array([item[0] for item in roots])
    big = lam**4
    return EigenResult(
        eigenvalues=big,
        frequency_parameters=lam,
        dimensional_frequencies=np.sqrt(big) / ctx.params.time_scale,
        buckled=buckled,
        brackets=[item[1] for item in roots],
        residuals=np.array([item[2] for item in roots]),
        buckling_eigenvalue=buckling_eigenvalue,
        warnings=warnings,
    )


def _negative_root(ctx, scan, warnings):
    def d_of_mu(mu):
        return characteristic_value(-(mu**4), ctx)

    hits = scan_roots(d_of_mu, 0.0, scan.lambda_max, scan.step, scan.refine_tol,
                      n_roots=1, subdivisions=scan.subdivisions)
    if not hits:
        warnings.append("buckled, but no negative eigenvalue found within the scan range")
        return None
    return -(hits[0][0] ** 4)


def mode_shape(eigenvalue: float, ctx: CharacteristicContext, grid_points: int = 101,
               singular_tol: float = 1e-6) -> ModeShape:
    """Mode shape at a converged eigenvalue, scaled to max |eta| = 1.

    The weights of ``eta_2`` and ``eta_3`` come from the null vector of the
    2x2 free-end matrix, taken from whichever row has the larger norm. The
    sign is chosen so the tip displacement is positive.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    (row1, row2), bases = boundary_rows(eigenvalue, ctx)
    n1, n2 = math.hypot(*row1), math.hypot(*row2)
    det = row1[1] * row2[0] - row1[0] * row2[1]
    if not abs(det) <= singular_tol * n1 * n2:
        raise NotAnEigenvalueError(
            f"|D|={abs(det):.3e} is not small relative to row norms "
            f"{n1:.3e}, {n2:.3e} at Lambda={eigenvalue!r}")
    row = row1 if n1 >= n2 else row2
    a2, a3 = -row[1], row[0]
    z = np.linspace(0.0, 1.0, grid_points)
    eta = a2 * bases[0](z) + a3 * bases[1](z)
    peak = eta[np.argmax(np.abs(eta))]
    tip = eta[-1]
    scale = abs(peak) if peak != 0 else 1.0
    if tip < 0 or (tip == 0 and peak < 0):
        scale = -scale
    # + 0.0 turns -0.0 at the clamp into 0.0
    return ModeShape(coefficients=(a2 / scale, a3 / scale), z=z, eta=eta / scale + 0.0)
