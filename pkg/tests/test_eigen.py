import math

import numpy as np
import pytest
from scipy.optimize import brentq

from standbeam.beam_model import DimensionlessParams, nondimensionalize, reference_config
from standbeam.eigen import (CharacteristicContext, ScanSettings, SignConvention, bisect,
                             boundary_rows, characteristic_value, find_eigenvalues, is_buckled,
                             mode_shape, scan_roots)
from standbeam.exceptions import InsufficientRangeError, NotAnEigenvalueError


def classical_betas(n):
    f = lambda b: math.cos(b) * math.cosh(b) + 1.0
    out, grid = [], np.arange(0.5, 20.0, 0.05)
    for a, b in zip(grid[:-1], grid[1:]):
        if f(a) * f(b) < 0:
            out.append(brentq(f, a, b, xtol=1e-14))
    return out[:n]


BARE = CharacteristicContext(DimensionlessParams())


def table_ctx(length, inertia=0.0, eccentricity=0.0, mass=600.0, **kw):
    return CharacteristicContext(nondimensionalize(reference_config(length, mass, inertia, eccentricity, **kw)))


def test_determinant_at_zero_for_unloaded_beam():
    for M, J, e in [(0, 0, 0), (1.0, 0.2, 0.3), (5.0, 0.0, -0.4)]:
        ctx = CharacteristicContext(DimensionlessParams(M, J, e))
        assert characteristic_value(0.0, ctx) == 12.0


def test_classical_roots_of_determinant():
    betas = classical_betas(2)
    assert betas == pytest.approx([1.87510, 4.69409], abs=1e-5)
    for b in betas:
        lo, hi = characteristic_value((b * (1 - 1e-6)) ** 4, BARE), characteristic_value((b * (1 + 1e-6)) ** 4, BARE)
        assert lo * hi < 0


def test_classical_cantilever_constants():
    result = find_eigenvalues(BARE, 2)
    assert result.frequency_parameters == pytest.approx(classical_betas(2), abs=1e-6)
    assert not result.buckled


def test_result_invariants():
    result = find_eigenvalues(table_ctx(45.0, 10000.0, 8.0), 4)
    lam = result.frequency_parameters
    assert np.all(np.diff(result.eigenvalues) > 0)
    np.testing.assert_allclose(lam**4, result.eigenvalues, rtol=4e-16)
    params = table_ctx(45.0, 10000.0, 8.0).params
    np.testing.assert_allclose(result.dimensional_frequencies, np.sqrt(result.eigenvalues) / params.time_scale,
                               rtol=1e-15)
    assert len(result.brackets) == len(result.residuals) == 4


def test_table2_spot_value():
    result = find_eigenvalues(table_ctx(25.0), 2)
    assert result.frequency_parameters == pytest.approx([1.458, 4.140], rel=5e-3)


def test_table3_spot_value():
    result = find_eigenvalues(table_ctx(45.0, 10000.0, 8.0), 2)
    assert result.frequency_parameters == pytest.approx([1.414, 3.621], rel=5e-3)


def test_sign_conventions_coincide_without_tip_load():
    ctx_d = table_ctx(45.0, 10000.0, 8.0, include_tip_weight=False)
    ctx_p = CharacteristicContext(ctx_d.params, sign_convention=SignConvention.PRINTED)
    assert characteristic_value(30.0, ctx_d) == pytest.approx(characteristic_value(30.0, ctx_p), rel=1e-12)


def test_buckling_threshold():
    # heavy-column constant from J_{-1/3}(2/3 sqrt(q)) = 0
    from scipy.special import jv
    q = 9 / 4 * brentq(lambda x: jv(-1 / 3, x), 1.0, 3.0) ** 2
    ei = reference_config(1.0).flexural_rigidity
    critical = (q * ei / (61.08 * 9.81)) ** (1 / 3)
    assert critical == pytest.approx(89.5, abs=0.1)
    below = table_ctx(critical - 0.05, mass=0.0)
    above = table_ctx(critical + 0.05, mass=0.0)
    assert not is_buckled(below)
    assert is_buckled(above)
    r_below = find_eigenvalues(below, 1)
    assert r_below.eigenvalues[0] < 0.05
    r_above = find_eigenvalues(above, 1)
    assert r_above.buckled
    assert r_above.buckling_eigenvalue < 0
    assert abs(r_above.buckling_eigenvalue) < 0.05


def test_buckled_beam_reports_negative_root():
    result = find_eigenvalues(table_ctx(120.0, mass=0.0), 2)
    assert result.buckled
    assert result.buckling_eigenvalue < 0
    assert np.all(result.eigenvalues > 0)


def test_insufficient_range():
    with pytest.raises(InsufficientRangeError) as info:
        find_eigenvalues(BARE, 5, ScanSettings(lambda_max=8.0))
    assert info.value.found == 3


def test_all_roots_below_limit():
    result = find_eigenvalues(BARE, None)
    assert len(result) == 4
    assert result.frequency_parameters == pytest.approx(classical_betas(4), abs=1e-6)


@pytest.mark.parametrize("ctx", [BARE, table_ctx(25.0, 25000.0), table_ctx(65.0, 0.0, 8.0), table_ctx(85.0, mass=0.0)])
def test_scan_robustness(ctx):
    coarse = find_eigenvalues(ctx, None, ScanSettings(step=0.02))
    fine = find_eigenvalues(ctx, None, ScanSettings(step=0.01))
    assert len(coarse) == len(fine)
    np.testing.assert_allclose(coarse.eigenvalues, fine.eigenvalues, rtol=1e-9)


def test_bracket_continuity():
    ctx = table_ctx(35.0, 5000.0, 8.0)
    result = find_eigenvalues(ctx, 3)
    for lo, hi in result.brackets:
        f_lo, f_hi = characteristic_value(lo**4, ctx), characteristic_value(hi**4, ctx)
        assert f_lo * f_hi <= 0
        assert hi - lo <= 1e-10 * hi


def test_residuals_small_relative_to_bracket_scale():
    ctx = table_ctx(55.0, 20000.0, 8.0)
    result = find_eigenvalues(ctx, 2)
    for lam, res in zip(result.frequency_parameters, result.residuals):
        scale = max(abs(characteristic_value((lam - 0.02) ** 4, ctx)), abs(characteristic_value((lam + 0.02) ** 4, ctx)))
        assert res <= 1e-7 * scale


def test_scan_resolves_close_roots():
    f = lambda x: (x - 1.0) * (x - 1.004) * (x - 1.007) * (x - 3.0)
    hits = scan_roots(f, 0.0, 4.0, 0.02, 1e-12)
    assert [h[0] for h in hits] == pytest.approx([1.0, 1.004, 1.007, 3.0], abs=1e-10)


def test_scan_finds_root_pair_in_one_cell():
    f = lambda x: (x - 1.003) * (x - 1.009) + 1e-9
    hits = scan_roots(f, 0.0, 2.0, 0.02, 1e-12)
    assert len(hits) == 2


def test_scan_warns_on_unresolved_dip():
    warnings = []
    f = lambda x: (x - 1.0051) ** 2 + 1e-14
    hits = scan_roots(f, 0.0, 2.0, 0.02, 1e-12, warnings=warnings)
    assert hits == [] and len(warnings) == 1


def test_bisect_requires_bracket():
    with pytest.raises(ValueError):
        bisect(lambda x: x, 1.0, 2.0, 1.0, 2.0, 1e-10)


def classical_mode(beta, z):
    sigma = (math.cosh(beta) + math.cos(beta)) / (math.sinh(beta) + math.sin(beta))
    return np.cosh(beta * z) - np.cos(beta * z) - sigma * (np.sinh(beta * z) - np.sin(beta * z))


@pytest.mark.parametrize("mode", [1, 2])
def test_mode_shape_matches_classical(mode):
    beta = classical_betas(2)[mode - 1]
    shape = mode_shape(beta**4, BARE, 201)
    reference = classical_mode(beta, shape.z)
    reference = reference / np.max(np.abs(reference))
    if reference[-1] < 0:
        reference = -reference
    np.testing.assert_allclose(shape.eta, reference, atol=1e-6)


def test_mode_shape_contract():
    ctx = table_ctx(45.0, 10000.0, 8.0)
    result = find_eigenvalues(ctx, 2)
    for lam in result.eigenvalues:
        shape = mode_shape(lam, ctx, 51)
        assert shape.eta[0] == 0.0
        assert len(shape.samples) == 51
        assert np.max(np.abs(shape.eta)) == pytest.approx(1.0, rel=1e-15)
        assert shape.eta[-1] > 0
        # clamped end: weights only on eta_2, eta_3 so slope at 0 vanishes exactly
        (row1, row2), bases = boundary_rows(lam, ctx)
        a2, a3 = shape.coefficients
        assert a2 * float(bases[0](0.0, 1)) + a3 * float(bases[1](0.0, 1)) == 0.0
        # both free-end conditions hold for the reconstructed weights
        scale = max(math.hypot(*row1), math.hypot(*row2)) * math.hypot(a2, a3)
        assert abs(row2[0] * a2 + row2[1] * a3) <= 1e-8 * scale
        assert abs(row1[0] * a2 + row1[1] * a3) <= 1e-8 * scale


def test_mode_shape_rejects_non_eigenvalue():
    with pytest.raises(NotAnEigenvalueError):
        mode_shape(100.0, BARE)


def test_eccentricity_asymmetry():
    plus = find_eigenvalues(table_ctx(45.0, 10000.0, 8.0), 2).eigenvalues
    minus = find_eigenvalues(table_ctx(45.0, 10000.0, -8.0), 2).eigenvalues
    assert not np.allclose(plus, minus, rtol=1e-3)
