import dataclasses
import math

import pytest
from hypothesis import given, settings, strategies as st

from standbeam.beam_model import (AnnularSection, DimensionlessParams, DirectSection, EndBody,
                                  PhysicalConfig, axial_load, nondimensionalize, reference_config,
                                  section_properties)
from standbeam.eigen import CharacteristicContext, find_eigenvalues
from standbeam.exceptions import InvalidGeometryError

EI_REFERENCE = 7.9336e9 * math.pi * (1.238**4 - 1.219**4) / 64


def test_annulus_second_moment():
    value = section_properties(AnnularSection(1.238, 1.219))
    assert value == pytest.approx(6.917e-3, rel=1e-3)
    assert value == pytest.approx(math.pi * (1.238**4 - 1.219**4) / 64, rel=1e-15)


def test_solid_circle_limit():
    assert section_properties(AnnularSection(0.3, 0.0)) == pytest.approx(math.pi * 0.3**4 / 64, rel=1e-15)


def test_direct_passthrough():
    assert section_properties(DirectSection(2.0e-3)) == 2.0e-3


@pytest.mark.parametrize("section", [
    AnnularSection(1.0, 1.0),
    AnnularSection(1.0, 1.2),
    AnnularSection(-1.0, 0.0),
    AnnularSection(1.0, -0.1),
    DirectSection(0.0),
    DirectSection(-1e-3),
])
def test_invalid_geometry(section):
    with pytest.raises(InvalidGeometryError):
        section_properties(section)


@pytest.mark.parametrize("field,value", [
    ("modulus_of_elasticity", 0.0),
    ("linear_mass_density", -1.0),
    ("length", 0.0),
])
def test_config_invariants(field, value):
    base = dict(modulus_of_elasticity=1.0, linear_mass_density=1.0, length=1.0,
                cross_section=DirectSection(1.0))
    base[field] = value
    with pytest.raises(InvalidGeometryError):
        PhysicalConfig(**base)


def test_negative_end_mass_rejected():
    with pytest.raises(InvalidGeometryError):
        reference_config(25.0, end_mass=-1.0)
    with pytest.raises(InvalidGeometryError):
        reference_config(25.0, end_inertia=-1.0)


def test_table_row_ratios():
    params = nondimensionalize(reference_config(25.0, 600.0))
    assert params.end_mass == pytest.approx(600 / (61.08 * 25), rel=1e-14)
    assert params.end_mass == pytest.approx(0.39293, abs=5e-6)
    assert params.end_inertia == 0.0
    assert params.eccentricity == 0.0


def test_scaled_groups():
    params = nondimensionalize(reference_config(35.0, 600.0, 15000.0, 8.0))
    assert params.end_inertia == pytest.approx(15000 / (61.08 * 35**3), rel=1e-14)
    assert params.eccentricity == pytest.approx(8 / 35, rel=1e-15)
    assert params.time_scale == pytest.approx(math.sqrt(61.08 * 35**4 / EI_REFERENCE), rel=1e-14)
    assert params.length_scale == 35.0


def test_load_slope_without_tip_weight():
    params = nondimensionalize(reference_config(65.0, 600.0, include_tip_weight=False))
    assert abs(params.gamma) == pytest.approx(2.998, abs=1e-3)
    assert params.gamma == pytest.approx(-61.08 * 9.81 * 65**3 / EI_REFERENCE, rel=1e-13)
    # tip weight excluded: free end carries no axial force
    assert params.p0 + params.gamma == pytest.approx(0.0, abs=1e-14)


def test_slope_independent_of_tip_weight():
    on = nondimensionalize(reference_config(65.0, 600.0))
    off = nondimensionalize(reference_config(65.0, 600.0, include_tip_weight=False))
    assert on.gamma == pytest.approx(off.gamma, rel=1e-14)
    assert on.p0 - off.p0 == pytest.approx(600 * 9.81 * 65**2 / EI_REFERENCE, rel=1e-13)


def test_unloaded_bare_beam():
    params = nondimensionalize(reference_config(40.0, gravity=0.0))
    assert params.key == (0.0, 0.0, 0.0, 0.0, 0.0)


def test_standing_and_hanging_signs():
    standing = nondimensionalize(reference_config(40.0, 100.0))
    hanging = nondimensionalize(reference_config(40.0, 100.0, gravity=-9.81))
    assert standing.p0 > 0 and standing.gamma < 0
    assert hanging.p0 == -standing.p0 and hanging.gamma == -standing.gamma


@settings(max_examples=40, deadline=None)
@given(length=st.floats(1.0, 150.0), mass=st.floats(0.0, 5000.0), gravity=st.floats(-20.0, 20.0),
       tip=st.booleans())
def test_load_profile_consistency(length, mass, gravity, tip):
    cfg = reference_config(length, mass, gravity=gravity, include_tip_weight=tip)
    params = nondimensionalize(cfg)
    scale = length**2 / cfg.flexural_rigidity
    ends = [axial_load(cfg, 0.0) * scale, axial_load(cfg, length) * scale]
    # p(1) = p0 + (p1 - p0) rounds relative to the larger end load
    magnitude = max(abs(v) for v in ends)
    for z, expected in zip((0.0, 1.0), ends):
        assert abs(params.load(z) - expected) <= 1e-12 * magnitude


def test_scale_invariance():
    # doubling E and I-free mass density together with matching end body keeps the groups fixed
    a = reference_config(30.0, 300.0, 4000.0, 2.0)
    b = dataclasses.replace(
        a, modulus_of_elasticity=a.modulus_of_elasticity * 2, linear_mass_density=a.linear_mass_density * 2,
        end_body=EndBody(600.0, 8000.0, 2.0), gravity=a.gravity)
    pa, pb = nondimensionalize(a), nondimensionalize(b)
    assert pa.key == pytest.approx(pb.key, rel=1e-14)
    # identical groups give identical spectra, whatever the reference scales
    shared = DimensionlessParams(*pa.key)
    rescaled = DimensionlessParams(*pa.key, time_scale=123.0, length_scale=7.0)
    r1 = find_eigenvalues(CharacteristicContext(shared))
    r2 = find_eigenvalues(CharacteristicContext(rescaled))
    assert r1.eigenvalues.tobytes() == r2.eigenvalues.tobytes()


def test_dimensionless_invariants():
    with pytest.raises(ValueError):
        DimensionlessParams(end_mass=-0.1)
    with pytest.raises(ValueError):
        DimensionlessParams(time_scale=0.0)
