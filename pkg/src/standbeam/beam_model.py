"""Physical description of the standing beam and its dimensionless reduction.

The eigenproblem depends only on five numbers: the end-body mass, rotary
inertia and eccentricity ratios, and the axial load at the base together
with its slope along the span. Everything else here is bookkeeping to get
from SI inputs to that tuple and back (time and length scales).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

from .exceptions import InvalidGeometryError


@dataclass(frozen=True)
class AnnularSection:
    outer_diameter: float
    inner_diameter: float = 0.0


@dataclass(frozen=True)
class DirectSection:
    second_moment_of_area: float


CrossSection = Union[AnnularSection, DirectSection]


@dataclass(frozen=True)
class EndBody:
    mass: float = 0.0
    rotary_inertia: float = 0.0
    eccentricity: float = 0.0


@dataclass(frozen=True)
class PhysicalConfig:
    """Dimensional beam, end body and gravity, all SI.

    ``gravity`` is signed: positive for a standing beam (the load compresses
    the beam), negative for a hanging one, zero for no axial load.
    """

    modulus_of_elasticity: float
    linear_mass_density: float
    length: float
    cross_section: CrossSection
    end_body: EndBody = field(default_factory=EndBody)
    gravity: float = 9.81
    include_tip_weight_in_axial_load: bool = True

    def __post_init__(self):
        for name in ("modulus_of_elasticity", "linear_mass_density", "length"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidGeometryError(f"{name} must be positive, got {value!r}")
        if not math.isfinite(self.gravity):
            raise InvalidGeometryError(f"gravity must be finite, got {self.gravity!r}")
        body = self.end_body
        if not (body.mass >= 0 and body.rotary_inertia >= 0):
            raise InvalidGeometryError("end body mass and rotary inertia must be non-negative")
        if not math.isfinite(body.eccentricity):
            raise InvalidGeometryError("end body eccentricity must be finite")
        section_properties(self.cross_section)

    @property
    def flexural_rigidity(self) -> float:
        return self.modulus_of_elasticity * section_properties(self.cross_section)


@dataclass(frozen=True)
class DimensionlessParams:
    """Parameters of the dimensionless eigenproblem.

    The axial load is ``p(z) = p0 + gamma * z`` on ``0 <= z <= 1`` with
    compression positive. ``time_scale`` converts a dimensionless eigenvalue
    into rad/s via ``omega = sqrt(Lambda) / time_scale``.
    """

    end_mass: float = 0.0
    end_inertia: float = 0.0
    eccentricity: float = 0.0
    p0: float = 0.0
    gamma: float = 0.0
    time_scale: float = 1.0
    length_scale: float = 1.0

    def __post_init__(self):
        if not (self.end_mass >= 0 and self.end_inertia >= 0):
            raise ValueError("end_mass and end_inertia must be non-negative")
        if not (self.time_scale > 0 and self.length_scale > 0):
            raise ValueError("time_scale and length_scale must be positive")

    def load(self, z: float) -> float:
        return self.p0 + self.gamma * z

    @property
    def key(self) -> tuple:
        """The tuple that fully determines the dimensionless spectrum."""
        return (self.end_mass, self.end_inertia, self.eccentricity, self.p0, self.gamma)


def section_properties(cross_section: CrossSection) -> float:
    """Second moment of area of the cross-section in m^4."""
    if isinstance(cross_section, DirectSection):
        value = cross_section.second_moment_of_area
        if not (math.isfinite(value) and value > 0):
            raise InvalidGeometryError(f"second moment of area must be positive, got {value!r}")
        return value
    if isinstance(cross_section, AnnularSection):
        d_out, d_in = cross_section.outer_diameter, cross_section.inner_diameter
        if not (math.isfinite(d_out) and d_out > 0):
            raise InvalidGeometryError(f"outer diameter must be positive, got {d_out!r}")
        if not (0 <= d_in < d_out):
            raise InvalidGeometryError(
                f"inner diameter must satisfy 0 <= d_in < d_out, got d_in={d_in!r}, d_out={d_out!r}")
        return math.pi * (d_out**4 - d_in**4) / 64.0
    raise InvalidGeometryError(f"unsupported cross-section {cross_section!r}")


def axial_load(config: PhysicalConfig, height: float) -> float:
    """Compressive axial force in N at height ``height`` above the clamp."""
    body = config.end_body.mass if config.include_tip_weight_in_axial_load else 0.0
    return config.gravity * (config.linear_mass_density * (config.length - height) + body)


def nondimensionalize(config: PhysicalConfig) -> DimensionlessParams:
    m, L = config.linear_mass_density, config.length
    EI = config.flexural_rigidity
    body = config.end_body
    load_factor = L**2 / EI
    p0 = axial_load(config, 0.0) * load_factor
    p1 = axial_load(config, L) * load_factor
    return DimensionlessParams(
        end_mass=body.mass / (m * L),
        end_inertia=body.rotary_inertia / (m * L**3),
        eccentricity=body.eccentricity / L,
        p0=p0,
        gamma=p1 - p0,
        time_scale=math.sqrt(m * L**4 / EI),
        length_scale=L,
    )


def reference_config(length: float, end_mass: float = 0.0, end_inertia: float = 0.0,
                     eccentricity: float = 0.0, *, include_tip_weight: bool = True,
                     gravity: float = 9.81) -> PhysicalConfig:
    """Stack properties used by the parameter studies: E = 7.9336 GPa,
    m = 61.08 kg/m, tube 1.238 m outer / 1.219 m inner diameter."""
    return PhysicalConfig(
        modulus_of_elasticity=7.9336e9,
        linear_mass_density=61.08,
        length=length,
        cross_section=AnnularSection(outer_diameter=1.238, inner_diameter=1.219),
        end_body=EndBody(end_mass, end_inertia, eccentricity),
        gravity=gravity,
        include_tip_weight_in_axial_load=include_tip_weight,
    )
