"""Sectioned key-value configuration files (SI units throughout).

Example::

    [beam]
    elastic_modulus_pa = 7.9336e9
    linear_mass_density_kg_per_m = 61.08
    length_m = 25
    outer_diameter_m = 1.238
    inner_diameter_m = 1.219
    # or: second_moment_of_area_m4 = 6.917e-3

    [end_body]
    mass_kg = 600
    rotary_inertia_kg_m2 = 0
    eccentricity_m = 0

    [load]
    gravity_m_per_s2 = 9.81
    include_tip_weight = on

    [solver]
    modes = 2
    sign_convention = derived
    lambda_max = 12
    scan_step = 0.02
    tol = 1e-10

    [sweep]
    parameter = length
    values = 25, 35, 45, 55, 65
    # or: start = 25 / stop = 65 / points = 200

Keys missing from the file fall back to :data:`DEFAULTS` (the reference stack
properties; ``length_m`` has no default).
"""
from __future__ import annotations

import configparser
import os

import numpy as np

from .beam_model import AnnularSection, DirectSection, EndBody, PhysicalConfig
from .eigen import ScanSettings, SignConvention
from .experiments import SolverSettings, SweepSpec, SweptParameter
from .frobenius import TruncationPolicy


class ConfigError(ValueError):
    pass


SCHEMA = {
    "beam": ("elastic_modulus_pa", "linear_mass_density_kg_per_m", "length_m", "outer_diameter_m",
             "inner_diameter_m", "second_moment_of_area_m4"),
    "end_body": ("mass_kg", "rotary_inertia_kg_m2", "eccentricity_m"),
    "load": ("gravity_m_per_s2", "include_tip_weight"),
    "solver": ("modes", "sign_convention", "lambda_max", "scan_step", "tol", "scan_subdivisions",
               "series_tolerance", "series_max_terms"),
    "sweep": ("parameter", "values", "start", "stop", "points"),
}

DEFAULTS = {
    "beam": {"elastic_modulus_pa": "7.9336e9", "linear_mass_density_kg_per_m": "61.08",
             "outer_diameter_m": "1.238", "inner_diameter_m": "1.219"},
    "end_body": {"mass_kg": "0", "rotary_inertia_kg_m2": "0", "eccentricity_m": "0"},
    "load": {"gravity_m_per_s2": "9.81", "include_tip_weight": "on"},
    "solver": {"modes": "2", "sign_convention": "derived", "lambda_max": "12", "scan_step": "0.02",
               "tol": "1e-10", "scan_subdivisions": "10", "series_tolerance": "1e-14",
               "series_max_terms": "600"},
    "sweep": {},
}

_BOOL = {"on": True, "off": False, "true": True, "false": False, "yes": True, "no": False, "1": True, "0": False}


def load_config(path=None, overrides=()) -> dict:
    """Read ``path`` (if given) and apply ``section.key=value`` overrides.

    Returns a plain ``{section: {key: str}}`` mapping with defaults filled in.
    """
    values = {section: dict(entries) for section, entries in DEFAULTS.items()}
    if path is not None:
        if not os.path.isfile(path):
            raise ConfigError(f"config file not found: {path}")
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        try:
            parser.read(path, encoding="utf-8")
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
        for section in parser.sections():
            for key, value in parser.items(section):
                _store(values, section, key, value)
    for item in overrides:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(f"override must look like section.key=value, got {item!r}")
        name, value = item.split("=", 1)
        section, key = name.strip().split(".", 1)
        _store(values, section, key, value.strip())
    return values


def _store(values, section, key, value):
    section, key = section.strip().lower(), key.strip().lower()
    if section not in SCHEMA:
        raise ConfigError(f"unknown section [{section}]")
    if key not in SCHEMA[section]:
        raise ConfigError(f"unknown key {key!r} in [{section}]")
    values[section][key] = value


def _float(values, section, key):
    try:
        return float(values[section][key])
    except KeyError:
        raise ConfigError(f"missing [{section}] {key}") from None
    except ValueError:
        raise ConfigError(f"[{section}] {key} is not a number: {values[section][key]!r}") from None


def _int(values, section, key):
    try:
        return int(values[section][key])
    except KeyError:
        raise ConfigError(f"missing [{section}] {key}") from None
    except ValueError:
        raise ConfigError(f"[{section}] {key} is not an integer: {values[section][key]!r}") from None


def parse_flag(text: str) -> bool:
    try:
        return _BOOL[text.strip().lower()]
    except KeyError:
        raise ConfigError(f"expected on/off, got {text!r}") from None


def physical_config(values) -> PhysicalConfig:
    beam = values["beam"]
    if "second_moment_of_area_m4" in beam:
        section = DirectSection(_float(values, "beam", "second_moment_of_area_m4"))
    else:
        section = AnnularSection(_float(values, "beam", "outer_diameter_m"),
                                 _float(values, "beam", "inner_diameter_m"))
    return PhysicalConfig(
        modulus_of_elasticity=_float(values, "beam", "elastic_modulus_pa"),
        linear_mass_density=_float(values, "beam", "linear_mass_density_kg_per_m"),
        length=_float(values, "beam", "length_m"),
        cross_section=section,
        end_body=EndBody(_float(values, "end_body", "mass_kg"),
                         _float(values, "end_body", "rotary_inertia_kg_m2"),
                         _float(values, "end_body", "eccentricity_m")),
        gravity=_float(values, "load", "gravity_m_per_s2"),
        include_tip_weight_in_axial_load=parse_flag(values["load"]["include_tip_weight"]),
    )


def solver_settings(values) -> SolverSettings:
    try:
        sign = SignConvention(values["solver"]["sign_convention"].strip().lower())
    except ValueError:
        raise ConfigError(f"sign_convention must be 'derived' or 'printed', "
                          f"got {values['solver']['sign_convention']!r}") from None
    try:
        scan = ScanSettings(lambda_max=_float(values, "solver", "lambda_max"),
                            step=_float(values, "solver", "scan_step"),
                            refine_tol=_float(values, "solver", "tol"),
                            subdivisions=_int(values, "solver", "scan_subdivisions"))
        policy = TruncationPolicy(relative_tolerance=_float(values, "solver", "series_tolerance"),
                                  max_terms=_int(values, "solver", "series_max_terms"))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    return SolverSettings(sign, scan, policy)


def sweep_spec(values, output_path=None) -> SweepSpec:
    sweep = values["sweep"]
    if "parameter" not in sweep:
        raise ConfigError("missing [sweep] parameter")
    try:
        parameter = SweptParameter(sweep["parameter"].strip().lower())
    except ValueError:
        raise ConfigError(f"unknown sweep parameter {sweep['parameter']!r}") from None
    if "values" in sweep:
        try:
            points = [float(v) for v in sweep["values"].split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"[sweep] values must be numbers: {sweep['values']!r}") from None
    elif {"start", "stop"} <= sweep.keys():
        count = _int(values, "sweep", "points") if "points" in sweep else 200
        points = np.linspace(_float(values, "sweep", "start"), _float(values, "sweep", "stop"), count).tolist()
    else:
        raise ConfigError("[sweep] needs either values or start/stop")
    if parameter is not SweptParameter.LENGTH and "length_m" not in values["beam"]:
        raise ConfigError("missing [beam] length_m")
    values = {s: dict(v) for s, v in values.items()}
    values["beam"].setdefault("length_m", repr(points[0]))
    try:
        return SweepSpec(physical_config(values), parameter, tuple(points),
                         _int(values, "solver", "modes"), output_path, solver_settings(values))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
