"""Parameter sweeps, table reproduction and CSV output."""
from __future__ import annotations

import csv
import dataclasses
import datetime as _dt
import enum
import io
import math
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .beam_model import PhysicalConfig, nondimensionalize, reference_config
from .eigen import (DEFAULT_SCAN, CharacteristicContext, ScanSettings, SignConvention,
                    find_eigenvalues)
from .frobenius import DEFAULT_POLICY, TruncationPolicy


class SweptParameter(str, enum.Enum):
    LENGTH = "length"
    END_MASS = "end_mass"
    END_INERTIA = "end_inertia"
    ECCENTRICITY = "eccentricity"

    @property
    def unit(self) -> str:
        return {"length": "m", "end_mass": "kg", "end_inertia": "kg m^2", "eccentricity": "m"}[self.value]


@dataclass(frozen=True)
class SolverSettings:
    sign_convention: SignConvention = SignConvention.DERIVED
    scan: ScanSettings = DEFAULT_SCAN
    policy: TruncationPolicy = DEFAULT_POLICY

    def metadata(self) -> dict:
        return {
            "sign_convention": self.sign_convention.value,
            "lambda_max": repr(self.scan.lambda_max),
            "scan_step": repr(self.scan.step),
            "refine_tol": repr(self.scan.refine_tol),
            "scan_subdivisions": str(self.scan.subdivisions),
            "series_relative_tolerance": repr(self.policy.relative_tolerance),
            "series_max_terms": str(self.policy.max_terms),
            "series_consecutive_small_terms": str(self.policy.consecutive_small_terms_required),
        }


@dataclass(frozen=True)
class SweepSpec:
    base: PhysicalConfig
    swept_parameter: SweptParameter
    values: tuple
    n_modes: int = 2
    output_path: Optional[str] = None
    settings: SolverSettings = field(default_factory=SolverSettings)

    def __post_init__(self):
        object.__setattr__(self, "swept_parameter", SweptParameter(self.swept_parameter))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.n_modes < 1:
            raise ValueError("n_modes must be at least 1")

    def config_at(self, value: float) -> PhysicalConfig:
        body = self.base.end_body
        if self.swept_parameter is SweptParameter.LENGTH:
            return dataclasses.replace(self.base, length=value)
        if self.swept_parameter is SweptParameter.END_MASS:
            body = dataclasses.replace(body, mass=value)
        elif self.swept_parameter is SweptParameter.END_INERTIA:
            body = dataclasses.replace(body, rotary_inertia=value)
        else:
            body = dataclasses.replace(body, eccentricity=value)
        return dataclasses.replace(self.base, end_body=body)


@dataclass
class SweepRow:
    value: float
    eigenvalues: list
    frequency_parameters: list
    frequencies: list
    buckled: bool
    residuals: list
    buckling_eigenvalue: Optional[float] = None
    error: str = ""


@dataclass
class SweepResult:
    swept_parameter: SweptParameter
    n_modes: int
    rows: list
    metadata: dict

    def column(self, name: str, mode: int = 1) -> np.ndarray:
        """One result column as an array; ``name`` is a :class:`SweepRow` field."""
        out = []
        for row in self.rows:
            entry = getattr(row, name)
            if isinstance(entry, list):
                out.append(entry[mode - 1] if len(entry) >= mode else math.nan)
            else:
                out.append(entry)
        return np.array(out, dtype=float)

    def header(self) -> list:
        n = self.n_modes
        cols = [f"{self.swept_parameter.value} [{self.swept_parameter.unit}]"]
        cols += [f"Lambda_{i} [-]" for i in range(1, n + 1)]
        cols += [f"lambda_{i} [-]" for i in range(1, n + 1)]
        cols += [f"omega_{i} [rad/s]" for i in range(1, n + 1)]
        cols += ["buckled", "buckling_Lambda [-]"]
        cols += [f"residual_{i} [-]" for i in range(1, n + 1)]
        cols += ["error"]
        return cols

    def to_csv(self, stream) -> None:
        for key, value in self.metadata.items():
            stream.write(f"# {key}: {value}\n")
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(self.header())
        n = self.n_modes
        for row in self.rows:
            def pad(values):
                return [_fmt(v) for v in values] + [""] * (n - len(values))
            writer.writerow([_fmt(row.value)] + pad(row.eigenvalues) + pad(row.frequency_parameters)
                            + pad(row.frequencies) + [str(int(row.buckled)), _fmt(row.buckling_eigenvalue)]
                            + pad(row.residuals) + [row.error])

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            self.to_csv(fh)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def solve_point(config: PhysicalConfig, n_modes: int, settings: SolverSettings = SolverSettings()) -> SweepRow:
    """Solve one configuration; failures are captured in ``SweepRow.error``."""
    params = nondimensionalize(config)
    ctx = CharacteristicContext(params, settings.policy, settings.sign_convention)
    try:
        result = find_eigenvalues(ctx, n_modes, settings.scan)
    except Exception as exc:  # per-row failure must not abort a sweep
        return SweepRow(math.nan, [], [], [], False, [], None, f"{type(exc).__name__}: {exc}")
    if result.buckled:
        return SweepRow(math.nan, [], [], [], True, [], result.buckling_eigenvalue, "")
    return SweepRow(
        math.nan,
        [float(v) for v in result.eigenvalues],
        [float(v) for v in result.frequency_parameters],
        [float(v) for v in result.dimensional_frequencies],
        False,
        [float(v) for v in result.residuals],
    )


def run_sweep(spec: SweepSpec, timestamp: Optional[str] = None) -> SweepResult:
    """Solve every sweep point in input order and optionally write CSV.

    ``timestamp`` overrides the metadata timestamp (useful for byte-identical
    reruns).
    """
    if spec.output_path is not None:
        directory = os.path.dirname(os.path.abspath(spec.output_path))
        if not os.path.isdir(directory) or not os.access(directory, os.W_OK):
            raise OSError(f"cannot write sweep output to {spec.output_path!r}")
    rows = []
    for value in spec.values:
        row = solve_point(spec.config_at(value), spec.n_modes, spec.settings)
        row.value = value
        rows.append(row)
    base = spec.base
    metadata = {
        "generator": f"standbeam {__version__}",
        "timestamp": timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "swept_parameter": spec.swept_parameter.value,
        "modulus_of_elasticity_pa": repr(base.modulus_of_elasticity),
        "linear_mass_density_kg_per_m": repr(base.linear_mass_density),
        "length_m": repr(base.length),
        "flexural_rigidity_n_m2": repr(base.flexural_rigidity),
        "end_mass_kg": repr(base.end_body.mass),
        "end_rotary_inertia_kg_m2": repr(base.end_body.rotary_inertia),
        "end_eccentricity_m": repr(base.end_body.eccentricity),
        "gravity_m_per_s2": repr(base.gravity),
        "include_tip_weight": "on" if base.include_tip_weight_in_axial_load else "off",
        **spec.settings.metadata(),
    }
    result = SweepResult(spec.swept_parameter, spec.n_modes, rows, metadata)
    if spec.output_path is not None:
        result.write(spec.output_path)
    return result


# Published frequency parameters lambda = Lambda**0.25 for M~ = 600 kg, rows
# L = 25..65 m, columns J~ = 0..25000 kg m^2.
TABLE_LENGTHS = (25.0, 35.0, 45.0, 55.0, 65.0)
TABLE_INERTIAS = (0.0, 5000.0, 10000.0, 15000.0, 20000.0, 25000.0)
TABLE_END_MASS = 600.0
PUBLISHED_TABLES = {
    "table2": {
        "eccentricity": 0.0,
        "mode1": [
            [1.458, 1.452, 1.446, 1.439, 1.433, 1.427],
            [1.505, 1.502, 1.499, 1.497, 1.494, 1.491],
            [1.508, 1.506, 1.505, 1.503, 1.502, 1.500],
            [1.465, 1.464, 1.463, 1.463, 1.462, 1.461],
            [1.357, 1.356, 1.356, 1.355, 1.355, 1.354],
        ],
        "mode2": [
            [4.140, 3.875, 3.646, 3.464, 3.32, 3.202],
            [4.188, 4.079, 3.972, 3.871, 3.778, 3.692],
            [4.219, 4.164, 4.108, 4.054, 4.000, 3.949],
            [4.234, 4.202, 4.17, 4.139, 4.107, 4.076],
            [4.234, 4.214, 4.194, 4.174, 4.154, 4.134],
        ],
    },
    "table3": {
        "eccentricity": 8.0,
        "mode1": [
            [1.266, 1.262, 1.258, 1.255, 1.251, 1.247],
            [1.376, 1.373, 1.371, 1.369, 1.367, 1.365],
            [1.417, 1.415, 1.414, 1.413, 1.412, 1.411],
            [1.399, 1.399, 1.398, 1.397, 1.397, 1.396],
            [1.310, 1.310, 1.309, 1.309, 1.308, 1.308],
        ],
        "mode2": [
            [3.280, 3.215, 3.157, 3.104, 3.055, 3.011],
            [3.509, 3.466, 3.426, 3.388, 3.352, 3.317],
            [3.678, 3.649, 3.621, 3.594, 3.568, 3.542],
            [3.800, 3.780, 3.760, 3.741, 3.722, 3.703],
            [3.881, 3.867, 3.853, 3.839, 3.825, 3.812],
        ],
    },
}


@dataclass(frozen=True)
class TableConfiguration:
    sign_convention: SignConvention
    include_tip_weight: bool

    @property
    def label(self) -> str:
        return f"sign={self.sign_convention.value}, tip_weight={'on' if self.include_tip_weight else 'off'}"


ALL_CONFIGURATIONS = tuple(TableConfiguration(s, t) for s in SignConvention for t in (True, False))


@dataclass
class TableGrid:
    """Computed frequency parameters on the 5 x 6 table grid for one configuration."""

    configuration: TableConfiguration
    computed: np.ndarray  # shape (2 modes, 5 lengths, 6 inertias)
    published: np.ndarray
    errors: list

    @property
    def relative_deviation(self) -> np.ndarray:
        return np.abs(self.computed / self.published - 1.0)

    @property
    def max_deviation(self) -> float:
        dev = self.relative_deviation
        return float(np.nanmax(dev)) if np.isfinite(dev).any() else math.inf

    @property
    def cell_count(self) -> int:
        return int(self.computed[0].size)


@dataclass
class TableComparison:
    table_id: str
    grids: list

    @property
    def best(self) -> TableGrid:
        return min(self.grids, key=lambda g: (g.max_deviation, g.configuration.label))

    def grid_for(self, configuration: TableConfiguration) -> TableGrid:
        for grid in self.grids:
            if grid.configuration == configuration:
                return grid
        raise KeyError(configuration)

    def report_text(self) -> str:
        best = self.best
        lines = [f"{self.table_id}: computed vs published lambda (M~ = {TABLE_END_MASS:g} kg, "
                 f"e~ = {PUBLISHED_TABLES[self.table_id]['eccentricity']:g} m)"]
        for grid in self.grids:
            mark = "  <- best" if grid is best else ""
            lines.append(f"  {grid.configuration.label:<34} max rel. deviation {grid.max_deviation:.3e}{mark}")
        lines.append(f"best configuration: {best.configuration.label}")
        header = f"{'L [m]':>6} {'mode':>4} " + " ".join(f"{'J~=' + format(j, 'g'):>17}" for j in TABLE_INERTIAS)
        lines.append(header)
        for m in range(2):
            for i, L in enumerate(TABLE_LENGTHS):
                cells = " ".join(f"{best.computed[m, i, j]:8.4f}/{best.published[m, i, j]:<8.3f}"
                                 for j in range(len(TABLE_INERTIAS)))
                lines.append(f"{L:6g} {m + 1:4d} {cells}")
        return "\n".join(lines)

    def to_csv(self, stream) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["table", "sign_convention", "tip_weight", "length [m]", "end_inertia [kg m^2]",
                         "mode", "computed_lambda [-]", "published_lambda [-]", "relative_deviation [-]",
                         "best"])
        best = self.best
        for grid in self.grids:
            cfg = grid.configuration
            dev = grid.relative_deviation
            for m in range(2):
                for i, L in enumerate(TABLE_LENGTHS):
                    for j, J in enumerate(TABLE_INERTIAS):
                        writer.writerow([self.table_id, cfg.sign_convention.value,
                                         "on" if cfg.include_tip_weight else "off", _fmt(L), _fmt(J), m + 1,
                                         _fmt(float(grid.computed[m, i, j])),
                                         _fmt(float(grid.published[m, i, j])),
                                         _fmt(float(dev[m, i, j])), int(grid is best)])


def table_grid(table_id: str, configuration: TableConfiguration,
               scan: ScanSettings = DEFAULT_SCAN, policy: TruncationPolicy = DEFAULT_POLICY) -> TableGrid:
    data = PUBLISHED_TABLES[table_id]
    settings = SolverSettings(configuration.sign_convention, scan, policy)
    computed = np.full((2, len(TABLE_LENGTHS), len(TABLE_INERTIAS)), math.nan)
    errors = []
    for i, L in enumerate(TABLE_LENGTHS):
        for j, J in enumerate(TABLE_INERTIAS):
            cfg = reference_config(L, TABLE_END_MASS, J, data["eccentricity"],
                                   include_tip_weight=configuration.include_tip_weight)
            row = solve_point(cfg, 2, settings)
            if row.error or row.buckled:
                errors.append((L, J, row.error or "buckled"))
                continue
            computed[:, i, j] = row.frequency_parameters
    published = np.array([data["mode1"], data["mode2"]], dtype=float)
    return TableGrid(configuration, computed, published, errors)


def reproduce_table(table_id: str, configurations: Sequence[TableConfiguration] = ALL_CONFIGURATIONS,
                    scan: ScanSettings = DEFAULT_SCAN, policy: TruncationPolicy = DEFAULT_POLICY) -> TableComparison:
    """Recompute a published table under each configuration and compare."""
    if table_id not in PUBLISHED_TABLES:
        raise ValueError(f"unknown table {table_id!r}; expected one of {sorted(PUBLISHED_TABLES)}")
    return TableComparison(table_id, [table_grid(table_id, c, scan, policy) for c in configurations])


def figure_sweep(figure: str, points: int = 200, output_path: Optional[str] = None,
                 settings: SolverSettings = SolverSettings()) -> SweepSpec:
    """Sweep specification for one of the parameter-study figures.

    ``length`` covers 5-95 m with no end body (crosses the self-weight
    buckling length); ``end_mass`` covers 0-1200 kg at L = 45 m with J~ = e~ = 0;
    ``eccentricity`` covers 0-8 m at L = 45 m, M~ = 600 kg, J~ = 20000 kg m^2.
    """
    if figure == "length":
        base = reference_config(45.0)
        values = np.linspace(5.0, 95.0, points)
    elif figure == "end_mass":
        base = reference_config(45.0)
        values = np.linspace(0.0, 1200.0, points)
    elif figure == "eccentricity":
        base = reference_config(45.0, TABLE_END_MASS, 20000.0)
        values = np.linspace(0.0, 8.0, points)
    else:
        raise ValueError(f"unknown figure sweep {figure!r}")
    return SweepSpec(base, figure, tuple(values.tolist()), 2, output_path, settings)

