import csv
import io

import numpy as np
import pytest

from standbeam.beam_model import reference_config
from standbeam.eigen import SignConvention
from standbeam.experiments import (PUBLISHED_TABLES, SolverSettings, SweepSpec, TableConfiguration,
                                   figure_sweep, reproduce_table, run_sweep, solve_point)

BEST = TableConfiguration(SignConvention.DERIVED, True)


def test_length_sweep_matches_published_column():
    spec = SweepSpec(reference_config(25.0, 600.0), "length", (25, 35, 45, 55, 65), 2)
    result = run_sweep(spec)
    np.testing.assert_allclose(result.column("frequency_parameters", 1),
                               [1.458, 1.505, 1.508, 1.465, 1.357], rtol=5e-3)
    assert [row.value for row in result.rows] == [25.0, 35.0, 45.0, 55.0, 65.0]


def test_buckling_transition_in_length_sweep():
    spec = SweepSpec(reference_config(80.0), "length", tuple(np.arange(80.0, 100.0, 1.0)), 2)
    flags = [row.buckled for row in run_sweep(spec).rows]
    assert sum(a != b for a, b in zip(flags, flags[1:])) == 1
    assert flags[0] is False and flags[-1] is True
    buckled = [row for row in run_sweep(spec).rows if row.buckled]
    assert all(row.frequency_parameters == [] and row.buckling_eigenvalue < 0 for row in buckled)


def test_eccentricity_has_no_effect_without_end_mass():
    spec = SweepSpec(reference_config(45.0, 0.0, 5000.0), "eccentricity", (-4.0, 0.0, 3.0, 8.0), 2)
    result = run_sweep(spec)
    for mode in (1, 2):
        col = result.column("eigenvalues", mode)
        assert np.all(col == col[0])


def test_csv_layout_and_determinism(tmp_path):
    spec = SweepSpec(reference_config(30.0, 600.0), "end_inertia", (0.0, 10000.0), 2,
                     output_path=str(tmp_path / "a.csv"))
    run_sweep(spec, timestamp="fixed")
    run_sweep(SweepSpec(spec.base, spec.swept_parameter, spec.values, 2, str(tmp_path / "b.csv")),
              timestamp="fixed")
    a = (tmp_path / "a.csv").read_bytes()
    assert a == (tmp_path / "b.csv").read_bytes()
    text = a.decode("utf-8")
    assert "\r" not in text
    lines = text.split("\n")
    meta = [line for line in lines if line.startswith("#")]
    assert any("sign_convention: derived" in line for line in meta)
    assert any("include_tip_weight: on" in line for line in meta)
    rows = list(csv.reader(line for line in lines if line and not line.startswith("#")))
    header, data = rows[0], rows[1:]
    assert header[0] == "end_inertia [kg m^2]"
    assert "omega_2 [rad/s]" in header and "Lambda_1 [-]" in header
    assert len(data) == 2
    lam1 = float(data[0][header.index("lambda_1 [-]")])
    big1 = float(data[0][header.index("Lambda_1 [-]")])
    assert lam1**4 == pytest.approx(big1, rel=1e-15)


def test_timestamp_only_difference():
    spec = SweepSpec(reference_config(30.0), "length", (30.0,), 1)
    a = run_sweep(spec, timestamp="t1").to_csv_string()
    b = run_sweep(spec, timestamp="t2").to_csv_string()
    strip = lambda s: [line for line in s.splitlines() if not line.startswith("# timestamp")]
    assert strip(a) == strip(b)


def test_unwritable_output():
    spec = SweepSpec(reference_config(30.0), "length", (30.0,), 1, output_path="/nonexistent-dir/x.csv")
    with pytest.raises(OSError):
        run_sweep(spec)


def test_point_failure_does_not_abort():
    settings = SolverSettings(scan=SolverSettings().scan.__class__(lambda_max=3.0))
    spec = SweepSpec(reference_config(30.0), "length", (20.0, 30.0), 3, settings=settings)
    result = run_sweep(spec)
    assert len(result.rows) == 2
    assert all("InsufficientRangeError" in row.error for row in result.rows)
    assert "InsufficientRangeError" in result.to_csv_string()


@pytest.mark.parametrize("bad", [dict(values=()), dict(values=(2.0, 1.0)), dict(n_modes=0)])
def test_spec_invariants(bad):
    kwargs = dict(base=reference_config(30.0), swept_parameter="length", values=(1.0, 2.0), n_modes=2)
    kwargs.update(bad)
    with pytest.raises(ValueError):
        SweepSpec(**kwargs)


@pytest.fixture(scope="module")
def table2():
    return reproduce_table("table2", [BEST, TableConfiguration(SignConvention.PRINTED, True)])


def test_published_cells():
    t2, t3 = PUBLISHED_TABLES["table2"], PUBLISHED_TABLES["table3"]
    assert t2["mode2"][1][3] == 3.871
    assert t3["mode1"][3][4] == 1.397


def test_grid_completeness(table2):
    for grid in table2.grids:
        assert grid.computed.shape == (2, 5, 6)
        assert grid.cell_count == 30
        assert np.isfinite(grid.computed).all()


def test_best_configuration(table2):
    assert table2.best.configuration == BEST
    assert table2.best.max_deviation <= 5e-3
    report = table2.report_text()
    assert "best configuration: sign=derived, tip_weight=on" in report


def test_comparison_csv(table2):
    buf = io.StringIO()
    table2.to_csv(buf)
    rows = list(csv.reader(io.StringIO(buf.getvalue())))
    assert len(rows) == 1 + 2 * 60
    assert sum(int(r[-1]) for r in rows[1:]) == 60


def test_unknown_table():
    with pytest.raises(ValueError):
        reproduce_table("table9")


def test_figure_sweeps():
    for name in ("length", "end_mass", "eccentricity"):
        spec = figure_sweep(name, points=200)
        assert len(spec.values) == 200
    with pytest.raises(ValueError):
        figure_sweep("fig99")


def test_solve_point_matches_direct_solver():
    from standbeam.beam_model import nondimensionalize
    from standbeam.eigen import CharacteristicContext, find_eigenvalues
    cfg = reference_config(35.0, 600.0, 5000.0, 8.0)
    row = solve_point(cfg, 2)
    direct = find_eigenvalues(CharacteristicContext(nondimensionalize(cfg)), 2)
    assert row.eigenvalues == direct.eigenvalues.tolist()
