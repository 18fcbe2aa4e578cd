import numpy as np
import pytest

from holsim import scans
from holsim.model import named_gate
from holsim.pulses import DCNHQC, NHQC
from holsim.scans import (ScanAxis, ScanContext, ScanGrid, read_csv, run_scan,
                          summarize, to_json_dict, write_csv, write_json)


def s_context(**over):
    defaults = dict(gate=named_gate("S"), protocol=DCNHQC)
    defaults.update(over)
    return ScanContext(**defaults)


def eps_grid(points=5, protocol=DCNHQC, **ctx):
    return ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, points),),
                    fixed=s_context(protocol=protocol, **ctx))


def test_axis_validation():
    with pytest.raises(ValueError, match="unknown axis"):
        ScanAxis("voltage", 0.0, 1.0, 5)
    with pytest.raises(ValueError, match="at least 2"):
        ScanAxis("epsilon", 0.0, 1.0, 1)
    with pytest.raises(ValueError, match="lo < hi"):
        ScanAxis("epsilon", 1.0, 0.0, 5)


def test_grid_validation():
    ax = ScanAxis("epsilon", -0.1, 0.1, 3)
    with pytest.raises(ValueError, match="distinct"):
        ScanGrid(axes=(ax, ax), fixed=s_context())


def test_zero_error_point_is_perfect():
    result = run_scan(ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, 3),),
                               fixed=s_context(protocol=NHQC)))
    # middle row is epsilon = 0
    assert abs(result.rows[1][0]) < 1e-15
    assert result.rows[1][1] > 1.0 - 1e-8


def test_row_order_and_count_2d():
    grid = ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, 3),
                          ScanAxis("gamma_rate", 0.0, 4e-4, 2)),
                    fixed=s_context())
    result = run_scan(grid)
    assert len(result.rows) == 6
    # outer (epsilon) axis major
    eps_col = [r[0] for r in result.rows]
    assert eps_col == sorted(eps_col)
    assert [r[1] for r in result.rows[:2]] == [0.0, 4e-4]


def test_corrected_beats_plain_loop_pointwise():
    plain = run_scan(eps_grid(points=7, protocol=NHQC))
    corrected = run_scan(eps_grid(points=7, protocol=DCNHQC))
    for p, c in zip(plain.rows, corrected.rows):
        assert c[2] <= p[2] + 1e-12  # infidelity column


def test_fidelity_monotone_in_gamma():
    grid = ScanGrid(axes=(ScanAxis("gamma_rate", 0.0, 5e-4, 6),), fixed=s_context())
    result = run_scan(grid)
    fids = result.fidelities()
    assert np.all(np.diff(fids) <= 1e-9)


def test_scan_continuity_no_blowups():
    result = run_scan(eps_grid(points=11))
    fids = result.fidelities()
    jumps = np.abs(np.diff(fids))
    assert jumps.max() <= 10*np.median(jumps) + 1e-12


def test_parallel_matches_serial(tmp_path):
    grid = eps_grid(points=6)
    serial = run_scan(grid, jobs=1)
    parallel = run_scan(grid, jobs=2)
    assert serial.rows == parallel.rows
    f1, f2 = tmp_path/"serial.csv", tmp_path/"parallel.csv"
    write_csv(serial, f1)
    write_csv(parallel, f2)
    assert f1.read_bytes() == f2.read_bytes()


def test_csv_schema_and_round_trip(tmp_path):
    grid = ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, 3),
                          ScanAxis("gamma_rate", 0.0, 4e-4, 2)),
                    fixed=s_context())
    result = run_scan(grid)
    path = tmp_path/"scan.csv"
    write_csv(result, path)
    header, rows = read_csv(path)
    assert header == ["epsilon", "gamma_rate", "fidelity", "infidelity", "log10_infidelity"]
    assert len(rows) == 6
    for parsed, original in zip(rows, result.rows):
        assert parsed == tuple(original)  # bit-exact round trip


def test_csv_line_count(tmp_path):
    result = run_scan(eps_grid(points=3))
    path = tmp_path/"scan.csv"
    write_csv(result, path)
    assert len(path.read_text().strip().splitlines()) == 4  # header + 3 rows


def test_log10_floor():
    # fidelity so close to 1 that the log column would diverge
    row = scans._row((0.0,), 1.0)
    assert row[-1] == scans.LOG10_FLOOR
    row = scans._row((0.0,), 1.0 - 1e-15)
    assert row[-1] == scans.LOG10_FLOOR
    row = scans._row((0.0,), 1.0 - 1e-12)
    assert abs(row[-1] + 12.0) < 0.01


def test_json_mirror_matches(tmp_path):
    result = run_scan(eps_grid(points=3))
    payload = to_json_dict(result)
    assert payload["columns"] == result.column_names
    assert payload["rows"] == [list(r) for r in result.rows]
    import json

    path = tmp_path/"scan.json"
    write_json(result, path)
    assert json.loads(path.read_text())["rows"] == [list(r) for r in result.rows]


def test_summary_fields():
    result = run_scan(eps_grid(points=5))
    info = summarize(result)
    assert info["points"] == 5
    assert 0.0 <= info["min_fidelity"] <= info["max_fidelity"] <= 1.0
    assert "epsilon" in info["worst_point"]


def test_failure_carries_coordinates():
    # a corrupt context triggers a failure naming the grid point
    grid = ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, 3),),
                    fixed=s_context(initial="nope"))
    with pytest.raises(RuntimeError, match="epsilon"):
        run_scan(grid, metric="state")


def test_unknown_metric():
    with pytest.raises(ValueError, match="metric"):
        run_scan(eps_grid(points=3), metric="diamond")
