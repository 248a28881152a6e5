import json
import math
import os

import numpy as np
import pytest

from sqvac import (
    AngularAverageSpec,
    ConfigurationError,
    GaussianWignerSpec,
    GridGeometry,
    coherent_state,
    identity_residual,
    rasterize,
    squeezed_vacuum,
)
from sqvac.io import (
    atomic_write,
    load_grid,
    load_report,
    load_state,
    obj_to_state,
    save_grid,
    save_report,
    save_state,
    state_to_obj,
)


# ------------------------------------------------------------- state JSON

def test_fock_state_roundtrip_exact(tmp_path):
    path = tmp_path / "state.json"
    orig = squeezed_vacuum(math.log(2.0), 68)
    save_state(path, orig)
    loaded = load_state(path)
    assert loaded.trunc == 68
    # json floats reparse to the identical doubles
    assert np.array_equal(loaded.amps, orig.amps)


def test_fock_state_keeps_imaginary_parts(tmp_path):
    path = tmp_path / "state.json"
    orig = coherent_state(0.5 + 0.25j, 32)
    save_state(path, orig)
    assert np.array_equal(load_state(path).amps, orig.amps)


def test_gauss_state_roundtrip(tmp_path):
    path = tmp_path / "state.json"
    spec = GaussianWignerSpec.two_angle_mixture(0.3, 0.2, math.pi / 4, 2.2)
    save_state(path, spec)
    assert load_state(path) == spec


def test_angular_average_roundtrip(tmp_path):
    path = tmp_path / "state.json"
    save_state(path, AngularAverageSpec(2.2))
    assert load_state(path) == AngularAverageSpec(2.2)


def test_state_serialization_rejects_unknown():
    with pytest.raises(ConfigurationError):
        state_to_obj(42)
    with pytest.raises(ConfigurationError):
        obj_to_state({"format": "mystery-v9"})
    with pytest.raises(ConfigurationError):
        obj_to_state({"format": "fock-v1", "trunc": 5, "amps": [[1.0, 0.0]]})


# --------------------------------------------------------------- grid CSV

def small_grid():
    return rasterize(GaussianWignerSpec.pure_state(2.0), GridGeometry.square(12.0, 65))


def test_grid_roundtrip_bit_exact(tmp_path):
    path = tmp_path / "grid.csv"
    grid = small_grid()
    save_grid(path, grid, ["alpha", "seed 7"])
    loaded, comments = load_grid(path)
    assert comments == ["alpha", "seed 7"]
    assert (loaded.x0, loaded.dx, loaded.p0, loaded.dp) == \
        (grid.x0, grid.dx, grid.p0, grid.dp)
    assert np.array_equal(loaded.values, grid.values)
    assert np.array_equal(loaded.xs, grid.xs)
    assert np.array_equal(loaded.ps, grid.ps)


def test_roundtrip_preserves_residual_bitwise(tmp_path):
    # the whole point of the 17-digit format: downstream numbers cannot move
    path = tmp_path / "grid.csv"
    grid = rasterize(GaussianWignerSpec.pure_state(2.0))
    save_grid(path, grid)
    loaded, _ = load_grid(path)
    assert identity_residual(loaded) == identity_residual(grid)


def test_grid_rejects_wrong_magic(tmp_path):
    path = tmp_path / "grid.csv"
    path.write_text("# some-other-format 0 1 33 0 1 33\n")
    with pytest.raises(ConfigurationError):
        load_grid(path)


def test_grid_rejects_truncated_file(tmp_path):
    path = tmp_path / "grid.csv"
    save_grid(path, small_grid())
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:-10]) + "\n")
    with pytest.raises(ConfigurationError):
        load_grid(path)


def test_grid_rejects_tampered_coordinates(tmp_path):
    path = tmp_path / "grid.csv"
    save_grid(path, small_grid())
    lines = path.read_text().splitlines()
    first, rest = lines[1].split(",", 1)  # first data row
    lines[1] = "99," + rest
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(ConfigurationError):
        load_grid(path)


# ------------------------------------------------------------ reports, I/O

def test_report_roundtrip_and_determinism(tmp_path):
    obj = {"suite": "demo", "cases": [{"label": "a", "measured": 0.5,
                                       "bound": 1.0, "pass": True}],
           "artifacts": []}
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    save_report(p1, obj)
    save_report(p2, obj)
    assert load_report(p1) == obj
    assert p1.read_bytes() == p2.read_bytes()
    json.loads(p1.read_text())  # valid JSON document


def test_atomic_write_leaves_no_temp_files(tmp_path):
    target = tmp_path / "out.txt"
    atomic_write(target, "payload\n")
    assert target.read_text() == "payload\n"
    assert os.listdir(tmp_path) == ["out.txt"]
