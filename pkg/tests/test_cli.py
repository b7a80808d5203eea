from __future__ import annotations

import json

import pytest

from rectsched.cli import run, solve
from rectsched.errors import UnsupportedMode
from rectsched.geometry import Rect
from rectsched.model import PARALLEL, Instance, parse_schedule, serialize_instance
from suites import SWAP, lattice_instance, parallel_suite, serial_suite


@pytest.fixture
def files(tmp_path):
    def write(name: str, inst: Instance) -> str:
        path = tmp_path / name
        path.write_text(serialize_instance(inst))
        return str(path)

    return write


def test_solve_then_verify(files, tmp_path, capsys):
    inst_path = files("one.json", lattice_instance([((0, 0), (5, 0))]))
    out = tmp_path / "one.sched.json"
    assert run(["solve", "--instance", inst_path, "--out", str(out)]) == 0
    assert len(parse_schedule(out.read_text())) == 1
    assert run(["verify", "--instance", inst_path, "--schedule", str(out)]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "pass"


def test_verify_rejects_a_wrong_schedule(files, tmp_path):
    good = files("one.json", lattice_instance([((0, 0), (5, 0))]))
    other = files("other.json", lattice_instance([((0, 0), (4, 0))]))
    out = tmp_path / "s.json"
    assert run(["solve", "--instance", good, "--out", str(out)]) == 0
    assert run(["verify", "--instance", other, "--schedule", str(out)]) == 2


def test_solve_prints_schedule_json(files, capsys):
    assert run(["solve", "--instance", files("swap.json", lattice_instance(SWAP)), "--solver", "lp"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["steps"]) == 4


def test_infeasible_exit_code(files, capsys):
    inst = lattice_instance([((0, 0), (2, 0)), ((2, 0), (0, 0))], box=Rect(1, 0, 4, 1))
    assert run(["solve", "--instance", files("tight.json", inst), "--max-moves", "3"]) == 2
    assert "infeasible" in capsys.readouterr().out


def test_oracle_prints_the_optimum(files, capsys):
    assert run(["oracle", "--instance", files("swap.json", lattice_instance(SWAP)), "--window", "2,0,9,9"]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_grid_dump(files, capsys):
    assert run(["grid", "--instance", files("swap.json", lattice_instance(SWAP)), "--depth", "0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"xs": ["0/1", "4/1"], "ys": ["0/1"]}


def test_render_writes_frames(files, tmp_path):
    inst_path = files("swap.json", lattice_instance(SWAP))
    sched = tmp_path / "swap.sched.json"
    assert run(["solve", "--instance", inst_path, "--out", str(sched)]) == 0
    frames = tmp_path / "frames"
    assert run(["render", "--instance", inst_path, "--schedule", str(sched), "--out", str(frames)]) == 0
    assert len(list(frames.glob("step_*.svg"))) == 4


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["solve"],
        ["solve", "--instance", "/nonexistent/inst.json"],
        ["grid", "--instance", "x.json", "--depth", "deep"],
        ["oracle", "--instance", "x.json", "--window", "1,2"],
    ],
)
def test_errors_exit_one(argv, capsys):
    assert run(argv) == 1
    err = capsys.readouterr().err
    assert err.startswith("rectsched: error:") and err.count("\n") == 1


def test_missing_file_names_the_path(capsys):
    assert run(["solve", "--instance", "/nonexistent/inst.json"]) == 1
    assert "/nonexistent/inst.json" in capsys.readouterr().err


def test_malformed_instance(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["solve", "--instance", str(bad)]) == 1
    assert str(bad) in capsys.readouterr().err


def test_negative_max_moves(files):
    assert run(["solve", "--instance", files("swap.json", lattice_instance(SWAP)), "--max-moves", "-1"]) == 1


def test_grid_solver_refuses_parallel():
    with pytest.raises(UnsupportedMode):
        solve(lattice_instance(SWAP, PARALLEL), "grid")


@pytest.mark.parametrize("name, inst, window", serial_suite()[:12] + parallel_suite()[:6])
def test_round_trip_on_suite(name, inst, window, files, tmp_path):
    path = files(f"{name}.json", inst)
    out = tmp_path / f"{name}.sched.json"
    assert run(["solve", "--instance", path, "--out", str(out)]) == 0
    assert run(["verify", "--instance", path, "--schedule", str(out)]) == 0
