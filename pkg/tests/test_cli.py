import numpy as np

from dcckp.cli import main
from dcckp.model import parse_instance


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_instance_round_trips(capsys, tmp_path):
    path = tmp_path / "inst.txt"
    code, out, _ = run_cli(capsys, "gen-instance", "--kind", "bsc", "--n", "8",
                           "--delta", "50", "--seed", "3", "--out", str(path))
    assert code == 0
    inst = parse_instance(path.read_text())
    assert inst.n == 8 and inst.delta == 50
    assert inst.kind == "bounded-strongly-correlated"


def test_gen_instance_stdout(capsys):
    code, out, _ = run_cli(capsys, "gen-instance", "--n", "3", "--delta", "25")
    assert code == 0
    assert parse_instance(out).n == 3


def test_gen_instance_bad_arguments(capsys):
    code, _, err = run_cli(capsys, "gen-instance", "--n", "0")
    assert code == 1
    assert "error" in err


def test_run_and_summarize_and_stats(capsys, tmp_path):
    out_dir = tmp_path / "camp"
    code, out, _ = run_cli(
        capsys, "run", "--n", "10", "--delta", "25", "--alpha", "0.01",
        "--r", "300", "--tau", "150", "--iters", "400", "--warmup", "100",
        "--runs", "3", "--algos", "ea11,posdc", "--bounds", "chernoff",
        "--seed", "5", "--out", str(out_dir))
    assert code == 0
    assert out.startswith("cell_id,")
    runs_csv = out_dir / "runs.csv"
    assert runs_csv.exists()

    code, out, _ = run_cli(capsys, "summarize", str(runs_csv))
    assert code == 0
    assert out.splitlines()[0].startswith("cell_id,")
    assert len(out.splitlines()) == 3  # header + two cells

    code, out, _ = run_cli(capsys, "stats", str(runs_csv))
    assert code == 0
    assert "H=" in out and "(1)" in out and "(2)" in out


def test_run_missing_out_flag_is_config_error(capsys):
    code, _, _ = run_cli(capsys, "run", "--n", "10")
    assert code == 1


def test_summarize_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "summarize", str(tmp_path / "nope.csv"))
    assert code == 1


def test_dump_schedule(capsys, tmp_path):
    path = tmp_path / "sched.csv"
    code, _, _ = run_cli(capsys, "dump-schedule", "--c0", "500", "--tau", "10",
                         "--r", "50", "--warmup", "20", "--iters", "60",
                         "--c-max", "1000", "--seed", "2", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "iteration,capacity"
    assert len(lines) == 61
    assert lines[1] == "0,500"
    assert lines[20] == "19,500"  # constant through the warmup
    caps = [int(line.split(",")[1]) for line in lines[1:]]
    assert max(abs(b - a) for a, b in zip(caps, caps[1:])) <= 50


def test_dump_dp(capsys, tmp_path):
    inst_path = tmp_path / "inst.txt"
    run_cli(capsys, "gen-instance", "--n", "5", "--delta", "25", "--seed", "1",
            "--out", str(inst_path))
    out_path = tmp_path / "dp.csv"
    code, _, _ = run_cli(capsys, "dump-dp", str(inst_path), "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "capacity,optimal_profit"
    assert lines[1] == "0,0"
    profits = np.array([int(line.split(",")[1]) for line in lines[1:]])
    assert (np.diff(profits) >= 0).all()


def test_unknown_subcommand(capsys):
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == 1
