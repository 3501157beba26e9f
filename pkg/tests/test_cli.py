import pytest

from renewal_bhatt.cli import parse_config, run_command
from renewal_bhatt.errors import ConfigError
from renewal_bhatt.selftest import CHECKS
from renewal_bhatt.sweep import read_csv

PAIR = ["--alpha1", "10", "--beta1", "1", "--alpha2", "20", "--beta2", "2"]


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", *PAIR, "--t", "20000")
    assert code == 0
    assert float(out) == pytest.approx(6.7082e-5, rel=1e-5)


def test_bound_unit_free(capsys):
    code, out, _ = run(capsys, "bound", "--theta", str(2 ** -0.5), "--gamma", "0.5", "--t", "2e4")
    assert code == 0 and float(out) == pytest.approx(6.7082e-5, rel=1e-5)


def test_bound_degenerate(capsys):
    code, _, err = run(capsys, "bound", "--alpha2", "10", "--beta2", "1", "--t", "100")
    assert code == 3 and "coincide" in err


@pytest.mark.parametrize("argv", [
    ["bound", "--t", "100"],
    ["bound", "--alpha2", "20", "--theta", "0.5", "--beta2", "2", "--t", "100"],
    ["bound", *PAIR, "--t", "-1"],
    ["bound", *PAIR, "--t", "abc"],
    ["mc-b", *PAIR, "--t", "100", "--m", "10"],
    ["oracle-b", *PAIR, "--t", "25", "--k", "10"],
    ["nonsense"],
])
def test_invalid_parameters(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_oracle(capsys):
    code, out, err = run(capsys, "oracle-b", *PAIR, "--t", "25", "--k", "2000")
    assert code == 0
    assert float(out) == pytest.approx(0.69559, abs=1e-3)
    assert "discretization" in err


def test_mc_b_prints_value_and_std_err(capsys):
    code, out, _ = run(capsys, "mc-b", *PAIR, "--t", "25", "--m", "20000", "--seed", "3")
    value, se = map(float, out.split())
    assert code == 0 and abs(value - 0.695603) <= 4 * se


def test_pe(capsys):
    code, out, _ = run(capsys, "pe", *PAIR, "--t", "5", "--m", "100", "--seed", "3")
    assert code == 0 and out.split() == ["0.5", "0.0"]


def test_parse_config():
    cfg = parse_config("# comment\nt_count = 2\n  seed=5  # trailing\nvmax = 0.5\n\n")
    assert cfg == {"t_count": 2, "seed": 5, "vmax": 0.5}
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config("colour = red")
    with pytest.raises(ConfigError):
        parse_config("t_count 2")
    with pytest.raises(ConfigError):
        parse_config("t_count = two")


def test_sweep_config_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "grid.cfg"
    csv_path = tmp_path / "out.csv"
    cfg.write_text(f"t_count = 2\ntheta_count = 2\ngamma_count = 2\nm_bhatt = 500\n"
                   f"seed = 4\ncsv = {csv_path}\nheatmap = y\n")
    code, _, err = run(capsys, "sweep", "--config", str(cfg), "--t-count", "3")
    assert code == 0
    rows = read_csv(csv_path)
    assert len(rows) == 12 and rows[0]["m_b"] == 500
    assert "t_count = 3" in err and "seed = 4" in err
    assert (tmp_path / "out_y.svg").exists()


def test_sweep_requires_seed_when_random(capsys, tmp_path):
    code, _, err = run(capsys, "sweep", "--m-bhatt", "10", "--csv", str(tmp_path / "a.csv"))
    assert code == 2 and "seed" in err


def test_sweep_unknown_config_key(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nested.key = 1\n")
    assert run(capsys, "sweep", "--config", str(cfg), "--csv", str(tmp_path / "a.csv"))[0] == 2


def test_sweep_io_failure(capsys, tmp_path):
    code, _, err = run(capsys, "sweep", "--t-count", "1", "--csv",
                       str(tmp_path / "no" / "such" / "dir.csv"))
    assert code == 4 and "dir.csv" in err
    assert run(capsys, "sweep", "--config", str(tmp_path / "absent.cfg"), "--csv", "x.csv")[0] == 4


def test_sweep_worker_count_byte_identical(capsys, tmp_path):
    args = ["sweep", "--t-count", "3", "--m-bhatt", "2000", "--m-pe", "2000", "--seed", "8"]
    assert run(capsys, *args, "--csv", str(tmp_path / "a.csv"), "--workers", "1")[0] == 0
    assert run(capsys, *args, "--csv", str(tmp_path / "b.csv"), "--workers", "3")[0] == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_selftest_exit_code_reflects_checks(capsys):
    code, out, _ = run(capsys, "selftest")
    lines = out.splitlines()
    assert len(lines) == len(CHECKS)
    assert all(line.startswith(("PASS", "FAIL")) for line in lines)
    assert code == (0 if all(line.startswith("PASS") for line in lines) else 1)
