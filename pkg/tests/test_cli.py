# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
import json

# site
import pytest

# internal
from divgame import cli
from divgame.typeins import ResidualCheck, ResidualReport
from divgame.montecarlo import FixedTime, FirstHitting
from divgame.exceptions import ConfigInvalid


FAST_SIM = ["--paths", "20", "--dt", "0.01", "--horizon", "2", "--budget-paths", "0"]


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def write_config(tmp_path, content):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(content), encoding="utf-8")
    return str(path)


def test_solve(tmp_path):
    out = tmp_path / "solve.json"
    assert cli.main(["solve", "--out", str(out)]) == 0
    record = read_json(out)
    assert record["passed"] is True
    assert record["a0"] == pytest.approx(0.419, abs=1e-3)
    assert record["alpha"] == pytest.approx(0.079, abs=1e-3)


def test_solve_to_stdout(capsys):
    assert cli.main(["solve"]) == 0
    assert "a_hat" in json.loads(capsys.readouterr().out)


def test_boundary_csv(tmp_path):
    out = tmp_path / "boundary.csv"
    assert cli.main(["boundary", "--points", "11", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,b_x"
    assert len(lines) == 12
    assert float(lines[1].split(",")[1]) == pytest.approx(0.339, abs=1e-3)


def test_surface_csv(tmp_path):
    out = tmp_path / "surface.csv"
    assert cli.main(["surface", "--nx", "5", "--nz", "5", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,z,u2,region"
    assert len(lines) > 5


def test_verify(tmp_path):
    out = tmp_path / "verify.json"
    assert cli.main(["verify", "--nx", "50", "--nz", "50", "--out", str(out)]) == 0
    record = read_json(out)
    assert record["passed"] is True
    assert "gradient_violation" in record and "reflection_points" in record


def test_verify_failure(tmp_path, monkeypatch):
    failing = ResidualReport([ResidualCheck("gradient", 1.0, 1e-5, 10)], 1e-4)
    monkeypatch.setattr(cli, "verify_variational", lambda eq, nx, nz: failing)
    out = tmp_path / "verify.json"
    assert cli.main(["verify", "--out", str(out)]) == 1
    assert read_json(out)["passed"] is False


def test_simulate_symmetric_defaults_y0(tmp_path):
    out = tmp_path / "sim.json"
    code = cli.main(["simulate", "--game", "symmetric", "--x0", "0.3", "--out", str(out)] + FAST_SIM)
    record = read_json(out)
    assert code in (0, 1)
    assert record["game"] == "symmetric"
    assert record["y0"] == record["x0"] == 0.3
    assert record["player1_n"] == 20
    assert "agreement1_mean" in record


def test_simulate_asymmetric(tmp_path):
    out = tmp_path / "sim.json"
    cli.main(["simulate", "--out", str(out)] + FAST_SIM)
    record = read_json(out)
    assert record["game"] == "asymmetric"
    assert (record["x0"], record["y0"]) == (0.2, 0.5)
    assert record["follower_first"] == 0


def test_deviate(tmp_path):
    out = tmp_path / "deviate.json"
    cli.main(["deviate", "--role", "follower", "--trials", "0.1,0.2", "--out", str(out)] + FAST_SIM)
    record = read_json(out)
    assert [row["trial"] for row in record["rows"]] == [0.1, 0.2]
    assert all(row["role"] == "follower" for row in record["rows"])


def test_indiff_stop_at_once(tmp_path):
    out = tmp_path / "indiff.json"
    assert cli.main(["indiff", "--rules", "time:0", "--out", str(out)] + FAST_SIM) == 0
    record = read_json(out)
    assert record["y0"] == record["x0"]
    assert [row["rule"] for row in record["rows"]] == ["time:0"]


def test_invalid_parameters():
    assert cli.main(["solve", "--sigma", "-1"]) == 2
    assert cli.main(["solve", "--mu-hat", "0.5"]) == 2


def test_config_file(tmp_path):
    out = tmp_path / "solve.json"
    config = write_config(tmp_path, {"sigma": -1.0, "r": 0.8})
    # flags win over the file
    assert cli.main(["solve", "--config", config, "--sigma", "0.4", "--out", str(out)]) == 0
    assert cli.main(["solve", "--config", config]) == 2


def test_config_unknown_key(tmp_path):
    assert cli.main(["solve", "--config", write_config(tmp_path, {"bogus": 1})]) == 2
    assert cli.main(["solve", "--config", write_config(tmp_path, {"format": "xml"})]) == 2


@pytest.mark.parametrize("content", [
    {"x0": "abc"}, {"dt": "0.01"}, {"paths": "many"}, {"paths": True}, {"seed": 1.5}, {"sigma": False},
    {"confidence": True}, {"budget_paths": "0"}
])
def test_config_wrong_types(tmp_path, content):
    # keep the fast flags that would not shadow the bad value
    pairs = zip(FAST_SIM[::2], FAST_SIM[1::2])
    flags = [item for flag, value in pairs if flag.lstrip("-").replace("-", "_") not in content for item in (flag, value)]
    assert cli.main(["simulate", "--config", write_config(tmp_path, content)] + flags) == 2


def test_config_unreadable(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    assert cli.main(["solve", "--config", str(broken)]) == 2
    assert cli.main(["solve", "--config", str(tmp_path / "absent.json")]) == 2
    assert cli.main(["solve", "--config", write_config(tmp_path, [1, 2])]) == 2


def test_small_verify_grid():
    assert cli.main(["verify", "--nx", "10"]) == 2


def test_unwritable_output(tmp_path):
    assert cli.main(["solve", "--out", str(tmp_path / "missing" / "solve.json")]) == 3


def test_unknown_flag():
    with pytest.raises(SystemExit):
        cli.main(["solve", "--bogus"])


def test_parse_rules():
    rules = cli.parse_rules("time:0, time:T, hit:a0+0.2", 30.0, 0.4)
    assert rules[:2] == [FixedTime(0.0), FixedTime(30.0)]
    assert isinstance(rules[2], FirstHitting)
    assert rules[2].level == pytest.approx(0.6)

    for text in ("jump:1", "time:x", ""):
        with pytest.raises(ConfigInvalid):
            cli.parse_rules(text, 30.0, 0.4)


def test_parse_trials():
    assert cli.parse_trials("0.1, 0.2") == [0.1, 0.2]
    assert cli.parse_trials([1, 2.5]) == [1.0, 2.5]

    for text in ("", "a,b"):
        with pytest.raises(ConfigInvalid):
            cli.parse_trials(text)


def test_default_trials(eq):
    assert cli.default_trials(eq, "leader", 0.2) == pytest.approx([0.5 * eq.a0, 0.75 * eq.a0, eq.a0, 1.25 * eq.a0, 1.5 * eq.a0])
    trials = cli.default_trials(eq, "follower", 0.2)
    assert trials[:2] == pytest.approx([eq.alpha / 2, eq.alpha])
    assert trials[3] == pytest.approx(2 * trials[2])
