from click.testing import CliRunner

from src.cli import main
from tests.conftest import SCENARIOS
from tests.helpers import scenario_text


def _write_scenario(tmp_path, text: str) -> str:
    path = tmp_path / "case.scenario"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_run_writes_golden_outputs(tmp_path, ref6_path, golden_dir) -> None:
    runner = CliRunner()
    result = runner.invoke(main, ["run", str(ref6_path), "--out", str(tmp_path)])

    assert result.exit_code == 0, result.output
    assert "halted at A (max_steps)" in result.output
    assert (tmp_path / "report.txt").read_bytes() == (golden_dir / "ref6_report.txt").read_bytes()
    assert (tmp_path / "trace.tsv").read_bytes() == (golden_dir / "ref6_trace.tsv").read_bytes()


def test_run_twice_gives_identical_files(tmp_path) -> None:
    scenario = _write_scenario(tmp_path, scenario_text(run="seed = 99\nmax_steps = 500\n"))
    runner = CliRunner()
    outputs = []
    for name in ("first", "second"):
        out = tmp_path / name
        result = runner.invoke(main, ["run", scenario, "--out", str(out)])
        assert result.exit_code == 0, result.output
        outputs.append(((out / "report.txt").read_bytes(), (out / "trace.tsv").read_bytes()))
    assert outputs[0] == outputs[1]


def test_run_missing_file(tmp_path) -> None:
    result = CliRunner().invoke(main, ["run", str(tmp_path / "absent.scenario")])
    assert result.exit_code != 0


def test_run_invalid_scenario(tmp_path) -> None:
    scenario = _write_scenario(tmp_path, "[network]\nlaunch = A\n[site A]\ncolour = red\n")
    result = CliRunner().invoke(main, ["run", scenario, "--out", str(tmp_path / "out")])
    assert result.exit_code == 1
    assert "line 4: unknown key 'colour'" in result.output
    assert not (tmp_path / "out" / "report.txt").exists()


def test_sweep_single_run(ref6_path) -> None:
    result = CliRunner().invoke(main, ["sweep", str(ref6_path), "--runs", "1"])
    assert result.exit_code == 0, result.output
    assert "runs: 1\n" in result.output
    assert "seeds: 42..42\n" in result.output
    assert "  max_steps: 1\n" in result.output


def test_sweep_without_inhibition_always_hits_step_limit(tmp_path) -> None:
    weights = "pr_keep = 0.9\npr_override = 0.1\npr_empty = 0\n"
    scenario = _write_scenario(tmp_path, scenario_text(weights=weights, run="seed = 1\nmax_steps = 20\n"))
    result = CliRunner().invoke(main, ["sweep", scenario, "--runs", "30", "--seed", "100"])
    assert result.exit_code == 0, result.output
    assert "seeds: 100..129\n" in result.output
    assert "  empty_policy: 0\n  max_steps: 30\n  stranded: 0\n" in result.output
    assert "mean_steps_to_halt: 20.0000\n" in result.output


def test_sweep_rejects_zero_runs(ref6_path) -> None:
    result = CliRunner().invoke(main, ["sweep", str(ref6_path), "--runs", "0"])
    assert result.exit_code != 0


def test_classify(ref6_path, tmp_path) -> None:
    result = CliRunner().invoke(main, ["classify", str(ref6_path)])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "AUTONOMY MODELS"
    assert lines[2].split() == ["Barber", "partial", "social", "relative"]
    assert lines[3].split() == ["Luck", "global", "nonsocial", "absolute"]
    assert "model: partial, nonsocial, absolute" in lines
    assert "mobility: non_autonomous (1 policy, no choice module)" in lines

    scenario = _write_scenario(tmp_path, scenario_text())
    result = CliRunner().invoke(main, ["classify", scenario])
    assert "mobility: autonomous (2 policies, choice module)" in result.output.splitlines()


def test_classify_default_scenario() -> None:
    result = CliRunner().invoke(main, ["classify", str(SCENARIOS / "default.scenario")])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert "mobility: autonomous (2 policies, choice module)" in lines
    assert "site-perception: non_autonomous (1 policy, no choice module)" in lines
    assert not any(line.startswith("replication:") for line in lines)
