from pathlib import Path

import pytest

from src.errors import ConfigurationError, ScenarioSyntaxError
from src.parser import parse_scenario, parse_scenario_file, render_scenario
from tests.conftest import SCENARIOS
from tests.helpers import scenario_text


def test_minimal_non_autonomous_scenario() -> None:
    scenario = parse_scenario(
        "[network]\nlaunch = A\n[site A]\n[site B]\n"
        "[mobility]\npolicies = circular\nallow_non_autonomous = true\n"
    )
    assert scenario.mobility_policies.kinds == ["circular"]
    assert scenario.allow_non_autonomous
    assert scenario.seed == 0
    assert scenario.max_steps == 1000
    assert scenario.output_dir == "out"
    assert scenario.mobility_weights.pr_empty == pytest.approx(0.1)


def test_single_policy_needs_opt_in() -> None:
    with pytest.raises(ConfigurationError, match="at least 2 policies"):
        parse_scenario(scenario_text(policies="circular"))


def test_default_override_target_is_random() -> None:
    scenario = parse_scenario(scenario_text(policies="circular,random"))
    assert scenario.mobility_weights.override_target == 2


def test_weights_must_sum_to_one() -> None:
    text = scenario_text(weights="pr_keep = 0.8\npr_override = 0.1\npr_empty = 0.2\n")
    with pytest.raises(ConfigurationError, match=r"\[choice.mobility\].*weights sum to"):
        parse_scenario(text)


def test_missing_weight_keys_default_to_zero() -> None:
    scenario = parse_scenario(scenario_text(weights="pr_keep = 1\n"))
    weights = scenario.mobility_weights
    assert (weights.pr_keep, weights.pr_override, weights.pr_empty) == (1.0, 0.0, 0.0)


def test_route_with_undeclared_site() -> None:
    text = scenario_text(policies="random,route", extra="route = B,X\n")
    with pytest.raises(ConfigurationError, match=r"\[mobility\] route: site 'X' is not declared"):
        parse_scenario(text)


def test_route_ending_at_launch() -> None:
    text = scenario_text(policies="random,route", extra="route = B,A\n")
    with pytest.raises(ConfigurationError, match="starting site"):
        parse_scenario(text)


def test_unknown_key_reports_line_number() -> None:
    text = "[network]\nlaunch = A\n\n[site A]\ncolour = red\n"
    with pytest.raises(ScenarioSyntaxError, match="line 5: unknown key 'colour'") as info:
        parse_scenario(text)
    assert info.value.line_number == 5


@pytest.mark.parametrize("text, message", [
    ("[network]\nlaunch = A\n[sites]\n", "unknown section"),
    ("launch = A\n", "outside of any section"),
    ("[network]\nlaunch = A\nlaunch = B\n", "duplicate key"),
    ("[site A]\n[site A]\n", "duplicate section"),
    ("[network]\nthis is not a pair\n", "expected 'key = value'"),
])
def test_syntax_errors(text: str, message: str) -> None:
    with pytest.raises(ScenarioSyntaxError, match=message):
        parse_scenario(text)


@pytest.mark.parametrize("sites, message", [
    ("[site A]\nload = 1.5\n[site B]\n", r"\[site A\]"),
    ("[site A]\nstatus = sleeping\n[site B]\n", r"\[site A\]"),
    ("[site A]\nfree_disk_mb = lots\n[site B]\n", "free_disk_mb: expected an integer"),
    ("[site A]\nstatus = down\n[site B]\n", "launch"),
])
def test_invalid_site_values(sites: str, message: str) -> None:
    with pytest.raises(ConfigurationError, match=message):
        parse_scenario(scenario_text(sites=sites))


def test_unknown_policy_kind() -> None:
    with pytest.raises(ConfigurationError, match="unknown mobility policy 'teleport'"):
        parse_scenario(scenario_text(policies="random,teleport"))


def test_mutation_of_undeclared_site() -> None:
    text = scenario_text().replace("launch = A\n", "launch = A\nmutate = 3,Z,status,down\n")
    with pytest.raises(ConfigurationError, match="site 'Z' is not declared"):
        parse_scenario(text)


def test_seed_out_of_range() -> None:
    with pytest.raises(ConfigurationError, match="seed"):
        parse_scenario(scenario_text(run=f"seed = {2**64}\n"))


def test_replication_section() -> None:
    text = scenario_text(extra="") + (
        "\n[replication]\nreplication_policies = exactly_one,at_most_one\n"
        "replication_scope = free_disk>=100\n"
    )
    replication = parse_scenario(text).replication
    assert replication.policies.kinds == ["exactly_one", "at_most_one"]
    assert replication.scope.threshold == 100


def test_choice_replication_without_replication() -> None:
    text = scenario_text() + "\n[choice.replication]\npr_keep = 1\n"
    with pytest.raises(ConfigurationError, match="without \\[replication\\]"):
        parse_scenario(text)


@pytest.mark.parametrize("name", ["ref6.scenario", "default.scenario", "two_attributes.scenario"])
def test_render_round_trip(name: str) -> None:
    scenario = parse_scenario_file(str(SCENARIOS / name))
    rendered = render_scenario(scenario)
    assert parse_scenario(rendered) == scenario
    assert render_scenario(parse_scenario(rendered)) == rendered


def test_missing_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        parse_scenario_file(str(tmp_path / "absent.scenario"))


@pytest.mark.parametrize("scope", ["load<=0.00001", "load<=0.25", "free_disk>=1024"])
def test_render_round_trip_with_scope(scope: str) -> None:
    text = (SCENARIOS / "two_attributes.scenario").read_text(encoding="utf-8")
    scenario = parse_scenario(text.replace("replication_scope = all", f"replication_scope = {scope}"))
    assert parse_scenario(render_scenario(scenario)) == scenario
    assert f"replication_scope = {scope}\n" in render_scenario(scenario)
