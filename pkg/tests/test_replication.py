import pytest

from src.errors import ConfigurationError
from src.models import CloneMap, ReplicationPolicy, ReplicationScope
from src.replication import (
    build_replication_policies,
    in_scope_sites,
    parse_scope,
    plan_replication,
    render_scope,
    validate_placement,
)
from tests.helpers import make_network

NETWORK = make_network(
    A={"free_disk_mb": 100, "load": 0.2},
    B={"free_disk_mb": 10, "load": 0.9},
    C={"free_disk_mb": 500, "status": "down"},
    D={"free_disk_mb": 300, "access": "prohibited"},
)


def _policy(rate: str, scope: ReplicationScope = ReplicationScope()) -> ReplicationPolicy:
    return ReplicationPolicy(rate=rate, scope=scope)


def test_in_scope_sites_skip_unreachable() -> None:
    assert in_scope_sites(_policy("exactly_one_per_site"), NETWORK) == ["A", "B"]


def test_scope_predicates() -> None:
    assert in_scope_sites(_policy("exactly_one_per_site", parse_scope("free_disk>=50")), NETWORK) == ["A"]
    assert in_scope_sites(_policy("exactly_one_per_site", parse_scope("load<=0.5")), NETWORK) == ["A"]


@pytest.mark.parametrize("text", ["all", "free_disk>=50", "load<=0.5", "load<=0.00001", "load<=1"])
def test_scope_text_round_trip(text: str) -> None:
    assert render_scope(parse_scope(text)) == text


def test_bad_scope() -> None:
    with pytest.raises(ConfigurationError):
        parse_scope("users>=1")


def test_plan_creates_missing_clones_only() -> None:
    clones = CloneMap(counts={"A": 1})
    assert plan_replication(_policy("exactly_one_per_site"), NETWORK, clones) == [("B", 1)]
    assert plan_replication(_policy("at_least_one_per_site"), NETWORK, CloneMap()) == [("A", 1), ("B", 1)]


def test_at_most_one_plans_nothing() -> None:
    assert plan_replication(_policy("at_most_one_per_site"), NETWORK, CloneMap()) == []


def test_validate_exactly_one() -> None:
    policy = _policy("exactly_one_per_site")
    assert validate_placement(policy, CloneMap(counts={"A": 1, "B": 1}), NETWORK).ok
    check = validate_placement(policy, CloneMap(counts={"A": 2}), NETWORK)
    assert check.violations == ["A", "B"]


def test_validate_at_most_one_checks_every_site() -> None:
    policy = _policy("at_most_one_per_site")
    assert validate_placement(policy, CloneMap(), NETWORK).ok
    assert validate_placement(policy, CloneMap(counts={"C": 2}), NETWORK).violations == ["C"]


def test_validate_at_least_one() -> None:
    policy = _policy("at_least_one_per_site")
    assert validate_placement(policy, CloneMap(counts={"A": 3, "B": 1}), NETWORK).ok
    assert not validate_placement(policy, CloneMap(counts={"A": 3}), NETWORK).ok


def test_planning_then_placing_satisfies_rate() -> None:
    policy = _policy("exactly_one_per_site")
    counts = {}
    for site, count in plan_replication(policy, NETWORK, CloneMap()):
        counts[site] = counts.get(site, 0) + count
    assert validate_placement(policy, CloneMap(counts=counts), NETWORK).ok


def test_build_replication_policies() -> None:
    policies = build_replication_policies(["at_least_one", "at_most_one"])
    assert policies.attribute == "replication"
    assert policies.get(1).params == {"rate": "at_least_one_per_site"}
    with pytest.raises(ConfigurationError, match="unknown policy"):
        build_replication_policies(["two_per_site"])


def test_exponent_load_threshold() -> None:
    scope = parse_scope("load<=1e-05")
    assert scope.threshold == pytest.approx(1e-05)
    assert render_scope(scope) == "load<=0.00001"
    assert parse_scope(render_scope(scope)) == scope
