import pytest
from pydantic import ValidationError

from src.errors import ConfigurationError, SimulationInternalError
from src.models import Mutation, Network, SiteState
from src.simworld import (
    MigrationOutcome,
    World,
    apply_mutations,
    collect_users,
    migrate,
    perceive_clone,
    perceive_site,
)
from tests.helpers import make_network


def test_migrate_outcomes() -> None:
    network = make_network(
        A={}, B={}, C={"status": "down"}, E={"access": "prohibited"},
    )
    assert migrate("A", "B", network) == MigrationOutcome.ARRIVED
    assert migrate("A", "C", network) == MigrationOutcome.SITE_DOWN
    assert migrate("A", "E", network) == MigrationOutcome.PROHIBITED


def test_migrate_reports_down_before_prohibited() -> None:
    network = make_network(A={}, X={"status": "down", "access": "prohibited"})
    assert migrate("A", "X", network) == MigrationOutcome.SITE_DOWN


def test_migrate_to_undeclared_site() -> None:
    with pytest.raises(ConfigurationError):
        migrate("A", "Z", make_network(A={}))


def test_migrate_to_current_site_is_internal_error() -> None:
    with pytest.raises(SimulationInternalError):
        migrate("A", "A", make_network(A={}, B={}))


def test_migrate_does_not_modify_network() -> None:
    network = make_network(A={}, B={"status": "down"})
    before = network.model_dump()
    migrate("A", "B", network)
    assert network.model_dump() == before


def test_collect_users() -> None:
    network = make_network(A={"users": ("alice", "bob")}, D={})
    assert collect_users("A", network, "A") == ["alice", "bob"]


def test_collect_users_requires_presence() -> None:
    network = make_network(A={}, D={"users": ("dave",)})
    with pytest.raises(SimulationInternalError):
        collect_users("D", network, "A")


def test_perceive_clone_ignores_own_clones() -> None:
    network = make_network(A={}, B={"clone_count": 1}, C={"clone_count": 2})
    assert perceive_clone("B", network)
    assert not perceive_clone("A", network)
    assert not perceive_clone("B", network, {"B": 1})
    assert perceive_clone("C", network, {"C": 1})


def test_perceive_site_snapshot() -> None:
    network = make_network(A={}, B={"load": 0.5, "free_disk_mb": 12})
    snapshot = perceive_site("B", network)
    assert (snapshot.load, snapshot.free_disk_mb) == (0.5, 12)
    with pytest.raises(ValidationError):
        snapshot.load = 0.1


def test_mutations_apply_at_their_step() -> None:
    network = Network(
        sites={"A": SiteState(name="A"), "B": SiteState(name="B")},
        launch="A",
        mutations=[
            Mutation(step=3, site="B", field="status", value="down"),
            Mutation(step=5, site="B", field="status", value="up"),
        ],
    )
    assert apply_mutations(network, 2).sites["B"].is_up
    after = apply_mutations(network, 3)
    assert not after.sites["B"].is_up
    assert network.sites["B"].is_up
    assert apply_mutations(after, 5).sites["B"].is_up


def test_same_step_mutations_keep_file_order() -> None:
    network = Network(
        sites={"A": SiteState(name="A"), "B": SiteState(name="B")},
        launch="A",
        mutations=[
            Mutation(step=2, site="B", field="load", value=0.3),
            Mutation(step=1, site="B", field="load", value=0.1),
            Mutation(step=2, site="B", field="load", value=0.9),
        ],
    )
    assert [m.step for m in network.mutations] == [1, 2, 2]
    assert apply_mutations(network, 2).sites["B"].load == 0.9


def test_invalid_mutation_rejected() -> None:
    with pytest.raises(ValidationError):
        Network(
            sites={"A": SiteState(name="A")},
            launch="A",
            mutations=[Mutation(step=1, site="A", field="load", value=2.0)],
        )


def test_launch_must_be_up_and_allowed() -> None:
    with pytest.raises(ValidationError, match="launch"):
        Network(sites={"A": SiteState(name="A", status="down")}, launch="A")


def test_world_places_own_clones() -> None:
    world = World(make_network(A={}, B={"clone_count": 1}))
    world.place_clones([("A", 1)], step=1)
    assert world.clone_map().counts == {"A": 1, "B": 1}
    assert not world.perceive_clone("A")
    assert world.perceive_clone("B")
