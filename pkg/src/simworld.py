"""Simulated network of hosts, migration outcomes and the perception attributes."""

import logging
from typing import Dict, List, Optional, Tuple

from .errors import ConfigurationError, SimulationInternalError
from .models import CloneMap, Mutation, Network, SiteState

logger = logging.getLogger(__name__)


class MigrationOutcome:
    """Results of a migration attempt."""
    ARRIVED = "arrived"
    SITE_DOWN = "site_down"
    PROHIBITED = "prohibited"


def _site(network: Network, name: str) -> SiteState:
    try:
        return network.sites[name]
    except KeyError:
        raise ConfigurationError(f"site '{name}' is not declared") from None


def migrate(current: str, target: str, network: Network) -> str:
    """
    Attempt to move the agent from ``current`` to ``target``.

    A stopped machine is reported before authorization is considered.
    The network is never modified.

    Returns:
        One of the MigrationOutcome values
    """
    site = _site(network, target)
    if target == current:
        raise SimulationInternalError(f"migration from '{current}' to itself")
    if not site.is_up:
        return MigrationOutcome.SITE_DOWN
    if not site.is_allowed:
        return MigrationOutcome.PROHIBITED
    return MigrationOutcome.ARRIVED


def collect_users(site: str, network: Network, location: str) -> List[str]:
    """The agent's task: list the users logged on the site it stands on."""
    if site != location:
        raise SimulationInternalError(
            f"user collection on '{site}' while the agent is at '{location}'"
        )
    snapshot = _site(network, site)
    if not snapshot.is_up:
        raise SimulationInternalError(f"user collection on stopped site '{site}'")
    return list(snapshot.users)


def perceive_clone(site: str, network: Network, own_clones: Optional[Dict[str, int]] = None) -> bool:
    """
    Clone perception: detect a residual incarnation of the agent.

    Clones placed by the agent's own replication attribute during the run
    are expected and do not count.

    Returns:
        True when a dysfunction is perceived
    """
    own = (own_clones or {}).get(site, 0)
    return _site(network, site).clone_count - own > 0


def perceive_site(site: str, network: Network) -> SiteState:
    """Site perception: an immutable snapshot of the site's current state."""
    return _site(network, site)


def apply_mutation(network: Network, mutation: Mutation) -> Network:
    """Return ``network`` with one site field changed."""
    site = _site(network, mutation.site)
    updated = SiteState.model_validate({**site.model_dump(), mutation.field: mutation.value})
    sites = dict(network.sites)
    sites[mutation.site] = updated
    return network.model_copy(update={"sites": sites})


def apply_mutations(network: Network, step: int) -> Network:
    """
    Apply every mutation scheduled at exactly ``step``, in file order.

    Args:
        network: Network before the step
        step: Current step number

    Returns:
        Updated network (unchanged when nothing is scheduled)
    """
    for mutation in network.mutations:
        if mutation.step == step:
            logger.debug("step %d: %s.%s = %r", step, mutation.site, mutation.field, mutation.value)
            network = apply_mutation(network, mutation)
    return network


class World:
    """The network of one run, plus the clones the agent placed itself."""

    def __init__(self, network: Network):
        self.network = network.model_copy(deep=True)
        self.own_clones: Dict[str, int] = {}

    @property
    def launch(self) -> str:
        return self.network.launch

    def advance(self, step: int) -> None:
        self.network = apply_mutations(self.network, step)

    def migrate(self, current: str, target: str) -> str:
        return migrate(current, target, self.network)

    def collect_users(self, site: str, location: str) -> List[str]:
        return collect_users(site, self.network, location)

    def perceive_clone(self, site: str) -> bool:
        return perceive_clone(site, self.network, self.own_clones)

    def perceive_site(self, site: str) -> SiteState:
        return perceive_site(site, self.network)

    def clone_map(self) -> CloneMap:
        return CloneMap(counts={name: site.clone_count for name, site in self.network.sites.items()})

    def place_clones(self, creations: List[Tuple[str, int]], step: int) -> None:
        """Record own clone creations as clone_count mutations."""
        for site, count in creations:
            current = self.network.sites[site].clone_count
            self.network = apply_mutation(
                self.network,
                Mutation(step=step, site=site, field="clone_count", value=current + count)
            )
            self.own_clones[site] = self.own_clones.get(site, 0) + count
