"""Directed navigation: transfer to the site that best meets a criterion."""

from ..errors import PlanningError
from ..models import DirectedCriterion, Network, NavigationState, PolicyDescriptor
from ..rng import RngStream
from ..simworld import perceive_site
from .base import MonoHopPolicy


def plan_directed(network: Network, current: str, criterion: DirectedCriterion) -> str:
    """
    Pick the up, allowed site other than ``current`` optimizing ``criterion``.

    Ties go to the lexicographically smallest site name.

    Args:
        network: Network snapshot
        current: Site the agent stands on
        criterion: Metric and objective

    Returns:
        Target site name

    Raises:
        PlanningError: If no site qualifies
    """
    candidates = []
    for name in network.site_names:
        if name == current:
            continue
        snapshot = perceive_site(name, network)
        if snapshot.is_up and snapshot.is_allowed:
            candidates.append(snapshot)

    if not candidates:
        raise PlanningError(f"no up and allowed site other than '{current}' for {criterion.name}")

    if criterion.metric == "load":
        best = min(candidates, key=lambda site: (site.load, site.name))
    else:
        best = min(candidates, key=lambda site: (-site.free_disk_mb, site.name))
    return best.name


class DirectedPolicy(MonoHopPolicy):
    """Mono-hop policy moving to the least loaded or most free-disk site."""

    mode = "directed"

    def begin(self, policy: PolicyDescriptor, network: Network, current: str) -> NavigationState:
        criterion = DirectedCriterion.from_name(policy.params.get("criterion", "least_loaded"))
        return NavigationState(mode=self.mode, launch=current, criterion=criterion)

    def plan(self, nav: NavigationState, network: Network, rng: RngStream) -> str:
        return plan_directed(network, nav.launch, nav.criterion)
