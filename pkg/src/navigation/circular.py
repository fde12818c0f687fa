"""Circular navigation: visit every other site and come back."""

from ..errors import PlanningError
from ..models import Network, NavigationState, PolicyDescriptor, Route
from .base import MultiHopPolicy


def plan_circular(network: Network, launch: str) -> Route:
    """
    Plan a round trip through all declared sites, ending at ``launch``.

    Sites are visited in lexicographic order.

    Raises:
        PlanningError: If fewer than two sites are declared or launch is unknown
    """
    if launch not in network.sites:
        raise PlanningError(f"circular launch site '{launch}' is not declared")
    others = [name for name in network.site_names if name != launch]
    if not others:
        raise PlanningError("circular navigation needs at least 2 sites")
    return Route(hops=tuple(others) + (launch,))


class CircularPolicy(MultiHopPolicy):
    """Multi-hop policy whose arrival site is its starting site."""

    mode = "circular"

    def begin(self, policy: PolicyDescriptor, network: Network, current: str) -> NavigationState:
        route = plan_circular(network, current)
        return NavigationState(mode=self.mode, launch=current, remaining=list(route.hops))
