"""Navigation according to a route: a fixed itinerary ending away from the start."""

from typing import Iterable, List

from pydantic import ValidationError

from ..errors import ConfigurationError, PlanningError
from ..models import Network, NavigationState, PolicyDescriptor, Route
from .base import MultiHopPolicy


def plan_route(spec: List[str], launch: str, declared: Iterable[str]) -> Route:
    """
    Turn a configured site list into a route.

    Args:
        spec: Ordered sites to visit
        launch: Site the route starts from
        declared: Names of the declared sites

    Returns:
        The route

    Raises:
        ConfigurationError: On an undeclared site, an empty list, a repeated
            site, or a route that ends where it started
    """
    declared = set(declared)
    for site in spec:
        if site not in declared:
            raise ConfigurationError(f"route: site '{site}' is not declared")
    try:
        route = Route(hops=tuple(spec))
    except ValidationError as e:
        raise ConfigurationError(f"route: {e.errors()[0]['msg']}") from None
    if route.hops[-1] == launch:
        raise ConfigurationError(
            f"route: last hop '{launch}' equals the starting site (use circular navigation)"
        )
    return route


class RoutePolicy(MultiHopPolicy):
    """Multi-hop policy following the configured route."""

    mode = "route"

    def begin(self, policy: PolicyDescriptor, network: Network, current: str) -> NavigationState:
        try:
            route = plan_route(list(policy.params.get("route", [])), current, network.sites)
        except ConfigurationError as e:
            raise PlanningError(str(e)) from None
        return NavigationState(mode=self.mode, launch=current, remaining=list(route.hops))
