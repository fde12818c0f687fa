"""Mobility attribute: policy registry, activation and stepping."""

import logging
from typing import List, Optional

from .errors import ConfigurationError, PlanningError
from .models import Attribute, Network, NavigationState, PolicyDescriptor, PolicySet
from .navigation import (
    CircularPolicy,
    DirectedPolicy,
    NavigationPolicy,
    PolicyStep,
    RandomTransferPolicy,
    RoutePolicy,
)
from .rng import RngStream

logger = logging.getLogger(__name__)

NAVIGATION_POLICIES: List[NavigationPolicy] = [
    RandomTransferPolicy(),
    CircularPolicy(),
    RoutePolicy(),
    DirectedPolicy(),
]

MOBILITY_KINDS = tuple(policy.mode for policy in NAVIGATION_POLICIES)


def select_policy(kind: str) -> NavigationPolicy:
    """
    Find the navigation policy implementing a kind.

    Raises:
        ConfigurationError: If no policy handles the kind
    """
    for policy in NAVIGATION_POLICIES:
        if policy.can_handle(kind):
            return policy
    raise ConfigurationError(
        f"unknown mobility policy '{kind}' (expected one of {', '.join(MOBILITY_KINDS)})"
    )


def build_mobility_policies(
    kinds: List[str],
    route: Optional[List[str]] = None,
    criterion: Optional[str] = None
) -> PolicySet:
    """
    Build the mobility policy set from scenario kinds, in the given order.

    Args:
        kinds: Policy kinds, e.g. ["random", "circular"]
        route: Site list for the route policy
        criterion: Criterion name for the directed policy

    Returns:
        PolicySet with indices 1..N
    """
    descriptors = []
    for index, kind in enumerate(kinds, start=1):
        policy = select_policy(kind)
        params = {}
        if kind == "route":
            if not route:
                raise ConfigurationError("route: the route policy needs a 'route' list")
            params["route"] = list(route)
        elif kind == "directed":
            params["criterion"] = criterion or "least_loaded"
        descriptors.append(PolicyDescriptor(
            id=index, kind=kind, hop_arity=policy.hop_arity, params=params
        ))
    return PolicySet(attribute=Attribute.MOBILITY, policies=tuple(descriptors))


def begin_navigation(policy: PolicyDescriptor, network: Network, current: str) -> NavigationState:
    """Start a new activation of a mobility policy at ``current``."""
    return select_policy(policy.kind).begin(policy, network, current)


def step_policy(nav: NavigationState, network: Network, rng: RngStream) -> PolicyStep:
    """
    Advance the running navigation policy by one hop.

    Planning failures are reported as finished with a note instead of
    raising.
    """
    try:
        return select_policy(nav.mode).step(nav, network, rng)
    except PlanningError as e:
        logger.warning("%s navigation could not plan a hop: %s", nav.mode, e)
        return PolicyStep(note=f"planning_error={e}")


def is_finished(nav: NavigationState) -> bool:
    """Whether the activation has run to completion after its last hop."""
    return select_policy(nav.mode).is_finished(nav)
