"""Base class for mobility navigation policies."""

from abc import ABC, abstractmethod
from typing import Optional

from pydantic import BaseModel

from ..models import Network, NavigationState, PolicyDescriptor
from ..rng import RngStream


class PolicyStep(BaseModel):
    """Result of advancing a navigation policy: a hop, or finished."""
    hop: Optional[str] = None
    note: str = ""

    @property
    def finished(self) -> bool:
        return self.hop is None


class NavigationPolicy(ABC):
    """Abstract base class for navigation policies."""

    mode: str = ""
    hop_arity: str = "mono-hop"

    def can_handle(self, kind: str) -> bool:
        """
        Check if this policy implements the given policy kind.

        Args:
            kind: Policy kind tag from the scenario

        Returns:
            True if this policy handles the kind
        """
        return kind == self.mode

    @abstractmethod
    def begin(self, policy: PolicyDescriptor, network: Network, current: str) -> NavigationState:
        """
        Start a new activation of the policy at ``current``.

        Args:
            policy: Descriptor carrying the policy parameters
            network: Network snapshot
            current: Site the agent stands on

        Returns:
            Fresh navigation state

        Raises:
            PlanningError: If no route can be planned
        """
        pass

    @abstractmethod
    def step(self, nav: NavigationState, network: Network, rng: RngStream) -> PolicyStep:
        """
        Produce the next hop, or report the policy finished.

        Raises:
            PlanningError: If a hop cannot be planned
        """
        pass

    def is_finished(self, nav: NavigationState) -> bool:
        """Whether the activation has no hop left after the last one issued."""
        if self.hop_arity == "mono-hop":
            return bool(nav.visited)
        return not nav.remaining


class MonoHopPolicy(NavigationPolicy):
    """A policy that performs exactly one transfer per activation."""

    hop_arity = "mono-hop"

    def step(self, nav: NavigationState, network: Network, rng: RngStream) -> PolicyStep:
        if nav.visited:
            return PolicyStep()
        target = self.plan(nav, network, rng)
        nav.visited.append(target)
        return PolicyStep(hop=target)

    @abstractmethod
    def plan(self, nav: NavigationState, network: Network, rng: RngStream) -> str:
        """Pick the single target of the activation."""
        pass


class MultiHopPolicy(NavigationPolicy):
    """A policy that follows a route planned on activation."""

    hop_arity = "multi-hop"

    def step(self, nav: NavigationState, network: Network, rng: RngStream) -> PolicyStep:
        if not nav.remaining:
            return PolicyStep()
        target = nav.remaining.pop(0)
        nav.visited.append(target)
        return PolicyStep(hop=target)
