"""Random transfer: the next site is drawn at random."""

from ..errors import PlanningError
from ..models import Network, NavigationState, PolicyDescriptor
from ..rng import RngStream
from .base import MonoHopPolicy


def plan_random_transfer(network: Network, current: str, rng: RngStream) -> str:
    """
    Draw the next site uniformly among all declared sites except ``current``.

    Down or prohibited sites stay candidates; the agent only finds out
    when it tries to migrate. Consumes one draw.

    Raises:
        PlanningError: If no other site is declared
    """
    candidates = [name for name in network.site_names if name != current]
    if not candidates:
        raise PlanningError(f"no site other than '{current}' to transfer to")
    return candidates[rng.index(len(candidates))]


class RandomTransferPolicy(MonoHopPolicy):
    """Mono-hop policy picking its target at random."""

    mode = "random"

    def begin(self, policy: PolicyDescriptor, network: Network, current: str) -> NavigationState:
        return NavigationState(mode=self.mode, launch=current)

    def plan(self, nav: NavigationState, network: Network, rng: RngStream) -> str:
        return plan_random_transfer(network, nav.launch, rng)
