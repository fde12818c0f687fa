"""Navigation policies of the mobility attribute."""

from .base import MonoHopPolicy, MultiHopPolicy, NavigationPolicy, PolicyStep
from .circular import CircularPolicy, plan_circular
from .directed import DirectedPolicy, plan_directed
from .random_transfer import RandomTransferPolicy, plan_random_transfer
from .route import RoutePolicy, plan_route

__all__ = [
    'NavigationPolicy',
    'MonoHopPolicy',
    'MultiHopPolicy',
    'PolicyStep',
    'RandomTransferPolicy',
    'CircularPolicy',
    'RoutePolicy',
    'DirectedPolicy',
    'plan_random_transfer',
    'plan_circular',
    'plan_route',
    'plan_directed',
]
