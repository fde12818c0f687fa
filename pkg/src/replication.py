"""Replication attribute: clone-placement planning and placement checks."""

import re
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel

from .errors import ConfigurationError
from .models import (
    Attribute,
    CloneMap,
    Network,
    PolicyDescriptor,
    PolicySet,
    ReplicationPolicy,
    ReplicationScope,
)
from .simworld import perceive_site

# Scenario kind -> replication rate
REPLICATION_RATES: Dict[str, str] = {
    "exactly_one": "exactly_one_per_site",
    "at_most_one": "at_most_one_per_site",
    "at_least_one": "at_least_one_per_site",
}

_SCOPE_RE = re.compile(
    r"^(free_disk)\s*>=\s*(\d+)$|^(load)\s*<=\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)$"
)


class PlacementCheck(BaseModel):
    """Outcome of validate_placement."""
    violations: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.violations


def parse_scope(text: str) -> ReplicationScope:
    """
    Parse a replication scope: ``all``, ``free_disk>=N`` or ``load<=X``.

    Raises:
        ConfigurationError: On any other form
    """
    text = text.strip()
    if text == "all":
        return ReplicationScope()
    match = _SCOPE_RE.match(text)
    if not match:
        raise ConfigurationError(
            f"replication_scope: expected all, free_disk>=N or load<=X, got '{text}'"
        )
    if match.group(1):
        return ReplicationScope(kind="criterion", metric="free_disk", threshold=int(match.group(2)))
    return ReplicationScope(kind="criterion", metric="load", threshold=float(match.group(4)))


def render_scope(scope: ReplicationScope) -> str:
    """Inverse of parse_scope."""
    if scope.kind == "all":
        return "all"
    if scope.metric == "free_disk":
        return f"free_disk>={int(scope.threshold)}"
    # Positional notation, shortest digits that read back to the same float.
    return f"load<={np.format_float_positional(scope.threshold, trim='-')}"


def build_replication_policies(kinds: List[str]) -> PolicySet:
    """Build the replication policy set from scenario kinds, in the given order."""
    descriptors = []
    for index, kind in enumerate(kinds, start=1):
        if kind not in REPLICATION_RATES:
            raise ConfigurationError(
                f"replication_policies: unknown policy '{kind}' "
                f"(expected one of {', '.join(REPLICATION_RATES)})"
            )
        descriptors.append(PolicyDescriptor(
            id=index, kind=kind, hop_arity="single-shot", params={"rate": REPLICATION_RATES[kind]}
        ))
    return PolicySet(attribute=Attribute.REPLICATION, policies=tuple(descriptors))


def replication_policy(descriptor: PolicyDescriptor, scope: ReplicationScope) -> ReplicationPolicy:
    """Combine a replication descriptor with the configured scope."""
    return ReplicationPolicy(rate=REPLICATION_RATES[descriptor.kind], scope=scope)


def in_scope_sites(policy: ReplicationPolicy, network: Network) -> List[str]:
    """Up, allowed sites passing the scope predicate, in lexicographic order."""
    sites = []
    for name in network.site_names:
        snapshot = perceive_site(name, network)
        if snapshot.is_up and snapshot.is_allowed and policy.scope.admits(snapshot):
            sites.append(name)
    return sites


def plan_replication(
    policy: ReplicationPolicy,
    network: Network,
    clones: CloneMap
) -> List[Tuple[str, int]]:
    """
    Plan clone creations; deletions are never planned.

    ``at_most_one`` is a cap and plans nothing. The other two rates create
    one clone on every in-scope site that has none.

    Args:
        policy: Rate and scope
        network: Network snapshot
        clones: Current clone counts

    Returns:
        List of (site, number of clones to create)
    """
    if policy.rate == "at_most_one_per_site":
        return []
    return [(site, 1) for site in in_scope_sites(policy, network) if clones.get(site) == 0]


def validate_placement(policy: ReplicationPolicy, clones: CloneMap, network: Network) -> PlacementCheck:
    """
    Check clone counts against the replication rate.

    Returns:
        PlacementCheck listing offending sites in lexicographic order
    """
    if policy.rate == "at_most_one_per_site":
        violations = [site for site in network.site_names if clones.get(site) > 1]
    elif policy.rate == "exactly_one_per_site":
        violations = [site for site in in_scope_sites(policy, network) if clones.get(site) != 1]
    else:
        violations = [site for site in in_scope_sites(policy, network) if clones.get(site) == 0]
    return PlacementCheck(violations=violations)
