"""Builders for small networks and scenario files."""

from typing import Dict

from src.models import Network, SiteState


def make_network(launch: str = "A", **sites: Dict) -> Network:
    """Build a network from keyword site definitions, e.g. B={"status": "down"}."""
    declared = {name: SiteState(name=name, **fields) for name, fields in sites.items()}
    if launch not in declared:
        declared[launch] = SiteState(name=launch)
    return Network(sites=declared, launch=launch)


def scenario_text(
    sites: str = "[site A]\n[site B]\n[site C]\n",
    policies: str = "random,circular",
    weights: str = "pr_keep = 0.8\npr_override = 0.1\npr_empty = 0.1\n",
    extra: str = "",
    run: str = "seed = 1\nmax_steps = 100\n",
) -> str:
    """Assemble a small scenario file."""
    return (
        "[network]\nlaunch = A\n\n"
        f"{sites}\n"
        f"[mobility]\npolicies = {policies}\n{extra}\n"
        f"[choice.mobility]\n{weights}\n"
        f"[run]\n{run}"
    )
