"""Parser and canonical renderer for scenario files."""

import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import ValidationError

from .errors import ConfigurationError, ScenarioSyntaxError
from .mobility import build_mobility_policies
from .models import (
    ChoiceWeights,
    Mutation,
    Network,
    PolicySet,
    ReplicationConfig,
    Scenario,
    SiteState,
)
from .navigation import plan_route
from .replication import build_replication_policies, parse_scope, render_scope

logger = logging.getLogger(__name__)

_SECTION_RE = re.compile(r"^\[\s*([A-Za-z_.]+)(?:\s+(\S+))?\s*\]$")
_KEY_RE = re.compile(r"^([A-Za-z_]+)\s*=\s*(.*)$")

SECTION_KEYS: Dict[str, Tuple[str, ...]] = {
    "network": ("launch", "mutate"),
    "site": ("status", "access", "users", "load", "free_disk_mb", "clone_count"),
    "mobility": ("policies", "route", "criterion", "allow_non_autonomous"),
    "choice.mobility": ("pr_keep", "pr_override", "pr_empty", "override"),
    "replication": ("replication_policies", "replication_scope", "allow_non_autonomous"),
    "choice.replication": ("pr_keep", "pr_override", "pr_empty", "override"),
    "run": ("seed", "max_steps", "output_dir"),
}
REPEATABLE_KEYS = {("network", "mutate")}


class _Section:
    """Raw key/value lines of one section."""

    def __init__(self, name: str, label: str, line_number: int):
        self.name = name
        self.label = label
        self.line_number = line_number
        self.values: Dict[str, Tuple[str, int]] = {}
        self.repeated: Dict[str, List[Tuple[str, int]]] = {}

    def get(self, key: str) -> Optional[str]:
        entry = self.values.get(key)
        return entry[0] if entry else None


def _split_sections(text: str) -> List[_Section]:
    """Tokenize the file into sections, checking syntax and key names."""
    sections: List[_Section] = []
    current: Optional[_Section] = None

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        header = _SECTION_RE.match(line)
        if header:
            name, argument = header.group(1), header.group(2)
            if name not in SECTION_KEYS:
                raise ScenarioSyntaxError(f"unknown section [{name}]", line_number)
            if (name == "site") != (argument is not None):
                raise ScenarioSyntaxError(
                    "sites are declared as [site <name>]" if name == "site"
                    else f"section [{name}] takes no argument",
                    line_number,
                )
            label = f"site {argument}" if argument else name
            if any(section.label == label for section in sections):
                raise ScenarioSyntaxError(f"duplicate section [{label}]", line_number)
            current = _Section(name, label, line_number)
            sections.append(current)
            continue

        pair = _KEY_RE.match(line)
        if not pair:
            raise ScenarioSyntaxError(f"expected 'key = value' or a [section], got {line!r}", line_number)
        if current is None:
            raise ScenarioSyntaxError("key outside of any section", line_number)

        key, value = pair.group(1), pair.group(2).strip()
        if key not in SECTION_KEYS[current.name]:
            raise ScenarioSyntaxError(f"unknown key '{key}' in [{current.label}]", line_number)
        if (current.name, key) in REPEATABLE_KEYS:
            current.repeated.setdefault(key, []).append((value, line_number))
        elif key in current.values:
            raise ScenarioSyntaxError(f"duplicate key '{key}' in [{current.label}]", line_number)
        else:
            current.values[key] = (value, line_number)

    return sections


def _list(value: str, key: str) -> List[str]:
    if not value:
        return []
    items = [item.strip() for item in value.split(",")]
    if any(not item for item in items):
        raise ConfigurationError(f"{key}: empty entry in list '{value}'")
    return items


def _bool(value: str, key: str) -> bool:
    if value in ("true", "false"):
        return value == "true"
    raise ConfigurationError(f"{key}: expected true or false, got '{value}'")


def _int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigurationError(f"{key}: expected an integer, got '{value}'") from None


def _float(value: str, key: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigurationError(f"{key}: expected a number, got '{value}'") from None


def coerce_site_value(field: str, value: str, key: str) -> Any:
    """Convert a raw site field value to its typed form."""
    if field == "users":
        return tuple(_list(value, key))
    if field == "load":
        return _float(value, key)
    if field in ("free_disk_mb", "clone_count"):
        return _int(value, key)
    return value


def _validation_message(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in item['loc']) or 'value'}: {item['msg']}"
        for item in error.errors()
    )


def _parse_site(section: _Section) -> SiteState:
    name = section.label.split(" ", 1)[1]
    fields = {"name": name}
    for key, (value, _) in section.values.items():
        fields[key] = coerce_site_value(key, value, f"[{section.label}] {key}")
    try:
        return SiteState.model_validate(fields)
    except ValidationError as e:
        raise ConfigurationError(f"[{section.label}] {_validation_message(e)}") from None


def _parse_mutation(value: str, line_number: int, sites: Dict[str, SiteState]) -> Mutation:
    parts = [part.strip() for part in value.split(",", 3)]
    if len(parts) != 4:
        raise ScenarioSyntaxError("mutate = <step>,<site>,<field>,<value>", line_number)
    step, site, field, raw = parts
    key = f"[network] mutate (line {line_number})"
    if site not in sites:
        raise ConfigurationError(f"{key}: site '{site}' is not declared")
    if field not in SECTION_KEYS["site"]:
        raise ConfigurationError(f"{key}: unknown site field '{field}'")
    try:
        return Mutation(step=_int(step, key), site=site, field=field,
                        value=coerce_site_value(field, raw, key))
    except ValidationError as e:
        raise ConfigurationError(f"{key}: {_validation_message(e)}") from None


def _parse_weights(section: Optional[_Section], policies: PolicySet) -> ChoiceWeights:
    label = f"choice.{policies.attribute}"
    default_target = policies.find_kind("random") or policies.policies[0]
    if section is None:
        return ChoiceWeights(override_target=default_target.id)

    override = section.get("override")
    target = default_target
    if override is not None:
        target = policies.find_kind(override)
        if target is None:
            raise ConfigurationError(
                f"[{label}] override: '{override}' is not one of {', '.join(policies.kinds)}"
            )
    probabilities = {
        key: _float(section.get(key), f"[{label}] {key}") if section.get(key) is not None else 0.0
        for key in ("pr_keep", "pr_override", "pr_empty")
    }
    try:
        return ChoiceWeights(override_target=target.id, **probabilities)
    except ValidationError as e:
        raise ConfigurationError(f"[{label}] {_validation_message(e)}") from None


def parse_scenario(text: str) -> Scenario:
    """
    Parse scenario text.

    Args:
        text: Scenario file content

    Returns:
        Validated Scenario

    Raises:
        ScenarioSyntaxError: On malformed lines, unknown sections or keys
        ConfigurationError: On semantic problems, naming the offending key
    """
    sections = _split_sections(text)
    by_name = {section.label: section for section in sections if section.name != "site"}

    for required in ("network", "mobility"):
        if required not in by_name:
            raise ConfigurationError(f"missing section [{required}]")
    if "choice.replication" in by_name and "replication" not in by_name:
        raise ConfigurationError("[choice.replication] given without [replication]")

    sites = {}
    for section in sections:
        if section.name == "site":
            site = _parse_site(section)
            sites[site.name] = site
    if not sites:
        raise ConfigurationError("no [site <name>] section declared")

    network_section = by_name["network"]
    launch = network_section.get("launch")
    if launch is None:
        raise ConfigurationError("[network] launch: missing")
    if launch not in sites:
        raise ConfigurationError(f"[network] launch: site '{launch}' is not declared")
    mutations = [
        _parse_mutation(value, line_number, sites)
        for value, line_number in network_section.repeated.get("mutate", [])
    ]
    try:
        network = Network(sites=sites, launch=launch, mutations=mutations)
    except ValidationError as e:
        raise ConfigurationError(f"[network] {_validation_message(e)}") from None

    mobility = by_name["mobility"]
    kinds = _list(mobility.get("policies") or "", "[mobility] policies")
    if not kinds:
        raise ConfigurationError("[mobility] policies: at least one policy is required")
    route = mobility.get("route")
    criterion = mobility.get("criterion")
    if route is not None and "route" not in kinds:
        raise ConfigurationError("[mobility] route: given but no route policy is listed")
    if criterion is not None:
        if "directed" not in kinds:
            raise ConfigurationError("[mobility] criterion: given but no directed policy is listed")
        if criterion not in ("least_loaded", "most_free_disk"):
            raise ConfigurationError(
                f"[mobility] criterion: expected least_loaded or most_free_disk, got '{criterion}'"
            )
    route_sites = _list(route, "[mobility] route") if route is not None else None
    if route_sites is not None:
        try:
            plan_route(route_sites, launch, sites)
        except ConfigurationError as e:
            raise ConfigurationError(f"[mobility] {e}") from None
    try:
        mobility_policies = build_mobility_policies(kinds, route=route_sites, criterion=criterion)
    except ValidationError as e:
        raise ConfigurationError(f"[mobility] policies: {_validation_message(e)}") from None
    except ConfigurationError as e:
        raise ConfigurationError(f"[mobility] {e}") from None
    mobility_weights = _parse_weights(by_name.get("choice.mobility"), mobility_policies)
    allow = mobility.get("allow_non_autonomous")

    replication = None
    if "replication" in by_name:
        replication = _parse_replication(by_name["replication"], by_name.get("choice.replication"))

    run = by_name.get("run")
    run_fields: Dict[str, Any] = {}
    if run is not None:
        if run.get("seed") is not None:
            run_fields["seed"] = _int(run.get("seed"), "[run] seed")
        if run.get("max_steps") is not None:
            run_fields["max_steps"] = _int(run.get("max_steps"), "[run] max_steps")
        if run.get("output_dir") is not None:
            run_fields["output_dir"] = run.get("output_dir")

    try:
        return Scenario(
            network=network,
            mobility_policies=mobility_policies,
            mobility_weights=mobility_weights,
            allow_non_autonomous=_bool(allow, "[mobility] allow_non_autonomous") if allow else False,
            replication=replication,
            **run_fields,
        )
    except ValidationError as e:
        raise ConfigurationError(f"scenario: {_validation_message(e)}") from None


def _parse_replication(section: _Section, choice: Optional[_Section]) -> ReplicationConfig:
    kinds = _list(section.get("replication_policies") or "", "[replication] replication_policies")
    if not kinds:
        raise ConfigurationError("[replication] replication_policies: at least one policy is required")
    try:
        policies = build_replication_policies(kinds)
    except ValidationError as e:
        raise ConfigurationError(f"[replication] replication_policies: {_validation_message(e)}") from None
    except ConfigurationError as e:
        raise ConfigurationError(f"[replication] {e}") from None

    scope_text = section.get("replication_scope")
    try:
        scope = parse_scope(scope_text) if scope_text is not None else parse_scope("all")
    except ConfigurationError as e:
        raise ConfigurationError(f"[replication] {e}") from None

    allow = section.get("allow_non_autonomous")
    return ReplicationConfig(
        policies=policies,
        weights=_parse_weights(choice, policies),
        scope=scope,
        allow_non_autonomous=_bool(allow, "[replication] allow_non_autonomous") if allow else False,
    )


def parse_scenario_file(path: str) -> Scenario:
    """
    Parse a scenario file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ConfigurationError: If the scenario is invalid
    """
    scenario_path = Path(path)
    if not scenario_path.exists():
        raise FileNotFoundError(f"Scenario file not found: {path}")
    logger.debug("loading scenario %s", scenario_path)
    return parse_scenario(scenario_path.read_text(encoding="utf-8"))


def _render_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return ",".join(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render_weights(lines: List[str], attribute: str, weights: ChoiceWeights, policies: PolicySet) -> None:
    lines.append(f"[choice.{attribute}]")
    lines.append(f"pr_keep = {weights.pr_keep!r}")
    lines.append(f"pr_override = {weights.pr_override!r}")
    lines.append(f"pr_empty = {weights.pr_empty!r}")
    lines.append(f"override = {policies.get(weights.override_target).kind}")
    lines.append("")


def render_scenario(scenario: Scenario) -> str:
    """Render a scenario in canonical form; parse_scenario reads it back unchanged."""
    network = scenario.network
    lines = ["[network]", f"launch = {network.launch}"]
    for mutation in network.mutations:
        lines.append(
            f"mutate = {mutation.step},{mutation.site},{mutation.field},{_render_value(mutation.value)}"
        )
    lines.append("")

    for site in network.sites.values():
        lines.append(f"[site {site.name}]")
        for field in SECTION_KEYS["site"]:
            lines.append(f"{field} = {_render_value(getattr(site, field))}")
        lines.append("")

    policies = scenario.mobility_policies
    lines.append("[mobility]")
    lines.append(f"policies = {','.join(policies.kinds)}")
    route = policies.find_kind("route")
    if route is not None:
        lines.append(f"route = {','.join(route.params['route'])}")
    directed = policies.find_kind("directed")
    if directed is not None:
        lines.append(f"criterion = {directed.params['criterion']}")
    lines.append(f"allow_non_autonomous = {_render_value(scenario.allow_non_autonomous)}")
    lines.append("")
    _render_weights(lines, "mobility", scenario.mobility_weights, policies)

    replication = scenario.replication
    if replication is not None:
        lines.append("[replication]")
        lines.append(f"replication_policies = {','.join(replication.policies.kinds)}")
        lines.append(f"replication_scope = {render_scope(replication.scope)}")
        lines.append(f"allow_non_autonomous = {_render_value(replication.allow_non_autonomous)}")
        lines.append("")
        _render_weights(lines, "replication", replication.weights, replication.policies)

    lines.append("[run]")
    lines.append(f"seed = {scenario.seed}")
    lines.append(f"max_steps = {scenario.max_steps}")
    lines.append(f"output_dir = {scenario.output_dir}")
    return "\n".join(lines) + "\n"
