"""Data models for attributes, policies, the simulated network and run artifacts."""

import re
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .rng import MAX_SEED, RngStream

# Reserved index of the empty policy P0.
EMPTY_POLICY = 0
WEIGHT_TOLERANCE = 1e-9

PolicyId = int

_SITE_NAME_RE = re.compile(r"^[^\s,]+$")


class Attribute:
    """Attribute identifiers known to the simulator."""
    MOBILITY = "mobility"
    REPLICATION = "replication"
    CLONE_PERCEPTION = "clone-perception"
    SITE_PERCEPTION = "site-perception"


class Branch:
    """Outcomes of the nondeterministic component."""
    KEEP = "keep"
    OVERRIDE = "override"
    EMPTY = "empty"

    ALL = (KEEP, OVERRIDE, EMPTY)


class HaltReason:
    """Reasons an agent run stops."""
    EMPTY_POLICY = "empty_policy"
    MAX_STEPS = "max_steps"
    STRANDED = "stranded"

    ALL = (EMPTY_POLICY, MAX_STEPS, STRANDED)


def policy_label(policy: Optional[PolicyId]) -> str:
    """Render a policy index as ``P<i>`` (empty string when absent)."""
    if policy is None:
        return ""
    return f"P{policy}"


# ---------------------------------------------------------------------------
# Policies and choice module
# ---------------------------------------------------------------------------

class PolicyDescriptor(BaseModel):
    """One functioning policy of an attribute."""
    model_config = ConfigDict(frozen=True)

    id: PolicyId = Field(ge=1)
    kind: str
    hop_arity: Literal["mono-hop", "multi-hop", "single-shot"]
    params: Dict[str, Any] = {}


class PolicySet(BaseModel):
    """Static, ordered set of the N functioning policies of an attribute."""
    model_config = ConfigDict(frozen=True)

    attribute: str
    policies: Tuple[PolicyDescriptor, ...] = ()

    @model_validator(mode="after")
    def _check_indices(self) -> "PolicySet":
        ids = [policy.id for policy in self.policies]
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError(
                f"policy indices of '{self.attribute}' must be 1..N in order, got {ids}"
            )
        kinds = [policy.kind for policy in self.policies]
        if len(set(kinds)) != len(kinds):
            raise ValueError(f"duplicate policy kinds for '{self.attribute}': {kinds}")
        return self

    @property
    def size(self) -> int:
        """Number N of functioning policies."""
        return len(self.policies)

    def get(self, policy_id: PolicyId) -> PolicyDescriptor:
        """Return the descriptor with the given index (1..N)."""
        if not 1 <= policy_id <= self.size:
            raise KeyError(f"{policy_label(policy_id)} is not in the '{self.attribute}' policy set")
        return self.policies[policy_id - 1]

    def find_kind(self, kind: str) -> Optional[PolicyDescriptor]:
        """Return the policy of the given kind, if any."""
        for policy in self.policies:
            if policy.kind == kind:
                return policy
        return None

    @property
    def kinds(self) -> List[str]:
        return [policy.kind for policy in self.policies]


class AttributeDescriptor(BaseModel):
    """An agent attribute together with its policies and choice-module flag."""
    model_config = ConfigDict(frozen=True)

    id: str
    policy_set: PolicySet
    has_choice_module: bool

    @model_validator(mode="after")
    def _check_module(self) -> "AttributeDescriptor":
        if self.policy_set.size == 0:
            raise ValueError(f"attribute '{self.id}' has no policy")
        if self.has_choice_module and self.policy_set.size < 2:
            raise ValueError(f"attribute '{self.id}' has a choice module but fewer than 2 policies")
        return self


class ChoiceWeights(BaseModel):
    """Probabilities of the keep / override / empty branches."""
    model_config = ConfigDict(frozen=True)

    pr_keep: float = Field(default=0.8, ge=0.0, le=1.0)
    pr_override: float = Field(default=0.1, ge=0.0, le=1.0)
    pr_empty: float = Field(default=0.1, ge=0.0, le=1.0)
    override_target: PolicyId = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_sum(self) -> "ChoiceWeights":
        total = self.pr_keep + self.pr_override + self.pr_empty
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise ValueError(f"weights sum to {total!r}, expected 1")
        return self


class ChoiceState(BaseModel):
    """Deterministic-component bookkeeping for one attribute."""
    current: Optional[PolicyId] = Field(default=None, ge=1)
    finished: bool = True

    @model_validator(mode="after")
    def _check_consistency(self) -> "ChoiceState":
        if self.current is None and not self.finished:
            raise ValueError("a choice state without a current policy must be finished")
        return self

    def commit(self, policy: PolicyId) -> None:
        """Make ``policy`` the running policy."""
        self.current = policy
        self.finished = False

    def mark_finished(self) -> None:
        self.finished = True


class ChoiceResult(BaseModel):
    """Outcome of one activation of a choice module."""
    model_config = ConfigDict(frozen=True)

    attribute: str
    selected: PolicyId
    final: PolicyId
    branch: Literal["keep", "override", "empty"]

    @property
    def inhibited(self) -> bool:
        return self.final == EMPTY_POLICY


# ---------------------------------------------------------------------------
# Simulated network
# ---------------------------------------------------------------------------

SiteField = Literal["status", "access", "users", "load", "free_disk_mb", "clone_count"]


class SiteState(BaseModel):
    """Snapshot of one simulated host."""
    model_config = ConfigDict(frozen=True)

    name: str
    status: Literal["up", "down"] = "up"
    access: Literal["allowed", "prohibited"] = "allowed"
    users: Tuple[str, ...] = ()
    load: float = Field(default=0.0, ge=0.0, le=1.0)
    free_disk_mb: int = Field(default=0, ge=0)
    clone_count: int = Field(default=0, ge=0)

    @field_validator("name")
    @classmethod
    def _check_name(cls, value: str) -> str:
        if not _SITE_NAME_RE.match(value):
            raise ValueError(f"invalid site name {value!r}")
        return value

    @field_validator("users")
    @classmethod
    def _check_users(cls, value: Tuple[str, ...]) -> Tuple[str, ...]:
        for user in value:
            if not _SITE_NAME_RE.match(user):
                raise ValueError(f"invalid user name {user!r}")
        return value

    @property
    def is_up(self) -> bool:
        return self.status == "up"

    @property
    def is_allowed(self) -> bool:
        return self.access == "allowed"


class Mutation(BaseModel):
    """A scripted change of one site field at a given step."""
    model_config = ConfigDict(frozen=True)

    step: int = Field(ge=1)
    site: str
    field: SiteField
    value: Any


class Network(BaseModel):
    """Declared sites, the launch site and scheduled mutations."""
    sites: Dict[str, SiteState]
    launch: str
    mutations: List[Mutation] = []

    @model_validator(mode="after")
    def _check_network(self) -> "Network":
        for name, site in self.sites.items():
            if name != site.name:
                raise ValueError(f"site key {name!r} does not match site name {site.name!r}")
        if self.launch not in self.sites:
            raise ValueError(f"launch site '{self.launch}' is not declared")
        launch = self.sites[self.launch]
        if not (launch.is_up and launch.is_allowed):
            raise ValueError(f"launch site '{self.launch}' must be up and allowed")
        for mutation in self.mutations:
            if mutation.site not in self.sites:
                raise ValueError(f"mutation targets undeclared site '{mutation.site}'")
            # Rejects values the site model would not accept.
            SiteState.model_validate(
                {**self.sites[mutation.site].model_dump(), mutation.field: mutation.value}
            )
        # Stable: same-step mutations keep file order.
        self.mutations = sorted(self.mutations, key=lambda m: m.step)
        return self

    @property
    def site_names(self) -> List[str]:
        """Declared site names in lexicographic order."""
        return sorted(self.sites)


# ---------------------------------------------------------------------------
# Mobility and replication
# ---------------------------------------------------------------------------

NavigationMode = Literal["random", "circular", "route", "directed"]


class Route(BaseModel):
    """Planned ordered list of hops."""
    model_config = ConfigDict(frozen=True)

    hops: Tuple[str, ...]

    @field_validator("hops")
    @classmethod
    def _check_hops(cls, value: Tuple[str, ...]) -> Tuple[str, ...]:
        if not value:
            raise ValueError("a route needs at least one hop")
        for previous, current in zip(value, value[1:]):
            if previous == current:
                raise ValueError(f"route repeats site '{current}' consecutively")
        return value


class DirectedCriterion(BaseModel):
    """Metric and objective used by directed navigation."""
    model_config = ConfigDict(frozen=True)

    metric: Literal["load", "free_disk"]
    objective: Literal["minimize", "maximize"]

    @model_validator(mode="after")
    def _check_pair(self) -> "DirectedCriterion":
        if (self.metric, self.objective) not in (("load", "minimize"), ("free_disk", "maximize")):
            raise ValueError(f"unsupported criterion ({self.metric}, {self.objective})")
        return self

    @classmethod
    def from_name(cls, name: str) -> "DirectedCriterion":
        """Build a criterion from its scenario name."""
        if name == "least_loaded":
            return cls(metric="load", objective="minimize")
        if name == "most_free_disk":
            return cls(metric="free_disk", objective="maximize")
        raise ValueError(f"unknown criterion '{name}'")

    @property
    def name(self) -> str:
        return "least_loaded" if self.metric == "load" else "most_free_disk"


class NavigationState(BaseModel):
    """Progress of the running mobility policy."""
    mode: NavigationMode
    remaining: List[str] = []
    visited: List[str] = []
    launch: str
    criterion: Optional[DirectedCriterion] = None


class ReplicationScope(BaseModel):
    """Which sites a replication policy covers."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["all", "criterion"] = "all"
    metric: Optional[Literal["load", "free_disk"]] = None
    threshold: Optional[float] = None

    @model_validator(mode="after")
    def _check_scope(self) -> "ReplicationScope":
        if self.kind == "criterion" and (self.metric is None or self.threshold is None):
            raise ValueError("a criterion scope needs a metric and a threshold")
        return self

    def admits(self, site: SiteState) -> bool:
        """Check the scope predicate against a site snapshot."""
        if self.kind == "all":
            return True
        if self.metric == "free_disk":
            return site.free_disk_mb >= self.threshold
        return site.load <= self.threshold


class ReplicationPolicy(BaseModel):
    """Replication rate plus replication hosts."""
    model_config = ConfigDict(frozen=True)

    rate: Literal["exactly_one_per_site", "at_most_one_per_site", "at_least_one_per_site"]
    scope: ReplicationScope = ReplicationScope()


class CloneMap(BaseModel):
    """Clone counts per site (absent means zero)."""
    counts: Dict[str, int] = {}

    def get(self, site: str) -> int:
        return self.counts.get(site, 0)


class ReplicationConfig(BaseModel):
    """Replication attribute configuration of a scenario."""
    model_config = ConfigDict(frozen=True)

    policies: PolicySet
    weights: ChoiceWeights = ChoiceWeights()
    scope: ReplicationScope = ReplicationScope()
    allow_non_autonomous: bool = False


# ---------------------------------------------------------------------------
# Run artifacts
# ---------------------------------------------------------------------------

TraceKind = Literal[
    "arrive", "task", "clone_check", "det_choice", "nondet_choice",
    "hop_attempt", "hop_result", "replication_plan", "halt",
]


class TraceEvent(BaseModel):
    """One line of the run trace."""
    model_config = ConfigDict(frozen=True)

    step: int
    kind: TraceKind
    site: str
    policy_selected: Optional[PolicyId] = None
    policy_final: Optional[PolicyId] = None
    detail: str = ""


class VisitedSite(BaseModel):
    model_config = ConfigDict(frozen=True)

    site: str
    users: Tuple[str, ...] = ()


class Report(BaseModel):
    """Result of the agent's displacements, sent back as a mail-style text."""
    launch: str
    visited: List[VisitedSite] = []
    inaccessible: List[str] = []
    prohibited: List[str] = []
    dysfunctions: List[str] = []
    halted_at: str = ""
    halt_reason: str = ""
    steps: int = 0


class AgentState(BaseModel):
    """Whole-agent state during a run."""
    location: str
    nav: Optional[NavigationState] = None
    choice_states: Dict[str, ChoiceState] = {}
    rng_streams: Dict[str, RngStream] = {}
    step: int = 0
    halted: Optional[str] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)


# ---------------------------------------------------------------------------
# Taxonomy
# ---------------------------------------------------------------------------

class ModelDescriptor(BaseModel):
    """Facts about an autonomy model used by the classification criteria."""
    model_config = ConfigDict(frozen=True)

    name: str
    applies_to: Literal["whole_agent", "per_part"]
    requires_second_agent: bool
    autonomy_levels: int = Field(ge=1)


class Classification(BaseModel):
    model_config = ConfigDict(frozen=True)

    scope: Literal["global", "partial"]
    sociality: Literal["social", "nonsocial"]
    gradation: Literal["absolute", "relative"]


# ---------------------------------------------------------------------------
# Scenario
# ---------------------------------------------------------------------------

class Scenario(BaseModel):
    """Everything a run needs; the only input of a simulation."""
    model_config = ConfigDict(frozen=True)

    network: Network
    mobility_policies: PolicySet
    mobility_weights: ChoiceWeights = ChoiceWeights()
    allow_non_autonomous: bool = False
    replication: Optional[ReplicationConfig] = None
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    max_steps: int = Field(default=1000, ge=1)
    output_dir: str = "out"

    @model_validator(mode="after")
    def _check_references(self) -> "Scenario":
        if self.mobility_policies.size == 0:
            raise ValueError("mobility needs at least one policy")
        if self.mobility_policies.size < 2 and not self.allow_non_autonomous:
            raise ValueError(
                "mobility needs at least 2 policies (set allow_non_autonomous = true for one)"
            )
        if self.mobility_weights.override_target > self.mobility_policies.size:
            raise ValueError("mobility override target is outside the policy set")
        if self.replication is not None:
            policies = self.replication.policies
            if policies.size == 0:
                raise ValueError("replication needs at least one policy")
            if policies.size < 2 and not self.replication.allow_non_autonomous:
                raise ValueError(
                    "replication needs at least 2 policies (set allow_non_autonomous = true for one)"
                )
            if self.replication.weights.override_target > policies.size:
                raise ValueError("replication override target is outside the policy set")
        return self
