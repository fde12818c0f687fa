"""Two-stage choice module: deterministic selection, then keep / override / inhibit."""

import logging
from typing import Optional

from .errors import ConfigurationError
from .models import (
    EMPTY_POLICY,
    Branch,
    ChoiceResult,
    ChoiceState,
    ChoiceWeights,
    PolicyId,
    PolicySet,
    policy_label,
)
from .rng import RngStream

logger = logging.getLogger(__name__)


def deterministic_choice(state: ChoiceState, policy_set: PolicySet) -> PolicyId:
    """
    Select or maintain the current policy.

    The running policy is kept while it has not finished. Once it has
    finished, the next policy in round-robin order over 1..N is selected;
    the very first selection is policy 1.

    Args:
        state: Deterministic-component state of the attribute
        policy_set: Static policy set of the attribute

    Returns:
        Policy index in 1..N

    Raises:
        ConfigurationError: If the policy set is empty
    """
    if policy_set.size == 0:
        raise ConfigurationError(f"attribute '{policy_set.attribute}' has an empty policy set")

    if not state.finished and state.current is not None:
        return state.current
    if state.current is None:
        return 1
    return state.current % policy_set.size + 1


def draw_branch(weights: ChoiceWeights, rng: RngStream) -> str:
    """Draw keep, override or empty according to ``weights`` (one draw)."""
    u = rng.uniform()
    if u < weights.pr_keep:
        return Branch.KEEP
    if u < weights.pr_keep + weights.pr_override:
        return Branch.OVERRIDE
    # Rounding in the sum cannot leak into the empty branch when pr_empty is 0.
    if weights.pr_empty == 0.0:
        return Branch.OVERRIDE if weights.pr_override > 0.0 else Branch.KEEP
    return Branch.EMPTY


def resolve_branch(branch: str, selected: PolicyId, weights: ChoiceWeights) -> PolicyId:
    """Map a drawn branch to the policy it elects."""
    if branch == Branch.KEEP:
        return selected
    if branch == Branch.OVERRIDE:
        return weights.override_target
    return EMPTY_POLICY


def nondeterministic_choice(selected: PolicyId, weights: ChoiceWeights, rng: RngStream) -> PolicyId:
    """
    Keep the selected policy, force the override target, or inhibit (P0).

    Args:
        selected: Policy chosen by the deterministic component (1..N)
        weights: Branch probabilities and override target
        rng: Stream of the attribute; exactly one draw is consumed

    Returns:
        Policy index in 0..N
    """
    if selected < 1:
        raise ConfigurationError(f"selected policy must be in 1..N, got {selected}")
    return resolve_branch(draw_branch(weights, rng), selected, weights)


def autonomous_choice(
    state: ChoiceState,
    policy_set: PolicySet,
    weights: ChoiceWeights,
    rng: RngStream
) -> PolicyId:
    """Run the deterministic then the nondeterministic component. Does not commit."""
    return nondeterministic_choice(deterministic_choice(state, policy_set), weights, rng)


class ChoiceModule:
    """The choice module of one autonomous attribute during a run."""

    def __init__(
        self,
        policy_set: PolicySet,
        weights: ChoiceWeights,
        rng: RngStream,
        state: Optional[ChoiceState] = None
    ):
        """
        Initialize the module.

        Args:
            policy_set: Static policy set of the attribute
            weights: Branch probabilities
            rng: Stream owned by this attribute
            state: Initial deterministic state (fresh when omitted)
        """
        if weights.override_target > policy_set.size:
            raise ConfigurationError(
                f"override target {policy_label(weights.override_target)} is outside "
                f"the '{policy_set.attribute}' policy set"
            )
        self.policy_set = policy_set
        self.weights = weights
        self.rng = rng
        self.state = state if state is not None else ChoiceState()

    @property
    def attribute(self) -> str:
        return self.policy_set.attribute

    def decide(self) -> ChoiceResult:
        """Run both components once and report the selection, the final policy and the branch."""
        selected = deterministic_choice(self.state, self.policy_set)
        branch = draw_branch(self.weights, self.rng)
        final = resolve_branch(branch, selected, self.weights)
        logger.debug(
            "%s choice: selected %s, %s -> %s",
            self.attribute, policy_label(selected), branch, policy_label(final)
        )
        return ChoiceResult(attribute=self.attribute, selected=selected, final=final, branch=branch)

    def starts_new_activation(self, final: PolicyId) -> bool:
        """Whether committing ``final`` begins a fresh run of that policy."""
        return self.state.finished or self.state.current != final

    def commit(self, final: PolicyId) -> None:
        if final == EMPTY_POLICY:
            raise ConfigurationError("the empty policy cannot be committed")
        self.state.commit(final)

    def mark_finished(self) -> None:
        self.state.mark_finished()
