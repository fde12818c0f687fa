"""Agent lifecycle: choice modules, navigation, task execution, trace and report."""

import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

from .choice import ChoiceModule
from .errors import PlanningError, SimulationInternalError
from .mobility import begin_navigation, is_finished, step_policy
from .models import (
    Attribute,
    AgentState,
    ChoiceResult,
    ChoiceState,
    HaltReason,
    Report,
    Scenario,
    TraceEvent,
)
from .replication import plan_replication, replication_policy
from .report import ReportBuilder
from .rng import RngStream
from .simworld import MigrationOutcome, World
from .trace import TraceRecorder

logger = logging.getLogger(__name__)


class AgentRun:
    """
    One run of the agent over a scenario.

    Each step applies the scheduled mutations, lets the replication choice
    module act on the current site (when configured), then asks the mobility
    choice module for a policy. The empty policy halts the agent where it
    stands; any other policy is committed and advanced by one hop.
    """

    def __init__(self, scenario: Scenario, seed: Optional[int] = None):
        """
        Initialize a run.

        Args:
            scenario: Validated scenario
            seed: Run seed (defaults to the scenario seed)
        """
        self.scenario = scenario
        self.seed = scenario.seed if seed is None else seed
        self.world = World(scenario.network)
        self.trace = TraceRecorder()
        self.report = ReportBuilder(self.world.launch)
        self.branch_counts: Counter = Counter()

        streams = {Attribute.MOBILITY: RngStream(self.seed, Attribute.MOBILITY)}
        states = {Attribute.MOBILITY: ChoiceState()}
        if scenario.replication is not None:
            streams[Attribute.REPLICATION] = RngStream(self.seed, Attribute.REPLICATION)
            states[Attribute.REPLICATION] = ChoiceState()

        self.state = AgentState(
            location=self.world.launch,
            choice_states=states,
            rng_streams=streams,
        )
        self.mobility = ChoiceModule(
            scenario.mobility_policies,
            scenario.mobility_weights,
            streams[Attribute.MOBILITY],
            state=states[Attribute.MOBILITY],
        )
        self.replication: Optional[ChoiceModule] = None
        if scenario.replication is not None:
            self.replication = ChoiceModule(
                scenario.replication.policies,
                scenario.replication.weights,
                streams[Attribute.REPLICATION],
                state=states[Attribute.REPLICATION],
            )
        self._final: Optional[Report] = None

    @property
    def mobility_choices(self) -> int:
        """Number of mobility choice-module activations so far."""
        return sum(self.branch_counts.values())

    def run(self) -> Tuple[Report, List[TraceEvent]]:
        """
        Execute the run until the agent halts.

        Returns:
            Tuple of (report, trace events)
        """
        if self._final is not None:
            return self._final, self.trace.events

        max_steps = self.scenario.max_steps
        step = 0
        while self.state.halted is None:
            step += 1
            self.state.step = step
            if step == 1:
                # The launch site is up and allowed before any mutation.
                self._arrive(step, self.world.launch, origin=None)
            self.world.advance(step)

            if self.replication is not None:
                self._replicate(step)
            self._move(step)

            if self.state.halted is None and step >= max_steps:
                self._halt(step, HaltReason.MAX_STEPS)

        return self._final, self.trace.events

    # ------------------------------------------------------------------

    def _record_choice(self, step: int, result: ChoiceResult, kind: str) -> None:
        site = self.state.location
        self.trace.record(
            step, "det_choice", site, selected=result.selected,
            detail=f"attribute={result.attribute} policy={kind}"
        )
        self.trace.record(
            step, "nondet_choice", site, selected=result.selected, final=result.final,
            detail=f"attribute={result.attribute} branch={result.branch}"
        )

    def _arrive(self, step: int, site: str, origin: Optional[str]) -> None:
        detail = "launch" if origin is None else f"from={origin}"
        self.trace.record(step, "arrive", site, detail=detail)

        dysfunction = self.world.perceive_clone(site)
        self.trace.record(step, "clone_check", site, detail=f"dysfunction={str(dysfunction).lower()}")
        if dysfunction:
            logger.warning("residual clone perceived on %s at step %d", site, step)
            self.report.add_dysfunction(site)

        users = self.world.collect_users(site, self.state.location)
        self.trace.record(step, "task", site, detail=f"users={','.join(users)}")
        self.report.add_visit(site, users)

    def _replicate(self, step: int) -> None:
        module = self.replication
        result = module.decide()
        self._record_choice(step, result, module.policy_set.get(result.selected).kind)
        if result.inhibited:
            return

        module.commit(result.final)
        descriptor = module.policy_set.get(result.final)
        policy = replication_policy(descriptor, self.scenario.replication.scope)
        creations = plan_replication(policy, self.world.network, self.world.clone_map())
        self.world.place_clones(creations, step)
        created = ",".join(f"{site}:{count}" for site, count in creations) or "none"
        self.trace.record(
            step, "replication_plan", self.state.location, final=result.final,
            detail=f"policy={descriptor.kind} created={created}"
        )
        # Replication policies are single-shot.
        module.mark_finished()

    def _move(self, step: int) -> None:
        module = self.mobility
        result = module.decide()
        self.branch_counts[result.branch] += 1
        self._record_choice(step, result, module.policy_set.get(result.selected).kind)

        if result.inhibited:
            # Any remaining route is abandoned.
            self.state.nav = None
            self._halt(step, HaltReason.EMPTY_POLICY)
            return

        descriptor = module.policy_set.get(result.final)
        new_activation = module.starts_new_activation(result.final)
        module.commit(result.final)
        location = self.state.location

        if new_activation or self.state.nav is None:
            try:
                self.state.nav = begin_navigation(descriptor, self.world.network, location)
            except PlanningError as e:
                logger.warning("%s navigation could not start: %s", descriptor.kind, e)
                self._no_hop(step, descriptor.kind, f"planning_error={e}")
                return

        outcome = step_policy(self.state.nav, self.world.network, module.rng)
        if outcome.finished:
            self._no_hop(step, descriptor.kind, outcome.note or "finished")
            return

        target = outcome.hop
        self.trace.record(step, "hop_attempt", location, detail=f"policy={descriptor.kind} target={target}")
        if target == location:
            self.trace.record(step, "hop_result", target, detail="outcome=already_here")
        else:
            migration = self.world.migrate(location, target)
            self.trace.record(step, "hop_result", target, detail=f"outcome={migration}")
            if migration == MigrationOutcome.ARRIVED:
                self.state.location = target
                self._arrive(step, target, origin=location)
            else:
                logger.debug("step %d: %s -> %s failed (%s)", step, location, target, migration)
                self.report.add_outcome(target, migration)

        if is_finished(self.state.nav):
            module.mark_finished()

    def _no_hop(self, step: int, kind: str, note: str) -> None:
        """The running policy produced no hop this step."""
        self.mobility.mark_finished()
        self.state.nav = None
        self.trace.record(step, "hop_attempt", self.state.location, detail=f"policy={kind} no_hop {note}")
        if len(self.world.network.sites) < 2:
            self._halt(step, HaltReason.STRANDED)

    def _halt(self, step: int, reason: str) -> None:
        if self.state.halted is not None:
            raise SimulationInternalError(f"agent halted twice ({self.state.halted}, {reason})")
        self.state.halted = reason
        self.trace.record(step, "halt", self.state.location, detail=f"reason={reason}")
        self._final = self.report.finish(self.state.location, reason, step)
        logger.debug("agent halted at %s after %d steps: %s", self.state.location, step, reason)


def run_agent(scenario: Scenario, seed: Optional[int] = None) -> Tuple[Report, List[TraceEvent]]:
    """
    Run the agent over a scenario.

    The scenario and the seed are the only inputs; nothing can steer the
    run once it has started.

    Args:
        scenario: Validated scenario
        seed: Run seed (defaults to the scenario seed)

    Returns:
        Tuple of (report, trace events)
    """
    return AgentRun(scenario, seed).run()


def run_summary(scenario: Scenario, seed: int) -> Dict:
    """Run once and keep only what a sweep aggregates."""
    agent = AgentRun(scenario, seed)
    report, _ = agent.run()
    return {
        "seed": seed,
        "halt_reason": report.halt_reason,
        "steps": report.steps,
        "choices": agent.mobility_choices,
        "branch_counts": dict(agent.branch_counts),
    }
