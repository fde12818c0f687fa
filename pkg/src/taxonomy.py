"""Classification of autonomy models and of agent attributes."""

from typing import List

from pydantic import BaseModel

from .models import (
    Attribute,
    AttributeDescriptor,
    Classification,
    ModelDescriptor,
    PolicyDescriptor,
    PolicySet,
    Scenario,
)


class Verdict:
    """Per-attribute autonomy verdicts."""
    AUTONOMOUS = "autonomous"
    NON_AUTONOMOUS = "non_autonomous"


# Four levels: executes orders, collaborates, plans alone, directs others.
BARBER = ModelDescriptor(name="Barber", applies_to="per_part", requires_second_agent=True, autonomy_levels=4)
LUCK = ModelDescriptor(name="Luck", applies_to="whole_agent", requires_second_agent=False, autonomy_levels=1)
# Autonomy with regard to an attribute, the model this simulator implements.
SANCHIS = ModelDescriptor(name="Sanchis", applies_to="per_part", requires_second_agent=False, autonomy_levels=1)

BUILTIN_MODELS = (BARBER, LUCK, SANCHIS)
SELF_DESCRIPTOR = SANCHIS


class AttributeVerdict(BaseModel):
    attribute: str
    verdict: str
    policies: int
    has_choice_module: bool


def classify(descriptor: ModelDescriptor) -> Classification:
    """
    Place an autonomy model on the global/partial, social/nonsocial and
    absolute/relative axes.
    """
    return Classification(
        scope="global" if descriptor.applies_to == "whole_agent" else "partial",
        sociality="social" if descriptor.requires_second_agent else "nonsocial",
        gradation="absolute" if descriptor.autonomy_levels == 1 else "relative",
    )


def classify_attribute(attribute: AttributeDescriptor) -> str:
    """An attribute is autonomous iff a choice module picks among N > 1 policies."""
    if attribute.has_choice_module and attribute.policy_set.size > 1:
        return Verdict.AUTONOMOUS
    return Verdict.NON_AUTONOMOUS


def _perception(attribute: str) -> AttributeDescriptor:
    policy = PolicyDescriptor(id=1, kind="perceive", hop_arity="single-shot")
    return AttributeDescriptor(
        id=attribute,
        policy_set=PolicySet(attribute=attribute, policies=(policy,)),
        has_choice_module=False,
    )


def attributes_for(scenario: Scenario) -> List[AttributeDescriptor]:
    """
    The attributes of the scenario's agent.

    A choice module over a single policy cannot choose anything, so an
    attribute configured with one policy is described without a module.
    """
    attributes = [AttributeDescriptor(
        id=Attribute.MOBILITY,
        policy_set=scenario.mobility_policies,
        has_choice_module=scenario.mobility_policies.size > 1,
    )]
    if scenario.replication is not None:
        policies = scenario.replication.policies
        attributes.append(AttributeDescriptor(
            id=Attribute.REPLICATION,
            policy_set=policies,
            has_choice_module=policies.size > 1,
        ))
    attributes.append(_perception(Attribute.CLONE_PERCEPTION))
    attributes.append(_perception(Attribute.SITE_PERCEPTION))
    return attributes


def attribute_verdicts(scenario: Scenario) -> List[AttributeVerdict]:
    return [
        AttributeVerdict(
            attribute=attribute.id,
            verdict=classify_attribute(attribute),
            policies=attribute.policy_set.size,
            has_choice_module=attribute.has_choice_module,
        )
        for attribute in attributes_for(scenario)
    ]
