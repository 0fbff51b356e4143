"""Sufficient sets and direct causes.

A plan's pinned events are sufficient for an effect when the effect holds
however the unconstrained background varies.  In reliable mode every derived
variable outside the pins follows its equation and only the remaining
initial variables roam; in general mode only the declared function set
follows its equations and everything else roams.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .expr import Const
from .model import (
    ENUMERATION_CAP,
    Event,
    InterventionPlan,
    Model,
    ModelError,
    Scenario,
    UnknownVariableError,
    enumerate_settings,
    satisfies,
)
from .normality import plan_abnormality

__all__ = [
    "ActualityError",
    "NoParentsError",
    "SufficiencyWitness",
    "direct_cause_graph",
    "direct_cause_sets",
    "is_direct_cause",
    "is_sufficient",
    "minimal_sufficient_sets",
    "restricted_scenario",
]


class ActualityError(ModelError):
    """An operation needed an event at its actual value and got another."""


class NoParentsError(ModelError):
    """Direct causes were requested for an initial variable."""


@dataclass(frozen=True)
class SufficiencyWitness:
    """A sufficiency-passing plan together with the background it survived."""

    plan: InterventionPlan
    robust_vars: frozenset[str]

    def events(self) -> frozenset[Event]:
        return self.plan.value_set


def _check_actual_pins(scenario: Scenario, plan: InterventionPlan) -> None:
    for ev in plan.value_set:
        scenario.model.check_value(ev.var, ev.value)
        if scenario.actual_value(ev.var) != ev.value:
            raise ActualityError(
                f"plan pins {ev.render()} but the actual value is "
                f"{scenario.actual_value(ev.var)}"
            )


def _roaming_vars(
    scenario: Scenario, plan: InterventionPlan, effect_var: str
) -> frozenset[str]:
    model = scenario.model
    pinned = plan.pinned_vars()
    if scenario.mode == "reliable":
        follow = model.derived_variables() - pinned
    else:
        follow = plan.function_set
    return frozenset(model.variables) - pinned - follow - {effect_var}


def is_sufficient(
    scenario: Scenario,
    plan: InterventionPlan,
    effect: Event,
    cap: int = ENUMERATION_CAP,
) -> bool:
    """Does pinning the plan's events force the effect under every roaming
    background?"""
    model = scenario.model
    model.check_value(effect.var, effect.value)
    _check_actual_pins(scenario, plan)
    pins = plan.pins()
    if effect.var in pins:
        return pins[effect.var] == effect.value
    roaming = _roaming_vars(scenario, plan, effect.var)
    for background in enumerate_settings(model, roaming, cap):
        if not satisfies(scenario, plan, background, (effect,)):
            return False
    return True


def minimal_sufficient_sets(
    scenario: Scenario,
    effect: Event,
    cap: int = ENUMERATION_CAP,
) -> list[SufficiencyWitness]:
    """All inclusion-minimal sufficient plans over actual-valued events,
    ordered by size then variable tuple."""
    model = scenario.model
    model.check_value(effect.var, effect.value)
    actual = scenario.actual()
    candidates = sorted(v for v in model.variables if v != effect.var)
    passing: list[frozenset[str]] = []
    witnesses: list[SufficiencyWitness] = []
    for size in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            subset = frozenset(combo)
            # Any superset of a sufficient set cannot be minimal.
            if any(small <= subset for small in passing):
                continue
            plan = InterventionPlan(
                value_set=frozenset(Event(v, actual[v]) for v in combo)
            )
            if is_sufficient(scenario, plan, effect, cap):
                passing.append(subset)
                witnesses.append(
                    SufficiencyWitness(
                        plan=plan,
                        robust_vars=_roaming_vars(scenario, plan, effect.var),
                    )
                )
    return witnesses


def restricted_scenario(scenario: Scenario, target: str) -> Scenario:
    """The scenario cut down to the target's parents (as constants at their
    actual values) plus the target itself."""
    model = scenario.model
    if target not in model.domains:
        raise UnknownVariableError(f"unknown variable {target!r}")
    parents = model.parents(target)
    keep = [v for v in model.variables if v in parents] + [target]
    equations = {p: Const(scenario.actual_value(p)) for p in parents}
    equations[target] = model.equations[target]
    domains = {v: model.domains[v] for v in keep}
    small = Model(keep, equations, domains)
    defaults = {v: scenario.defaults[v] for v in keep}
    return Scenario(model=small, mode=scenario.mode, defaults=defaults)


def direct_cause_sets(
    scenario: Scenario,
    target: Event,
    cap: int = ENUMERATION_CAP,
) -> list[frozenset[Event]]:
    """Minimal robust parent sets of the target that also pass the
    abnormality screen, in canonical order."""
    model = scenario.model
    model.check_value(target.var, target.value)
    if model.is_initial(target.var):
        raise NoParentsError(f"{target.var!r} has no parents")
    if scenario.actual_value(target.var) != target.value:
        raise ActualityError(
            f"target {target.render()} is not the actual value "
            f"{scenario.actual_value(target.var)}"
        )
    small = restricted_scenario(scenario, target.var)
    result: list[frozenset[Event]] = []
    for witness in minimal_sufficient_sets(small, target, cap):
        verdict = plan_abnormality(
            small, witness.plan.pinned_vars(), target, cap=cap
        )
        if verdict.passed:
            result.append(witness.plan.value_set)
    return result


def is_direct_cause(
    scenario: Scenario,
    cause: Event,
    target: Event,
    cap: int = ENUMERATION_CAP,
) -> bool:
    """Membership in some direct-cause set of the target."""
    if scenario.model.is_initial(target.var):
        return False
    return any(cause in group for group in direct_cause_sets(scenario, target, cap))


def direct_cause_graph(
    scenario: Scenario,
    cap: int = ENUMERATION_CAP,
) -> dict[str, frozenset[str]]:
    """Incoming direct-cause edges for every derived variable, at the actual
    world: graph[y] is the set of x with an edge x -> y."""
    model = scenario.model
    graph: dict[str, frozenset[str]] = {}
    for var in model.variables:
        if model.is_initial(var):
            graph[var] = frozenset()
            continue
        target = Event(var, scenario.actual_value(var))
        members: set[str] = set()
        for group in direct_cause_sets(scenario, target, cap):
            members.update(ev.var for ev in group)
        graph[var] = frozenset(members)
    return graph
