"""Normality ranks, assignment comparison, intrinsic reduction, abnormality.

Two rank styles live here.  The public two-level lattice (`rank`, `compare`)
ranks a variable Top when it is at its default (initial variables) or obeys
its equation (derived variables), and Deviant otherwise; distinct deviations
are incomparable.  The abnormality check used by the cause engine works
inside the intrinsically reduced scenario and adds a pin-aware middle level:
a pinned variable sits at Top when pinned at its actual or default value and
at Mid otherwise, so that off-default, off-actual contrasts are tolerated
exactly when the actual side deviates too.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .model import (
    ENUMERATION_CAP,
    Assignment,
    Event,
    InterventionPlan,
    ModelError,
    Scenario,
    UnknownVariableError,
    enumerate_settings,
    reduced_model,
    solve,
)

__all__ = [
    "AbnormalityWitness",
    "OrderResult",
    "PlanAbnormality",
    "PlanNotSufficientError",
    "Rank",
    "abnormality_ok",
    "compare",
    "intrinsic_scenario",
    "plan_abnormality",
    "rank",
]


class PlanNotSufficientError(ModelError):
    """intrinsic_scenario was given a cause set that is not sufficient."""


class OrderResult(enum.Enum):
    EQUAL = "equal"
    GREATER_OR_EQUAL = "greater-or-equal"
    LESS_OR_EQUAL = "less-or-equal"
    INCOMPARABLE = "incomparable"


_LEVEL_DEVIANT = 0
_LEVEL_MID = 1
_LEVEL_TOP = 2


@dataclass(frozen=True)
class Rank:
    """Normality of one variable's value.  Higher level is more normal."""

    level: int
    value: int | None = None
    context: tuple[int, ...] = ()

    def is_top(self) -> bool:
        return self.level == _LEVEL_TOP


TOP = Rank(_LEVEL_TOP)
MID = Rank(_LEVEL_MID)


def _deviant(value: int, context: tuple[int, ...] = ()) -> Rank:
    return Rank(_LEVEL_DEVIANT, value, context)


def rank(
    scenario: Scenario,
    var: str,
    value: int,
    parent_values: Mapping[str, int] | None = None,
) -> Rank:
    """Public two-level rank: Top or Deviant, no pins, no middle level."""
    model = scenario.model
    model.check_value(var, value)
    if scenario.mode == "general" or model.is_initial(var):
        if value == scenario.defaults[var]:
            return TOP
        return _deviant(value)
    parents = model.parent_tuple(var)
    if parent_values is None:
        raise UnknownVariableError(
            f"rank of derived variable {var!r} needs its parent values"
        )
    missing = [p for p in parents if p not in parent_values]
    if missing:
        raise UnknownVariableError(
            f"rank of {var!r} is missing parent value(s) {missing}"
        )
    env = {p: parent_values[p] for p in parents}
    if model.equations[var].evaluate(env) == value:
        return TOP
    return _deviant(value, tuple(env[p] for p in parents))


def _component(witness: Rank, actual: Rank) -> str:
    """'eq' | 'gt' | 'lt' | 'incomp' for one variable, witness vs actual."""
    if witness.level == actual.level:
        if witness.level == _LEVEL_DEVIANT:
            same = (witness.value, witness.context) == (actual.value, actual.context)
            return "eq" if same else "incomp"
        return "eq"
    return "gt" if witness.level > actual.level else "lt"


def _aggregate(parts: Iterable[str]) -> OrderResult:
    has_gt = False
    has_lt = False
    for part in parts:
        if part == "incomp":
            return OrderResult.INCOMPARABLE
        if part == "gt":
            has_gt = True
        elif part == "lt":
            has_lt = True
    if has_gt and has_lt:
        return OrderResult.INCOMPARABLE
    if has_gt:
        return OrderResult.GREATER_OR_EQUAL
    if has_lt:
        return OrderResult.LESS_OR_EQUAL
    return OrderResult.EQUAL


def compare(
    scenario: Scenario,
    first: Mapping[str, int],
    second: Mapping[str, int],
) -> OrderResult:
    """Pointwise partial order on total assignments (public two-level ranks)."""
    model = scenario.model
    for assignment in (first, second):
        missing = set(model.variables) - set(assignment)
        if missing:
            raise UnknownVariableError(
                f"assignment is missing variable(s) {sorted(missing)}"
            )
    parts = []
    for var in model.variables:
        rank_a = rank(scenario, var, first[var], first)
        rank_b = rank(scenario, var, second[var], second)
        parts.append(_component(rank_a, rank_b))
    return _aggregate(parts)


# ---------------------------------------------------------------------------
# Intrinsic reduction
# ---------------------------------------------------------------------------


def _reduce(scenario: Scenario, kept_pins: frozenset[str]) -> tuple[Scenario, dict[str, int]]:
    """Remove the strict ancestors of the pinned variables (minus the pins
    themselves), substituting their actual values into remaining equations."""
    model = scenario.model
    removed_vars = model.ancestors(kept_pins) - kept_pins
    removed = {v: scenario.actual_value(v) for v in sorted(removed_vars)}
    small = reduced_model(model, removed)
    defaults = {v: scenario.defaults[v] for v in small.variables}
    intentions = tuple(
        (i, a)
        for i, a in scenario.intentions
        if i in small.domains and a in small.domains and i in small.parents(a)
    )
    reduced = Scenario(
        model=small,
        mode=scenario.mode,
        defaults=defaults,
        intentions=intentions,
    )
    return reduced, removed


def intrinsic_scenario(
    scenario: Scenario,
    cause_set: Iterable[Event],
    effect: Event,
    check: bool = True,
) -> Scenario:
    """The scenario with everything strictly upstream of the cause set
    frozen at its actual value and folded into the equations."""
    events = frozenset(cause_set)
    for ev in events:
        if scenario.actual_value(ev.var) != ev.value:
            raise ModelError(
                f"cause set pins {ev.render()} but the actual value is "
                f"{scenario.actual_value(ev.var)}"
            )
    if check:
        from .sufficiency import is_sufficient

        plan = InterventionPlan(value_set=events)
        if not is_sufficient(scenario, plan, effect):
            raise PlanNotSufficientError(
                f"cause set {sorted(ev.render() for ev in events)} is not "
                f"sufficient for {effect.render()}"
            )
    reduced, _ = _reduce(scenario, frozenset(ev.var for ev in events))
    return reduced


# ---------------------------------------------------------------------------
# Abnormality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbnormalityWitness:
    """A contrast plus background pins that break the effect no less
    normally than the actual world."""

    contrast: frozenset[Event]
    background: frozenset[Event]
    outcome: tuple[tuple[str, int], ...]

    def outcome_map(self) -> Assignment:
        return dict(self.outcome)


@dataclass(frozen=True)
class PlanAbnormality:
    passed: bool
    witness: AbnormalityWitness | None
    certified: frozenset[str]


def _pin_rank(value: int, actual_value: int, default_value: int) -> Rank:
    if value == actual_value or value == default_value:
        return TOP
    return MID


def _free_rank(reduced: Scenario, var: str, values: Mapping[str, int]) -> Rank:
    model = reduced.model
    if model.is_initial(var):
        if values[var] == reduced.defaults[var]:
            return TOP
        return _deviant(values[var])
    parents = model.parent_tuple(var)
    env = {p: values[p] for p in parents}
    if model.equations[var].evaluate(env) == values[var]:
        return TOP
    return _deviant(values[var], tuple(env[p] for p in parents))


def _roaming_vars(scenario: Scenario, pinned: frozenset[str], effect_var: str) -> list[str]:
    model = scenario.model
    if scenario.mode == "reliable":
        pool = model.initial_variables()
    else:
        pool = frozenset(model.variables)
    keep = pool - pinned - {effect_var}
    return [v for v in model.variables if v in keep]


def plan_abnormality(
    scenario: Scenario,
    plan_vars: Iterable[str],
    effect: Event,
    variant: str = "set-level",
    focus: str | None = None,
    certification: str = "flip-or-default",
    cap: int = ENUMERATION_CAP,
) -> PlanAbnormality:
    """Search contrasts over the plan variables (and free background pins)
    for a world that breaks the effect no less normally than actuality.

    variant "set-level": any contrast vector differing from the actual one.
    variant "single-event": only vectors differing from actual exactly at
    `focus`; certification then has no default clause.
    """
    if variant not in ("set-level", "single-event"):
        raise ModelError(f"unknown abnormality variant {variant!r}")
    if variant == "single-event" and focus is None:
        raise ModelError("single-event abnormality needs a focus variable")
    model = scenario.model
    actual = scenario.actual()
    pins = frozenset(plan_vars)
    ordered_pins = [v for v in model.variables if v in pins]
    if len(ordered_pins) != len(pins):
        unknown = pins - set(model.variables)
        raise UnknownVariableError(f"unknown plan variable(s) {sorted(unknown)}")
    reduced, _removed = _reduce(scenario, pins)
    kept = reduced.model.variables
    actual_ranks = {v: _free_rank(reduced, v, actual) for v in kept}
    roaming = _roaming_vars(scenario, pins, effect.var)

    passed = False
    first_witness: AbnormalityWitness | None = None
    flipped: set[str] = set()

    for contrast in enumerate_settings(model, ordered_pins, cap):
        delta = [v for v in ordered_pins if contrast[v] != actual[v]]
        if not delta:
            continue
        if variant == "single-event" and delta != [focus]:
            continue
        for background in enumerate_settings(model, roaming, cap):
            overrides = {**contrast, **background}
            world = solve(scenario, overrides=overrides)
            if world[effect.var] == effect.value:
                continue
            parts = []
            for var in kept:
                if var in overrides:
                    witness_rank = _pin_rank(
                        world[var], actual[var], scenario.defaults[var]
                    )
                else:
                    witness_rank = _free_rank(reduced, var, world)
                parts.append(_component(witness_rank, actual_ranks[var]))
            verdict = _aggregate(parts)
            if verdict in (OrderResult.EQUAL, OrderResult.GREATER_OR_EQUAL):
                passed = True
                flipped.update(delta)
                if first_witness is None:
                    first_witness = AbnormalityWitness(
                        contrast=frozenset(
                            Event(v, contrast[v]) for v in ordered_pins
                        ),
                        background=frozenset(
                            Event(v, background[v]) for v in roaming
                        ),
                        outcome=tuple(sorted(world.items())),
                    )

    certified: set[str] = set(flipped)
    if variant == "set-level" and certification == "flip-or-default" and passed:
        for var in ordered_pins:
            if actual[var] == scenario.defaults[var]:
                certified.add(var)
    if certification == "membership" and passed:
        certified = set(ordered_pins)
    return PlanAbnormality(
        passed=passed,
        witness=first_witness,
        certified=frozenset(certified),
    )


def abnormality_ok(
    scenario: Scenario,
    plan: InterventionPlan,
    effect: Event,
    variant: str = "set-level",
    focus: str | None = None,
    cap: int = ENUMERATION_CAP,
) -> tuple[bool, AbnormalityWitness | None]:
    """Public wrapper: does the plan admit an admissible effect-breaking
    contrast, and the first such witness in canonical order."""
    for ev in plan.value_set:
        if scenario.actual_value(ev.var) != ev.value:
            raise ModelError(
                f"plan pins {ev.render()} away from the actual value "
                f"{scenario.actual_value(ev.var)}"
            )
    result = plan_abnormality(
        scenario,
        plan.pinned_vars(),
        effect,
        variant=variant,
        focus=focus,
        cap=cap,
    )
    return result.passed, result.witness
