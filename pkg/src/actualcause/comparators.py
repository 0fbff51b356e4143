"""Contrastive counterfactual comparator over a pin-aware three-level lattice.

An event X=x is reported when X belongs to some minimal contrast set: pin
the contrast set componentwise away from its actual values, hold a freeze
set at its actual values, let everything else follow its equations, and
require the effect to break in a world no less normal than the actual one.

Normality is judged inside the intrinsically reduced model (strict
ancestors of the contrast set dropped, their actual values substituted)
over every kept variable except the effect.  Pinned variables -- contrast
members and freezes alike -- sit at Top when pinned at their default and
at a tolerated middle level otherwise; unpinned variables rank Top when
they are initial-in-the-reduction at their default or derived and obeying
their reduced equation, and otherwise carry their value (and parent
context) as a deviation, distinct deviations being incomparable.  The
actual world is ranked by the same unpinned rule, so a middle-level pin is
admissible exactly where actuality itself deviates.

Under that lattice most of the search collapses: a contrast member can
only take its default, or -- when the reduction makes it initial and its
actual value is off-default -- any other value; a freeze survives only at
a default, on a variable the reduction removed, or on one it made initial
with an off-default actual value.  Every surviving candidate world is
still verified rank-by-rank rather than trusted to the collapse, because
a contrast set with internal paths can push removed variables off their
actual values and break kept variables' reduced conformity.  The pruning
is exercised against a direct definition-unfolding oracle in the test
suite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .model import (
    ENUMERATION_CAP,
    Assignment,
    Event,
    Scenario,
    SearchTooLargeError,
    solve,
)
from .normality import (
    MID,
    TOP,
    OrderResult,
    Rank,
    _aggregate,
    _component,
    _free_rank,
    _reduce,
)
from .sufficiency import ActualityError

__all__ = [
    "HPHResult",
    "HPHVerdict",
    "HPHWitness",
    "hph_causes",
]


@dataclass(frozen=True)
class HPHWitness:
    contrast: frozenset[Event]
    frozen: frozenset[Event]
    outcome: tuple[tuple[str, int], ...]

    def outcome_map(self) -> Assignment:
        return dict(self.outcome)


@dataclass(frozen=True)
class HPHVerdict:
    event: Event
    contrast_set: frozenset[str]
    witness: HPHWitness


@dataclass(frozen=True)
class HPHResult:
    effect: Event
    events: frozenset[Event]
    verdicts: tuple[HPHVerdict, ...]

    def vars(self) -> frozenset[str]:
        return frozenset(ev.var for ev in self.events)


def hph_causes(
    scenario: Scenario,
    effect: Event,
    cap: int = ENUMERATION_CAP,
) -> HPHResult:
    """Members of minimal contrast sets admitting an admissible witness."""
    model = scenario.model
    model.check_value(effect.var, effect.value)
    if scenario.actual_value(effect.var) != effect.value:
        raise ActualityError(
            f"effect {effect.render()} is not the actual value "
            f"{scenario.actual_value(effect.var)}"
        )
    actual = scenario.actual()
    ancestors = sorted(model.ancestors(effect.var))
    contrastable = [v for v in ancestors if actual[v] != scenario.defaults[v]]

    minimal: list[frozenset[str]] = []
    verdicts: list[HPHVerdict] = []
    reported: set[Event] = set()

    for size in range(1, len(contrastable) + 1):
        for combo in itertools.combinations(contrastable, size):
            contrast_set = frozenset(combo)
            if any(small <= contrast_set for small in minimal):
                continue
            witness = _find_witness(scenario, contrast_set, effect, cap)
            if witness is None:
                continue
            minimal.append(contrast_set)
            for var in combo:
                event = Event(var, actual[var])
                if event not in reported:
                    reported.add(event)
                    verdicts.append(
                        HPHVerdict(
                            event=event,
                            contrast_set=contrast_set,
                            witness=witness,
                        )
                    )
    return HPHResult(
        effect=effect,
        events=frozenset(reported),
        verdicts=tuple(verdicts),
    )


def _pinned_rank(value: int, default: int) -> Rank:
    return TOP if value == default else MID


def _initial_in_reduction(scenario: Scenario, var: str, removed: frozenset[str]) -> bool:
    return scenario.model.parents(var) <= removed


def _find_witness(
    scenario: Scenario,
    contrast_set: frozenset[str],
    effect: Event,
    cap: int,
) -> HPHWitness | None:
    """First admissible witness in canonical order: contrast vectors in
    domain order (defaults first), freeze sets by size then position."""
    model = scenario.model
    actual = scenario.actual()
    reduced, removed_values = _reduce(scenario, contrast_set)
    removed = frozenset(removed_values)
    kept = [v for v in reduced.model.variables if v != effect.var]
    actual_ranks = {v: _free_rank(reduced, v, actual) for v in kept}

    ordered = [v for v in model.variables if v in contrast_set]
    choices: list[list[int]] = []
    for var in ordered:
        default = scenario.defaults[var]
        legal = [default] if default in model.domains[var] else []
        if _initial_in_reduction(scenario, var, removed):
            legal.extend(
                value
                for value in model.domains[var]
                if value != actual[var] and value != default
            )
        if not legal:
            return None
        choices.append(legal)

    freeze_pool = [
        var
        for var in model.variables
        if var != effect.var
        and var not in contrast_set
        and (
            var in removed
            or actual[var] == scenario.defaults[var]
            or _initial_in_reduction(scenario, var, removed)
        )
    ]

    size = (2 ** len(freeze_pool)) * math.prod(len(c) for c in choices)
    if size > cap:
        raise SearchTooLargeError(
            f"contrast search over {sorted(contrast_set)} has {size} "
            f"candidate worlds, cap {cap}"
        )

    for vector in itertools.product(*choices):
        contrast = dict(zip(ordered, vector))
        for count in range(len(freeze_pool) + 1):
            for frozen_combo in itertools.combinations(freeze_pool, count):
                overrides = dict(contrast)
                overrides.update({v: actual[v] for v in frozen_combo})
                world = solve(scenario, overrides=overrides)
                if world[effect.var] == effect.value:
                    continue
                parts = []
                for var in kept:
                    if var in overrides:
                        witness_rank = _pinned_rank(
                            world[var], scenario.defaults[var]
                        )
                    else:
                        witness_rank = _free_rank(reduced, var, world)
                    parts.append(_component(witness_rank, actual_ranks[var]))
                verdict = _aggregate(parts)
                if verdict in (OrderResult.EQUAL, OrderResult.GREATER_OR_EQUAL):
                    return HPHWitness(
                        contrast=frozenset(
                            Event(v, contrast[v]) for v in ordered
                        ),
                        frozen=frozenset(
                            Event(v, actual[v]) for v in frozen_combo
                        ),
                        outcome=tuple(sorted(world.items())),
                    )
    return None
