"""Deterministic structural models over finite integer domains.

A model is a finite set of variables, one total equation per variable, and a
finite integer domain per variable.  There are no exogenous variables:
context is absorbed into constant equations, and the initial/derived
partition is always computed from the equations, never stored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .expr import EvaluationError, Expr, substitute

__all__ = [
    "ENUMERATION_CAP",
    "Assignment",
    "CycleError",
    "Domain",
    "DomainError",
    "Event",
    "InterventionPlan",
    "Model",
    "ModelError",
    "NonExhaustivePiecewiseError",
    "Scenario",
    "SearchTooLargeError",
    "UnknownVariableError",
    "enumerate_settings",
    "event_set",
    "render_events",
    "satisfies",
    "solve",
]

# Hard ceiling on any enumerated assignment space.
ENUMERATION_CAP = 1 << 20

Assignment = dict[str, int]


class ModelError(Exception):
    """Base class for structural-model errors."""


class CycleError(ModelError):
    """The equation graph contains a dependency cycle."""


class DomainError(ModelError):
    """A value fell outside a declared domain, or a domain is malformed."""


class UnknownVariableError(ModelError):
    """An equation or query referenced an undeclared variable."""


class NonExhaustivePiecewiseError(ModelError):
    """A piecewise equation has no true guard for some parent setting."""


class SearchTooLargeError(ModelError):
    """An enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class Domain:
    """A finite, duplicate-free tuple of integer values, in declared order."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise DomainError("domain must not be empty")
        if len(set(self.values)) != len(self.values):
            raise DomainError(f"domain has duplicate values: {self.values}")

    def __contains__(self, value: int) -> bool:
        return value in self.values

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


BINARY = Domain((0, 1))


@dataclass(frozen=True, order=True)
class Event:
    """A variable taking a specific value."""

    var: str
    value: int

    def render(self) -> str:
        return f"{self.var}={self.value}"


def event_set(assignment: Mapping[str, int]) -> frozenset[Event]:
    return frozenset(Event(var, value) for var, value in assignment.items())


def render_events(events: Iterable[Event]) -> str:
    inner = ", ".join(ev.render() for ev in sorted(events))
    return "{" + inner + "}"


@dataclass(frozen=True)
class InterventionPlan:
    """Pins (value set) plus variables explicitly left on their equations."""

    value_set: frozenset[Event] = frozenset()
    function_set: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        pinned = [ev.var for ev in self.value_set]
        if len(set(pinned)) != len(pinned):
            raise DomainError(f"plan pins a variable twice: {sorted(pinned)}")
        overlap = set(pinned) & self.function_set
        if overlap:
            raise DomainError(
                f"plan pins and frees the same variable(s): {sorted(overlap)}"
            )

    def pins(self) -> Assignment:
        return {ev.var: ev.value for ev in self.value_set}

    def pinned_vars(self) -> frozenset[str]:
        return frozenset(ev.var for ev in self.value_set)


EMPTY_PLAN = InterventionPlan()


class Model:
    """A validated structural model.

    Validation is eager: construction fails on unknown references, cycles,
    missing domains, out-of-domain constants, non-exhaustive piecewise
    equations, and equations whose value can leave the variable's domain for
    some setting of its parents.
    """

    def __init__(
        self,
        variables: Sequence[str],
        equations: Mapping[str, Expr],
        domains: Mapping[str, Domain] | None = None,
        dependent: Sequence[str] = (),
    ) -> None:
        self.variables: tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ModelError(f"duplicate variable names: {self.variables}")
        if set(equations) != set(self.variables):
            missing = set(self.variables) - set(equations)
            extra = set(equations) - set(self.variables)
            raise ModelError(
                f"equations do not match variables (missing {sorted(missing)}, "
                f"extra {sorted(extra)})"
            )
        self.equations: dict[str, Expr] = {v: equations[v] for v in self.variables}
        full: dict[str, Domain] = {}
        domains = dict(domains or {})
        for var in self.variables:
            full[var] = domains.pop(var, BINARY)
        if domains:
            raise UnknownVariableError(
                f"domains declared for unknown variable(s): {sorted(domains)}"
            )
        self.domains: dict[str, Domain] = full
        self.dependent: tuple[str, ...] = tuple(dependent)
        for var in self.dependent:
            if var not in self.domains:
                raise UnknownVariableError(f"dependent set names unknown variable {var!r}")
        self._validate_references()
        self._order = self._toposort()
        self._validate_totality()

    # -- construction helpers -------------------------------------------------

    def _validate_references(self) -> None:
        known = set(self.variables)
        for var, expr in self.equations.items():
            loose = expr.variables() - known
            if loose:
                raise UnknownVariableError(
                    f"equation for {var!r} references unknown variable(s) {sorted(loose)}"
                )

    def _toposort(self) -> tuple[str, ...]:
        remaining = {v: set(self.parents(v)) for v in self.variables}
        order: list[str] = []
        placed: set[str] = set()
        while remaining:
            ready = [v for v in self.variables if v in remaining and remaining[v] <= placed]
            if not ready:
                raise CycleError(
                    f"dependency cycle among {sorted(remaining)}"
                )
            for var in ready:
                order.append(var)
                placed.add(var)
                del remaining[var]
        return tuple(order)

    def _validate_totality(self) -> None:
        for var in self.variables:
            expr = self.equations[var]
            parents = self.parent_tuple(var)
            for combo in itertools.product(*(self.domains[p].values for p in parents)):
                env = dict(zip(parents, combo))
                try:
                    value = expr.evaluate(env)
                except EvaluationError as err:
                    if "no true guard" in str(err):
                        raise NonExhaustivePiecewiseError(
                            f"equation for {var!r} has no true guard at {env}"
                        ) from err
                    raise ModelError(
                        f"equation for {var!r} fails at {env}: {err}"
                    ) from err
                if value not in self.domains[var]:
                    raise DomainError(
                        f"equation for {var!r} yields {value} outside domain "
                        f"{self.domains[var].values} at {env}"
                    )

    # -- structure ------------------------------------------------------------

    def parents(self, var: str) -> frozenset[str]:
        if var not in self.equations:
            raise UnknownVariableError(f"unknown variable {var!r}")
        return self.equations[var].variables()

    def parent_tuple(self, var: str) -> tuple[str, ...]:
        return tuple(sorted(self.parents(var)))

    def topological_order(self) -> tuple[str, ...]:
        return self._order

    def ancestors(self, seeds: Iterable[str] | str) -> frozenset[str]:
        """Strict ancestors of the seed variable(s)."""
        if isinstance(seeds, str):
            seeds = (seeds,)
        seen: set[str] = set()
        frontier = list(seeds)
        for var in frontier:
            if var not in self.equations:
                raise UnknownVariableError(f"unknown variable {var!r}")
        while frontier:
            var = frontier.pop()
            for parent in self.parents(var):
                if parent not in seen:
                    seen.add(parent)
                    frontier.append(parent)
        return frozenset(seen)

    def initial_variables(self) -> frozenset[str]:
        return frozenset(v for v in self.variables if not self.parents(v))

    def derived_variables(self) -> frozenset[str]:
        return frozenset(v for v in self.variables if self.parents(v))

    def initial_partition(self) -> tuple[frozenset[str], frozenset[str]]:
        return self.initial_variables(), self.derived_variables()

    def is_initial(self, var: str) -> bool:
        return not self.parents(var)

    def check_value(self, var: str, value: int) -> None:
        if var not in self.domains:
            raise UnknownVariableError(f"unknown variable {var!r}")
        if value not in self.domains[var]:
            raise DomainError(
                f"value {value} outside domain {self.domains[var].values} of {var!r}"
            )

    # -- equality / hashing ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Model):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.equations == other.equations
            and self.domains == other.domains
            and self.dependent == other.dependent
        )

    def __repr__(self) -> str:
        return f"Model(variables={self.variables!r})"


@dataclass(frozen=True)
class Scenario:
    """A model with normality defaults, a solve mode, and intention pairs."""

    model: Model
    mode: str = "reliable"
    defaults: Mapping[str, int] = field(default_factory=dict)
    intentions: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if self.mode not in ("reliable", "general"):
            raise ModelError(f"unknown mode {self.mode!r}")
        full = {v: 0 for v in self.model.variables}
        for var, value in dict(self.defaults).items():
            if var not in full:
                raise UnknownVariableError(f"default declared for unknown variable {var!r}")
            self.model.check_value(var, value)
            full[var] = value
        object.__setattr__(self, "defaults", full)
        for intention, action in self.intentions:
            for var in (intention, action):
                if var not in self.model.domains:
                    raise UnknownVariableError(
                        f"intention pair names unknown variable {var!r}"
                    )
            if intention not in self.model.parents(action):
                raise ModelError(
                    f"intention variable {intention!r} is not a parent of {action!r}"
                )

    @cached_property
    def _actual(self) -> Assignment:
        return solve(self)

    def actual(self) -> Assignment:
        return dict(self._actual)

    def actual_value(self, var: str) -> int:
        if var not in self.model.domains:
            raise UnknownVariableError(f"unknown variable {var!r}")
        return self._actual[var]

    def default_value(self, var: str) -> int:
        if var not in self.model.domains:
            raise UnknownVariableError(f"unknown variable {var!r}")
        return self.defaults[var]


def solve(
    scenario: Scenario,
    plan: InterventionPlan = EMPTY_PLAN,
    overrides: Mapping[str, int] | Iterable[Event] = (),
) -> Assignment:
    """Evaluate every variable: pinned ones take their pins, the rest follow
    their equations in topological order."""
    model = scenario.model
    pins = plan.pins()
    if isinstance(overrides, Mapping):
        extra = dict(overrides)
    else:
        extra = {ev.var: ev.value for ev in overrides}
    for var, value in extra.items():
        if var in pins and pins[var] != value:
            raise DomainError(f"conflicting pins for {var!r}: {pins[var]} vs {value}")
    pins.update(extra)
    for var, value in pins.items():
        model.check_value(var, value)
    out: Assignment = {}
    for var in model.topological_order():
        if var in pins:
            out[var] = pins[var]
        else:
            out[var] = model.equations[var].evaluate(out)
    return {v: out[v] for v in model.variables}


def satisfies(
    scenario: Scenario,
    plan: InterventionPlan,
    overrides: Mapping[str, int] | Iterable[Event],
    target: Iterable[Event],
) -> bool:
    """Solve under the plan plus overrides and test the target events."""
    result = solve(scenario, plan, overrides)
    return all(result[ev.var] == ev.value for ev in target)


def enumerate_settings(
    model: Model,
    variables: Iterable[str],
    cap: int = ENUMERATION_CAP,
) -> Iterator[Assignment]:
    """All assignments over the given variables, in deterministic order.

    Variables iterate in model declaration order; values in domain order.
    Raises SearchTooLargeError before yielding anything if the product of the
    domain sizes exceeds the cap.
    """
    wanted = set(variables)
    loose = wanted - set(model.variables)
    if loose:
        raise UnknownVariableError(f"unknown variable(s) {sorted(loose)}")
    ordered = [v for v in model.variables if v in wanted]
    size = 1
    for var in ordered:
        size *= len(model.domains[var])
    if size > cap:
        raise SearchTooLargeError(
            f"assignment space over {ordered} has {size} settings, cap {cap}"
        )
    for combo in itertools.product(*(model.domains[v].values for v in ordered)):
        yield dict(zip(ordered, combo))


def reduced_model(model: Model, removed: Mapping[str, int]) -> Model:
    """Drop the given variables, substituting their fixed values into every
    remaining equation.  Variables that lose all their parents become initial
    by derivation."""
    keep = [v for v in model.variables if v not in removed]
    equations = {v: substitute(model.equations[v], removed) for v in keep}
    domains = {v: model.domains[v] for v in keep}
    dependent = tuple(v for v in model.dependent if v not in removed)
    return Model(keep, equations, domains, dependent)
