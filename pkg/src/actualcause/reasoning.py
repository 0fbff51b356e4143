"""Stepwise causal reasoning over cause nets.

A cause net abstracts an agent's current causal knowledge about an effect:
a set of actual events that is sufficient for it, grown from the effect's
direct-cause sets by repeatedly swapping a member for one of that member's
own direct-cause sets.  Interpolation walks knowledge toward the effect
(replace a member by its successors on direct-cause chains), extrapolation
walks it away (replace a member by one of its minimal sufficient sets), and
a flank combines the two.  Distance averages chain lengths from net members
to the effect.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .model import (
    ENUMERATION_CAP,
    Event,
    InterventionPlan,
    ModelError,
    Scenario,
    render_events,
)
from .sufficiency import (
    direct_cause_graph,
    is_sufficient,
    minimal_sufficient_sets,
)

__all__ = [
    "CauseNet",
    "NoChainError",
    "ReasoningError",
    "cause_nets",
    "distance",
    "extrapolate",
    "flank",
    "interpolate",
]


class ReasoningError(ModelError):
    """A net operation was applied outside its contract."""


class NoChainError(ReasoningError):
    """A net member has no direct-cause chain to the effect."""


@dataclass(frozen=True)
class CauseNet:
    events: frozenset[Event]
    provenance: tuple[str, ...] = ()

    def vars(self) -> frozenset[str]:
        return frozenset(ev.var for ev in self.events)


def _require_reliable(scenario: Scenario) -> None:
    if scenario.mode != "reliable":
        raise ReasoningError("net reasoning is defined for reliable mode only")


def _as_net(net: CauseNet | frozenset[Event]) -> CauseNet:
    if isinstance(net, CauseNet):
        return net
    return CauseNet(events=frozenset(net))


def _member_check(net: CauseNet, member: Event) -> None:
    if member not in net.events:
        raise ReasoningError(
            f"{member.render()} is not a member of net {render_events(net.events)}"
        )


def _successor_map(scenario: Scenario, cap: int) -> dict[str, list[str]]:
    graph = direct_cause_graph(scenario, cap)
    successors: dict[str, list[str]] = {v: [] for v in scenario.model.variables}
    for child, parents in graph.items():
        for parent in parents:
            successors[parent].append(child)
    for key in successors:
        successors[key].sort()
    return successors


def _chains(
    successors: dict[str, list[str]], start: str, goal: str
) -> list[tuple[str, ...]]:
    """Every direct-cause chain from start to goal, in lexicographic order."""
    if start == goal:
        return [(start,)]
    out: list[tuple[str, ...]] = []
    stack: list[str] = [start]

    def walk(vertex: str) -> None:
        for succ in successors[vertex]:
            stack.append(succ)
            if succ == goal:
                out.append(tuple(stack))
            else:
                walk(succ)
            stack.pop()

    walk(start)
    return out


def cause_nets(
    scenario: Scenario,
    effect: Event,
    depth_limit: int | None = None,
    cap: int = ENUMERATION_CAP,
) -> list[CauseNet]:
    """Closure of the effect's direct-cause sets under member replacement by
    the member's own direct-cause sets, breadth first, deduplicated."""
    _require_reliable(scenario)
    model = scenario.model
    if depth_limit is None:
        depth_limit = len(model.variables)
    from .sufficiency import NoParentsError, direct_cause_sets

    if model.is_initial(effect.var):
        raise NoParentsError(f"{effect.var!r} has no parents")
    dc_cache: dict[str, list[frozenset[Event]]] = {}

    def dc_sets(var: str) -> list[frozenset[Event]]:
        if var not in dc_cache:
            target = Event(var, scenario.actual_value(var))
            dc_cache[var] = direct_cause_sets(scenario, target, cap)
        return dc_cache[var]

    nets: list[CauseNet] = []
    seen: set[frozenset[Event]] = set()
    queue: deque[tuple[frozenset[Event], tuple[str, ...], int]] = deque()
    for group in dc_sets(effect.var):
        if group not in seen:
            seen.add(group)
            queue.append(
                (group, (f"direct-cause set of {effect.render()}",), 0)
            )
    while queue:
        events, provenance, depth = queue.popleft()
        nets.append(CauseNet(events=events, provenance=provenance))
        if depth >= depth_limit:
            continue
        for member in sorted(events):
            if model.is_initial(member.var):
                continue
            for group in dc_sets(member.var):
                replaced = (events - {member}) | group
                if replaced in seen:
                    continue
                seen.add(replaced)
                queue.append(
                    (
                        replaced,
                        provenance
                        + (
                            f"replace {member.render()} by "
                            f"{render_events(group)}",
                        ),
                        depth + 1,
                    )
                )
    return nets


def _verify_sufficient(
    scenario: Scenario,
    events: frozenset[Event],
    effect: Event,
    operation: str,
    cap: int,
) -> None:
    plan = InterventionPlan(value_set=events)
    if not is_sufficient(scenario, plan, effect, cap):
        raise ReasoningError(
            f"{operation} produced {render_events(events)}, which is not "
            f"sufficient for {effect.render()}"
        )


def interpolate(
    scenario: Scenario,
    net: CauseNet | frozenset[Event],
    member: Event,
    effect: Event,
    cap: int = ENUMERATION_CAP,
) -> CauseNet:
    """Replace a member by its successors on every direct-cause chain from
    the member to the effect.  A member adjacent to the effect pulls the
    effect itself into the net (where it is trivially sufficient)."""
    _require_reliable(scenario)
    net = _as_net(net)
    _member_check(net, member)
    if member.var == effect.var:
        return net
    successors = _successor_map(scenario, cap)
    chains = _chains(successors, member.var, effect.var)
    if not chains:
        raise NoChainError(
            f"{member.render()} has no direct-cause chain to {effect.render()}"
        )
    step: set[Event] = set()
    for chain in chains:
        var = chain[1]
        step.add(Event(var, scenario.actual_value(var)))
    events = (net.events - {member}) | step
    _verify_sufficient(scenario, events, effect, "interpolation", cap)
    return CauseNet(
        events=events,
        provenance=net.provenance
        + (f"interpolate {member.render()} -> {render_events(step)}",),
    )


def extrapolate(
    scenario: Scenario,
    net: CauseNet | frozenset[Event],
    member: Event,
    effect: Event,
    cap: int = ENUMERATION_CAP,
) -> CauseNet:
    """Replace a member by its first eligible minimal sufficient set: the
    canonical order is size then variable tuple, and a set is eligible when
    it is non-empty and does not contain the member itself.  With no
    eligible set (initial members in particular) the net is unchanged."""
    _require_reliable(scenario)
    net = _as_net(net)
    _member_check(net, member)
    chosen: frozenset[Event] | None = None
    for witness in minimal_sufficient_sets(scenario, member, cap):
        events = witness.plan.value_set
        if not events:
            continue
        if member.var in {ev.var for ev in events}:
            continue
        chosen = events
        break
    if chosen is None:
        return CauseNet(
            events=net.events,
            provenance=net.provenance
            + (f"extrapolate {member.render()} -> identity",),
        )
    events = (net.events - {member}) | chosen
    _verify_sufficient(scenario, events, effect, "extrapolation", cap)
    return CauseNet(
        events=events,
        provenance=net.provenance
        + (f"extrapolate {member.render()} -> {render_events(chosen)}",),
    )


def flank(
    scenario: Scenario,
    net: CauseNet | frozenset[Event],
    member: Event,
    effect: Event,
    cap: int = ENUMERATION_CAP,
) -> CauseNet:
    """Interpolate the member, then extrapolate each newly added member
    once (in canonical event order)."""
    net = _as_net(net)
    _member_check(net, member)
    stepped = interpolate(scenario, net, member, effect, cap)
    added = stepped.events - (net.events - {member})
    out = stepped
    for event in sorted(added):
        if event in out.events:
            out = extrapolate(scenario, out, event, effect, cap)
    return out


def distance(
    scenario: Scenario,
    net: CauseNet | frozenset[Event],
    effect: Event,
    cap: int = ENUMERATION_CAP,
) -> float:
    """Mean edge count over every (member, chain) pair, where the chains of
    a member are all its direct-cause chains to the effect and the effect
    itself contributes a single chain of length zero."""
    _require_reliable(scenario)
    net = _as_net(net)
    if not net.events:
        raise ReasoningError("distance of an empty net is undefined")
    successors = _successor_map(scenario, cap)
    lengths: list[int] = []
    for member in sorted(net.events):
        if member.var == effect.var:
            lengths.append(0)
            continue
        chains = _chains(successors, member.var, effect.var)
        if not chains:
            raise NoChainError(
                f"{member.render()} has no direct-cause chain to "
                f"{effect.render()}"
            )
        lengths.extend(len(chain) - 1 for chain in chains)
    return sum(lengths) / len(lengths)
