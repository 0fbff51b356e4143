"""Actual causation over deterministic structural causal models.

The package determines which events actually caused an outcome in a
fully specified, acyclic model with finite integer domains.  The main
entry points are :func:`causes_of` / :func:`intentional_causes` for the
primary definition, :func:`hph_causes` for the contrastive comparator,
and the cause-net reasoning operations (:func:`interpolate`,
:func:`extrapolate`, :func:`flank`, :func:`distance`).
"""

from __future__ import annotations

from .comparators import HPHResult, HPHVerdict, HPHWitness, hph_causes
from .dsl import BenchCase, ParseError, parse_case, parse_expression, serialize_case
from .engine import (
    CauseVerdict,
    DEFAULT_OPTIONS,
    EngineOptions,
    ScenarioAnalysis,
    analyze,
    causes_of,
    intentional_causes,
    is_actual_cause,
)
from .expr import (
    And,
    Arith,
    Cmp,
    Const,
    EvaluationError,
    Expr,
    Not,
    Or,
    Piecewise,
    Var,
    substitute,
)
from .model import (
    Assignment,
    CycleError,
    Domain,
    DomainError,
    Event,
    InterventionPlan,
    Model,
    ModelError,
    NonExhaustivePiecewiseError,
    Scenario,
    SearchTooLargeError,
    UnknownVariableError,
    enumerate_settings,
    event_set,
    render_events,
    solve,
)
from .normality import (
    AbnormalityWitness,
    OrderResult,
    PlanAbnormality,
    PlanNotSufficientError,
    Rank,
    abnormality_ok,
    compare,
    intrinsic_scenario,
    plan_abnormality,
    rank,
)
from .reasoning import (
    CauseNet,
    NoChainError,
    ReasoningError,
    cause_nets,
    distance,
    extrapolate,
    flank,
    interpolate,
)
from .sufficiency import (
    ActualityError,
    NoParentsError,
    SufficiencyWitness,
    direct_cause_graph,
    direct_cause_sets,
    is_direct_cause,
    is_sufficient,
    minimal_sufficient_sets,
    restricted_scenario,
)

__all__ = [
    "ActualityError",
    "And",
    "Arith",
    "Assignment",
    "AbnormalityWitness",
    "BenchCase",
    "CauseNet",
    "CauseVerdict",
    "Cmp",
    "Const",
    "CycleError",
    "DEFAULT_OPTIONS",
    "Domain",
    "DomainError",
    "EngineOptions",
    "EvaluationError",
    "Event",
    "Expr",
    "HPHResult",
    "HPHVerdict",
    "HPHWitness",
    "InterventionPlan",
    "Model",
    "ModelError",
    "NoChainError",
    "NoParentsError",
    "NonExhaustivePiecewiseError",
    "Not",
    "Or",
    "OrderResult",
    "ParseError",
    "Piecewise",
    "PlanAbnormality",
    "PlanNotSufficientError",
    "Rank",
    "ReasoningError",
    "Scenario",
    "ScenarioAnalysis",
    "SearchTooLargeError",
    "SufficiencyWitness",
    "UnknownVariableError",
    "Var",
    "abnormality_ok",
    "analyze",
    "cause_nets",
    "causes_of",
    "compare",
    "direct_cause_graph",
    "direct_cause_sets",
    "distance",
    "enumerate_settings",
    "event_set",
    "extrapolate",
    "flank",
    "hph_causes",
    "intentional_causes",
    "interpolate",
    "intrinsic_scenario",
    "is_actual_cause",
    "is_direct_cause",
    "is_sufficient",
    "minimal_sufficient_sets",
    "parse_case",
    "parse_expression",
    "plan_abnormality",
    "rank",
    "render_events",
    "restricted_scenario",
    "serialize_case",
    "solve",
    "substitute",
]
