"""Conformity ranks, assignment comparison, intrinsic reduction, and the
per-plan abnormality screen."""

from __future__ import annotations

import pytest

from actualcause import (
    Event,
    InterventionPlan,
    ModelError,
    OrderResult,
    PlanNotSufficientError,
    UnknownVariableError,
    abnormality_ok,
    compare,
    intrinsic_scenario,
    plan_abnormality,
    rank,
)

from conftest import make_scenario


class TestRank:
    def test_initial_variable(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        top = rank(scenario, "a", 0)  # at default
        dev = rank(scenario, "a", 1)
        assert top.level > dev.level
        assert top.value is None
        assert dev.value == 1 and dev.context == ()

    def test_derived_variable_needs_parent_values(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        with pytest.raises(UnknownVariableError):
            rank(scenario, "e", 1)

    def test_derived_conformity(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        conforming = rank(scenario, "e", 1, {"a": 1, "d": 0})
        deviant = rank(scenario, "e", 0, {"a": 1, "d": 0})
        assert conforming.value is None  # top of the order
        assert conforming.level > deviant.level
        # A deviant value is indexed by the parent context it deviates in.
        assert deviant.value == 0 and deviant.context == (1, 0)

    def test_general_mode_ranks_by_default(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d", mode="general")
        assert rank(scenario, "e", 0).value is None  # default is normal
        assert rank(scenario, "e", 1).value == 1  # anything else deviates

    def test_unknown_variable(self):
        scenario = make_scenario("a=1; e=a")
        with pytest.raises(UnknownVariableError):
            rank(scenario, "z", 0)


class TestCompare:
    def test_equal(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        actual = scenario.actual()
        assert compare(scenario, actual, actual) is OrderResult.EQUAL

    def test_strictly_more_normal(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        all_default = {"a": 0, "d": 0, "e": 0}
        assert (
            compare(scenario, all_default, scenario.actual())
            is OrderResult.GREATER_OR_EQUAL
        )
        assert (
            compare(scenario, scenario.actual(), all_default)
            is OrderResult.LESS_OR_EQUAL
        )

    def test_incomparable_deviants(self):
        # Two different deviant values of the same initial variable do not
        # compare: deviations are only identical to themselves.
        scenario = make_scenario("a=1; e=a >= 0", domains={"a": (0, 1, 2)})
        first = {"a": 1, "e": 1}
        second = {"a": 2, "e": 1}
        assert compare(scenario, first, second) is OrderResult.INCOMPARABLE

    def test_missing_variable(self):
        scenario = make_scenario("a=1; e=a")
        with pytest.raises(UnknownVariableError):
            compare(scenario, {"a": 1}, {"a": 1})


class TestIntrinsicScenario:
    def test_strict_ancestors_fold_away(self):
        scenario = make_scenario("a=1; b=a; e=b")
        reduced = intrinsic_scenario(scenario, (Event("b", 1),), Event("e", 1))
        assert reduced.model.is_initial("b")
        assert reduced.actual_value("b") == 1
        assert reduced.actual_value("e") == 1

    def test_non_actual_member_rejected(self):
        scenario = make_scenario("a=1; b=a; e=b")
        with pytest.raises(ModelError):
            intrinsic_scenario(scenario, (Event("b", 0),), Event("e", 1))

    def test_insufficient_set_rejected(self):
        scenario = make_scenario("a=1; b=1; e=a & b")
        with pytest.raises(PlanNotSufficientError):
            intrinsic_scenario(scenario, (Event("a", 1),), Event("e", 1))
        # check=False skips the sufficiency gate
        reduced = intrinsic_scenario(
            scenario, (Event("a", 1),), Event("e", 1), check=False
        )
        assert reduced.actual_value("e") == 1


class TestPlanAbnormality:
    """Hand-worked screen on e = a & ~d with a=1 (off default), d=0 (at
    default): the plan {a, d} passes via the contrast a'=0, d'=0."""

    def test_set_level_passes_and_certifies_both_members(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        result = plan_abnormality(scenario, ("a", "d"), Event("e", 1))
        assert result.passed
        # a is certified by its flip in the witness; d, sitting at its
        # default, rides along on the default clause.
        assert result.certified == frozenset({"a", "d"})
        assert result.witness.contrast == frozenset(
            {Event("a", 0), Event("d", 0)}
        )
        assert result.witness.outcome_map() == {"a": 0, "d": 0, "e": 0}

    def test_single_event_focus_excludes_the_omission(self):
        # Breaking the effect through d alone needs d'=1, which is neither
        # d's actual nor its default value, so the witness ranks below the
        # actual state and the screen fails.
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        result = plan_abnormality(
            scenario, ("a", "d"), Event("e", 1), variant="single-event", focus="d"
        )
        assert not result.passed

    def test_single_event_focus_keeps_the_flip(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        result = plan_abnormality(
            scenario, ("a", "d"), Event("e", 1), variant="single-event", focus="a"
        )
        assert result.passed
        assert result.certified == frozenset({"a"})

    def test_membership_certification(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        result = plan_abnormality(
            scenario, ("a", "d"), Event("e", 1), certification="membership"
        )
        assert result.passed
        assert result.certified == frozenset({"a", "d"})

    def test_failed_screen_has_no_witness(self):
        # A lone at-default member cannot break the effect abnormally.
        scenario = make_scenario("a=0; e=~a")
        result = plan_abnormality(scenario, ("a",), Event("e", 1))
        assert not result.passed
        assert result.witness is None
        assert result.certified == frozenset()

    def test_roaming_background_is_searched(self):
        # The plan {a} is silent about initial c; the screen may roam c to
        # find a background in which the contrast breaks the effect.
        scenario = make_scenario("a=1; c=0; e=a & ~c")
        result = plan_abnormality(scenario, ("a",), Event("e", 1))
        assert result.passed
        assert result.witness.background == frozenset({Event("c", 0)})

    def test_abnormality_ok_wrapper(self):
        scenario = make_scenario("a=1; d=0; e=a & ~d")
        plan = InterventionPlan(
            value_set=frozenset({Event("a", 1), Event("d", 0)})
        )
        passed, witness = abnormality_ok(scenario, plan, Event("e", 1))
        assert passed and witness is not None
        failed, missing = abnormality_ok(
            scenario, plan, Event("e", 1), variant="single-event", focus="d"
        )
        assert not failed and missing is None
