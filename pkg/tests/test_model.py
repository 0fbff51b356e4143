"""Model validation, domains, events, plans, scenarios, and solving."""

from __future__ import annotations

import pytest

from actualcause import (
    CycleError,
    Domain,
    DomainError,
    Event,
    InterventionPlan,
    ModelError,
    NonExhaustivePiecewiseError,
    UnknownVariableError,
    enumerate_settings,
    event_set,
    render_events,
    solve,
)
from actualcause.model import EMPTY_PLAN, satisfies

from conftest import make_scenario


class TestDomain:
    def test_membership_and_iteration(self):
        dom = Domain((0, 2, 5))
        assert 2 in dom and 1 not in dom
        assert list(dom) == [0, 2, 5]
        assert len(dom) == 3

    def test_rejects_duplicates(self):
        with pytest.raises(DomainError):
            Domain((0, 1, 1))

    def test_rejects_empty(self):
        with pytest.raises(DomainError):
            Domain(())


class TestEvent:
    def test_render_and_ordering(self):
        assert Event("a", 1).render() == "a=1"
        assert Event("a", 0) < Event("a", 1) < Event("b", 0)

    def test_event_set_and_render_events(self):
        events = event_set({"b": 2, "a": 1})
        assert events == frozenset({Event("a", 1), Event("b", 2)})
        assert render_events(events) == "{a=1, b=2}"
        assert render_events(()) == "{}"


class TestInterventionPlan:
    def test_pins_and_vars(self):
        plan = InterventionPlan(
            value_set=frozenset({Event("a", 1), Event("b", 0)}),
            function_set=frozenset({"c"}),
        )
        assert plan.pins() == {"a": 1, "b": 0}
        assert plan.pinned_vars() == frozenset({"a", "b"})

    def test_rejects_conflicting_pins(self):
        with pytest.raises(DomainError):
            InterventionPlan(value_set=frozenset({Event("a", 0), Event("a", 1)}))

    def test_rejects_pin_free_overlap(self):
        with pytest.raises(DomainError):
            InterventionPlan(
                value_set=frozenset({Event("a", 0)}),
                function_set=frozenset({"a"}),
            )

    def test_empty_plan(self):
        assert EMPTY_PLAN.pins() == {}
        assert EMPTY_PLAN.pinned_vars() == frozenset()


class TestModelValidation:
    def test_missing_domains_default_to_binary(self):
        scenario = make_scenario("a=1; e=a")
        assert scenario.model.domains["a"].values == (0, 1)

    def test_unknown_reference(self):
        with pytest.raises(UnknownVariableError):
            make_scenario("a=1; e=a & z")

    def test_cycle(self):
        with pytest.raises(CycleError):
            make_scenario("a=e; e=a")

    def test_self_loop(self):
        with pytest.raises(CycleError):
            make_scenario("a=a")

    def test_equation_escapes_domain(self):
        # a + b can reach 2, outside e's binary domain.
        with pytest.raises(DomainError):
            make_scenario("a=1; b=1; e=a + b")

    def test_constant_outside_domain(self):
        with pytest.raises(DomainError):
            make_scenario("a=2; e=a")

    def test_non_exhaustive_piecewise(self):
        with pytest.raises(NonExhaustivePiecewiseError):
            make_scenario("a=1; e={1 if a}")

    def test_structure_queries(self):
        scenario = make_scenario("a=1; b=a; c=1; e=b & c")
        model = scenario.model
        assert model.initial_variables() == frozenset({"a", "c"})
        assert model.is_initial("a") and not model.is_initial("b")
        assert model.parents("e") == frozenset({"b", "c"})
        assert model.ancestors("e") == frozenset({"a", "b", "c"})
        assert model.ancestors("a") == frozenset()

    def test_value_semantics(self):
        first = make_scenario("a=1; e=a").model
        second = make_scenario("a=1; e=a").model
        assert first == second

    def test_check_value(self):
        model = make_scenario("a=1; e=a", domains={"a": (0, 1, 2), "e": (0, 1, 2)}).model
        model.check_value("a", 2)
        with pytest.raises(DomainError):
            model.check_value("a", 3)
        with pytest.raises(UnknownVariableError):
            model.check_value("z", 0)


class TestScenario:
    def test_bad_mode(self):
        with pytest.raises(ModelError):
            make_scenario("a=1; e=a", mode="bogus")

    def test_defaults_fill_to_zero(self):
        scenario = make_scenario("a=1; e=a", defaults={"a": 1})
        assert scenario.default_value("a") == 1
        assert scenario.default_value("e") == 0

    def test_default_out_of_domain(self):
        with pytest.raises(DomainError):
            make_scenario("a=1; e=a", defaults={"a": 5})

    def test_default_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            make_scenario("a=1; e=a", defaults={"z": 0})

    def test_intention_must_be_parent(self):
        make_scenario("f=1; a=f; e=a", intentions=(("f", "a"),))
        with pytest.raises(ModelError):
            make_scenario("f=1; a=f; e=a", intentions=(("f", "e"),))

    def test_intention_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            make_scenario("f=1; a=f; e=a", intentions=(("z", "a"),))

    def test_actual_values(self):
        scenario = make_scenario("a=1; b=a; e=~b")
        assert scenario.actual() == {"a": 1, "b": 1, "e": 0}
        assert scenario.actual_value("e") == 0
        with pytest.raises(UnknownVariableError):
            scenario.actual_value("z")


class TestSolve:
    def test_plain_solve(self):
        scenario = make_scenario("a=1; b=a; e=a & b")
        assert solve(scenario) == {"a": 1, "b": 1, "e": 1}

    def test_pinned_solve(self):
        scenario = make_scenario("a=1; b=a; e=a & b")
        plan = InterventionPlan(value_set=frozenset({Event("b", 0)}))
        assert solve(scenario, plan) == {"a": 1, "b": 0, "e": 0}

    def test_overrides_mapping_and_events(self):
        scenario = make_scenario("a=1; b=a; e=a & b")
        assert solve(scenario, EMPTY_PLAN, {"a": 0}) == {"a": 0, "b": 0, "e": 0}
        assert solve(scenario, EMPTY_PLAN, [Event("a", 0)])["e"] == 0

    def test_pin_out_of_domain(self):
        scenario = make_scenario("a=1; b=a; e=a & b")
        with pytest.raises(DomainError):
            solve(scenario, InterventionPlan(value_set=frozenset({Event("b", 7)})))

    def test_satisfies(self):
        scenario = make_scenario("a=1; b=a; e=a & b")
        assert satisfies(scenario, EMPTY_PLAN, {}, [Event("e", 1)])
        assert satisfies(scenario, EMPTY_PLAN, {"a": 0}, [Event("e", 0)])
        assert not satisfies(scenario, EMPTY_PLAN, {"a": 0}, [Event("e", 1)])


class TestEnumerateSettings:
    def test_grid(self):
        model = make_scenario("a=1; b=0; e=a & b", domains={"a": (0, 1, 2)}).model
        grid = list(enumerate_settings(model, ["a", "b"]))
        assert len(grid) == 6
        assert {"a": 0, "b": 0} in grid and {"a": 2, "b": 1} in grid

    def test_cap(self):
        from actualcause import SearchTooLargeError

        model = make_scenario("a=1; b=0; e=a & b").model
        with pytest.raises(SearchTooLargeError):
            list(enumerate_settings(model, ["a", "b"], cap=3))
