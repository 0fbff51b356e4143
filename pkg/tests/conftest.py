"""Shared fixtures: corpus access and a compact scenario builder."""

from __future__ import annotations

import importlib.resources
from pathlib import Path

import pytest

from actualcause import Domain, Model, Scenario, parse_case, parse_expression


def corpus_dir() -> Path:
    return Path(str(importlib.resources.files("actualcause"))) / "corpus"


def make_scenario(
    formulas: str,
    domains: dict[str, tuple[int, ...]] | None = None,
    defaults: dict[str, int] | None = None,
    intentions: tuple[tuple[str, str], ...] = (),
    mode: str = "reliable",
) -> Scenario:
    """Build a scenario from 'a=1; b=a; e=a & b' style text."""
    names: list[str] = []
    equations = {}
    for part in formulas.split(";"):
        var, _, body = part.partition("=")
        names.append(var.strip())
        equations[var.strip()] = parse_expression(body.strip())
    doms = {var: Domain(tuple(values)) for var, values in (domains or {}).items()}
    model = Model(tuple(names), equations, doms)
    return Scenario(model, mode=mode, defaults=defaults or {}, intentions=intentions)


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    path = corpus_dir()
    assert path.is_dir(), f"corpus directory missing: {path}"
    return path


@pytest.fixture(scope="session")
def corpus_cases(corpus_path: Path) -> dict[str, object]:
    """All benchmark cases keyed by two-digit id."""
    cases = {}
    for case_file in sorted(corpus_path.glob("*.case")):
        case = parse_case(case_file.read_text(encoding="utf-8"))
        cases[case.id] = case
    return cases
