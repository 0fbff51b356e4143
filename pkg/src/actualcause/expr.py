"""Expression trees for structural equations over finite integer domains.

The expression language is deliberately small: integer constants, variable
references, logical negation / conjunction / disjunction (zero is false,
anything else is true, results are always 0 or 1), the six comparisons,
floor-division arithmetic, and a first-true-wins piecewise form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

__all__ = [
    "ARITH_OPS",
    "CMP_OPS",
    "And",
    "Arith",
    "Cmp",
    "Const",
    "EvaluationError",
    "Expr",
    "Not",
    "Or",
    "Piecewise",
    "Var",
    "substitute",
]


class EvaluationError(Exception):
    """An expression could not be evaluated against an environment."""


CMP_OPS = ("==", "!=", ">=", ">", "<=", "<")
ARITH_OPS = ("+", "-", "*", "/", "%")

# Rendering precedence levels; higher binds tighter.
PREC_OR = 1
PREC_AND = 2
PREC_CMP = 3
PREC_SUM = 4
PREC_PROD = 5
PREC_NOT = 6
PREC_ATOM = 7


class Expr:
    """Base class of all expression nodes.  Nodes are immutable values."""

    def evaluate(self, env: Mapping[str, int]) -> int:
        raise NotImplementedError

    def variables(self) -> frozenset[str]:
        raise NotImplementedError

    def prec(self) -> int:
        return PREC_ATOM

    def render(self) -> str:
        raise NotImplementedError

    def _wrap(self, child: "Expr", floor: int) -> str:
        text = child.render()
        return f"({text})" if child.prec() < floor else text

    def __str__(self) -> str:
        return self.render()


def _truth(value: int) -> bool:
    return value != 0


@dataclass(frozen=True)
class Const(Expr):
    value: int

    def evaluate(self, env: Mapping[str, int]) -> int:
        return self.value

    def variables(self) -> frozenset[str]:
        return frozenset()

    def render(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def evaluate(self, env: Mapping[str, int]) -> int:
        try:
            return env[self.name]
        except KeyError:
            raise EvaluationError(f"unbound variable {self.name!r}") from None

    def variables(self) -> frozenset[str]:
        return frozenset((self.name,))

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr

    def evaluate(self, env: Mapping[str, int]) -> int:
        return 0 if _truth(self.operand.evaluate(env)) else 1

    def variables(self) -> frozenset[str]:
        return self.operand.variables()

    def prec(self) -> int:
        return PREC_NOT

    def render(self) -> str:
        return "~" + self._wrap(self.operand, PREC_NOT)


@dataclass(frozen=True)
class And(Expr):
    left: Expr
    right: Expr

    def evaluate(self, env: Mapping[str, int]) -> int:
        # Both sides are evaluated: evaluation errors must not depend on
        # short-circuiting, so validation sees every branch.
        lhs = self.left.evaluate(env)
        rhs = self.right.evaluate(env)
        return 1 if _truth(lhs) and _truth(rhs) else 0

    def variables(self) -> frozenset[str]:
        return self.left.variables() | self.right.variables()

    def prec(self) -> int:
        return PREC_AND

    def render(self) -> str:
        return f"{self._wrap(self.left, PREC_AND)} & {self._wrap(self.right, PREC_AND + 1)}"


@dataclass(frozen=True)
class Or(Expr):
    left: Expr
    right: Expr

    def evaluate(self, env: Mapping[str, int]) -> int:
        lhs = self.left.evaluate(env)
        rhs = self.right.evaluate(env)
        return 1 if _truth(lhs) or _truth(rhs) else 0

    def variables(self) -> frozenset[str]:
        return self.left.variables() | self.right.variables()

    def prec(self) -> int:
        return PREC_OR

    def render(self) -> str:
        return f"{self._wrap(self.left, PREC_OR)} | {self._wrap(self.right, PREC_OR + 1)}"


@dataclass(frozen=True)
class Cmp(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self) -> None:
        if self.op not in CMP_OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")

    def evaluate(self, env: Mapping[str, int]) -> int:
        lhs = self.left.evaluate(env)
        rhs = self.right.evaluate(env)
        if self.op == "==":
            result = lhs == rhs
        elif self.op == "!=":
            result = lhs != rhs
        elif self.op == ">=":
            result = lhs >= rhs
        elif self.op == ">":
            result = lhs > rhs
        elif self.op == "<=":
            result = lhs <= rhs
        else:
            result = lhs < rhs
        return 1 if result else 0

    def variables(self) -> frozenset[str]:
        return self.left.variables() | self.right.variables()

    def prec(self) -> int:
        return PREC_CMP

    def render(self) -> str:
        # Comparisons do not chain; both children need at least sum precedence.
        lhs = self._wrap(self.left, PREC_CMP + 1)
        rhs = self._wrap(self.right, PREC_CMP + 1)
        return f"{lhs} {self.op} {rhs}"


@dataclass(frozen=True)
class Arith(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self) -> None:
        if self.op not in ARITH_OPS:
            raise ValueError(f"unknown arithmetic operator {self.op!r}")

    def evaluate(self, env: Mapping[str, int]) -> int:
        lhs = self.left.evaluate(env)
        rhs = self.right.evaluate(env)
        if self.op == "+":
            return lhs + rhs
        if self.op == "-":
            return lhs - rhs
        if self.op == "*":
            return lhs * rhs
        if rhs == 0:
            raise EvaluationError(f"division by zero in {self.render()!r}")
        # Floor semantics for both quotient and remainder.
        return lhs // rhs if self.op == "/" else lhs % rhs

    def variables(self) -> frozenset[str]:
        return self.left.variables() | self.right.variables()

    def prec(self) -> int:
        return PREC_SUM if self.op in ("+", "-") else PREC_PROD

    def render(self) -> str:
        level = self.prec()
        return f"{self._wrap(self.left, level)} {self.op} {self._wrap(self.right, level + 1)}"


@dataclass(frozen=True)
class Piecewise(Expr):
    """First-true-wins guarded alternatives: ``{value if guard, ...}``."""

    cases: tuple[tuple[Expr, Expr], ...]  # (value, guard) pairs, in order

    def __post_init__(self) -> None:
        if not self.cases:
            raise ValueError("piecewise expression needs at least one case")

    def evaluate(self, env: Mapping[str, int]) -> int:
        for value, guard in self.cases:
            if _truth(guard.evaluate(env)):
                return value.evaluate(env)
        raise EvaluationError(f"no true guard in {self.render()!r}")

    def variables(self) -> frozenset[str]:
        names: frozenset[str] = frozenset()
        for value, guard in self.cases:
            names |= value.variables() | guard.variables()
        return names

    def render(self) -> str:
        parts = [f"{value.render()} if {guard.render()}" for value, guard in self.cases]
        return "{" + ", ".join(parts) + "}"


def substitute(expr: Expr, values: Mapping[str, int]) -> Expr:
    """Replace variable references by integer constants, rebuilding the tree."""
    if isinstance(expr, Const):
        return expr
    if isinstance(expr, Var):
        if expr.name in values:
            return Const(values[expr.name])
        return expr
    if isinstance(expr, Not):
        return Not(substitute(expr.operand, values))
    if isinstance(expr, And):
        return And(substitute(expr.left, values), substitute(expr.right, values))
    if isinstance(expr, Or):
        return Or(substitute(expr.left, values), substitute(expr.right, values))
    if isinstance(expr, Cmp):
        return Cmp(expr.op, substitute(expr.left, values), substitute(expr.right, values))
    if isinstance(expr, Arith):
        return Arith(expr.op, substitute(expr.left, values), substitute(expr.right, values))
    if isinstance(expr, Piecewise):
        return Piecewise(
            tuple(
                (substitute(value, values), substitute(guard, values))
                for value, guard in expr.cases
            )
        )
    raise TypeError(f"not an expression node: {expr!r}")
