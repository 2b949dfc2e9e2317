"""Check records shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .linalg import Matrix


class Falsification(AssertionError):
    """An identity that should hold on a valid instance did not."""

    def __init__(self, message: str, checks: Iterable["Check"] = ()):
        super().__init__(message)
        self.checks = list(checks)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: Matrix | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.residual is not None:
            out["residual"] = matrix_to_json(self.residual)
        if self.detail:
            out["detail"] = self.detail
        return out


def residual_check(name: str, residual: Matrix) -> Check:
    return Check(name, residual.is_zero(), residual)


@dataclass
class RelationReport:
    """Named checks with exact residuals; passes iff every residual is zero."""

    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, checks: Iterable[Check]) -> None:
        self.checks.extend(checks)

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"pass": self.passed, "relations": [c.to_json() for c in self.checks]}


# JSON forms: scalars as canonical "p/q" strings, matrices as nested lists of those.


def scalar_to_json(x: Fraction) -> str:
    return str(Fraction(x))


def scalar_from_json(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"scalar must be an int or a rational string, got {s!r}")
    return Fraction(s)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in r] for r in m.rows]


def matrix_from_json(rows) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a nonempty list of rows")
    return Matrix([[scalar_from_json(x) for x in r] for r in rows])
