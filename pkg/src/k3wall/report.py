"""Named exact comparisons and their verdicts.

Every certified inequality is stored with both sides as exact values plus the
exact sign of (lhs - rhs), so a verdict can always be reproduced from its
witnesses.  Equality is reported as BOUNDARY and only satisfies non-strict
operators; callers that accept boundary hits (closure arguments) say so
explicitly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .exact import SurdSum, surdsum_sign


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    BOUNDARY = "BOUNDARY"
    NA = "N/A"

    def __str__(self):
        return self.value


_OPS = ("<", "<=", ">", ">=", "==")


@dataclass(frozen=True)
class Comparison:
    """One atomic inequality lhs OP rhs with its exact outcome."""

    label: str
    lhs: object
    op: str
    rhs: object
    sign: int               # exact sign of lhs - rhs
    informational: bool = False

    @property
    def satisfied(self) -> bool:
        return {
            "<": self.sign < 0,
            "<=": self.sign <= 0,
            ">": self.sign > 0,
            ">=": self.sign >= 0,
            "==": self.sign == 0,
        }[self.op]

    @property
    def verdict(self) -> Verdict:
        if self.sign == 0 and self.op != "==":
            return Verdict.BOUNDARY
        return Verdict.PASS if self.satisfied else Verdict.FAIL

    @property
    def ok(self) -> bool:
        return self.satisfied

    def describe(self) -> str:
        return f"{self.label}: {self.lhs} {self.op} {self.rhs} [{self.verdict}]"


def compare(label: str, lhs, op: str, rhs, informational: bool = False,
            sign: int | None = None) -> Comparison:
    if op not in _OPS:
        raise ValueError(f"unknown operator {op!r}")
    if sign is None:
        sign = surdsum_sign(SurdSum.of(lhs) - SurdSum.of(rhs))
    return Comparison(label, lhs, op, rhs, sign, informational)


@dataclass(frozen=True)
class Check:
    """A named group of comparisons with a single verdict.

    ``boundary_ok`` marks checks whose geometric meaning survives on the
    boundary (closure arguments): BOUNDARY then counts as passed.  For strict
    inequalities a boundary hit fails.
    """

    id: str
    name: str
    description: str
    comparisons: tuple[Comparison, ...] = ()
    boundary_ok: bool = False
    na_reason: str = ""

    @property
    def verdict(self) -> Verdict:
        if self.na_reason:
            return Verdict.NA
        saw_boundary = False
        for comp in self.comparisons:
            if comp.informational:
                continue
            if comp.sign == 0 and comp.op != "==":
                saw_boundary = True
            elif not comp.satisfied:
                return Verdict.FAIL
        return Verdict.BOUNDARY if saw_boundary else Verdict.PASS

    @property
    def acceptable(self) -> bool:
        """Whether the check counts as passed for the overall verdict.

        BOUNDARY satisfies a non-strict comparison outright; on a strict one
        it only passes when the check allows closure semantics.  N/A never
        blocks.
        """
        if self.na_reason:
            return True
        for comp in self.comparisons:
            if comp.informational or comp.satisfied:
                continue
            if comp.sign == 0 and self.boundary_ok:
                continue
            return False
        return True
