"""Verification reports: named exact-zero checks with a witness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .kernel import format_rational, value_of


@dataclass
class Check:
    name: str
    passed: bool
    indices: tuple = ()
    value: Fraction = Fraction(0)
    note: str = ""

    def to_json(self):
        out = {"name": self.name, "pass": self.passed,
               "witness": {"indices": list(self.indices), "value": format_rational(self.value)}}
        if self.note:
            out["note"] = self.note
        return out


def scan(name: str, residuals: Iterable) -> Check:
    """Fold (indices, residual) pairs into one check.

    The witness is the residual of largest magnitude (first one on ties).
    """
    worst_idx, worst = (), Fraction(0)
    for idx, v in residuals:
        v = value_of(v)
        if v != 0 and abs(v) > abs(worst):
            worst_idx, worst = tuple(idx), v
    return Check(name, worst == 0, worst_idx, worst)


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check):
        self.checks.append(check)
        return check

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.checks + other.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self):
        return [c.name for c in self.checks]

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {"checks": [c.to_json() for c in self.checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)
