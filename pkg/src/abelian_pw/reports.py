"""Verification reports: a pass/fail verdict plus the data behind it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    claim: str
    passed: bool
    params: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    counterexample: dict[str, Any] | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "pass": self.passed,
            "params": self.params,
            "details": self.details,
            "counterexample": self.counterexample,
        }

    def summary(self) -> str:
        head = f"[{'PASS' if self.passed else 'FAIL'}] {self.claim}"
        if self.params:
            head += " (" + ", ".join(f"{k}={v}" for k, v in self.params.items()) + ")"
        if self.counterexample:
            head += "\n  counterexample: " + ", ".join(f"{k}={v}" for k, v in self.counterexample.items())
        return head

    def __bool__(self) -> bool:
        return self.passed
