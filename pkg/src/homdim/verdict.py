"""Three-valued answers: Yes(payload), No(witness), Unknown(reason)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

YES, NO, UNKNOWN = "Yes", "No", "Unknown"


@dataclass(frozen=True)
class Verdict:
    kind: str
    value: Any = None  # payload for Yes, witness for No, reason for Unknown

    def __post_init__(self):
        if self.kind not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict kind {self.kind!r}")

    @property
    def is_yes(self) -> bool:
        return self.kind == YES

    @property
    def is_no(self) -> bool:
        return self.kind == NO

    @property
    def is_unknown(self) -> bool:
        return self.kind == UNKNOWN

    @property
    def determinate(self) -> bool:
        return self.kind != UNKNOWN

    def to_json(self) -> dict:
        key = {YES: "value", NO: "witness", UNKNOWN: "reason"}[self.kind]
        out = {"verdict": self.kind}
        if self.value is not None:
            out[key] = self.value
        return out

    def __str__(self) -> str:
        return f"{self.kind}({self.value})" if self.value is not None else self.kind


def Yes(value=None) -> Verdict:
    return Verdict(YES, value)


def No(witness=None) -> Verdict:
    return Verdict(NO, witness)


def Unknown(reason=None) -> Verdict:
    return Verdict(UNKNOWN, reason)


def all_of(*verdicts: Verdict) -> Verdict:
    """Conjunction: No if any No, Unknown if any Unknown, else Yes."""
    for v in verdicts:
        if v.is_no:
            return v
    for v in verdicts:
        if v.is_unknown:
            return v
    return Yes()
