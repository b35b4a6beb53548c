"""Named residual checks and their JSON/CSV serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

#: JSON schema of a serialized :class:`VerificationReport`
REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "checks", "params"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "residual", "tolerance", "pass"],
                "properties": {
                    "name": {"type": "string"},
                    "residual": {"type": "number", "minimum": 0},
                    "tolerance": {"type": "number", "exclusiveMinimum": 0},
                    "pass": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
        },
        "params": {"type": "object"},
    },
}


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    def __post_init__(self):
        r = float(self.residual)
        if r < 0:
            raise ValueError(f"residual of {self.name} is negative: {r}")
        if not math.isfinite(r):
            # an overflowed residual is a failed check, not a crash
            r = math.inf
        object.__setattr__(self, "residual", r)
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.tolerance


@dataclass
class VerificationReport:
    """Collection of max-abs residuals, each compared to its tolerance."""

    checks: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def add(self, name: str, residual: float, tolerance: float) -> Check:
        check = Check(name, residual, tolerance)
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.residual, c.tolerance))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def residual(self, name: str) -> float:
        return self[name].residual

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "checks": [
                {
                    "name": c.name,
                    # JSON has no inf/nan; a saturated residual is reported as max float
                    "residual": c.residual if math.isfinite(c.residual) else 1.7976931348623157e308,
                    "tolerance": c.tolerance,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
            "params": self.params,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "residual", "tolerance", "pass"])
        for row in self.to_dict()["checks"]:
            w.writerow([row["name"], repr(row["residual"]), repr(row["tolerance"]), row["pass"]])
        return buf.getvalue()

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            lines.append(f"{flag}  {c.name:<32} {c.residual:.3e}  (tol {c.tolerance:.1e})")
        return "\n".join(lines)
