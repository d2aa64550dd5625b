"""Machine-readable command reports.

Every number in a report is a decimal string (``"12"``, ``"-1/2"``,
``"0.7639"``) so that big integers and rationals survive any JSON reader.
Booleans and ``null`` stay native. See ``docs/report-schema.md``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA = "rosespec-report/1"
STATUSES = ("ok", "fail", "incomplete", "error")


def exact(value):
    """Recursively turn ints and Fractions into strings; leave the rest."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        raise TypeError("floats are not allowed in reports; format them first")
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    if hasattr(value, "coeffs"):
        return [str(c) for c in value.coeffs]
    raise TypeError(f"cannot put {type(value).__name__} in a report")


def parse_exact(text: str) -> int | Fraction:
    """Inverse of :func:`exact` for one numeric string."""
    if "/" in text:
        return Fraction(text)
    return int(text)


@dataclass
class Report:
    command: str
    inputs: dict
    outputs: dict
    status: str = "ok"
    timing: dict = field(default_factory=dict)
    schema: str = SCHEMA

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        self.inputs = exact(self.inputs)
        self.outputs = exact(self.outputs)

    def to_dict(self, timing: bool = True) -> dict:
        d = {"schema": self.schema, "command": self.command, "inputs": self.inputs,
             "outputs": self.outputs, "status": self.status}
        if timing:
            d["timing"] = self.timing
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d["command"], d["inputs"], d["outputs"], d["status"],
                   d.get("timing", {}), d["schema"])


def seconds(x: float) -> str:
    return f"{x:.6f}"
