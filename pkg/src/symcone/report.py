"""Verification reports and their deterministic canonical JSON form.

Reports are plain value objects.  The canonical rendering uses a fixed field
order and 17-significant-digit decimals so that identical runs produce
byte-identical output; wall time is carried on the object but excluded from
the canonical form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class PropertyResult:
    """Outcome of one checked property: worst residual over all trials."""

    name: str
    trials: int
    max_residual: float
    tolerance: float
    passed: bool

    @classmethod
    def from_residual(cls, name: str, trials: int, max_residual: float,
                      tolerance: float) -> "PropertyResult":
        max_residual = float(max_residual)
        ok = bool(math.isfinite(max_residual) and max_residual <= tolerance)
        return cls(name, int(trials), max_residual, float(tolerance), ok)


@dataclass
class VerificationReport:
    suite: str
    seed: int
    properties: list[PropertyResult] = field(default_factory=list)
    passed: bool = True
    wall_time_s: float = 0.0

    @classmethod
    def from_properties(cls, suite: str, seed: int,
                        properties: list[PropertyResult],
                        wall_time_s: float = 0.0) -> "VerificationReport":
        ok = all(p.passed for p in properties)
        return cls(suite, seed, list(properties), ok, wall_time_s)

    def failing(self) -> list[PropertyResult]:
        return [p for p in self.properties if not p.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "properties": [
                {
                    "name": p.name,
                    "trials": p.trials,
                    "max_residual": p.max_residual,
                    "tolerance": p.tolerance,
                    "pass": p.passed,
                }
                for p in self.properties
            ],
            "pass": self.passed,
        }

    def to_canonical_json(self) -> str:
        return canonical_json(self.to_dict())

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}  (seed {self.seed})"]
        for p in self.properties:
            tag = "PASS" if p.passed else "FAIL"
            lines.append(
                f"  [{tag}] {p.name}: max_residual={_render_float(p.max_residual)} "
                f"tolerance={_render_float(p.tolerance)} trials={p.trials}"
            )
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def merge_reports(suite: str, seed: int,
                  sections: list[tuple[str, VerificationReport]],
                  wall_time_s: float = 0.0) -> VerificationReport:
    """Flatten named sub-reports into one report with prefixed property names."""
    props = []
    for prefix, rep in sections:
        for p in rep.properties:
            props.append(PropertyResult(f"{prefix}/{p.name}", p.trials,
                                        p.max_residual, p.tolerance, p.passed))
    return VerificationReport.from_properties(suite, seed, props, wall_time_s)


def _render_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(float(x), ".17g")


def canonical_json(obj) -> str:
    """Render JSON with insertion-ordered keys and .17g float formatting."""
    out: list[str] = []
    _write_json(obj, out)
    return "".join(out)


def _write_json(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_render_float(obj))
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(",")
            _write_json(str(k), out)
            out.append(":")
            _write_json(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _write_json(v, out)
        out.append("]")
    else:
        try:
            import numpy as np
            if isinstance(obj, np.ndarray):
                _write_json(obj.tolist(), out)
                return
            if isinstance(obj, np.bool_):
                out.append("true" if obj else "false")
                return
            if isinstance(obj, np.floating):
                out.append(_render_float(float(obj)))
                return
            if isinstance(obj, np.integer):
                out.append(str(int(obj)))
                return
        except ImportError:
            pass
        raise TypeError(f"cannot render {type(obj)!r} canonically")
