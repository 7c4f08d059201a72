"""Report types shared by the scanners and the CLI.

ScanReport and VerificationReport serialize to a stable, versioned JSON
schema (``schema: 1``); per-n curves export to CSV with header ``n,x,value``.
Serialization is deterministic: keys are sorted and floats use repr, so
identical runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

__all__ = ["GridSpec", "ScanReport", "VerificationReport", "dump_json", "write_curves_csv"]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GridSpec:
    """Deterministic 1-D evaluation grid on [0,1].

    points is the number of uniform base grid points; when
    refine_breakpoints is set, scanners add samples one breakpoint_offset
    inside each half-open piece of the scanned function.
    """

    points: int = 10001
    refine_breakpoints: bool = True
    breakpoint_offset: float = 1e-9

    def __post_init__(self) -> None:
        if self.points < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.points}")
        if not 0.0 < self.breakpoint_offset <= 1e-6:
            raise ValueError(
                f"breakpoint offset must lie in (0, 1e-6], got {self.breakpoint_offset}"
            )

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "points": self.points,
            "refine_breakpoints": self.refine_breakpoints,
            "breakpoint_offset": self.breakpoint_offset,
        }


@dataclass(frozen=True)
class ScanReport:
    """Result of a sup-search over x (and optionally n)."""

    sup: float
    argmax_x: float
    grid: GridSpec
    argmax_n: int | None = None
    per_n: tuple[tuple[int, float, float], ...] | None = None  # (n, sup_n, argmax_x_n)
    meta: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "kind": "scan",
            "sup": self.sup,
            "argmax_x": self.argmax_x,
            "argmax_n": self.argmax_n,
            "grid": self.grid.to_json_dict(),
            "meta": self.meta,
        }
        if self.per_n is not None:
            d["per_n"] = [
                {"n": n, "sup": sup_n, "argmax_x": ax} for n, sup_n, ax in self.per_n
            ]
        return d


@dataclass(frozen=True)
class VerificationReport:
    """Pass/fail record for an inequality or identity sweep."""

    claim_id: str
    passed: bool
    worst_margin: float
    witness: dict[str, Any]
    samples_checked: int
    tolerance: float
    finding: bool | None = None  # set by exploratory (conjecture) scans
    details: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "kind": "verification",
            "claim_id": self.claim_id,
            "passed": self.passed,
            "worst_margin": self.worst_margin,
            "witness": self.witness,
            "samples_checked": self.samples_checked,
            "tolerance": self.tolerance,
            "details": self.details,
        }
        if self.finding is not None:
            d["finding"] = self.finding
        return d


def dump_json(obj: Any, path: str | None = None) -> str:
    """Serialize a report (or plain dict) deterministically; optionally write it."""
    d = obj.to_json_dict() if hasattr(obj, "to_json_dict") else obj
    text = json.dumps(d, sort_keys=True, indent=2) + "\n"
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def write_curves_csv(path: str, rows: Iterable[Sequence[Any]], header: Sequence[str] = ("n", "x", "value")) -> None:
    """Write curve samples as CSV with '.' decimals regardless of locale."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
