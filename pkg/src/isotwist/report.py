"""Check results and report serialisation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class CheckResult:
    id: str
    status: str
    counterexample: str | None = None
    residual: float | None = None
    detail: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "counterexample": self.counterexample,
            "residual": self.residual,
            "detail": self.detail,
        }


def result(check_id: str, ok: bool, counterexample=None, residual=None, detail=None) -> CheckResult:
    return CheckResult(check_id, PASS if ok else FAIL, counterexample, residual, detail)


@dataclass
class CheckReport:
    suite: str
    checks: list[CheckResult]
    seed: int
    cutoffs: dict = field(default_factory=dict)
    wall_time: float | None = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def sorted(self) -> "CheckReport":
        return CheckReport(
            self.suite, sorted(self.checks, key=lambda c: c.id), self.seed,
            dict(self.cutoffs), self.wall_time,
        )

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]


def emit_report(report: CheckReport, fmt: str = "human") -> bytes:
    """Serialise a report.

    ``json`` output has fixed key order and omits ``wall_time`` unless it was
    recorded, so two runs with the same inputs and seed are byte-identical.
    """
    report = report.sorted()
    if fmt == "json":
        obj = {
            "suite": report.suite,
            "status": PASS if report.ok else FAIL,
            "seed": report.seed,
            "cutoffs": {k: report.cutoffs[k] for k in sorted(report.cutoffs)},
            "checks": [c.as_dict() for c in report.checks],
        }
        if report.wall_time is not None:
            obj["wall_time"] = report.wall_time
        return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "human":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = [f"suite: {report.suite}", f"seed: {report.seed}"]
    for k in sorted(report.cutoffs):
        lines.append(f"{k}: {report.cutoffs[k]}")
    width = max((len(c.id) for c in report.checks), default=0)
    for c in report.checks:
        line = f"{c.id:<{width}}  status: {c.status}"
        if c.residual is not None:
            line += f"  residual: {c.residual:.3e}"
        if c.detail:
            line += f"  [{c.detail}]"
        lines.append(line)
        if c.counterexample:
            lines.append(f"    counterexample: {c.counterexample}")
    n_fail = len(report.failures())
    lines.append(f"summary: {len(report.checks) - n_fail} passed, {n_fail} failed")
    if report.wall_time is not None:
        lines.append(f"wall time: {report.wall_time:.2f}s")
    lines.append(f"status: {PASS if report.ok else FAIL}")
    return ("\n".join(lines) + "\n").encode("utf-8")
