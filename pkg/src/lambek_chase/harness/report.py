"""Verification reports with a deterministic serialization."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ..core import Obj


def describe(X) -> str:
    if isinstance(X, Obj):
        return X.backend.describe(X)
    return str(X)


@dataclass
class TrialResult:
    trial: int | str
    status: str                  # pass | skip | fail
    detail: str = ""
    weight: int = 1              # labelled diagrams represented (exhaustive pset runs)
    counterexample: dict | None = None


@dataclass
class VerificationReport:
    command: str
    backend: str
    params: dict = field(default_factory=dict)
    records: list[dict] = field(default_factory=list)
    trials: list[TrialResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    tally: dict | None = None      # trial counts when only failures are kept

    @property
    def counts(self) -> dict[str, int]:
        if self.tally is not None:
            c = {k: self.tally[k] for k in ("pass", "skip", "fail")}
        else:
            c = {"pass": 0, "skip": 0, "fail": 0}
            for t in self.trials:
                c[t.status] += 1
        for r in self.records:
            for cl in r["clauses"]:
                if cl["holds"] is None:
                    c["skip"] += 1
                else:
                    c["pass" if cl["holds"] else "fail"] += 1
        return c

    @property
    def ok(self) -> bool:
        return self.counts["fail"] == 0

    def failures(self) -> list[TrialResult]:
        return [t for t in self.trials if t.status == "fail"]

    def as_dict(self) -> dict:
        d = {
            "command": self.command,
            "backend": self.backend,
            "params": self.params,
            "summary": {**self.counts, "ok": self.ok},
        }
        if self.records:
            d["records"] = self.records
        if self.trials or self.tally is not None:
            d["trials"] = [_trial_dict(t) for t in self.trials]
            d["summary"]["labelled"] = (self.tally["labelled"] if self.tally is not None
                                        else sum(t.weight for t in self.trials))
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=True) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command} [{self.backend}]"]
        for k in sorted(self.params):
            lines.append(f"  {k}: {self.params[k]}")
        for r in self.records:
            lines.append(f"{r['title']}:")
            for k, v in r["flags"].items():
                lines.append(f"  flag  {k}: {v}")
            for name, inv in r["objects"].items():
                lines.append(f"  obj   {name}: {inv}")
            for cl in r["clauses"]:
                mark = {True: "PASS", False: "FAIL", None: "skip"}[cl["holds"]]
                lines.append(f"  {mark}  {cl['name']}")
        if self.trials or self.tally is not None:
            c = self.counts
            lines.append(f"trials: {sum(c.values())}  pass {c['pass']}  skip {c['skip']}  fail {c['fail']}")
            for t in self.failures():
                lines.append(f"  FAIL trial {t.trial}: {t.detail}")
        for n in self.notes:
            lines.append(f"note: {n}")
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "text") -> str:
        return self.to_json() if fmt == "structured" else self.to_text()


def _trial_dict(t: TrialResult) -> dict:
    d = asdict(t)
    if d["counterexample"] is None:
        del d["counterexample"]
    if not d["detail"]:
        del d["detail"]
    if d["weight"] == 1:
        del d["weight"]
    return d


def save_report(report: VerificationReport, path, fmt: str = "structured"):
    Path(path).write_text(report.render(fmt))
