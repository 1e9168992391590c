"""Verdict records: a theorem clause is a conclusion guarded by hypothesis
flags.  A clause only counts as failed when all its flags are true."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import TheoremViolation


@dataclass(frozen=True)
class Clause:
    name: str
    hypotheses: tuple[tuple[str, bool], ...]
    holds: bool | None      # None when the hypotheses fail
    observed: bool | None   # the conclusion evaluated regardless, if computable

    @property
    def applicable(self) -> bool:
        return all(v for _, v in self.hypotheses)

    @property
    def failed(self) -> bool:
        return self.applicable and self.holds is False


@dataclass
class VerdictRecord:
    title: str
    flags: dict[str, bool | None] = field(default_factory=dict)
    clauses: list[Clause] = field(default_factory=list)
    objects: dict[str, object] = field(default_factory=dict)

    def flag(self, name: str, value) -> bool:
        self.flags[name] = None if value is None else bool(value)
        return bool(value)

    def clause(self, name: str, hypotheses: dict[str, bool], conclusion: Callable[[], bool]) -> Clause:
        hyps = tuple((k, bool(v)) for k, v in hypotheses.items())
        applicable = all(v for _, v in hyps)
        try:
            value = bool(conclusion())
        except Exception:
            # conclusions may be uncomputable when the hypotheses fail
            if applicable:
                raise
            value = None
        c = Clause(name, hyps, value if applicable else None, value)
        self.clauses.append(c)
        return c

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if c.failed]

    @property
    def ok(self) -> bool:
        return not self.failures()

    def counts(self) -> tuple[int, int, int]:
        """(passed, skipped, failed)."""
        p = sum(1 for c in self.clauses if c.applicable and c.holds)
        f = len(self.failures())
        return p, len(self.clauses) - p - f, f

    def raise_on_failure(self):
        bad = self.failures()
        if bad:
            raise TheoremViolation(bad[0].name, f"({self.title})")

    def as_dict(self) -> dict:
        return {
            "title": self.title,
            "flags": dict(self.flags),
            "clauses": [
                {"name": c.name, "hypotheses": dict(c.hypotheses), "holds": c.holds, "observed": c.observed}
                for c in self.clauses
            ],
            "objects": {k: v.backend.describe(v) if hasattr(v, "backend") else v for k, v in self.objects.items()},
        }
