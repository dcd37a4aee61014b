from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Verdict:
    """Outcome of a finite check; ``witness`` names the first failure."""

    name: str
    passed: bool = True
    details: list[str] = field(default_factory=list)
    witness: str | None = None

    def fail(self, witness: str) -> Verdict:
        if self.passed:
            self.passed = False
            self.witness = witness
        self.details.append("FAIL " + witness)
        return self

    def note(self, line: str) -> Verdict:
        self.details.append(line)
        return self

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "details": list(self.details),
            "witness": self.witness,
        }
