"""Law-check bookkeeping: every suite returns a :class:`Report`."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"
EXAMPLE = "example"


@dataclass
class LawResult:
    """Outcome of one law: how many cases were checked and the first failure."""

    law: str
    ref: str
    regime: str
    checked: int = 0
    failures: int = 0
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def check(self, ok: bool, witness: Any = None) -> bool:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = _plain(witness() if callable(witness) else witness)
        return bool(ok)

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "ref": self.ref,
            "regime": self.regime,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "witness": self.witness,
        }


@dataclass
class Report:
    name: str
    results: list[LawResult] = field(default_factory=list)

    def law(self, law: str, ref: str, regime: str) -> LawResult:
        result = LawResult(law, ref, regime)
        self.results.append(result)
        return result

    def extend(self, other: "Report", prefix: str | None = None) -> "Report":
        for r in other.results:
            if prefix:
                r.law = f"{prefix}/{r.law}"
            self.results.append(r)
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, law: str) -> LawResult:
        for r in self.results:
            if r.law == law:
                return r
        raise KeyError(law)

    def failed(self) -> list[LawResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "laws": [r.to_dict() for r in self.results],
        }

    def summary(self) -> str:
        lines = []
        for r in self.results:
            mark = "PASS" if r.passed else "FAIL"
            lines.append(f"{mark} {self.name}/{r.law} [{r.regime}, {r.checked} cases]")
            if not r.passed:
                lines.append(f"     witness: {r.witness}")
        return "\n".join(lines)


def _plain(value):
    """Best-effort conversion of a witness to JSON-friendly data."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    to_json = getattr(value, "to_json", None)
    if callable(to_json):
        return to_json()
    return repr(value)
