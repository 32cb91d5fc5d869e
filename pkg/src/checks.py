from dataclasses import dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one certified property

    Truthy iff the property holds; witness names a minimal counterexample
    (or the reason a check was skipped).
    """

    name: str
    passed: bool
    witness: Optional[Any] = None
    skipped: bool = False

    def __bool__(self):
        return self.passed

    def to_dict(self):
        status = "skip" if self.skipped else ("pass" if self.passed else "FAIL")
        out = {"property": self.name, "status": status}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


def passed(name):
    return CheckResult(name, True)


def failed(name, witness):
    return CheckResult(name, False, witness)


def skipped(name, reason):
    return CheckResult(name, True, reason, skipped=True)
