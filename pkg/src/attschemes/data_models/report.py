"""
Check results and the verification report emitted by the CLI.
"""

from typing import Any, Dict, List, Optional

from attschemes import __version__

REPORT_SCHEMA_VERSION = 1
MAX_WITNESSES = 100


class CheckResult:
    """Outcome of one named check."""

    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"

    def __init__(self, name: str, status: str, checked: int = 0, failures: Optional[List[str]] = None, detail: Optional[Dict[str, Any]] = None):
        """
        Initialize a check result.

        Args:
            name: Check name, unique within a report
            status: "pass", "fail" or "skip"
            checked: Number of individual instances examined
            failures: Human-readable failure witnesses (capped at MAX_WITNESSES)
            detail: Extra machine-readable summary
        """
        self.name = name
        self.status = status
        self.checked = checked
        self.failures = list(failures or [])
        self.failure_count = len(self.failures)
        self.failures = self.failures[:MAX_WITNESSES]
        self.detail = detail or {}
        self.seconds: Optional[float] = None

    @classmethod
    def from_failures(cls, name: str, checked: int, failures: List[str], detail: Optional[Dict[str, Any]] = None) -> "CheckResult":
        return cls(name, cls.FAIL if failures else cls.PASS, checked, failures, detail)

    @classmethod
    def skipped(cls, name: str, reason: str) -> "CheckResult":
        return cls(name, cls.SKIP, detail={"reason": reason})

    @property
    def passed(self) -> bool:
        return self.status != self.FAIL

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        result: Dict[str, Any] = {"name": self.name, "status": self.status, "checked": self.checked, "failure_count": self.failure_count}
        if self.failures:
            result["failures"] = self.failures
        if self.detail:
            result["detail"] = self.detail
        if include_timings and self.seconds is not None:
            result["seconds"] = round(self.seconds, 3)
        return result


class VerificationReport:
    """Aggregated results for one verify run."""

    def __init__(self, params: Dict[str, Any], scope: str):
        self.params = params
        self.scope = scope
        self.checks: List[CheckResult] = []

    def extend(self, results: List[CheckResult]) -> None:
        self.checks.extend(results)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "tool_version": __version__,
            "scope": self.scope,
            "params": self.params,
            "status": "pass" if self.passed else "fail",
            "checks": [check.to_dict(include_timings) for check in self.checks],
        }
