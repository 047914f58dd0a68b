"""Result object returned by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    suite: str
    params: dict = field(default_factory=dict)
    checks: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    # failures beyond this many are counted but not stored
    max_stored: int = 20
    failure_count: int = 0

    def count(self, name: str, n: int = 1):
        self.checks[name] = self.checks.get(name, 0) + n

    def fail(self, **detail):
        self.failure_count += 1
        if len(self.failures) < self.max_stored:
            self.failures.append(detail)

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def merge(self, other: Report):
        for k, v in other.checks.items():
            self.count(k, v)
        for f in other.failures:
            if len(self.failures) < self.max_stored:
                self.failures.append(f)
        self.failure_count += other.failure_count

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "checks": dict(sorted(self.checks.items())),
            "failure_count": self.failure_count,
            "failures": self.failures,
            "ok": self.ok,
        }

    def summary(self) -> str:
        total = sum(self.checks.values())
        status = "PASS" if self.ok else "FAIL"
        parts = ", ".join(f"{k}={v}" for k, v in sorted(self.checks.items()))
        return f"[{status}] {self.suite} {self.params}: {total} checks ({parts}), {self.failure_count} failures"
