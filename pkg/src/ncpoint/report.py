"""Results of the identity-checking suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True, order=True)
class Failure:
    """One counterexample: the inputs, the first differing word and both coefficients."""

    inputs: str
    word: str
    expected: str
    actual: str


@dataclass
class CheckReport:
    check_name: str
    trials: int
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def summary(self) -> str:
        head = (
            f"{self.check_name}: {self.verdict.upper()} "
            f"({self.trials} trials, {len(self.failures)} failures, {self.elapsed:.2f}s)"
        )
        lines = [head]
        for f in self.failures:
            lines.append(f"  word {f.word!r}: expected {f.expected}, actual {f.actual}  [{f.inputs}]")
        return "\n".join(lines)
