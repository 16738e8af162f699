from dataclasses import dataclass
from typing import Optional


@dataclass
class PropertyCheck:
    """
    Result of checking one property on sampled inputs.
    Stops at the first counterexample, which is kept as text.
    """
    name: str
    passed: bool = True
    checked: int = 0
    witness: Optional[str] = None

    def fail(self, witness: str) -> "PropertyCheck":
        self.passed = False
        self.witness = witness
        return self

    def describe(self) -> str:
        if self.passed:
            return f"{self.name}: ok ({self.checked} checked)"
        return f"{self.name}: FAILED after {self.checked} checked; witness {self.witness}"
