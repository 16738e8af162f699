from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.config import get_epsilon, get_max_iterations
from app.services.fixpoint.policy import ConvergencePolicy

Command = Literal["check", "kk", "wf", "ultimate-kk", "ultimate-wf", "stable", "crosscheck", "strata", "trace"]


class RunConfig(BaseModel):
    """Validated options of one engine run, shared by the CLI and the HTTP API"""
    command: Command
    family: Optional[str] = Field(None, min_length=1, description="Family for untagged connectives (default G)")
    mode: Literal["exact", "approx"] = Field("exact", description="Exact rationals or doubles with epsilon")
    epsilon: Optional[str] = Field(None, description="Convergence tolerance in approx mode, e.g. 1e-9")
    grid: Optional[int] = Field(None, ge=1, description="Grid resolution n, for the step 1/n")
    max_iters: int = Field(default_factory=get_max_iterations, ge=1)
    trace: bool = False
    format: Literal["human", "structured"] = "human"
    partition: Optional[str] = Field(None, description='Strata as "a,b|c,d"; suggested when omitted')
    witness: Optional[str] = Field(None, description='Interpretation to test, e.g. "p=1/2, q=0"')
    enumerate: bool = False
    method: Literal["exact_per_head", "grid"] = "exact_per_head"
    samples: int = Field(100, ge=1, description="Sampled inputs per property check")
    seed: int = 0

    @field_validator("grid", mode="before")
    @classmethod
    def parse_grid(cls, value):
        """Accept n or "1/n"."""
        if isinstance(value, str):
            text = value.strip()
            if text.startswith("1/"):
                text = text[2:]
            if not text.isdigit():
                raise ValueError(f"grid must be n or 1/n for a positive integer n, got {value!r}")
            return int(text)
        return value

    @field_validator("epsilon")
    @classmethod
    def check_epsilon(cls, value):
        if value is None:
            return value
        try:
            parsed = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"epsilon must be a number, got {value!r}")
        if parsed <= 0:
            raise ValueError("epsilon must be positive")
        return value.strip()

    @model_validator(mode="after")
    def check_combination(self):
        if self.epsilon is not None and self.mode != "approx":
            raise ValueError("--epsilon needs --mode approx")
        if self.command == "stable" and self.witness is None and not self.enumerate:
            raise ValueError("stable needs --witness or --enumerate")
        if self.command == "stable" and self.witness is not None and self.enumerate:
            raise ValueError("--witness and --enumerate are mutually exclusive")
        if self.enumerate and self.grid is None:
            raise ValueError("--enumerate needs --grid")
        if self.method == "grid" and self.command.startswith("ultimate") and self.grid is None:
            raise ValueError("--method grid needs --grid")
        return self

    def policy(self) -> ConvergencePolicy:
        if self.mode == "approx":
            epsilon = Fraction(self.epsilon) if self.epsilon is not None else get_epsilon()
            return ConvergencePolicy(epsilon, self.max_iters, self.trace)
        return ConvergencePolicy(None, self.max_iters, self.trace)
