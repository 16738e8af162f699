from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class AtomBounds(BaseModel):
    """Lower and upper truth value of one atom, exact text plus decimal approximation"""
    atom: str
    lower: str
    upper: str
    lower_decimal: str
    upper_decimal: str
    method: Optional[str] = Field(None, description="corner, candidates or grid for ultimate bounds")


class CheckOutcome(BaseModel):
    """Outcome of one property or consistency check"""
    name: str
    passed: bool
    checked: int = 0
    witness: Optional[str] = None

    class Config:
        from_attributes = True


class ResultDocument(BaseModel):
    """Structured result of one run; identical input and config give identical documents"""
    program: str
    config: Dict[str, Any]
    kind: str
    status: Optional[str] = None
    steps: Optional[int] = None
    bounds: List[AtomBounds] = Field(default_factory=list)
    models: List[List[AtomBounds]] = Field(default_factory=list)
    verdict: Optional[bool] = None
    partition: Optional[str] = None
    checks: List[CheckOutcome] = Field(default_factory=list)
    dot: Optional[str] = None
    passed: bool = True
