from pydantic import BaseModel, Field
from typing import Any, Dict, List


class FixtureDescriptor(BaseModel):
    """Catalogue entry."""
    name: str
    summary: str
    defaults: Dict[str, Any] = Field(default_factory=dict)


class FixtureList(BaseModel):
    fixtures: List[FixtureDescriptor]


class FixtureReport(BaseModel):
    """Computed verdicts next to the expected ones; passed iff they agree."""
    name: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    computed: Dict[str, Any] = Field(default_factory=dict)
    expected: Dict[str, Any] = Field(default_factory=dict)
    auxiliary: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = False
    mismatches: List[str] = Field(default_factory=list)
