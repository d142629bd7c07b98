from datetime import datetime, timezone

from sqlmodel import Field, SQLModel


def _now() -> datetime:
    return datetime.now(timezone.utc)


class GoldenVerdict(SQLModel, table=True):
    id: int = Field(default=None, primary_key=True)
    formula_text: str = Field(index=True)
    alphabet_size: int
    depth_budget: int
    node_budget: int
    kind: str  # one of: 'unavoidable', 'avoider_evidence', 'budget_exhausted'
    max_depth: int
    nodes_visited: int
    example: str
    recorded_at: datetime = Field(default_factory=_now)


class GoldenCensus(SQLModel, table=True):
    id: int = Field(default=None, primary_key=True)
    formula_text: str = Field(index=True)
    alphabet_size: int
    max_len: int
    symmetry: bool = Field(default=True)
    counts_json: str  # JSON list of counts for lengths 0..max_len
    recorded_at: datetime = Field(default_factory=_now)
