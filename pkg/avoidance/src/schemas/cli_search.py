from typing import Literal

from pydantic import BaseModel
from src.helpers.encounter import Witness
from src.helpers.prover import CensusTable, Verdict


class WitnessPayload(BaseModel):
    assignment: dict[str, str]
    placements: dict[str, int]

    @classmethod
    def from_witness(cls, witness: Witness) -> "WitnessPayload":
        assignment = {
            var.name: image.text
            for var, image in sorted(
                witness.assignment.images.items(), key=lambda item: item[0].name
            )
        }
        placements = {
            str(fragment): position
            for fragment, position in sorted(
                witness.placements.items(), key=lambda item: str(item[0])
            )
        }
        return cls(assignment=assignment, placements=placements)


class EncounterPayload(BaseModel):
    word: str
    formula: str
    witness: WitnessPayload | None


class GoldenPayload(BaseModel):
    status: Literal["recorded", "matched", "mismatch"]
    id: int
    differences: list[str]


class VerdictPayload(BaseModel):
    formula: str
    alphabet_size: int
    kind: Literal["unavoidable", "avoider_evidence", "budget_exhausted"]
    max_depth: int
    nodes_visited: int
    example: str
    golden: GoldenPayload | None = None

    @classmethod
    def from_verdict(cls, formula: str, k: int, verdict: Verdict) -> "VerdictPayload":
        return cls(
            formula=formula,
            alphabet_size=k,
            kind=verdict.kind.value,
            max_depth=verdict.max_depth,
            nodes_visited=verdict.nodes_visited,
            example=verdict.example,
        )


class CensusPayload(BaseModel):
    formula: str
    alphabet_size: int
    symmetry: bool
    counts: list[int]
    growth_ratios: list[float | None]
    golden: GoldenPayload | None = None

    @classmethod
    def from_table(
        cls, formula: str, table: CensusTable, symmetry: bool, ratios: list
    ) -> "CensusPayload":
        return cls(
            formula=formula,
            alphabet_size=table.k,
            symmetry=symmetry,
            counts=list(table.counts),
            growth_ratios=ratios,
        )


class GoldenVerdictRecord(BaseModel):
    id: int
    formula_text: str
    alphabet_size: int
    depth_budget: int
    node_budget: int
    kind: str
    max_depth: int
    nodes_visited: int
    example: str
