from pydantic import BaseModel
from src.helpers.constructions import ConstructionOutput
from src.helpers.cyclic import BadFactorWitness, LemmaReport, LemmaRow, LemmaStatus
from src.schemas.cli_search import WitnessPayload


class ProvenancePayload(BaseModel):
    base_word: str
    steps: list[str]


class ConstructionPayload(BaseModel):
    k: int
    formula: str
    alphabet_size: int
    length: int
    word: str
    provenance: ProvenancePayload

    @classmethod
    def from_output(cls, output: ConstructionOutput) -> "ConstructionPayload":
        return cls(
            k=output.k,
            formula=str(output.target_formula),
            alphabet_size=output.alphabet_size,
            length=len(output.word),
            word=output.word.text,
            provenance=ProvenancePayload(
                base_word=output.provenance.base_word,
                steps=list(output.provenance.steps),
            ),
        )


class CyclicPayload(BaseModel):
    m: int
    exponents: list[int]
    word: str
    scan_k: int | None = None
    witness: WitnessPayload | None = None


class BadFactorPayload(BaseModel):
    start: int
    n: int
    j: int
    alphas: list[int]

    @classmethod
    def from_witness(cls, witness: BadFactorWitness | None) -> "BadFactorPayload | None":
        if witness is None:
            return None
        return cls(start=witness.start, n=witness.n, j=witness.j, alphas=list(witness.alphas))


class Lemma1Payload(BaseModel):
    k: int
    m: int
    exponents: list[int]
    interior: str
    bad_factor: BadFactorPayload | None


class LemmaRowPayload(BaseModel):
    exponents: list[int]
    status: str
    bad_factor: BadFactorPayload | None
    witness: WitnessPayload | None

    @classmethod
    def from_row(cls, row: LemmaRow) -> "LemmaRowPayload":
        return cls(
            exponents=list(row.word.exponents),
            status=row.status.value,
            bad_factor=BadFactorPayload.from_witness(row.bad_factor),
            witness=WitnessPayload.from_witness(row.encounter) if row.encounter else None,
        )


class LemmaReportPayload(BaseModel):
    k: int
    m: int
    words: int
    counts: dict[str, int]
    minimal_counterexamples: dict[str, LemmaRowPayload]

    @classmethod
    def from_report(cls, report: LemmaReport) -> "LemmaReportPayload":
        minimal = {}
        for status in (LemmaStatus.HARD_FAILURE, LemmaStatus.BOUNDARY_INCONCLUSIVE):
            row = report.minimal_counterexample(status)
            if row is not None:
                minimal[status.value] = LemmaRowPayload.from_row(row)
        return cls(
            k=report.k,
            m=report.m,
            words=len(report.rows),
            counts={status.value: report.count(status) for status in LemmaStatus},
            minimal_counterexamples=minimal,
        )


class SquareFreePayload(BaseModel):
    length: int
    word: str
    checked: str | None = None
    square_free: bool | None = None
    square: list[int] | None = None


class BoundsPayload(BaseModel):
    k: int
    formula: str
    lower: int
    upper: int
    exact: bool
