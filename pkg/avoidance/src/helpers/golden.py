import json
import logging
from dataclasses import dataclass
from enum import Enum

from sqlmodel import select
from src.database_con import create_tables, get_session
from src.db_models import GoldenCensus, GoldenVerdict
from src.errors import InputError
from src.helpers.formulas import Formula, format_formula
from src.helpers.prover import CensusTable, Verdict

logger = logging.getLogger(__name__)


class GoldenStatus(str, Enum):
    RECORDED = "recorded"
    MATCHED = "matched"
    MISMATCH = "mismatch"


@dataclass(frozen=True)
class GoldenComparison:
    status: GoldenStatus
    record: dict
    # fields whose stored value differs from the fresh one
    differences: tuple[str, ...] = ()


def _verdict_fields(verdict: Verdict) -> dict:
    return {
        "kind": verdict.kind.value,
        "max_depth": verdict.max_depth,
        "nodes_visited": verdict.nodes_visited,
        "example": verdict.example,
    }


def _compare(record: dict, fresh: dict) -> tuple[str, ...]:
    return tuple(name for name, value in fresh.items() if record[name] != value)


def record_or_compare_verdict(
    formula: Formula, k: int, depth_budget: int, node_budget: int, verdict: Verdict
) -> GoldenComparison:
    """
    Compare a verdict with the stored one for the same search, or store it.

    1. It looks up the record for (formula, k, depth budget, node budget).
    2. Without one it records the verdict.
    3. Otherwise every stored field is compared with the fresh verdict.
    """
    create_tables()
    text = format_formula(formula)
    fresh = _verdict_fields(verdict)
    with get_session() as session:
        record = session.exec(
            select(GoldenVerdict).where(
                GoldenVerdict.formula_text == text,
                GoldenVerdict.alphabet_size == k,
                GoldenVerdict.depth_budget == depth_budget,
                GoldenVerdict.node_budget == node_budget,
            )
        ).first()
        if record is None:
            record = GoldenVerdict(
                formula_text=text,
                alphabet_size=k,
                depth_budget=depth_budget,
                node_budget=node_budget,
                **fresh,
            )
            session.add(record)
            session.flush()
            session.refresh(record)
            logger.info("Recorded golden verdict %d for %s on %d letters", record.id, text, k)
            return GoldenComparison(GoldenStatus.RECORDED, record.model_dump())
        stored = record.model_dump()

    differences = _compare(stored, fresh)
    status = GoldenStatus.MISMATCH if differences else GoldenStatus.MATCHED
    logger.info("Golden verdict %d for %s: %s", stored["id"], text, status.value)
    return GoldenComparison(status, stored, differences)


def record_or_compare_census(
    formula: Formula, k: int, max_len: int, table: CensusTable, symmetry: bool = True
) -> GoldenComparison:
    create_tables()
    text = format_formula(formula)
    counts_json = json.dumps(list(table.counts))
    with get_session() as session:
        record = session.exec(
            select(GoldenCensus).where(
                GoldenCensus.formula_text == text,
                GoldenCensus.alphabet_size == k,
                GoldenCensus.max_len == max_len,
                GoldenCensus.symmetry == symmetry,
            )
        ).first()
        if record is None:
            record = GoldenCensus(
                formula_text=text,
                alphabet_size=k,
                max_len=max_len,
                symmetry=symmetry,
                counts_json=counts_json,
            )
            session.add(record)
            session.flush()
            session.refresh(record)
            return GoldenComparison(GoldenStatus.RECORDED, record.model_dump())
        stored = record.model_dump()

    if json.loads(stored["counts_json"]) != list(table.counts):
        return GoldenComparison(GoldenStatus.MISMATCH, stored, ("counts_json",))
    return GoldenComparison(GoldenStatus.MATCHED, stored)


def list_golden_verdicts() -> list[dict]:
    create_tables()
    with get_session() as session:
        records = session.exec(select(GoldenVerdict).order_by(GoldenVerdict.id)).all()
        return [record.model_dump() for record in records]


def delete_golden_verdict(verdict_id: int) -> None:
    create_tables()
    with get_session() as session:
        record = session.get(GoldenVerdict, verdict_id)
        if record is None:
            raise InputError(f"No golden verdict with id {verdict_id}")
        session.delete(record)
