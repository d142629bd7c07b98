import click
from pydantic import BaseModel
from src.commands.common import emit, reports_errors
from src.helpers.golden import delete_golden_verdict, list_golden_verdicts
from src.schemas.cli_search import GoldenVerdictRecord


class GoldenList(BaseModel):
    verdicts: list[GoldenVerdictRecord]


class GoldenDeleted(BaseModel):
    deleted: int


@click.group("golden")
def golden_group():
    """Inspect the stored golden verdicts."""


@golden_group.command("list")
@reports_errors
def list_command():
    emit(GoldenList(verdicts=list_golden_verdicts()))


@golden_group.command("delete")
@click.option("--id", "verdict_id", type=int, required=True, help="Record id.")
@reports_errors
def delete_command(verdict_id):
    """Delete one golden verdict; an unknown id exits 2."""
    delete_golden_verdict(verdict_id)
    emit(GoldenDeleted(deleted=verdict_id))
