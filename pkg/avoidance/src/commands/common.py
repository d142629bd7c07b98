import functools
import logging

import click
from pydantic import BaseModel
from src.errors import AvoidanceError

logger = logging.getLogger(__name__)


def emit(payload: BaseModel) -> None:
    click.echo(payload.model_dump_json())


def finish(negative: bool) -> None:
    """Exit 1 when the checked property fails, 0 otherwise."""
    click.get_current_context().exit(1 if negative else 0)


def reports_errors(command):
    """Turn an AvoidanceError into its detail on stderr and its exit code."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except AvoidanceError as error:
            logger.debug("%s failed: %r", command.__name__, error)
            click.echo(f"Error: {error}", err=True)
            click.get_current_context().exit(error.exit_code)

    return wrapper


formula_option = click.option(
    "--formula", "formula_text", required=True, help="Formula in dot notation."
)
jobs_option = click.option(
    "--jobs", type=click.IntRange(min=1), default=None, help="Worker processes."
)
split_depth_option = click.option(
    "--split-depth",
    type=click.IntRange(min=0),
    default=None,
    help="Depth at which the search tree is split between workers.",
)
golden_option = click.option(
    "--golden", is_flag=True, help="Record the result, or compare with the record."
)
